// Copyright 2026 The toricq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "toricq/perspectives.hpp"

#include "toricq/error.hpp"

namespace toricq {

Cell Transform::plaquette(const Cell &c, int d) const {
    Cell r = rotated ? Cell{c.col, -c.row} : c;
    return Cell{wrap(r.row + row_shift, d), wrap(r.col + col_shift, d)};
}

Cell Transform::vertex(const Cell &c, int d) const {
    Cell r = rotated ? Cell{c.col, 1 - c.row} : c;
    return Cell{wrap(r.row + row_shift, d), wrap(r.col + col_shift, d)};
}

std::vector<Qubit> active_qubits(const Syndrome &s) {
    int d = s.distance();
    std::vector<Qubit> out;
    for (int k = 0; k < 2 * d * d; k++) {
        Qubit q = qubit_at(d, k);
        if (s.touches_defect(q)) {
            out.push_back(q);
        }
    }
    return out;
}

Transform transform_for(const Qubit &q, int d) {
    Cell ref = reference_cell(d);
    Transform t;
    Cell at{q.row, q.col};
    if (q.sublattice == Sublattice::Vertical) {
        t.rotated = true;
        at = Cell{q.col, -q.row};
    }
    t.row_shift = wrap(ref.row - at.row, d);
    t.col_shift = wrap(ref.col - at.col, d);
    return t;
}

Perspective perspective_for(const Syndrome &s, const Qubit &q) {
    int d = s.distance();
    Perspective p;
    p.d = d;
    p.source = q;
    p.transform = transform_for(q, d);
    p.grid.assign(2 * d * d, 0.0f);
    for (int r = 0; r < d; r++) {
        for (int c = 0; c < d; c++) {
            if (s.vertex(r, c)) {
                Cell m = p.transform.vertex({r, c}, d);
                p.grid[m.row * d + m.col] = 1.0f;
            }
            if (s.plaquette(r, c)) {
                Cell m = p.transform.plaquette({r, c}, d);
                p.grid[d * d + m.row * d + m.col] = 1.0f;
            }
        }
    }
    return p;
}

Syndrome restore_syndrome(const Perspective &p) {
    int d = p.d;
    Syndrome s{CodeDistance(d)};
    for (int r = 0; r < d; r++) {
        for (int c = 0; c < d; c++) {
            Cell v = p.transform.vertex({r, c}, d);
            Cell q = p.transform.plaquette({r, c}, d);
            s.set_vertex(r, c, p.vertex(v.row, v.col) != 0.0f);
            s.set_plaquette(r, c, p.plaquette(q.row, q.col) != 0.0f);
        }
    }
    return s;
}

std::vector<Perspective> observation(const Syndrome &s) {
    if (s.empty()) {
        throw Error(ErrorCode::EmptySyndrome, "an observation needs at least one defect");
    }
    std::vector<Perspective> out;
    for (const Qubit &q : active_qubits(s)) {
        out.push_back(perspective_for(s, q));
    }
    return out;
}

}  // namespace toricq
