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

#ifndef TORICQ_PERSPECTIVES_HPP
#define TORICQ_PERSPECTIVES_HPP

#include <utility>
#include <vector>

#include "toricq/lattice.hpp"

namespace toricq {

// Identifies the geometry conventions baked into network inputs. Stored in
// checkpoints so a model is never fed grids built another way.
constexpr const char *kPerspectiveConvention = "ref=d/2,d/2;rot=ccw90@plaquette(0,0);ch=vertex,plaquette";

// The cell the chosen qubit is moved to. The qubit lands on the bottom edge
// of this plaquette (0-based (d/2, d/2), the central cell).
inline Cell reference_cell(int d) {
    return Cell{d / 2, d / 2};
}

// Maps lattice coordinates into a perspective frame: optionally rotate by 90
// degrees counter-clockwise about the centre of plaquette (0,0), then shift.
// Under the rotation plaquette (i,j) goes to (j,-i), vertex (i,j) to
// (j,1-i) and V(i,j) to H(j,-i).
struct Transform {
    int row_shift = 0;
    int col_shift = 0;
    bool rotated = false;

    Cell plaquette(const Cell &c, int d) const;
    Cell vertex(const Cell &c, int d) const;
    bool operator==(const Transform &) const = default;
};

struct Perspective {
    int d = 0;
    // 2 x d x d, channel 0 vertex defects, channel 1 plaquette defects,
    // row-major, values 0 or 1.
    std::vector<float> grid;
    Qubit source;
    Transform transform;

    float vertex(int row, int col) const {
        return grid[row * d + col];
    }
    float plaquette(int row, int col) const {
        return grid[d * d + row * d + col];
    }
};

// Qubits bordering at least one defect, in (sublattice, row, col) order.
std::vector<Qubit> active_qubits(const Syndrome &s);

Transform transform_for(const Qubit &q, int d);
Perspective perspective_for(const Syndrome &s, const Qubit &q);
// Undoes the transform, reproducing the syndrome the perspective came from.
Syndrome restore_syndrome(const Perspective &p);

// One perspective per active qubit. Throws EmptySyndrome.
std::vector<Perspective> observation(const Syndrome &s);

// Pauli labels are unaffected by translations and rotations.
inline std::pair<Qubit, Pauli> map_action_back(const Perspective &p, Pauli a) {
    return {p.source, a};
}

}  // namespace toricq

#endif
