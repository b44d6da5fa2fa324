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

#include "toricq/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "toricq/error.hpp"

namespace toricq {

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return "InvalidArgument";
        case ErrorCode::InvalidDistance:
            return "InvalidDistance";
        case ErrorCode::InvalidProbability:
            return "InvalidProbability";
        case ErrorCode::InvalidChainLength:
            return "InvalidChainLength";
        case ErrorCode::NonEmptySyndrome:
            return "NonEmptySyndrome";
        case ErrorCode::EmptySyndrome:
            return "EmptySyndrome";
        case ErrorCode::TooManyDefects:
            return "TooManyDefects";
        case ErrorCode::OddDefectCount:
            return "OddDefectCount";
        case ErrorCode::UnsupportedDistance:
            return "UnsupportedDistance";
        case ErrorCode::UnsupportedInput:
            return "UnsupportedInput";
        case ErrorCode::ShapeMismatch:
            return "ShapeMismatch";
        case ErrorCode::MissingCache:
            return "MissingCache";
        case ErrorCode::VersionMismatch:
            return "VersionMismatch";
        case ErrorCode::CorruptFile:
            return "CorruptFile";
        case ErrorCode::BufferTooSmall:
            return "BufferTooSmall";
        case ErrorCode::IndexOutOfRange:
            return "IndexOutOfRange";
        case ErrorCode::ConfigInvalid:
            return "ConfigInvalid";
        case ErrorCode::ArchitectureMismatch:
            return "ArchitectureMismatch";
        case ErrorCode::CheckpointIncompatible:
            return "CheckpointIncompatible";
        case ErrorCode::OutOfRange:
            return "OutOfRange";
        case ErrorCode::Io:
            return "Io";
    }
    return "Unknown";
}

CodeDistance::CodeDistance(int d) : d_(d) {
    if (d < 3 || d % 2 == 0 || d > kMax) {
        throw Error(ErrorCode::InvalidDistance,
                    "code distance must be odd and in [3, " + std::to_string(kMax) + "], got " + std::to_string(d));
    }
}

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I:
            return 'I';
        case Pauli::X:
            return 'X';
        case Pauli::Y:
            return 'Y';
        case Pauli::Z:
            return 'Z';
    }
    return '?';
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I':
        case 'i':
            return Pauli::I;
        case 'X':
        case 'x':
            return Pauli::X;
        case 'Y':
        case 'y':
            return Pauli::Y;
        case 'Z':
        case 'z':
            return Pauli::Z;
    }
    throw Error(ErrorCode::InvalidArgument, std::string("not a Pauli label: '") + c + "'");
}

std::string to_string(const Qubit &q) {
    return std::string(q.sublattice == Sublattice::Horizontal ? "H" : "V") + "(" + std::to_string(q.row) + "," +
           std::to_string(q.col) + ")";
}

std::array<Cell, 2> plaquettes_of(int d, const Qubit &q) {
    if (q.sublattice == Sublattice::Horizontal) {
        return {Cell{q.row, q.col}, Cell{wrap(q.row - 1, d), q.col}};
    }
    return {Cell{q.row, q.col}, Cell{q.row, wrap(q.col - 1, d)}};
}

std::array<Cell, 2> vertices_of(int d, const Qubit &q) {
    if (q.sublattice == Sublattice::Horizontal) {
        return {Cell{q.row, q.col}, Cell{q.row, wrap(q.col + 1, d)}};
    }
    return {Cell{q.row, q.col}, Cell{wrap(q.row + 1, d), q.col}};
}

std::array<Qubit, 4> plaquette_qubits(int d, const Cell &c) {
    return {Qubit{Sublattice::Horizontal, c.row, c.col}, Qubit{Sublattice::Horizontal, wrap(c.row + 1, d), c.col},
            Qubit{Sublattice::Vertical, c.row, c.col}, Qubit{Sublattice::Vertical, c.row, wrap(c.col + 1, d)}};
}

std::array<Qubit, 4> vertex_qubits(int d, const Cell &c) {
    return {Qubit{Sublattice::Horizontal, c.row, c.col}, Qubit{Sublattice::Horizontal, c.row, wrap(c.col - 1, d)},
            Qubit{Sublattice::Vertical, c.row, c.col}, Qubit{Sublattice::Vertical, wrap(c.row - 1, d), c.col}};
}

PauliFrame::PauliFrame(CodeDistance d) : d_(d), x_(d.num_qubits(), 0), z_(d.num_qubits(), 0) {
}

Pauli PauliFrame::at(const Qubit &q) const {
    return at_index(qubit_index(d_, q));
}

void PauliFrame::apply(const Qubit &q, Pauli op) {
    apply_index(qubit_index(d_, q), op);
}

int PauliFrame::weight() const {
    int w = 0;
    for (size_t k = 0; k < x_.size(); k++) {
        w += (x_[k] | z_[k]) != 0;
    }
    return w;
}

bool PauliFrame::empty() const {
    return std::all_of(x_.begin(), x_.end(), [](uint8_t b) { return b == 0; }) &&
           std::all_of(z_.begin(), z_.end(), [](uint8_t b) { return b == 0; });
}

PauliFrame &PauliFrame::operator^=(const PauliFrame &other) {
    if (other.d_ != d_) {
        throw Error(ErrorCode::ShapeMismatch, "cannot compose frames of different distance");
    }
    for (size_t k = 0; k < x_.size(); k++) {
        x_[k] ^= other.x_[k];
        z_[k] ^= other.z_[k];
    }
    return *this;
}

PauliFrame apply_pauli(const PauliFrame &frame, const Qubit &q, Pauli op) {
    PauliFrame out = frame;
    out.apply(q, op);
    return out;
}

Syndrome::Syndrome(CodeDistance d) : d_(d), plaquette_(d.num_cells(), 0), vertex_(d.num_cells(), 0) {
}

void Syndrome::apply(const Qubit &q, Pauli op) {
    if (has_x(op)) {
        for (const Cell &c : plaquettes_of(d_, q)) {
            flip_plaquette(c);
        }
    }
    if (has_z(op)) {
        for (const Cell &c : vertices_of(d_, q)) {
            flip_vertex(c);
        }
    }
}

int Syndrome::plaquette_count() const {
    return std::accumulate(plaquette_.begin(), plaquette_.end(), 0);
}

int Syndrome::vertex_count() const {
    return std::accumulate(vertex_.begin(), vertex_.end(), 0);
}

bool Syndrome::empty() const {
    return plaquette_count() == 0 && vertex_count() == 0;
}

bool Syndrome::touches_defect(const Qubit &q) const {
    for (const Cell &c : plaquettes_of(d_, q)) {
        if (plaquette(c.row, c.col)) {
            return true;
        }
    }
    for (const Cell &c : vertices_of(d_, q)) {
        if (vertex(c.row, c.col)) {
            return true;
        }
    }
    return false;
}

namespace {
std::vector<Cell> set_cells(const std::vector<uint8_t> &bits, int d) {
    std::vector<Cell> out;
    for (int k = 0; k < d * d; k++) {
        if (bits[k]) {
            out.push_back(Cell{k / d, k % d});
        }
    }
    return out;
}
}  // namespace

std::vector<Cell> Syndrome::plaquette_defects() const {
    return set_cells(plaquette_, d_);
}

std::vector<Cell> Syndrome::vertex_defects() const {
    return set_cells(vertex_, d_);
}

Syndrome &Syndrome::operator^=(const Syndrome &other) {
    if (other.d_ != d_) {
        throw Error(ErrorCode::ShapeMismatch, "cannot combine syndromes of different distance");
    }
    for (size_t k = 0; k < plaquette_.size(); k++) {
        plaquette_[k] ^= other.plaquette_[k];
        vertex_[k] ^= other.vertex_[k];
    }
    return *this;
}

uint64_t Syndrome::pack() const {
    int n = d_ * d_;
    if (2 * n > 64) {
        throw Error(ErrorCode::UnsupportedDistance, "syndrome packing needs d <= 5");
    }
    uint64_t bits = 0;
    for (int k = 0; k < n; k++) {
        bits |= static_cast<uint64_t>(plaquette_[k] & 1) << k;
        bits |= static_cast<uint64_t>(vertex_[k] & 1) << (n + k);
    }
    return bits;
}

Syndrome Syndrome::unpack(CodeDistance d, uint64_t bits) {
    int n = d.num_cells();
    if (2 * n > 64) {
        throw Error(ErrorCode::UnsupportedDistance, "syndrome packing needs d <= 5");
    }
    Syndrome s(d);
    for (int k = 0; k < n; k++) {
        s.plaquette_[k] = (bits >> k) & 1;
        s.vertex_[k] = (bits >> (n + k)) & 1;
    }
    return s;
}

Syndrome compute_syndrome(const PauliFrame &frame) {
    int d = frame.distance();
    Syndrome s{CodeDistance(d)};
    const auto &xs = frame.xpart();
    const auto &zs = frame.zpart();
    for (int r = 0; r < d; r++) {
        for (int c = 0; c < d; c++) {
            Cell cell{r, c};
            uint8_t px = 0;
            for (const Qubit &q : plaquette_qubits(d, cell)) {
                px ^= xs[qubit_index(d, q)];
            }
            uint8_t vz = 0;
            for (const Qubit &q : vertex_qubits(d, cell)) {
                vz ^= zs[qubit_index(d, q)];
            }
            s.set_plaquette(r, c, px);
            s.set_vertex(r, c, vz);
        }
    }
    return s;
}

int defect_count(const Syndrome &s) {
    return s.defect_count();
}

HomologyClass homology_class(const PauliFrame &frame, int cut) {
    int d = frame.distance();
    if (!compute_syndrome(frame).empty()) {
        throw Error(ErrorCode::NonEmptySyndrome, "homology class requires a syndrome-free operator");
    }
    cut = wrap(cut, d);
    const auto &xs = frame.xpart();
    const auto &zs = frame.zpart();
    HomologyClass h;
    for (int t = 0; t < d; t++) {
        h.x_horizontal ^= xs[qubit_index(d, {Sublattice::Vertical, t, cut})] != 0;
        h.x_vertical ^= xs[qubit_index(d, {Sublattice::Horizontal, cut, t})] != 0;
        h.z_horizontal ^= zs[qubit_index(d, {Sublattice::Horizontal, t, cut})] != 0;
        h.z_vertical ^= zs[qubit_index(d, {Sublattice::Vertical, cut, t})] != 0;
    }
    return h;
}

bool is_logical_failure(const HomologyClass &h) {
    return h.x_horizontal || h.x_vertical || h.z_horizontal || h.z_vertical;
}

PauliFrame logical_loop(CodeDistance d, Pauli op, bool horizontal, int offset) {
    PauliFrame f(d);
    offset = wrap(offset, d);
    for (int t = 0; t < d; t++) {
        Qubit q;
        if (op == Pauli::X) {
            q = horizontal ? Qubit{Sublattice::Vertical, offset, t} : Qubit{Sublattice::Horizontal, t, offset};
        } else if (op == Pauli::Z) {
            q = horizontal ? Qubit{Sublattice::Horizontal, offset, t} : Qubit{Sublattice::Vertical, t, offset};
        } else {
            throw Error(ErrorCode::InvalidArgument, "logical loops are built from X or Z");
        }
        f.apply(q, op);
    }
    return f;
}

}  // namespace toricq
