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

#ifndef TORICQ_LATTICE_HPP
#define TORICQ_LATTICE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace toricq {

// Edge-qubit conventions on the d x d torus (rows grow "upward"):
//
//   H(i,j) is the bottom edge of plaquette (i,j), V(i,j) its left edge.
//   Plaquette (i,j) is bounded by H(i,j), H(i+1,j), V(i,j), V(i,j+1).
//   Vertex (i,j) is the bottom-left corner of plaquette (i,j) and touches
//   H(i,j), H(i,j-1), V(i,j), V(i-1,j).
//
// All indices are taken modulo d.

class CodeDistance {
   public:
    // Throws InvalidDistance unless d is odd and 3 <= d <= kMax.
    explicit CodeDistance(int d);
    static constexpr int kMax = 31;

    int value() const noexcept {
        return d_;
    }
    operator int() const noexcept {
        return d_;
    }
    int num_qubits() const noexcept {
        return 2 * d_ * d_;
    }
    int num_cells() const noexcept {
        return d_ * d_;
    }
    // ceil(d / 2): the length of the shortest fallible error chain.
    int half_ceil() const noexcept {
        return (d_ + 1) / 2;
    }

   private:
    int d_;
};

enum class Sublattice : uint8_t { Horizontal = 0, Vertical = 1 };

// Bit 0 is the X component, bit 1 the Z component, so Y = X | Z.
enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

constexpr std::array<Pauli, 3> kActions = {Pauli::X, Pauli::Y, Pauli::Z};

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

inline Pauli compose(Pauli a, Pauli b) {
    return static_cast<Pauli>(static_cast<uint8_t>(a) ^ static_cast<uint8_t>(b));
}
inline bool has_x(Pauli p) {
    return (static_cast<uint8_t>(p) & 1) != 0;
}
inline bool has_z(Pauli p) {
    return (static_cast<uint8_t>(p) & 2) != 0;
}

struct Cell {
    int row = 0;
    int col = 0;
    bool operator==(const Cell &) const = default;
    auto operator<=>(const Cell &) const = default;
};

struct Qubit {
    Sublattice sublattice = Sublattice::Horizontal;
    int row = 0;
    int col = 0;
    bool operator==(const Qubit &) const = default;
    auto operator<=>(const Qubit &) const = default;
};

std::string to_string(const Qubit &q);

inline int wrap(int v, int d) {
    int r = v % d;
    return r < 0 ? r + d : r;
}

// Bijection between qubits and 0 .. 2d^2-1, ordered (sublattice, row, col).
inline int qubit_index(int d, const Qubit &q) {
    return static_cast<int>(q.sublattice) * d * d + q.row * d + q.col;
}
inline Qubit qubit_at(int d, int index) {
    int dd = d * d;
    return Qubit{static_cast<Sublattice>(index / dd), (index % dd) / d, index % d};
}

// The two plaquettes / two vertices a qubit borders.
std::array<Cell, 2> plaquettes_of(int d, const Qubit &q);
std::array<Cell, 2> vertices_of(int d, const Qubit &q);
// The four qubits bounding a plaquette / meeting at a vertex.
std::array<Qubit, 4> plaquette_qubits(int d, const Cell &c);
std::array<Qubit, 4> vertex_qubits(int d, const Cell &c);

// Physical error (or correction) as two bit-planes over the 2d^2 qubits.
class PauliFrame {
   public:
    explicit PauliFrame(CodeDistance d);

    int distance() const noexcept {
        return d_;
    }
    Pauli at(const Qubit &q) const;
    Pauli at_index(int index) const {
        return static_cast<Pauli>(x_[index] | (z_[index] << 1));
    }
    void apply(const Qubit &q, Pauli op);
    void apply_index(int index, Pauli op) {
        x_[index] ^= static_cast<uint8_t>(has_x(op));
        z_[index] ^= static_cast<uint8_t>(has_z(op));
    }

    const std::vector<uint8_t> &xpart() const noexcept {
        return x_;
    }
    const std::vector<uint8_t> &zpart() const noexcept {
        return z_;
    }
    int weight() const;
    bool empty() const;

    PauliFrame &operator^=(const PauliFrame &other);
    friend PauliFrame operator^(PauliFrame a, const PauliFrame &b) {
        a ^= b;
        return a;
    }
    bool operator==(const PauliFrame &) const = default;

   private:
    int d_;
    std::vector<uint8_t> x_;
    std::vector<uint8_t> z_;
};

// Pure: returns `frame` with `op` composed onto qubit `q`.
PauliFrame apply_pauli(const PauliFrame &frame, const Qubit &q, Pauli op);

// Defect pattern. Plaquette bits see the X component of errors, vertex bits
// the Z component.
class Syndrome {
   public:
    explicit Syndrome(CodeDistance d);

    int distance() const noexcept {
        return d_;
    }
    bool plaquette(int row, int col) const {
        return plaquette_[row * d_ + col] != 0;
    }
    bool vertex(int row, int col) const {
        return vertex_[row * d_ + col] != 0;
    }
    void set_plaquette(int row, int col, bool v) {
        plaquette_[row * d_ + col] = v;
    }
    void set_vertex(int row, int col, bool v) {
        vertex_[row * d_ + col] = v;
    }
    void flip_plaquette(const Cell &c) {
        plaquette_[c.row * d_ + c.col] ^= 1;
    }
    void flip_vertex(const Cell &c) {
        vertex_[c.row * d_ + c.col] ^= 1;
    }
    const std::vector<uint8_t> &plaquettes() const noexcept {
        return plaquette_;
    }
    const std::vector<uint8_t> &vertices() const noexcept {
        return vertex_;
    }

    // Toggles the defects that `op` on `q` creates or removes.
    void apply(const Qubit &q, Pauli op);

    int plaquette_count() const;
    int vertex_count() const;
    int defect_count() const {
        return plaquette_count() + vertex_count();
    }
    bool empty() const;
    // True when q borders at least one defect of either species.
    bool touches_defect(const Qubit &q) const;

    std::vector<Cell> plaquette_defects() const;
    std::vector<Cell> vertex_defects() const;

    Syndrome &operator^=(const Syndrome &other);
    friend Syndrome operator^(Syndrome a, const Syndrome &b) {
        a ^= b;
        return a;
    }
    bool operator==(const Syndrome &) const = default;

    // Packs plaquettes into bits 0..d^2-1 and vertices into d^2..2d^2-1.
    // Requires 2d^2 <= 64, i.e. d <= 5.
    uint64_t pack() const;
    static Syndrome unpack(CodeDistance d, uint64_t bits);

   private:
    int d_;
    std::vector<uint8_t> plaquette_;
    std::vector<uint8_t> vertex_;
};

Syndrome compute_syndrome(const PauliFrame &frame);
int defect_count(const Syndrome &s);

// Winding parities of a syndrome-free operator. x_horizontal is the parity of
// X loops running along rows (V(i,*)), x_vertical of X loops running along
// columns (H(*,j)); likewise z_horizontal for Z on H(i,*) and z_vertical for
// Z on V(*,j).
struct HomologyClass {
    bool x_horizontal = false;
    bool x_vertical = false;
    bool z_horizontal = false;
    bool z_vertical = false;
    bool operator==(const HomologyClass &) const = default;
};

// Throws NonEmptySyndrome if the frame has defects. `cut` selects which of
// the d parallel cuts is used; every cut yields the same answer.
HomologyClass homology_class(const PauliFrame &frame, int cut = 0);
bool is_logical_failure(const HomologyClass &h);

// Non-contractible loop representatives, useful for tests and enumeration.
PauliFrame logical_loop(CodeDistance d, Pauli op, bool horizontal, int offset = 0);

}  // namespace toricq

#endif
