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

#ifndef TORICQ_NOISE_HPP
#define TORICQ_NOISE_HPP

#include <string>
#include <vector>

#include "toricq/lattice.hpp"
#include "toricq/rng.hpp"

namespace toricq {

enum class NoiseKind { Depolarizing, BitFlip, Biased };

struct PauliRates {
    double px = 0;
    double py = 0;
    double pz = 0;
};

class NoiseModel {
   public:
    static NoiseModel depolarizing(double p);
    static NoiseModel bit_flip(double p);
    // p_z = p_rel * p, p_x = p_y = (1 - p_rel) * p / 2.
    static NoiseModel biased(double p, double p_rel);
    // Parses "depolarizing", "bitflip", "biased" (p_rel used only for biased).
    static NoiseModel from_name(const std::string &name, double p, double p_rel = 1.0 / 3.0);

    NoiseKind kind() const noexcept {
        return kind_;
    }
    double p() const noexcept {
        return p_;
    }
    double p_rel() const noexcept {
        return p_rel_;
    }
    PauliRates rates() const noexcept {
        return rates_;
    }
    std::string name() const;
    NoiseModel with_p(double p) const;

   private:
    NoiseModel(NoiseKind kind, double p, double p_rel);
    NoiseKind kind_;
    double p_;
    double p_rel_;
    PauliRates rates_;
};

// Each qubit independently receives X, Y, Z or nothing.
PauliFrame sample_error(CodeDistance d, const NoiseModel &model, Rng &rng);

// One line of d qubits: a row or column of one sublattice.
struct ChainLine {
    Sublattice sublattice = Sublattice::Horizontal;
    bool along_row = false;  // true: fixed row, varying column
    int index = 0;           // the fixed row or column
    Qubit qubit(int t) const {
        return along_row ? Qubit{sublattice, index, t} : Qubit{sublattice, t, index};
    }
    bool operator==(const ChainLine &) const = default;
};

// Lines on which a chain of X (resp. Z) components closes into a logical loop:
// X on H columns and V rows, Z on H rows and V columns.
bool x_fallible(const ChainLine &line);
bool z_fallible(const ChainLine &line);
// All 4d lines, ordered (sublattice, orientation, index).
std::vector<ChainLine> all_lines(int d);
// Lines where some allowed type can produce a logical failure.
std::vector<ChainLine> relevant_lines(int d, const std::vector<Pauli> &types_allowed);

// Uniform line among relevant_lines(d, types), then k distinct positions on
// it, then i.i.d. uniform types. Throws InvalidChainLength if k > d.
PauliFrame sample_row_column_chain(CodeDistance d, int k, const std::vector<Pauli> &types_allowed, Rng &rng);

}  // namespace toricq

#endif
