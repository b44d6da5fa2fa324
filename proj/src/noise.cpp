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

#include "toricq/noise.hpp"

#include <algorithm>
#include <cmath>

#include "toricq/error.hpp"

namespace toricq {

NoiseModel::NoiseModel(NoiseKind kind, double p, double p_rel) : kind_(kind), p_(p), p_rel_(p_rel) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw Error(ErrorCode::InvalidProbability, "p must lie in [0, 1), got " + std::to_string(p));
    }
    if (!(p_rel >= 0.0 && p_rel <= 1.0)) {
        throw Error(ErrorCode::InvalidProbability, "p_rel must lie in [0, 1], got " + std::to_string(p_rel));
    }
    switch (kind) {
        case NoiseKind::Depolarizing:
            rates_ = {p / 3, p / 3, p / 3};
            break;
        case NoiseKind::BitFlip:
            rates_ = {p, 0, 0};
            break;
        case NoiseKind::Biased:
            rates_ = {(1 - p_rel) * p / 2, (1 - p_rel) * p / 2, p_rel * p};
            break;
    }
}

NoiseModel NoiseModel::depolarizing(double p) {
    return NoiseModel(NoiseKind::Depolarizing, p, 1.0 / 3.0);
}

NoiseModel NoiseModel::bit_flip(double p) {
    return NoiseModel(NoiseKind::BitFlip, p, 0.0);
}

NoiseModel NoiseModel::biased(double p, double p_rel) {
    return NoiseModel(NoiseKind::Biased, p, p_rel);
}

NoiseModel NoiseModel::from_name(const std::string &name, double p, double p_rel) {
    if (name == "depolarizing") {
        return depolarizing(p);
    }
    if (name == "bitflip") {
        return bit_flip(p);
    }
    if (name == "biased") {
        return biased(p, p_rel);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown noise model '" + name + "'");
}

std::string NoiseModel::name() const {
    switch (kind_) {
        case NoiseKind::Depolarizing:
            return "depolarizing";
        case NoiseKind::BitFlip:
            return "bitflip";
        case NoiseKind::Biased:
            return "biased";
    }
    return "unknown";
}

NoiseModel NoiseModel::with_p(double p) const {
    return NoiseModel(kind_, p, p_rel_);
}

PauliFrame sample_error(CodeDistance d, const NoiseModel &model, Rng &rng) {
    PauliFrame frame(d);
    PauliRates r = model.rates();
    double cx = r.px;
    double cy = cx + r.py;
    double cz = cy + r.pz;
    if (cz <= 0) {
        return frame;
    }
    for (int k = 0; k < d.num_qubits(); k++) {
        double u = rng.uniform();
        if (u < cx) {
            frame.apply_index(k, Pauli::X);
        } else if (u < cy) {
            frame.apply_index(k, Pauli::Y);
        } else if (u < cz) {
            frame.apply_index(k, Pauli::Z);
        }
    }
    return frame;
}

bool x_fallible(const ChainLine &line) {
    return (line.sublattice == Sublattice::Horizontal) != line.along_row;
}

bool z_fallible(const ChainLine &line) {
    return !x_fallible(line);
}

std::vector<ChainLine> all_lines(int d) {
    std::vector<ChainLine> out;
    for (Sublattice sub : {Sublattice::Horizontal, Sublattice::Vertical}) {
        for (bool along_row : {true, false}) {
            for (int i = 0; i < d; i++) {
                out.push_back(ChainLine{sub, along_row, i});
            }
        }
    }
    return out;
}

std::vector<ChainLine> relevant_lines(int d, const std::vector<Pauli> &types_allowed) {
    bool want_x = std::any_of(types_allowed.begin(), types_allowed.end(), [](Pauli p) { return has_x(p); });
    bool want_z = std::any_of(types_allowed.begin(), types_allowed.end(), [](Pauli p) { return has_z(p); });
    std::vector<ChainLine> out;
    for (const ChainLine &line : all_lines(d)) {
        if ((want_x && x_fallible(line)) || (want_z && z_fallible(line))) {
            out.push_back(line);
        }
    }
    return out;
}

PauliFrame sample_row_column_chain(CodeDistance d, int k, const std::vector<Pauli> &types_allowed, Rng &rng) {
    if (k < 0 || k > d.value()) {
        throw Error(ErrorCode::InvalidChainLength,
                    "chain length " + std::to_string(k) + " exceeds distance " + std::to_string(d.value()));
    }
    if (types_allowed.empty() ||
        std::any_of(types_allowed.begin(), types_allowed.end(), [](Pauli p) { return p == Pauli::I; })) {
        throw Error(ErrorCode::InvalidArgument, "types_allowed must be a nonempty subset of {X, Y, Z}");
    }
    PauliFrame frame(d);
    if (k == 0) {
        return frame;
    }
    std::vector<ChainLine> lines = relevant_lines(d, types_allowed);
    const ChainLine &line = lines[rng.below(lines.size())];
    // Partial Fisher-Yates: the first k entries are a uniform k-subset.
    std::vector<int> pos(d.value());
    for (int t = 0; t < d.value(); t++) {
        pos[t] = t;
    }
    for (int t = 0; t < k; t++) {
        int j = t + static_cast<int>(rng.below(d.value() - t));
        std::swap(pos[t], pos[j]);
    }
    for (int t = 0; t < k; t++) {
        frame.apply(line.qubit(pos[t]), types_allowed[rng.below(types_allowed.size())]);
    }
    return frame;
}

}  // namespace toricq
