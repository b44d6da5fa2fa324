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

#include "toricq/matching.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "toricq/error.hpp"

namespace toricq {

int toroidal_distance(const Cell &a, const Cell &b, int d) {
    int dr = std::abs(a.row - b.row);
    int dc = std::abs(a.col - b.col);
    return std::min(dr, d - dr) + std::min(dc, d - dc);
}

namespace {

void check_even(const DefectSet &defects) {
    if (defects.positions.size() % 2 != 0) {
        throw Error(ErrorCode::OddDefectCount,
                    "cannot perfectly match " + std::to_string(defects.positions.size()) + " defects");
    }
}

struct BruteforceSearch {
    const std::vector<std::vector<int>> &dist;
    std::vector<bool> used;
    std::vector<std::pair<int, int>> current;
    Pairing best;
    int64_t current_weight = 0;

    void run(int n) {
        int i = 0;
        while (i < n && used[i]) {
            i++;
        }
        if (i == n) {
            if (best.pairs.empty() || current_weight < best.total_weight) {
                best.pairs = current;
                best.total_weight = current_weight;
            }
            return;
        }
        used[i] = true;
        for (int j = i + 1; j < n; j++) {
            if (used[j]) {
                continue;
            }
            used[j] = true;
            current.emplace_back(i, j);
            current_weight += dist[i][j];
            run(n);
            current_weight -= dist[i][j];
            current.pop_back();
            used[j] = false;
        }
        used[i] = false;
    }
};

std::vector<std::vector<int>> distance_table(const DefectSet &defects, int d) {
    size_t n = defects.positions.size();
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, 0));
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            dist[i][j] = dist[j][i] = toroidal_distance(defects.positions[i], defects.positions[j], d);
        }
    }
    return dist;
}

}  // namespace

Pairing match_bruteforce(const DefectSet &defects, int d) {
    int n = static_cast<int>(defects.positions.size());
    if (n > kBruteforceLimit) {
        throw Error(ErrorCode::TooManyDefects, std::to_string(n) + " defects exceed the exhaustive-search limit of " +
                                                   std::to_string(kBruteforceLimit));
    }
    check_even(defects);
    if (n == 0) {
        return {};
    }
    auto dist = distance_table(defects, d);
    BruteforceSearch search{dist, std::vector<bool>(n, false), {}, {}, 0};
    search.run(n);
    return search.best;
}

Pairing match_exact(const DefectSet &defects, int d) {
    check_even(defects);
    int n = static_cast<int>(defects.positions.size());
    Pairing out;
    if (n == 0) {
        return out;
    }
    auto dist = distance_table(defects, d);
    if (n == 2) {
        out.pairs.emplace_back(0, 1);
        out.total_weight = dist[0][1];
        return out;
    }
    // Minimum-weight perfect matching as a maximum-cardinality
    // maximum-weight matching with weights (C - distance) > 0.
    int64_t c = d + 1;
    std::vector<WeightedEdge> edges;
    edges.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            edges.push_back({i, j, c - dist[i][j]});
        }
    }
    std::vector<int> mate = max_weight_matching(n, edges, true);
    for (int i = 0; i < n; i++) {
        if (mate[i] < 0) {
            throw Error(ErrorCode::InvalidArgument, "matching is not perfect");
        }
        if (i < mate[i]) {
            out.pairs.emplace_back(i, mate[i]);
            out.total_weight += dist[i][mate[i]];
        }
    }
    return out;
}

std::vector<std::pair<Qubit, Pauli>> correction_path(const Cell &from, const Cell &to, DefectSpecies species, int d) {
    std::vector<std::pair<Qubit, Pauli>> ops;
    bool plaq = species == DefectSpecies::Plaquette;
    Pauli op = plaq ? Pauli::X : Pauli::Z;
    int r = wrap(from.row, d);
    int c = wrap(from.col, d);
    int dr = wrap(to.row - r, d);
    int row_step = dr <= d - dr ? 1 : -1;
    int row_moves = std::min(dr, d - dr);
    for (int t = 0; t < row_moves; t++) {
        Qubit q;
        if (plaq) {
            // Plaquettes (r, c) and (r + 1, c) share H(r + 1, c).
            q = row_step > 0 ? Qubit{Sublattice::Horizontal, wrap(r + 1, d), c} : Qubit{Sublattice::Horizontal, r, c};
        } else {
            // Vertices (r, c) and (r + 1, c) share V(r, c).
            q = row_step > 0 ? Qubit{Sublattice::Vertical, r, c} : Qubit{Sublattice::Vertical, wrap(r - 1, d), c};
        }
        ops.emplace_back(q, op);
        r = wrap(r + row_step, d);
    }
    int dc = wrap(to.col - c, d);
    int col_step = dc <= d - dc ? 1 : -1;
    int col_moves = std::min(dc, d - dc);
    for (int t = 0; t < col_moves; t++) {
        Qubit q;
        if (plaq) {
            // Plaquettes (r, c) and (r, c + 1) share V(r, c + 1).
            q = col_step > 0 ? Qubit{Sublattice::Vertical, r, wrap(c + 1, d)} : Qubit{Sublattice::Vertical, r, c};
        } else {
            // Vertices (r, c) and (r, c + 1) share H(r, c).
            q = col_step > 0 ? Qubit{Sublattice::Horizontal, r, c} : Qubit{Sublattice::Horizontal, r, wrap(c - 1, d)};
        }
        ops.emplace_back(q, op);
        c = wrap(c + col_step, d);
    }
    return ops;
}

PauliFrame decode_mwpm(const Syndrome &s) {
    int d = s.distance();
    PauliFrame correction{CodeDistance(d)};
    for (DefectSpecies species : {DefectSpecies::Plaquette, DefectSpecies::Vertex}) {
        DefectSet set{species, species == DefectSpecies::Plaquette ? s.plaquette_defects() : s.vertex_defects()};
        Pairing pairing = match_exact(set, d);
        for (const auto &[i, j] : pairing.pairs) {
            for (const auto &[q, op] : correction_path(set.positions[i], set.positions[j], species, d)) {
                correction.apply(q, op);
            }
        }
    }
    return correction;
}

}  // namespace toricq
