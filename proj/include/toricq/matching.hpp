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

#ifndef TORICQ_MATCHING_HPP
#define TORICQ_MATCHING_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "toricq/lattice.hpp"

namespace toricq {

enum class DefectSpecies { Plaquette, Vertex };

struct DefectSet {
    DefectSpecies species = DefectSpecies::Plaquette;
    std::vector<Cell> positions;
};

// Pairs are (i, j) indices into the defect list with i < j, sorted by i.
struct Pairing {
    std::vector<std::pair<int, int>> pairs;
    int64_t total_weight = 0;
};

int toroidal_distance(const Cell &a, const Cell &b, int d);

// Exhaustive search over all (n-1)!! pairings; lexicographically smallest
// optimum. Throws TooManyDefects above kBruteforceLimit.
constexpr int kBruteforceLimit = 12;
Pairing match_bruteforce(const DefectSet &defects, int d);

// Exact minimum-weight perfect matching (Edmonds' blossom algorithm).
// Throws OddDefectCount for odd cardinality.
Pairing match_exact(const DefectSet &defects, int d);

// Maximum-weight matching on a general graph with integer weights. Returns
// mate[v] (or -1). With max_cardinality set, only maximum-cardinality
// matchings are considered.
struct WeightedEdge {
    int u;
    int v;
    int64_t weight;
};
std::vector<int> max_weight_matching(int num_vertices, const std::vector<WeightedEdge> &edges, bool max_cardinality);

// Geodesic between two defects of one species: rows first, then columns,
// each along the shorter way around. X ops for plaquettes, Z ops for vertices.
std::vector<std::pair<Qubit, Pauli>> correction_path(const Cell &from, const Cell &to, DefectSpecies species, int d);

// Independent exact matching of plaquette and vertex defects.
PauliFrame decode_mwpm(const Syndrome &s);

}  // namespace toricq

#endif
