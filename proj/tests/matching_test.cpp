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

#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <set>

#include "toricq/error.hpp"
#include "toricq/noise.hpp"

using namespace toricq;

namespace {

DefectSet random_defects(int d, int n, Rng &rng) {
    std::set<Cell> cells;
    while (static_cast<int>(cells.size()) < n) {
        cells.insert(Cell{static_cast<int>(rng.below(d)), static_cast<int>(rng.below(d))});
    }
    DefectSet set{DefectSpecies::Plaquette, {cells.begin(), cells.end()}};
    // Shuffle so the input order is not sorted.
    for (int i = n - 1; i > 0; i--) {
        std::swap(set.positions[i], set.positions[rng.below(i + 1)]);
    }
    return set;
}

// Greedy matching with a random order of first picks: an upper bound.
int64_t greedy_weight(const DefectSet &set, int d, Rng &rng) {
    std::vector<int> left(set.positions.size());
    for (size_t i = 0; i < left.size(); i++) {
        left[i] = static_cast<int>(i);
    }
    int64_t total = 0;
    while (!left.empty()) {
        size_t a = rng.below(left.size());
        int i = left[a];
        left.erase(left.begin() + a);
        size_t best = 0;
        for (size_t b = 1; b < left.size(); b++) {
            if (toroidal_distance(set.positions[i], set.positions[left[b]], d) <
                toroidal_distance(set.positions[i], set.positions[left[best]], d)) {
                best = b;
            }
        }
        total += toroidal_distance(set.positions[i], set.positions[left[best]], d);
        left.erase(left.begin() + best);
    }
    return total;
}

void expect_perfect(const Pairing &p, size_t n) {
    std::vector<int> seen(n, 0);
    for (auto [i, j] : p.pairs) {
        EXPECT_LT(i, j);
        seen[i]++;
        seen[j]++;
    }
    for (int s : seen) {
        EXPECT_EQ(s, 1);
    }
}

// Reference max-weight matching by exhaustive search over edge subsets.
int64_t brute_max_weight(int n, const std::vector<WeightedEdge> &edges, bool max_card, int *card_out) {
    int64_t best = std::numeric_limits<int64_t>::min();
    int best_card = -1;
    int m = static_cast<int>(edges.size());
    for (uint32_t mask = 0; mask < (1u << m); mask++) {
        std::vector<bool> used(n, false);
        bool ok = true;
        int64_t w = 0;
        int card = 0;
        for (int k = 0; k < m && ok; k++) {
            if (mask >> k & 1) {
                if (used[edges[k].u] || used[edges[k].v]) {
                    ok = false;
                }
                used[edges[k].u] = used[edges[k].v] = true;
                w += edges[k].weight;
                card++;
            }
        }
        if (!ok) {
            continue;
        }
        if (max_card ? (card > best_card || (card == best_card && w > best)) : w > best) {
            best = w;
            best_card = card;
        }
    }
    *card_out = best_card;
    return best;
}

}  // namespace

TEST(ToroidalDistance, examples) {
    EXPECT_EQ(toroidal_distance({2, 3}, {2, 3}, 5), 0);
    EXPECT_EQ(toroidal_distance({0, 0}, {4, 0}, 5), 1);
    EXPECT_EQ(toroidal_distance({0, 0}, {3, 5}, 7), 5);
}

TEST(MatchBruteforce, small_cases) {
    Pairing empty = match_bruteforce({DefectSpecies::Plaquette, {}}, 5);
    EXPECT_TRUE(empty.pairs.empty());
    EXPECT_EQ(empty.total_weight, 0);

    Pairing two = match_bruteforce({DefectSpecies::Vertex, {{0, 0}, {2, 3}}}, 5);
    ASSERT_EQ(two.pairs.size(), 1u);
    EXPECT_EQ(two.total_weight, 4);

    Pairing four = match_bruteforce({DefectSpecies::Plaquette, {{0, 0}, {0, 2}, {3, 0}, {3, 2}}}, 5);
    EXPECT_EQ(four.total_weight, 4);
    EXPECT_EQ(four.pairs, (std::vector<std::pair<int, int>>{{0, 1}, {2, 3}}));
}

TEST(MatchBruteforce, lexicographic_tie_break) {
    // Square of side 1: pairings {01,23} and {02,13} both weigh 2.
    Pairing p = match_bruteforce({DefectSpecies::Plaquette, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}}, 7);
    EXPECT_EQ(p.total_weight, 2);
    EXPECT_EQ(p.pairs, (std::vector<std::pair<int, int>>{{0, 1}, {2, 3}}));
}

TEST(MatchBruteforce, errors) {
    Rng rng(1);
    try {
        match_bruteforce(random_defects(7, 14, rng), 7);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::TooManyDefects);
    }
    try {
        match_exact(random_defects(7, 3, rng), 7);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::OddDefectCount);
    }
}

TEST(MatchExact, agrees_with_bruteforce) {
    Rng rng(2718);
    int discrepancies = 0;
    for (int trial = 0; trial < 1000; trial++) {
        int d = trial % 2 ? 7 : 5;
        int n = 2 * (1 + static_cast<int>(rng.below(5)));
        DefectSet set = random_defects(d, n, rng);
        Pairing exact = match_exact(set, d);
        expect_perfect(exact, set.positions.size());
        discrepancies += exact.total_weight != match_bruteforce(set, d).total_weight;
    }
    EXPECT_EQ(discrepancies, 0);
}

TEST(MatchExact, twelve_defects_and_dense_sets) {
    Rng rng(31);
    for (int trial = 0; trial < 60; trial++) {
        int d = 3 + 2 * static_cast<int>(rng.below(3));
        int n = std::min(12, d * d - (d * d) % 2);
        DefectSet set = random_defects(d, n, rng);
        EXPECT_EQ(match_exact(set, d).total_weight, match_bruteforce(set, d).total_weight);
    }
}

TEST(MatchExact, bounded_by_greedy_on_sixteen_defects) {
    Rng rng(8);
    for (int trial = 0; trial < 20; trial++) {
        DefectSet set = random_defects(5, 16, rng);
        Pairing exact = match_exact(set, 5);
        expect_perfect(exact, 16);
        for (int g = 0; g < 50; g++) {
            EXPECT_LE(exact.total_weight, greedy_weight(set, 5, rng));
        }
    }
}

TEST(MatchExact, translation_invariant) {
    Rng rng(77);
    for (int trial = 0; trial < 200; trial++) {
        int d = 9;
        DefectSet set = random_defects(d, 2 * (1 + static_cast<int>(rng.below(10))), rng);
        DefectSet shifted = set;
        int dr = static_cast<int>(rng.below(d));
        int dc = static_cast<int>(rng.below(d));
        for (Cell &c : shifted.positions) {
            c = Cell{wrap(c.row + dr, d), wrap(c.col + dc, d)};
        }
        EXPECT_EQ(match_exact(set, d).total_weight, match_exact(shifted, d).total_weight);
    }
}

TEST(MaxWeightMatching, general_graphs_against_exhaustive) {
    Rng rng(4);
    for (int trial = 0; trial < 400; trial++) {
        int n = 2 + static_cast<int>(rng.below(7));
        std::vector<WeightedEdge> edges;
        for (int i = 0; i < n; i++) {
            for (int j = i + 1; j < n; j++) {
                if (rng.bernoulli(0.55) && edges.size() < 16) {
                    edges.push_back({i, j, static_cast<int64_t>(rng.below(12))});
                }
            }
        }
        for (bool max_card : {false, true}) {
            std::vector<int> mate = max_weight_matching(n, edges, max_card);
            int64_t w = 0;
            int card = 0;
            for (const WeightedEdge &e : edges) {
                if (mate[e.u] == e.v) {
                    EXPECT_EQ(mate[e.v], e.u);
                    w += e.weight;
                    card++;
                }
            }
            int ref_card = 0;
            int64_t ref = brute_max_weight(n, edges, max_card, &ref_card);
            EXPECT_EQ(w, ref) << "trial " << trial << " max_card " << max_card;
            if (max_card) {
                EXPECT_EQ(card, ref_card);
            }
        }
    }
}

TEST(CorrectionPath, adjacent_and_wraparound) {
    int d = 5;
    auto adj = correction_path({1, 1}, {1, 2}, DefectSpecies::Plaquette, d);
    ASSERT_EQ(adj.size(), 1u);
    EXPECT_EQ(adj[0].second, Pauli::X);
    EXPECT_EQ(adj[0].first, (Qubit{Sublattice::Vertical, 1, 2}));

    auto wrapv = correction_path({0, 0}, {4, 0}, DefectSpecies::Plaquette, d);
    ASSERT_EQ(wrapv.size(), 1u);
    EXPECT_EQ(wrapv[0].first, (Qubit{Sublattice::Horizontal, 0, 0}));

    auto vz = correction_path({3, 4}, {3, 0}, DefectSpecies::Vertex, d);
    ASSERT_EQ(vz.size(), 1u);
    EXPECT_EQ(vz[0].second, Pauli::Z);
    EXPECT_EQ(vz[0].first, (Qubit{Sublattice::Horizontal, 3, 4}));
}

TEST(CorrectionPath, geodesic_flips_exactly_the_endpoints) {
    Rng rng(6);
    for (int d : {3, 5, 7, 9}) {
        CodeDistance cd(d);
        for (int trial = 0; trial < 200; trial++) {
            Cell a{static_cast<int>(rng.below(d)), static_cast<int>(rng.below(d))};
            Cell b{static_cast<int>(rng.below(d)), static_cast<int>(rng.below(d))};
            for (DefectSpecies sp : {DefectSpecies::Plaquette, DefectSpecies::Vertex}) {
                auto path = correction_path(a, b, sp, d);
                EXPECT_EQ(static_cast<int>(path.size()), toroidal_distance(a, b, d));
                PauliFrame f(cd);
                for (auto [q, op] : path) {
                    f.apply(q, op);
                }
                Syndrome s = compute_syndrome(f);
                Syndrome expected(cd);
                if (!(a == b)) {
                    if (sp == DefectSpecies::Plaquette) {
                        expected.flip_plaquette(a);
                        expected.flip_plaquette(b);
                    } else {
                        expected.flip_vertex(a);
                        expected.flip_vertex(b);
                    }
                }
                EXPECT_EQ(s, expected);
            }
        }
    }
}

TEST(CorrectionPath, undoes_single_error) {
    CodeDistance d(5);
    for (int k = 0; k < d.num_qubits(); k++) {
        Qubit q = qubit_at(d, k);
        PauliFrame err = apply_pauli(PauliFrame(d), q, Pauli::X);
        Syndrome s = compute_syndrome(err);
        auto defects = s.plaquette_defects();
        ASSERT_EQ(defects.size(), 2u);
        PauliFrame corr(d);
        for (auto [cq, op] : correction_path(defects[0], defects[1], DefectSpecies::Plaquette, d)) {
            corr.apply(cq, op);
        }
        EXPECT_TRUE(compute_syndrome(err ^ corr).empty());
        EXPECT_EQ(err ^ corr, PauliFrame(d));
    }
}

TEST(DecodeMwpm, empty_and_single_y) {
    CodeDistance d(5);
    EXPECT_TRUE(decode_mwpm(Syndrome(d)).empty());
    Qubit q{Sublattice::Vertical, 3, 1};
    PauliFrame err = apply_pauli(PauliFrame(d), q, Pauli::Y);
    PauliFrame corr = decode_mwpm(compute_syndrome(err));
    EXPECT_EQ(corr, err);
    EXPECT_FALSE(is_logical_failure(homology_class(err ^ corr)));
}

TEST(DecodeMwpm, always_clears_syndrome) {
    Rng rng(10);
    for (int d : {3, 5, 7}) {
        CodeDistance cd(d);
        for (int trial = 0; trial < 3334; trial++) {
            double p = 0.3 * rng.uniform();
            PauliFrame err = sample_error(cd, NoiseModel::depolarizing(p), rng);
            PauliFrame corr = decode_mwpm(compute_syndrome(err));
            EXPECT_TRUE(compute_syndrome(err ^ corr).empty());
        }
    }
}

TEST(DecodeMwpm, one_y_rest_x_on_fallible_column_fails) {
    // One Y and ceil(d/2)-1 X errors on a column of horizontal edges.
    for (int d : {5, 7}) {
        CodeDistance cd(d);
        int k = cd.half_ceil();
        PauliFrame err(cd);
        err.apply({Sublattice::Horizontal, 0, 2}, Pauli::Y);
        for (int t = 1; t < k; t++) {
            err.apply({Sublattice::Horizontal, t, 2}, Pauli::X);
        }
        PauliFrame corr = decode_mwpm(compute_syndrome(err));
        int z_ops = 0;
        int x_ops = 0;
        for (int q = 0; q < cd.num_qubits(); q++) {
            z_ops += corr.zpart()[q];
            x_ops += corr.xpart()[q];
        }
        EXPECT_EQ(z_ops, 1);
        EXPECT_EQ(x_ops, d - k);
        EXPECT_TRUE(is_logical_failure(homology_class(err ^ corr)));
    }
}
