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

#include "toricq/mcc_oracle.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "toricq/error.hpp"

using namespace toricq;

namespace {

const SyndromeTable &table() {
    static const SyndromeTable t = SyndromeTable::build(CodeDistance(3), 0.95);
    return t;
}

Syndrome syndrome_of(std::initializer_list<std::pair<Qubit, Pauli>> errors, int d = 3) {
    PauliFrame f{CodeDistance(d)};
    for (const auto &[q, op] : errors) {
        f.apply(q, op);
    }
    return compute_syndrome(f);
}

PauliFrame line_frame(int d, const ChainLine &line, const std::vector<Pauli> &ops) {
    PauliFrame f{CodeDistance(d)};
    for (size_t t = 0; t < ops.size(); t++) {
        f.apply(line.qubit(static_cast<int>(t)), ops[t]);
    }
    return f;
}

std::string temp_path(const std::string &name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

constexpr Qubit H(int r, int c) {
    return {Sublattice::Horizontal, r, c};
}
constexpr Qubit V(int r, int c) {
    return {Sublattice::Vertical, r, c};
}

}  // namespace

TEST(MinSteps, hand_examples) {
    const SyndromeTable &t = table();
    EXPECT_EQ(t.min_steps(Syndrome(CodeDistance(3))), 0);
    for (int k = 0; k < 18; k++) {
        EXPECT_EQ(t.min_steps(syndrome_of({{qubit_at(3, k), Pauli::X}})), 1);
        EXPECT_EQ(t.min_steps(syndrome_of({{qubit_at(3, k), Pauli::Y}})), 1);
    }
    // Two X errors side by side on a row of horizontal edges: four plaquette
    // defects, and no single edge borders all of them.
    EXPECT_EQ(t.min_steps(syndrome_of({{H(0, 0), Pauli::X}, {H(0, 1), Pauli::X}})), 2);
    // On a row of vertical edges the same pair leaves two plaquettes that
    // meet across the wrap, so one step suffices.
    EXPECT_EQ(t.min_steps(syndrome_of({{V(0, 0), Pauli::X}, {V(0, 1), Pauli::X}})), 1);
}

TEST(MinSteps, separable_pairs_add) {
    const SyndromeTable &t = table();
    for (int a = 0; a < 18; a++) {
        for (int b = 0; b < 18; b++) {
            if (a == b) {
                continue;
            }
            Syndrome s = syndrome_of({{qubit_at(3, a), Pauli::X}, {qubit_at(3, b), Pauli::Z}});
            EXPECT_EQ(t.min_steps(s), 2) << a << " " << b;
        }
    }
}

TEST(MinSteps, table_self_consistency) {
    const SyndromeTable &t = table();
    int reachable = 0;
    for (uint32_t s = 0; s < static_cast<uint32_t>(SyndromeTable::kStates); s++) {
        int plaq = std::popcount(s & 0x1FFu);
        int vert = std::popcount(s >> 9);
        bool even = plaq % 2 == 0 && vert % 2 == 0;
        int steps = t.min_steps_packed(s);
        EXPECT_EQ(steps >= 0, even);
        reachable += steps >= 0;
        if (steps > 0 && (s % 97 == 0 || steps <= 1)) {
            Syndrome syn = Syndrome::unpack(CodeDistance(3), s);
            EXPECT_FALSE(t.shortest_actions(syn).empty());
            for (const Action &a : SyndromeTable::legal_actions(syn)) {
                Syndrome n = syn;
                n.apply(a.qubit, a.op);
                EXPECT_GE(t.min_steps(n), steps - 1);
            }
        }
    }
    EXPECT_EQ(reachable, 1 << 16);
}

TEST(ValueTable, hand_examples) {
    const SyndromeTable &t = table();
    EXPECT_DOUBLE_EQ(t.value(Syndrome(CodeDistance(3))), 0.0);
    for (int k = 0; k < 18; k++) {
        EXPECT_NEAR(t.value(syndrome_of({{qubit_at(3, k), Pauli::Z}})), 100.0, 1e-9);
    }
    Syndrome two = syndrome_of({{H(0, 0), Pauli::X}, {H(0, 1), Pauli::X}});
    EXPECT_EQ(two.defect_count(), 4);
    EXPECT_NEAR(t.value(two), 2 + 0.95 * 100, 1e-8);

    // Plaquette-only syndromes: every action moves at most two defects, so
    // the optimal path removes two per step and then clears.
    int found = 0;
    for (uint32_t s = 1; s < 512; s++) {
        int steps = t.min_steps_packed(s);
        if (steps == 2 && std::popcount(s) == 4) {
            EXPECT_NEAR(t.value_packed(s), 2 + 0.95 * 100, 1e-8);
            found++;
        }
        if (steps == 3 && std::popcount(s) == 6) {
            EXPECT_NEAR(t.value_packed(s), 2 + 0.95 * 2 + 0.95 * 0.95 * 100, 1e-8);
            found++;
        }
    }
    EXPECT_GT(found, 0);
}

TEST(ValueTable, bellman_consistency) {
    const SyndromeTable &t = table();
    double worst = 0;
    for (uint32_t s = 1; s < static_cast<uint32_t>(SyndromeTable::kStates); s += 7) {
        if (t.min_steps_packed(s) <= 0) {
            continue;
        }
        Syndrome syn = Syndrome::unpack(CodeDistance(3), s);
        worst = std::max(worst, std::abs(t.bellman_backup(syn) - t.value(syn)));
    }
    EXPECT_LT(worst, 1e-8);
}

TEST(ValueTable, only_d3) {
    try {
        SyndromeTable::build(CodeDistance(5));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedDistance);
    }
    EXPECT_THROW(SyndromeTable::build_min_steps(CodeDistance(5)).min_steps(Syndrome(CodeDistance(5))), Error);
    EXPECT_THROW(SyndromeTable::build_min_steps(CodeDistance(3)).value(Syndrome(CodeDistance(3))), Error);
}

TEST(ValueTable, cache_roundtrip_and_guards) {
    std::string path = temp_path("toricq_table_test.bin");
    table().save(path);
    SyndromeTable loaded = SyndromeTable::load(path, 0.95);
    for (uint32_t s = 0; s < static_cast<uint32_t>(SyndromeTable::kStates); s += 13) {
        ASSERT_EQ(loaded.min_steps_packed(s), table().min_steps_packed(s));
        if (table().min_steps_packed(s) >= 0) {
            ASSERT_EQ(loaded.value_packed(s), table().value_packed(s));
        }
    }
    try {
        SyndromeTable::load(path, 0.9);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::VersionMismatch);
    }
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(5000);
        char c = 0x5A;
        f.write(&c, 1);
    }
    try {
        SyndromeTable::load(path, 0.95);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::CorruptFile);
    }
    std::filesystem::remove(path);
}

TEST(RestrictedMcc, reference_chain_classes) {
    for (int d : {5, 7}) {
        int k = (d + 1) / 2;
        // X closes a loop along a column of horizontal edges.
        ChainLine column{Sublattice::Horizontal, false, 2};
        ASSERT_TRUE(x_fallible(column));

        std::vector<Pauli> all_x(k, Pauli::X);
        EXPECT_EQ(mcc_decode_restricted(line_frame(d, column, all_x)), 1.0);

        std::vector<Pauli> one_z = all_x;
        one_z[1] = Pauli::Z;
        EXPECT_EQ(mcc_decode_restricted(line_frame(d, column, one_z)), 0.5);

        std::vector<Pauli> one_y = all_x;
        one_y[0] = Pauli::Y;
        EXPECT_EQ(mcc_decode_restricted(line_frame(d, column, one_y)), 0.5);

        std::vector<Pauli> two_y = all_x;
        two_y[0] = Pauli::Y;
        two_y[k - 1] = Pauli::Y;
        EXPECT_EQ(mcc_decode_restricted(line_frame(d, column, two_y)), 0.0);

        // Same chain on a line where X cannot wind: always succeeds.
        ChainLine row{Sublattice::Horizontal, true, 2};
        EXPECT_EQ(mcc_decode_restricted(line_frame(d, row, all_x)), 0.0);
        // All-Z on a row of horizontal edges is the Z analogue.
        EXPECT_EQ(mcc_decode_restricted(line_frame(d, row, std::vector<Pauli>(k, Pauli::Z))), 1.0);
    }
}

TEST(RestrictedMcc, exhaustive_matches_failing_count) {
    // Summing failure probabilities over every length-k chain on every line
    // gives 4d(1+k)C(d,k).
    int d = 5;
    int k = 3;
    double total = 0;
    for (const ChainLine &line : all_lines(d)) {
        for (uint32_t mask = 0; mask < (1u << d); mask++) {
            if (std::popcount(mask) != k) {
                continue;
            }
            for (int labels = 0; labels < 27; labels++) {
                PauliFrame f{CodeDistance(d)};
                int l = labels;
                for (int t = 0; t < d; t++) {
                    if (mask >> t & 1) {
                        f.apply(line.qubit(t), kActions[l % 3]);
                        l /= 3;
                    }
                }
                total += mcc_decode_restricted(f);
            }
        }
    }
    EXPECT_EQ(total, 4.0 * d * (1 + k) * 10);
}

TEST(RestrictedMcc, rejects_unrestricted_frames) {
    CodeDistance d(5);
    PauliFrame f(d);
    try {
        mcc_decode_restricted(f);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedInput);
    }
    f.apply(H(0, 0), Pauli::X);
    f.apply(H(1, 1), Pauli::X);
    EXPECT_THROW(mcc_decode_restricted(f), Error);
    PauliFrame mixed(d);
    mixed.apply(H(0, 0), Pauli::X);
    mixed.apply(V(0, 1), Pauli::X);
    EXPECT_THROW(restricted_line(mixed), Error);
}

TEST(StepReward, scheme) {
    EXPECT_EQ(step_reward(4, 2), 2.0);
    EXPECT_EQ(step_reward(2, 6), -4.0);
    EXPECT_EQ(step_reward(2, 0), 100.0);
}
