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

#ifndef TORICQ_MCC_ORACLE_HPP
#define TORICQ_MCC_ORACLE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "toricq/lattice.hpp"
#include "toricq/noise.hpp"

namespace toricq {

// Version of the reward scheme baked into value tables: 100 on the step that
// clears the syndrome, otherwise the drop in defect count.
constexpr uint32_t kRewardSchemeVersion = 1;
constexpr double kTerminalReward = 100.0;

double step_reward(int defects_before, int defects_after);

struct Action {
    Qubit qubit;
    Pauli op = Pauli::X;
    bool operator==(const Action &) const = default;
};

// Exact shortest-step and optimal-value tables over every d = 3 syndrome.
// Actions are X, Y or Z on a qubit bordering at least one defect.
class SyndromeTable {
   public:
    static constexpr int kDistance = 3;
    static constexpr int kStates = 1 << 18;

    // Throws UnsupportedDistance unless d == 3.
    static SyndromeTable build_min_steps(CodeDistance d);
    // Builds both tables; value iteration runs until the sup-norm change is
    // below `tolerance`.
    static SyndromeTable build(CodeDistance d, double gamma = 0.95, double tolerance = 1e-10);

    // -1 for syndromes that no sequence of legal actions clears (odd
    // defect counts).
    int min_steps(const Syndrome &s) const;
    int min_steps_packed(uint32_t packed) const {
        return steps_[packed];
    }
    // Throws MissingCache if the table was built without values.
    double value(const Syndrome &s) const;
    double value_packed(uint32_t packed) const;
    bool has_values() const noexcept {
        return !values_.empty();
    }
    double gamma() const noexcept {
        return gamma_;
    }

    // Legal actions in (qubit index, X < Y < Z) order.
    static std::vector<Action> legal_actions(const Syndrome &s);
    // Legal actions that lead to a syndrome one step closer to empty.
    std::vector<Action> shortest_actions(const Syndrome &s) const;
    // max over legal actions of r + gamma V(s'); 0 for the empty syndrome.
    double bellman_backup(const Syndrome &s) const;

    // Binary cache keyed by (d, gamma, reward scheme version), guarded by a
    // CRC-32. Loading a file with a different key throws VersionMismatch; a
    // damaged file throws CorruptFile.
    void save(const std::string &path) const;
    static SyndromeTable load(const std::string &path, double gamma);
    // Loads `path` if it holds a matching table, otherwise builds and saves.
    static SyndromeTable load_or_build(const std::string &path, double gamma = 0.95);

   private:
    SyndromeTable() = default;
    void run_value_iteration(double tolerance);

    double gamma_ = 0;
    std::vector<int8_t> steps_;
    std::vector<double> values_;
};

// Finds the unique row or column holding every nontrivial site of `frame`.
// Throws UnsupportedInput when the support is empty, a single qubit, or not
// collinear.
ChainLine restricted_line(const PauliFrame &frame);

// Minimal-correction-chain decoding of an error confined to one row or
// column. Every correction supported on that line that reproduces the
// syndrome is considered; among those with the fewest nontrivial sites the
// fraction that leaves a logical operator is returned (ties are settled by a
// fair coin, so the result is 0, 1/2 or 1 for the chains of interest).
double mcc_decode_restricted(const PauliFrame &frame);

// Same, with the result as an exact fraction (failing, total) over the
// minimal corrections.
std::pair<int, int> mcc_restricted_counts(const PauliFrame &frame);

}  // namespace toricq

#endif
