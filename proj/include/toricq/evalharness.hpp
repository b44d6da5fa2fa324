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

#ifndef TORICQ_EVALHARNESS_HPP
#define TORICQ_EVALHARNESS_HPP

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "toricq/agent.hpp"
#include "toricq/lattice.hpp"
#include "toricq/mcc_oracle.hpp"
#include "toricq/neural.hpp"
#include "toricq/noise.hpp"

namespace toricq {

enum class DecoderKind { Dqn, Mwpm, MccRestricted };

struct DecoderSpec {
    DecoderKind kind = DecoderKind::Mwpm;
    std::shared_ptr<const QNetwork> net;
    int cap = 75;

    static DecoderSpec mwpm();
    static DecoderSpec mcc_restricted();
    static DecoderSpec dqn(QNetwork net, int cap = 75);
    // Throws CheckpointIncompatible when the stored distance, perspective
    // convention or architecture does not match; load errors propagate.
    static DecoderSpec from_checkpoint(const std::string &path, int d, int cap = 75);

    // "mwpm", "mcc" or "dqn".
    std::string id() const;
};

struct DecodeOutcome {
    bool success = false;
    bool step_limit = false;
    int steps = 0;
};

// Decodes the syndrome of `error` and classifies the residual. MCC-restricted
// decoding is a coin-flip expectation, not a single outcome, so it is
// rejected here with UnsupportedInput.
DecodeOutcome decode_and_check(const DecoderSpec &decoder, const PauliFrame &error);

// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(int64_t successes, int64_t n);

struct EvalResult {
    std::string decoder;
    int d = 0;
    std::string model;
    double p = 0;
    double p_rel = 0;
    int64_t n = 0;
    int64_t successes = 0;
    int64_t fail_homology = 0;
    int64_t fail_cap = 0;
    double rate = 0;
    double ci_low = 0;
    double ci_high = 0;
    uint64_t seed = 0;

    std::string csv_row() const;
    std::string to_json() const;
};

extern const char *const kEvalCsvHeader;

// Samples are split into fixed blocks, block b drawing from stream (seed, b),
// so the result does not depend on `workers`.
EvalResult evaluate(const DecoderSpec &decoder, int d, const NoiseModel &model, int64_t n, uint64_t seed,
                    int workers = 1);

// One evaluate() per rate, with seed derive_seed(seed, index).
std::vector<EvalResult> sweep(const DecoderSpec &decoder, int d, const NoiseModel &model,
                              const std::vector<double> &p_list, int64_t n, uint64_t seed, int workers = 1);

// Header, then one row per result. `provenance` lines are written first,
// each prefixed by "# ".
void write_csv(std::ostream &out, const std::vector<EvalResult> &results,
               const std::vector<std::string> &provenance = {});

struct AsymptoticEstimate {
    std::string decoder;
    int d = 0;
    int k = 0;
    bool exhaustive = false;
    // Chains examined and their (expected) failing count.
    int64_t chains = 0;
    double failing = 0;
    double restricted_fail_fraction = 0;
    // restricted population / all length-k chains, exact.
    double restricted_share = 0;
    double f = 0;
    // Standard error of f (0 when exhaustive).
    double f_stderr = 0;
    // Closed form for MCC and MWPM, 0 for DQN.
    double analytic = 0;

    std::string to_json() const;
};

// Logical fail fraction among all length-ceil(d/2) chains, from the chains
// confined to one row or column. With n_samples == 0 every such chain is
// enumerated; otherwise n_samples chains are drawn uniformly. Throws
// UnsupportedDistance when exhaustive enumeration is infeasible (d > 9).
AsymptoticEstimate asymptotic_fail_fraction(const DecoderSpec &decoder, int d, uint64_t seed = 0,
                                            int64_t n_samples = 0, int workers = 1);

struct PairedResult {
    std::string decoder_a;
    std::string decoder_b;
    int64_t n = 0;
    int64_t both_success = 0;
    int64_t only_a = 0;
    int64_t only_b = 0;
    int64_t both_fail = 0;
    // One-sided exact sign test of only_a > only_b.
    double p_value = 1;
    // Per sample: bit 0 set if A succeeded, bit 1 if B succeeded.
    std::vector<uint8_t> outcomes;

    std::string to_json() const;
};

// Both decoders see the same error frames.
PairedResult paired_compare(const DecoderSpec &a, const DecoderSpec &b, int d, const NoiseModel &model, int64_t n,
                            uint64_t seed, int workers = 1);

struct StepOptimality {
    int64_t n = 0;
    int64_t minimal = 0;
    int64_t cleared = 0;
    double fraction() const {
        return n ? static_cast<double>(minimal) / static_cast<double>(n) : 0.0;
    }
};

// Greedy episodes on n nonempty d = 3 syndromes; counts those cleared in
// exactly the oracle's minimal number of steps.
StepOptimality step_optimality(const QNetwork &net, const SyndromeTable &table, const NoiseModel &model, int64_t n,
                               uint64_t seed);

struct ValueDiagnostic {
    std::vector<uint64_t> states;
    std::vector<double> predicted;
    std::vector<double> exact;
    double spearman = 0;
    // Largest |predicted - exact| over states one step from empty.
    double max_error_near_terminal = 0;
    int near_terminal = 0;
};

// Network value max_{P,a} Q(P, a) against the exact value table on packed
// d = 3 syndromes.
ValueDiagnostic value_diagnostic(const QNetwork &net, const SyndromeTable &table, const std::vector<uint64_t> &states);

// Rank correlation with average ranks for ties.
double spearman(const std::vector<double> &a, const std::vector<double> &b);

}  // namespace toricq

#endif
