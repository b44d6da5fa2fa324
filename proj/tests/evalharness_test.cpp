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

#include "toricq/evalharness.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "toricq/analytic.hpp"
#include "toricq/error.hpp"

using namespace toricq;

namespace {

QNetwork random_net(int d, uint64_t seed) {
    QNetwork net(QNetworkConfig::desk(d));
    Rng rng(seed);
    net.init_glorot(rng);
    return net;
}

}  // namespace

TEST(Wilson, interval) {
    auto [lo, hi] = wilson_interval(0, 10);
    EXPECT_DOUBLE_EQ(lo, 0.0);
    EXPECT_NEAR(hi, 0.27753, 1e-4);
    std::tie(lo, hi) = wilson_interval(50, 100);
    EXPECT_NEAR(lo, 0.40383, 1e-4);
    EXPECT_NEAR(hi, 0.59617, 1e-4);
    std::tie(lo, hi) = wilson_interval(10, 10);
    EXPECT_NEAR(lo, 0.72247, 1e-4);
    EXPECT_DOUBLE_EQ(hi, 1.0);
    for (int s = 0; s <= 37; s++) {
        std::tie(lo, hi) = wilson_interval(s, 37);
        EXPECT_LE(lo, s / 37.0);
        EXPECT_GE(hi, s / 37.0);
    }
}

TEST(Evaluate, zero_noise_always_succeeds) {
    EvalResult m = evaluate(DecoderSpec::mwpm(), 5, NoiseModel::depolarizing(0.0), 500, 1);
    EXPECT_EQ(m.successes, 500);
    EXPECT_DOUBLE_EQ(m.rate, 1.0);
    EvalResult q = evaluate(DecoderSpec::dqn(random_net(3, 1)), 3, NoiseModel::depolarizing(0.0), 500, 1);
    EXPECT_EQ(q.successes, 500);
    EXPECT_EQ(q.fail_cap, 0);
}

TEST(Evaluate, bookkeeping_and_worker_invariance) {
    NoiseModel m = NoiseModel::depolarizing(0.12);
    EvalResult a = evaluate(DecoderSpec::mwpm(), 5, m, 5000, 42, 1);
    EvalResult b = evaluate(DecoderSpec::mwpm(), 5, m, 5000, 42, 4);
    EXPECT_EQ(a.csv_row(), b.csv_row());
    EXPECT_EQ(a.successes + a.fail_homology + a.fail_cap, a.n);
    EXPECT_EQ(a.fail_cap, 0);
    EXPECT_LE(a.ci_low, a.rate);
    EXPECT_GE(a.ci_high, a.rate);
    EXPECT_EQ(a.model, "depolarizing");

    // An untrained network mostly wanders until the step cap.
    EvalResult q = evaluate(DecoderSpec::dqn(random_net(3, 2), 20), 3, m, 300, 7, 3);
    EXPECT_EQ(q.successes + q.fail_homology + q.fail_cap, q.n);
    EXPECT_GT(q.fail_cap, 0);
    EXPECT_EQ(q.csv_row(), evaluate(DecoderSpec::dqn(random_net(3, 2), 20), 3, m, 300, 7, 1).csv_row());
}

TEST(Evaluate, bitflip_matching_tracks_lowest_order_rate) {
    const double p = 0.01;
    EvalResult r = evaluate(DecoderSpec::mwpm(), 3, NoiseModel::bit_flip(p), 200000, 5, 4);
    double fail = 1 - r.rate;
    double width = r.ci_high - r.ci_low;
    EXPECT_NEAR(fail, analytic::p_l_bitflip(3, p), 3 * width);
}

TEST(Evaluate, rejects_mismatched_decoders) {
    try {
        evaluate(DecoderSpec::dqn(random_net(3, 1)), 5, NoiseModel::depolarizing(0.1), 10, 1);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::CheckpointIncompatible);
    }
    EXPECT_THROW(evaluate(DecoderSpec::mcc_restricted(), 5, NoiseModel::depolarizing(0.1), 10, 1), Error);
}

TEST(Sweep, csv_layout_and_monotonicity) {
    std::ostringstream empty;
    write_csv(empty, sweep(DecoderSpec::mwpm(), 5, NoiseModel::bit_flip(0.1), {}, 100, 1));
    EXPECT_EQ(empty.str(), std::string(kEvalCsvHeader) + "\n");

    std::vector<double> ps = {0.01, 0.05, 0.10, 0.15};
    std::vector<EvalResult> rs = sweep(DecoderSpec::mwpm(), 5, NoiseModel::bit_flip(0.1), ps, 4000, 1, 4);
    ASSERT_EQ(rs.size(), ps.size());
    for (size_t i = 0; i < rs.size(); i++) {
        EXPECT_DOUBLE_EQ(rs[i].p, ps[i]);
        EXPECT_EQ(rs[i].seed, derive_seed(1, i));
        if (i > 0) {
            double w = rs[i].ci_high - rs[i].ci_low + rs[i - 1].ci_high - rs[i - 1].ci_low;
            EXPECT_LE(rs[i].rate, rs[i - 1].rate + w);
        }
    }
    std::ostringstream csv;
    write_csv(csv, rs, {"config {\"d\":5}"});
    std::string text = csv.str();
    EXPECT_EQ(text.rfind("# config", 0), 0u);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 6);
    EXPECT_NE(text.find("\nmwpm,5,bitflip,0.05,"), std::string::npos);
}

TEST(Asymptotic, restricted_mcc_matches_table_value) {
    AsymptoticEstimate e = asymptotic_fail_fraction(DecoderSpec::mcc_restricted(), 5, 0, 0, 4);
    EXPECT_TRUE(e.exhaustive);
    EXPECT_EQ(e.k, 3);
    EXPECT_EQ(e.chains, 4 * 5 * 10 * 27);
    EXPECT_DOUBLE_EQ(e.failing, 800.0);
    EXPECT_NEAR(e.f, 1.51e-3, 0.02 * 1.51e-3);
    EXPECT_NEAR(e.f, e.analytic, 1e-15);
}

TEST(Asymptotic, matching_matches_closed_form) {
    AsymptoticEstimate e = asymptotic_fail_fraction(DecoderSpec::mwpm(), 5, 0, 0, 4);
    EXPECT_DOUBLE_EQ(e.failing, 1600.0);
    EXPECT_NEAR(e.f, 1600.0 / 529200.0, 1e-15);
    EXPECT_NEAR(e.f, analytic::f_mwpm(5), 0.02 * analytic::f_mwpm(5));

    // The sampled estimator is unbiased: within 3 standard errors.
    AsymptoticEstimate s = asymptotic_fail_fraction(DecoderSpec::mwpm(), 5, 9, 20000, 4);
    EXPECT_FALSE(s.exhaustive);
    EXPECT_GT(s.f_stderr, 0);
    EXPECT_NEAR(s.f, e.f, 3 * s.f_stderr);
    EXPECT_EQ(s.to_json(), asymptotic_fail_fraction(DecoderSpec::mwpm(), 5, 9, 20000, 1).to_json());
}

TEST(Asymptotic, rejects_large_distance) {
    try {
        asymptotic_fail_fraction(DecoderSpec::mwpm(), 11);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedDistance);
    }
}

TEST(PairedCompare, self_comparison_and_empty) {
    PairedResult r = paired_compare(DecoderSpec::mwpm(), DecoderSpec::mwpm(), 5, NoiseModel::depolarizing(0.15), 3000,
                                    3, 4);
    EXPECT_EQ(r.only_a, 0);
    EXPECT_EQ(r.only_b, 0);
    EXPECT_EQ(r.both_success + r.both_fail, 3000);
    EXPECT_GT(r.both_fail, 0);
    EXPECT_DOUBLE_EQ(r.p_value, 1.0);
    PairedResult z = paired_compare(DecoderSpec::mwpm(), DecoderSpec::mwpm(), 5, NoiseModel::depolarizing(0.15), 0, 3);
    EXPECT_EQ(z.both_success + z.both_fail + z.only_a + z.only_b, 0);
    EXPECT_TRUE(z.outcomes.empty());
}

TEST(PairedCompare, discordant_counts_match_separate_runs) {
    // Same frames as evaluate() with the same seed, so the marginals agree.
    NoiseModel m = NoiseModel::depolarizing(0.1);
    DecoderSpec q = DecoderSpec::dqn(random_net(3, 5), 10);
    PairedResult r = paired_compare(q, DecoderSpec::mwpm(), 3, m, 600, 8, 2);
    EXPECT_EQ(r.both_success + r.only_a, evaluate(q, 3, m, 600, 8).successes);
    EXPECT_EQ(r.both_success + r.only_b, evaluate(DecoderSpec::mwpm(), 3, m, 600, 8).successes);
    EXPECT_GT(r.only_b, r.only_a);
    EXPECT_GT(r.p_value, 0.5);
}

TEST(Checkpoints, incompatible_distance) {
    namespace fs = std::filesystem;
    std::string path = (fs::temp_directory_path() / "toricq_eval_ckpt.tqc").string();
    CheckpointMeta meta;
    meta.d = 5;
    QNetwork net = random_net(5, 6);
    meta.architecture = net.config().descriptor();
    meta.perspective_convention = kPerspectiveConvention;
    save_checkpoint(path, net, nullptr, meta);
    EXPECT_EQ(DecoderSpec::from_checkpoint(path, 5).net->parameters(), net.parameters());
    try {
        DecoderSpec::from_checkpoint(path, 3);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::CheckpointIncompatible);
        EXPECT_NE(std::string(e.what()).find("d=5"), std::string::npos);
    }
    meta.perspective_convention = "other";
    save_checkpoint(path, net, nullptr, meta);
    EXPECT_THROW(DecoderSpec::from_checkpoint(path, 5), Error);
    fs::remove(path);
}

TEST(Spearman, known_values) {
    EXPECT_DOUBLE_EQ(spearman({1, 2, 3, 4}, {10, 20, 30, 40}), 1.0);
    EXPECT_DOUBLE_EQ(spearman({1, 2, 3, 4}, {4, 3, 2, 1}), -1.0);
    // Monotone transforms do not change ranks.
    EXPECT_DOUBLE_EQ(spearman({0.1, 5, 2, 9}, {std::exp(0.1), std::exp(5.0), std::exp(2.0), std::exp(9.0)}), 1.0);
    // Ties take the average rank: ranks (1.5, 1.5, 3) vs (1, 2, 3).
    EXPECT_NEAR(spearman({1, 1, 2}, {1, 2, 3}), 0.8660254037844386, 1e-12);
    EXPECT_THROW(spearman({1}, {1}), Error);
}

TEST(ValueDiagnostic, compares_against_table) {
    static const SyndromeTable table = SyndromeTable::build(CodeDistance(3));
    QNetwork net = random_net(3, 8);
    std::vector<uint64_t> states;
    Rng rng(4);
    while (states.size() < 30) {
        Syndrome s = compute_syndrome(sample_error(CodeDistance(3), NoiseModel::depolarizing(0.15), rng));
        if (!s.empty()) {
            states.push_back(s.pack());
        }
    }
    ValueDiagnostic v = value_diagnostic(net, table, states);
    ASSERT_EQ(v.exact.size(), states.size());
    for (size_t i = 0; i < states.size(); i++) {
        EXPECT_DOUBLE_EQ(v.exact[i], table.value_packed(static_cast<uint32_t>(states[i])));
        std::vector<QEntry> qv = q_values(net, observation(Syndrome::unpack(CodeDistance(3), states[i])));
        double best = -1e300;
        for (const QEntry &e : qv) {
            for (float q : e.q) {
                best = std::max(best, static_cast<double>(q));
            }
        }
        EXPECT_DOUBLE_EQ(v.predicted[i], best);
    }
    EXPECT_GT(v.near_terminal, 0);

    StepOptimality so = step_optimality(net, table, NoiseModel::depolarizing(0.1), 50, 2);
    EXPECT_EQ(so.n, 50);
    EXPECT_LE(so.minimal, so.cleared);
}
