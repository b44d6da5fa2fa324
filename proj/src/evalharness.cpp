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

#include <algorithm>
#include <atomic>
#include <boost/math/distributions/binomial.hpp>
#include <cmath>
#include <cstdio>
#include <functional>
#include <nlohmann/json.hpp>
#include <numeric>
#include <thread>

#include "toricq/analytic.hpp"
#include "toricq/error.hpp"
#include "toricq/matching.hpp"
#include "toricq/perspectives.hpp"

namespace toricq {

using ojson = nlohmann::ordered_json;

namespace {

constexpr int64_t kBlock = 1024;

// Runs body(block) for blocks 0..blocks-1 on up to `workers` threads.
void for_each_block(int64_t blocks, int workers, const std::function<void(int64_t)> &body) {
    int threads = static_cast<int>(std::max<int64_t>(1, std::min<int64_t>(workers, blocks)));
    if (threads <= 1) {
        for (int64_t b = 0; b < blocks; b++) {
            body(b);
        }
        return;
    }
    std::atomic<int64_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; t++) {
        pool.emplace_back([&, t] {
            (void)t;
            for (;;) {
                int64_t b = next.fetch_add(1);
                if (b >= blocks || failed.load()) {
                    return;
                }
                try {
                    body(b);
                } catch (...) {
                    if (!failed.exchange(true)) {
                        failure = std::current_exception();
                    }
                    return;
                }
            }
        });
    }
    for (std::thread &th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

DecoderSpec DecoderSpec::mwpm() {
    return DecoderSpec{};
}

DecoderSpec DecoderSpec::mcc_restricted() {
    DecoderSpec s;
    s.kind = DecoderKind::MccRestricted;
    return s;
}

DecoderSpec DecoderSpec::dqn(QNetwork net, int cap) {
    DecoderSpec s;
    s.kind = DecoderKind::Dqn;
    s.net = std::make_shared<const QNetwork>(std::move(net));
    s.cap = cap;
    return s;
}

DecoderSpec DecoderSpec::from_checkpoint(const std::string &path, int d, int cap) {
    Checkpoint ck = load_checkpoint(path);
    auto incompatible = [&](const std::string &why) {
        throw Error(ErrorCode::CheckpointIncompatible, path + ": " + why + " (stored d=" + std::to_string(ck.meta.d) +
                                                           ", architecture " + ck.meta.architecture + ")");
    };
    if (ck.meta.d != d) {
        incompatible("checkpoint is for d=" + std::to_string(ck.meta.d) + ", requested d=" + std::to_string(d));
    }
    if (ck.meta.perspective_convention != kPerspectiveConvention) {
        incompatible("perspective convention \"" + ck.meta.perspective_convention + "\" differs from \"" +
                     kPerspectiveConvention + "\"");
    }
    if (ck.meta.architecture != ck.net.config().descriptor() || ck.net.config().outputs != 3) {
        incompatible("stored architecture does not describe the stored network " + ck.net.config().descriptor());
    }
    return dqn(std::move(ck.net), cap);
}

std::string DecoderSpec::id() const {
    switch (kind) {
        case DecoderKind::Dqn:
            return "dqn";
        case DecoderKind::Mwpm:
            return "mwpm";
        default:
            return "mcc";
    }
}

DecodeOutcome decode_and_check(const DecoderSpec &decoder, const PauliFrame &error) {
    DecodeOutcome out;
    Syndrome s = compute_syndrome(error);
    PauliFrame correction(CodeDistance(error.distance()));
    if (decoder.kind == DecoderKind::Mwpm) {
        correction = decode_mwpm(s);
    } else if (decoder.kind == DecoderKind::Dqn) {
        if (!decoder.net) {
            throw Error(ErrorCode::InvalidArgument, "DQN decoder without a network");
        }
        DecodeResult r = decode_episode(*decoder.net, s, decoder.cap);
        out.steps = static_cast<int>(r.trace.steps.size());
        if (r.trace.outcome == EpisodeOutcome::StepLimit) {
            out.step_limit = true;
            return out;
        }
        correction = std::move(r.correction);
    } else {
        throw Error(ErrorCode::UnsupportedInput, "the restricted MCC decoder only handles single row/column chains");
    }
    // homology_class throws if the residual still has defects.
    out.success = !is_logical_failure(homology_class(error ^ correction));
    return out;
}

std::pair<double, double> wilson_interval(int64_t successes, int64_t n) {
    if (n <= 0) {
        return {0.0, 1.0};
    }
    const double z = 1.959963984540054;
    const double nn = static_cast<double>(n);
    const double ph = static_cast<double>(successes) / nn;
    const double denom = 1 + z * z / nn;
    const double centre = (ph + z * z / (2 * nn)) / denom;
    const double half = z / denom * std::sqrt(ph * (1 - ph) / nn + z * z / (4 * nn * nn));
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

const char *const kEvalCsvHeader = "decoder,d,model,p,p_rel,n,successes,fail_homology,fail_cap,rate,ci_low,ci_high,seed";

std::string EvalResult::csv_row() const {
    return decoder + "," + std::to_string(d) + "," + model + "," + fmt(p) + "," + fmt(p_rel) + "," +
           std::to_string(n) + "," + std::to_string(successes) + "," + std::to_string(fail_homology) + "," +
           std::to_string(fail_cap) + "," + fmt(rate) + "," + fmt(ci_low) + "," + fmt(ci_high) + "," +
           std::to_string(seed);
}

std::string EvalResult::to_json() const {
    ojson j;
    j["decoder"] = decoder;
    j["d"] = d;
    j["model"] = model;
    j["p"] = p;
    j["p_rel"] = p_rel;
    j["n"] = n;
    j["successes"] = successes;
    j["fail_homology"] = fail_homology;
    j["fail_cap"] = fail_cap;
    j["rate"] = rate;
    j["ci_low"] = ci_low;
    j["ci_high"] = ci_high;
    j["seed"] = seed;
    return j.dump();
}

EvalResult evaluate(const DecoderSpec &decoder, int d, const NoiseModel &model, int64_t n, uint64_t seed,
                    int workers) {
    if (n < 0) {
        throw Error(ErrorCode::InvalidArgument, "sample count must be non-negative");
    }
    if (decoder.kind == DecoderKind::MccRestricted) {
        throw Error(ErrorCode::UnsupportedInput, "the restricted MCC decoder cannot decode general noise");
    }
    if (decoder.kind == DecoderKind::Dqn && decoder.net && decoder.net->config().d != d) {
        throw Error(ErrorCode::CheckpointIncompatible, "network " + decoder.net->config().descriptor() +
                                                           " cannot decode d=" + std::to_string(d));
    }
    CodeDistance cd(d);
    const int64_t blocks = (n + kBlock - 1) / kBlock;
    struct Tally {
        int64_t ok = 0;
        int64_t homology = 0;
        int64_t cap = 0;
    };
    std::vector<Tally> tallies(blocks);
    for_each_block(blocks, workers, [&](int64_t b) {
        Rng rng(seed, static_cast<uint64_t>(b));
        int64_t count = std::min(kBlock, n - b * kBlock);
        Tally t;
        for (int64_t k = 0; k < count; k++) {
            DecodeOutcome o = decode_and_check(decoder, sample_error(cd, model, rng));
            if (o.step_limit) {
                t.cap++;
            } else if (o.success) {
                t.ok++;
            } else {
                t.homology++;
            }
        }
        tallies[b] = t;
    });
    EvalResult r;
    r.decoder = decoder.id();
    r.d = d;
    r.model = model.name();
    r.p = model.p();
    r.p_rel = model.p_rel();
    r.n = n;
    r.seed = seed;
    for (const Tally &t : tallies) {
        r.successes += t.ok;
        r.fail_homology += t.homology;
        r.fail_cap += t.cap;
    }
    r.rate = n ? static_cast<double>(r.successes) / static_cast<double>(n) : 0.0;
    std::tie(r.ci_low, r.ci_high) = wilson_interval(r.successes, n);
    return r;
}

std::vector<EvalResult> sweep(const DecoderSpec &decoder, int d, const NoiseModel &model,
                              const std::vector<double> &p_list, int64_t n, uint64_t seed, int workers) {
    std::vector<EvalResult> out;
    for (size_t i = 0; i < p_list.size(); i++) {
        out.push_back(evaluate(decoder, d, model.with_p(p_list[i]), n, derive_seed(seed, i), workers));
    }
    return out;
}

void write_csv(std::ostream &out, const std::vector<EvalResult> &results, const std::vector<std::string> &provenance) {
    for (const std::string &line : provenance) {
        out << "# " << line << '\n';
    }
    out << kEvalCsvHeader << '\n';
    for (const EvalResult &r : results) {
        out << r.csv_row() << '\n';
    }
}

std::string AsymptoticEstimate::to_json() const {
    ojson j;
    j["decoder"] = decoder;
    j["d"] = d;
    j["k"] = k;
    j["exhaustive"] = exhaustive;
    j["chains"] = chains;
    j["failing"] = failing;
    j["restricted_fail_fraction"] = restricted_fail_fraction;
    j["restricted_share"] = restricted_share;
    j["f"] = f;
    j["f_stderr"] = f_stderr;
    j["analytic"] = analytic;
    return j.dump();
}

namespace {

// Expected failure of one restricted chain: 0 or 1 for deterministic
// decoders, a coin-flip fraction for MCC.
double chain_failure(const DecoderSpec &decoder, const PauliFrame &chain) {
    if (decoder.kind == DecoderKind::MccRestricted) {
        auto [failing, total] = mcc_restricted_counts(chain);
        return static_cast<double>(failing) / static_cast<double>(total);
    }
    return decode_and_check(decoder, chain).success ? 0.0 : 1.0;
}

}  // namespace

AsymptoticEstimate asymptotic_fail_fraction(const DecoderSpec &decoder, int d, uint64_t seed, int64_t n_samples,
                                            int workers) {
    if (d > 9) {
        throw Error(ErrorCode::UnsupportedDistance, "restricted chain enumeration supports d <= 9");
    }
    CodeDistance cd(d);
    if (decoder.kind == DecoderKind::Dqn && (!decoder.net || decoder.net->config().d != d)) {
        throw Error(ErrorCode::CheckpointIncompatible, "network does not match d=" + std::to_string(d));
    }
    const int k = (d + 1) / 2;
    AsymptoticEstimate est;
    est.decoder = decoder.id();
    est.d = d;
    est.k = k;
    analytic::Rational share(analytic::restricted_chain_population(d), analytic::chain_population(d));
    est.restricted_share = static_cast<double>(share);
    if (decoder.kind == DecoderKind::MccRestricted) {
        est.analytic = analytic::f_mcc(d);
    } else if (decoder.kind == DecoderKind::Mwpm) {
        est.analytic = analytic::f_mwpm(d);
    }

    if (n_samples <= 0) {
        est.exhaustive = true;
        std::vector<ChainLine> lines = all_lines(d);
        std::vector<std::vector<int>> subsets;
        for (uint32_t mask = 0; mask < (1u << d); mask++) {
            if (std::popcount(mask) == k) {
                std::vector<int> pos;
                for (int t = 0; t < d; t++) {
                    if (mask >> t & 1) {
                        pos.push_back(t);
                    }
                }
                subsets.push_back(pos);
            }
        }
        int types = 1;
        for (int i = 0; i < k; i++) {
            types *= 3;
        }
        std::vector<double> per_line(lines.size(), 0.0);
        for_each_block(static_cast<int64_t>(lines.size()), workers, [&](int64_t li) {
            double fail = 0;
            for (const std::vector<int> &pos : subsets) {
                for (int code = 0; code < types; code++) {
                    PauliFrame chain(cd);
                    int c = code;
                    for (int t : pos) {
                        chain.apply(lines[li].qubit(t), kActions[c % 3]);
                        c /= 3;
                    }
                    fail += chain_failure(decoder, chain);
                }
            }
            per_line[li] = fail;
        });
        est.chains = static_cast<int64_t>(lines.size() * subsets.size()) * types;
        // Summed in line order so the total is independent of workers.
        for (double f : per_line) {
            est.failing += f;
        }
        est.restricted_fail_fraction = est.failing / static_cast<double>(est.chains);
        est.f = est.restricted_fail_fraction * est.restricted_share;
        return est;
    }

    const int64_t blocks = (n_samples + kBlock - 1) / kBlock;
    std::vector<std::pair<double, double>> sums(blocks);
    const std::vector<Pauli> all_types = {Pauli::X, Pauli::Y, Pauli::Z};
    for_each_block(blocks, workers, [&](int64_t b) {
        Rng rng(seed, static_cast<uint64_t>(b));
        int64_t count = std::min(kBlock, n_samples - b * kBlock);
        double s = 0;
        double s2 = 0;
        for (int64_t i = 0; i < count; i++) {
            double f = chain_failure(decoder, sample_row_column_chain(cd, k, all_types, rng));
            s += f;
            s2 += f * f;
        }
        sums[b] = {s, s2};
    });
    double s = 0;
    double s2 = 0;
    for (auto [a, b] : sums) {
        s += a;
        s2 += b;
    }
    const double nn = static_cast<double>(n_samples);
    est.chains = n_samples;
    est.failing = s;
    est.restricted_fail_fraction = s / nn;
    double var = n_samples > 1 ? std::max(0.0, (s2 - s * s / nn) / (nn - 1)) : 0.0;
    est.f = est.restricted_fail_fraction * est.restricted_share;
    est.f_stderr = est.restricted_share * std::sqrt(var / nn);
    return est;
}

std::string PairedResult::to_json() const {
    ojson j;
    j["decoder_a"] = decoder_a;
    j["decoder_b"] = decoder_b;
    j["n"] = n;
    j["both_success"] = both_success;
    j["only_a"] = only_a;
    j["only_b"] = only_b;
    j["both_fail"] = both_fail;
    j["p_value"] = p_value;
    return j.dump();
}

PairedResult paired_compare(const DecoderSpec &a, const DecoderSpec &b, int d, const NoiseModel &model, int64_t n,
                            uint64_t seed, int workers) {
    if (n < 0) {
        throw Error(ErrorCode::InvalidArgument, "sample count must be non-negative");
    }
    CodeDistance cd(d);
    PairedResult r;
    r.decoder_a = a.id();
    r.decoder_b = b.id();
    r.n = n;
    r.outcomes.assign(n, 0);
    const int64_t blocks = (n + kBlock - 1) / kBlock;
    for_each_block(blocks, workers, [&](int64_t blk) {
        Rng rng(seed, static_cast<uint64_t>(blk));
        int64_t count = std::min(kBlock, n - blk * kBlock);
        for (int64_t i = 0; i < count; i++) {
            PauliFrame e = sample_error(cd, model, rng);
            uint8_t code = static_cast<uint8_t>(decode_and_check(a, e).success ? 1 : 0);
            code |= static_cast<uint8_t>(decode_and_check(b, e).success ? 2 : 0);
            r.outcomes[blk * kBlock + i] = code;
        }
    });
    for (uint8_t code : r.outcomes) {
        r.both_success += code == 3;
        r.only_a += code == 1;
        r.only_b += code == 2;
        r.both_fail += code == 0;
    }
    const int64_t discordant = r.only_a + r.only_b;
    if (discordant > 0 && r.only_a > 0) {
        boost::math::binomial_distribution<double> dist(static_cast<double>(discordant), 0.5);
        r.p_value = boost::math::cdf(boost::math::complement(dist, static_cast<double>(r.only_a - 1)));
    }
    return r;
}

StepOptimality step_optimality(const QNetwork &net, const SyndromeTable &table, const NoiseModel &model, int64_t n,
                               uint64_t seed) {
    CodeDistance cd(SyndromeTable::kDistance);
    if (net.config().d != SyndromeTable::kDistance) {
        throw Error(ErrorCode::CheckpointIncompatible, "step optimality needs a d=3 network");
    }
    Rng rng(seed);
    StepOptimality out;
    while (out.n < n) {
        Syndrome s = compute_syndrome(sample_error(cd, model, rng));
        if (s.empty()) {
            continue;
        }
        out.n++;
        DecodeResult r = decode_episode(net, s);
        if (r.trace.outcome == EpisodeOutcome::Cleared) {
            out.cleared++;
            if (static_cast<int>(r.trace.steps.size()) == table.min_steps(s)) {
                out.minimal++;
            }
        }
    }
    return out;
}

namespace {

std::vector<double> average_ranks(const std::vector<double> &v) {
    std::vector<size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size());
    size_t i = 0;
    while (i < idx.size()) {
        size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) {
            j++;
        }
        double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (size_t t = i; t <= j; t++) {
            rank[idx[t]] = r;
        }
        i = j + 1;
    }
    return rank;
}

}  // namespace

double spearman(const std::vector<double> &a, const std::vector<double> &b) {
    if (a.size() != b.size() || a.size() < 2) {
        throw Error(ErrorCode::ShapeMismatch, "rank correlation needs two equal-length samples of size >= 2");
    }
    std::vector<double> ra = average_ranks(a);
    std::vector<double> rb = average_ranks(b);
    const double n = static_cast<double>(a.size());
    double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double sab = 0;
    double saa = 0;
    double sbb = 0;
    for (size_t i = 0; i < ra.size(); i++) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    if (saa == 0 || sbb == 0) {
        return 0.0;
    }
    return sab / std::sqrt(saa * sbb);
}

ValueDiagnostic value_diagnostic(const QNetwork &net, const SyndromeTable &table, const std::vector<uint64_t> &states) {
    if (net.config().d != SyndromeTable::kDistance) {
        throw Error(ErrorCode::CheckpointIncompatible, "value diagnostic needs a d=3 network");
    }
    ValueDiagnostic diag;
    CodeDistance cd(SyndromeTable::kDistance);
    for (uint64_t packed : states) {
        Syndrome s = Syndrome::unpack(cd, packed);
        double v = 0;
        if (!s.empty()) {
            v = -std::numeric_limits<double>::infinity();
            for (const QEntry &e : q_values(net, observation(s))) {
                for (float q : e.q) {
                    v = std::max(v, static_cast<double>(q));
                }
            }
        }
        double exact = table.value_packed(static_cast<uint32_t>(packed));
        diag.states.push_back(packed);
        diag.predicted.push_back(v);
        diag.exact.push_back(exact);
        if (table.min_steps_packed(static_cast<uint32_t>(packed)) == 1) {
            diag.near_terminal++;
            diag.max_error_near_terminal = std::max(diag.max_error_near_terminal, std::abs(v - exact));
        }
    }
    if (diag.states.size() >= 2) {
        diag.spearman = spearman(diag.predicted, diag.exact);
    }
    return diag;
}

}  // namespace toricq
