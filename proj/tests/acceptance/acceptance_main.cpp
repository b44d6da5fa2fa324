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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.
//
//   toricq_acceptance [--steps N] [--workers W] [--work-dir DIR]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "toricq/agent.hpp"
#include "toricq/analytic.hpp"
#include "toricq/evalharness.hpp"
#include "toricq/lattice.hpp"
#include "toricq/matching.hpp"
#include "toricq/mcc_oracle.hpp"
#include "toricq/neural.hpp"
#include "toricq/noise.hpp"
#include "toricq/perspectives.hpp"
#include "toricq/rng.hpp"
#include "toricq/trainer.hpp"

using namespace toricq;
namespace fs = std::filesystem;

namespace {

struct Options {
    int64_t steps = 200000;
    int workers = 1;
    fs::path work_dir = fs::temp_directory_path() / "toricq_acceptance";
};

int g_failures = 0;

void report(int id, bool pass, const std::string &what, const std::string &detail) {
    std::printf("criterion %d: %s  %s | %s\n", id, pass ? "PASS" : "FAIL", what.c_str(), detail.c_str());
    std::fflush(stdout);
    g_failures += pass ? 0 : 1;
}

void note(const std::string &text) {
    std::printf("  note: %s\n", text.c_str());
    std::fflush(stdout);
}

std::string fmt(const char *f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char *f, ...) {
    char buf[1024];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// |value - printed| within one unit of the printed value's last digit.
bool matches_printed(double value, double printed, int sig_digits) {
    double unit = std::pow(10.0, std::floor(std::log10(printed)) - (sig_digits - 1));
    return std::abs(value - printed) <= unit * (1 + 1e-9);
}

// ---------------------------------------------------------------------------

void criterion_1() {
    struct Row {
        int d;
        double derived;
        double printed;
    };
    const Row rows[] = {{5, 1.5117e-3, 1.51e-3}, {7, 2.1195e-5, 2.12e-5}, {9, 2.492e-7, 2.50e-7}};
    bool pass = true;
    std::string detail;
    for (const Row &r : rows) {
        double f = analytic::f_mcc(r.d);
        bool derived_ok = std::abs(f - r.derived) <= 5e-4 * r.derived;
        bool printed_ok = matches_printed(f, r.printed, 3);
        pass = pass && derived_ok && printed_ok;
        detail += fmt("d=%d f=%.4e (printed %.2e, %+.2f%%) ", r.d, f, r.printed, 100 * (f - r.printed) / r.printed);
    }
    report(1, pass, "closed-form restricted-chain fail fractions", detail + "tolerance: one unit in the last printed digit");
}

void criterion_2(int workers) {
    bool pass = true;
    std::string detail;
    for (int d : {5, 7}) {
        AsymptoticEstimate e = asymptotic_fail_fraction(DecoderSpec::mcc_restricted(), d, 0, 0, workers);
        double rel = std::abs(e.f - analytic::f_mcc(d)) / analytic::f_mcc(d);
        pass = pass && e.exhaustive && rel < 0.01;
        detail += fmt("d=%d enumerated %lld chains, failing %.1f, f=%.5e vs %.5e (rel %.1e) ", d,
                      static_cast<long long>(e.chains), e.failing, e.f, analytic::f_mcc(d), rel);
    }
    report(2, pass, "exhaustive minimal-chain enumeration", detail + "tolerance < 1%");
}

void criterion_3(int workers) {
    auto t0 = std::chrono::steady_clock::now();
    const int64_t n = 1000000;
    EvalResult r = evaluate(DecoderSpec::mwpm(), 5, NoiseModel::bit_flip(0.01), n, 2026, workers);
    double fail = 1.0 - r.rate;
    auto [lo, hi] = wilson_interval(n - r.successes, n);
    double half = (hi - lo) / 2;
    double target = analytic::p_l_bitflip(5, 0.01);
    bool mc_ok = std::abs(fail - target) <= 3 * half;

    AsymptoticEstimate e = asymptotic_fail_fraction(DecoderSpec::mwpm(), 5, 0, 0, workers);
    double rel = std::abs(e.f - 3.02e-3) / 3.02e-3;
    bool restricted_ok = rel < 0.02;
    report(3, mc_ok && restricted_ok, "matching decoder asymptotics",
           fmt("bit-flip d=5 p=0.01 n=%lld: fail %.3e, Wilson [%.3e, %.3e], target %.3e, |diff|=%.2f half-widths; "
               "restricted f=%.4e vs 3.02e-3 (rel %.2f%%) [%.0fs]",
               static_cast<long long>(n), fail, lo, hi, target, std::abs(fail - target) / half, e.f, 100 * rel,
               seconds_since(t0)));
}

// Minimum over all (2n-1)!! pairings, enumerated recursively (pair the first
// unpaired defect with every other) and memoized on the unpaired subset.
int64_t enumerate_min_pairing(const std::vector<Cell> &cells, int d) {
    const int n = static_cast<int>(cells.size());
    std::vector<int64_t> memo(size_t{1} << n, -1);
    std::function<int64_t(uint32_t)> best = [&](uint32_t left) -> int64_t {
        if (left == 0) {
            return 0;
        }
        int64_t &m = memo[left];
        if (m >= 0) {
            return m;
        }
        int i = __builtin_ctz(left);
        uint32_t rest = left & ~(1u << i);
        int64_t out = std::numeric_limits<int64_t>::max();
        for (uint32_t r = rest; r != 0; r &= r - 1) {
            int j = __builtin_ctz(r);
            out = std::min(out, toroidal_distance(cells[i], cells[j], d) + best(rest & ~(1u << j)));
        }
        return m = out;
    };
    return best((n == 32 ? 0u : (1u << n)) - 1);
}

void criterion_4() {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(404);
    int discrepancies = 0;
    int cross_checked = 0;
    int largest = 0;
    for (int trial = 0; trial < 1000; trial++) {
        int d = trial % 2 == 0 ? 5 : 7;
        int pairs = 1 + static_cast<int>(rng.below(10));
        std::vector<int> cells(d * d);
        for (int i = 0; i < d * d; i++) {
            cells[i] = i;
        }
        for (int i = d * d - 1; i > 0; i--) {
            std::swap(cells[i], cells[rng.below(static_cast<uint64_t>(i) + 1)]);
        }
        DefectSet set;
        set.species = trial % 3 == 0 ? DefectSpecies::Vertex : DefectSpecies::Plaquette;
        for (int k = 0; k < 2 * pairs; k++) {
            set.positions.push_back(Cell{cells[k] / d, cells[k] % d});
        }
        largest = std::max(largest, 2 * pairs);
        int64_t exact = match_exact(set, d).total_weight;
        int64_t oracle = enumerate_min_pairing(set.positions, d);
        if (static_cast<int>(set.positions.size()) <= kBruteforceLimit) {
            cross_checked++;
            if (match_bruteforce(set, d).total_weight != oracle) {
                discrepancies++;
            }
        }
        if (exact != oracle) {
            discrepancies++;
        }
    }
    report(4, discrepancies == 0, "exact matching against exhaustive pairing search",
           fmt("1000 defect sets, d in {5,7}, up to %d defects (10 pairs); %d discrepancies; %d sets also checked "
               "against plain enumeration [%.1fs]",
               largest, discrepancies, cross_checked, seconds_since(t0)));
}

QNetworkConfig config_of(int d, std::vector<ConvSpec> convs) {
    QNetworkConfig c;
    c.d = d;
    c.convs = std::move(convs);
    return c;
}

double gradient_check(const QNetworkConfig &cfg, uint64_t seed, int batch) {
    Rng rng(seed);
    QNetwork64 net(cfg);
    for (double &p : net.parameters()) {
        p = (2 * rng.uniform() - 1) * 0.5;
    }
    std::vector<double> x(static_cast<size_t>(net.input_size()) * batch);
    for (double &v : x) {
        v = rng.uniform();
    }
    QNetwork64::Mat dout(cfg.outputs, batch);
    for (int i = 0; i < dout.size(); i++) {
        dout.data()[i] = 2 * rng.uniform() - 1;
    }
    QNetwork64::Cache cache;
    net.forward_batch(x.data(), batch, &cache);
    ParamVector<double> g = net.backward(cache, dout);
    const double h = 1e-5;
    double worst = 0;
    for (size_t i = 0; i < net.parameter_count(); i++) {
        double saved = net.parameters()[i];
        net.parameters()[i] = saved + h;
        double up = (net.forward_batch(x.data(), batch).array() * dout.array()).sum();
        net.parameters()[i] = saved - h;
        double down = (net.forward_batch(x.data(), batch).array() * dout.array()).sum();
        net.parameters()[i] = saved;
        double numeric = (up - down) / (2 * h);
        worst = std::max(worst, std::abs(numeric - g[i]) / std::max(1e-6, std::abs(numeric) + std::abs(g[i])));
    }
    return worst;
}

bool periodic_equivariance(int d) {
    Rng rng(55);
    QNetwork net(QNetworkConfig::desk(d));
    net.init_glorot(rng);
    for (float &p : net.parameters()) {
        p += static_cast<float>((2 * rng.uniform() - 1) * 0.3);
    }
    std::vector<float> x(2 * d * d);
    for (float &v : x) {
        v = static_cast<float>(rng.uniform());
    }
    Tensor<float> a = net.first_layer(Tensor<float>{{2, d, d}, x});
    for (int dr = 0; dr < d; dr++) {
        for (int dc = 0; dc < d; dc++) {
            std::vector<float> shifted(x.size());
            for (int c = 0; c < 2; c++) {
                for (int r = 0; r < d; r++) {
                    for (int k = 0; k < d; k++) {
                        shifted[c * d * d + ((r + dr) % d) * d + (k + dc) % d] = x[c * d * d + r * d + k];
                    }
                }
            }
            Tensor<float> b = net.first_layer(Tensor<float>{{2, d, d}, shifted});
            for (int c = 0; c < a.shape[0]; c++) {
                for (int r = 0; r < d; r++) {
                    for (int k = 0; k < d; k++) {
                        if (b.data[c * d * d + ((r + dr) % d) * d + (k + dc) % d] != a.data[c * d * d + r * d + k]) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    return true;
}

void criterion_5() {
    double g1 = gradient_check(config_of(5, {{4, Padding::Periodic}, {3, Padding::Zero}, {3, Padding::Valid}}), 1, 3);
    double g2 = gradient_check(config_of(3, {{3, Padding::Periodic}, {2, Padding::Zero}}), 2, 2);
    double worst = std::max(g1, g2);
    bool eq5 = periodic_equivariance(5);
    bool eq7 = periodic_equivariance(7);
    int64_t formula = QNetworkConfig::large_d5().parameter_count();
    size_t allocated = QNetwork(QNetworkConfig::large_d5()).parameter_count();
    bool pass = worst < 1e-4 && eq5 && eq7 && formula == 899320 && allocated == 899320u;
    report(5, pass, "network gradients, equivariance, parameter count",
           fmt("max relative gradient error %.2e (periodic, zero, valid conv + dense, float64); periodic first layer "
               "equivariant bit-exactly: d=5 %s, d=7 %s; d=5 reference architecture has %lld parameters (expected "
               "899320)",
               worst, eq5 ? "yes" : "no", eq7 ? "yes" : "no", static_cast<long long>(formula)));
}

// ---------------------------------------------------------------------------

struct Trained {
    TrainingConfig config;
    TrainingResult result;
    double seconds = 0;
};

Trained train_reference(const Options &opt) {
    TrainingConfig config;
    config.d = 3;
    config.total_steps = opt.steps;
    config.seed = 1;
    fs::path dir = opt.work_dir / "d3";
    fs::remove_all(dir);
    auto t0 = std::chrono::steady_clock::now();
    Trained t{config, train_to_directory(config, dir.string()), 0};
    t.seconds = seconds_since(t0);
    note(fmt("trained d=3 %s agent for %lld steps in %.0fs (%lld episodes, %lld target syncs); run directory %s",
             t.config.architecture.c_str(), static_cast<long long>(t.result.steps), t.seconds,
             static_cast<long long>(t.result.episodes), static_cast<long long>(t.result.syncs), dir.c_str()));
    return t;
}

// Success rate of maximum-likelihood decoding at d = 3: for each sampled
// error, the probabilities of all 16 logical cosets are summed exactly over
// the stabilizer group, and decoding succeeds when the error's own coset is
// the most likely one.
std::pair<int64_t, int64_t> maximum_likelihood_d3(double p, int64_t n, uint64_t seed) {
    CodeDistance d(3);
    const int nq = d.num_qubits();
    auto mask_of = [&](const std::vector<uint8_t> &bits) {
        uint32_t m = 0;
        for (int i = 0; i < nq; i++) {
            m |= static_cast<uint32_t>(bits[i] != 0) << i;
        }
        return m;
    };
    auto span = [&](bool vertex) {
        std::vector<uint32_t> gens;
        for (int r = 0; r < 3; r++) {
            for (int c = 0; c < 3; c++) {
                uint32_t m = 0;
                for (const Qubit &q : vertex ? vertex_qubits(3, Cell{r, c}) : plaquette_qubits(3, Cell{r, c})) {
                    m ^= 1u << qubit_index(3, q);
                }
                gens.push_back(m);
            }
        }
        gens.pop_back();  // the product of all nine is the identity
        std::vector<uint32_t> out(size_t{1} << gens.size(), 0);
        for (size_t k = 1; k < out.size(); k++) {
            out[k] = out[k & (k - 1)] ^ gens[__builtin_ctzll(k)];
        }
        return out;
    };
    std::vector<uint32_t> sx = span(true);
    std::vector<uint32_t> sz = span(false);
    uint32_t lx[2] = {mask_of(logical_loop(d, Pauli::X, true).xpart()), mask_of(logical_loop(d, Pauli::X, false).xpart())};
    uint32_t lz[2] = {mask_of(logical_loop(d, Pauli::Z, true).zpart()), mask_of(logical_loop(d, Pauli::Z, false).zpart())};
    std::vector<double> weight(nq + 1);
    for (int k = 0; k <= nq; k++) {
        weight[k] = std::pow(p / 3, k) * std::pow(1 - p, nq - k);
    }
    Rng rng(seed, 0);
    NoiseModel model = NoiseModel::depolarizing(p);
    int64_t successes = 0;
    for (int64_t t = 0; t < n; t++) {
        PauliFrame e = sample_error(d, model, rng);
        uint32_t ex = mask_of(e.xpart());
        uint32_t ez = mask_of(e.zpart());
        double best = -1;
        int best_class = -1;
        for (int cls = 0; cls < 16; cls++) {
            uint32_t x = ex ^ ((cls & 1) ? lx[0] : 0) ^ ((cls & 2) ? lx[1] : 0);
            uint32_t z = ez ^ ((cls & 4) ? lz[0] : 0) ^ ((cls & 8) ? lz[1] : 0);
            double total = 0;
            for (uint32_t a : sx) {
                uint32_t xa = x ^ a;
                for (uint32_t b : sz) {
                    total += weight[__builtin_popcount(xa | (z ^ b))];
                }
            }
            if (total > best) {
                best = total;
                best_class = cls;
            }
        }
        successes += best_class == 0 ? 1 : 0;
    }
    return {successes, n};
}

void criterion_6(const Trained &t, const SyndromeTable &table, int workers) {
    DecoderSpec dqn = DecoderSpec::dqn(t.result.policy);
    NoiseModel model = NoiseModel::depolarizing(0.1);
    EvalResult r = evaluate(dqn, 3, model, 10000, 7, workers);
    EvalResult m = evaluate(DecoderSpec::mwpm(), 3, model, 10000, 7, workers);
    StepOptimality s = step_optimality(t.result.policy, table, model, 1000, 8);
    bool a = r.rate >= 0.95;
    bool b = s.fraction() >= 0.90;
    report(6, a && b, "desk-scale learning at d=3, p=0.1",
           fmt("(a) success %.4f [%.4f, %.4f] over 10^4 (needs >= 0.95; matching decoder on the same errors %.4f, "
               "step-limit failures %lld) %s; (b) minimal-step episodes %lld/%lld = %.3f (needs >= 0.90) %s",
               r.rate, r.ci_low, r.ci_high, m.rate, static_cast<long long>(r.fail_cap), a ? "ok" : "missed",
               static_cast<long long>(s.minimal), static_cast<long long>(s.n), s.fraction(), b ? "ok" : "missed"));
    if (!a) {
        auto t0 = std::chrono::steady_clock::now();
        auto [ok, n] = maximum_likelihood_d3(0.1, 10000, 61);
        auto [lo, hi] = wilson_interval(ok, n);
        note(fmt("maximum-likelihood decoding (exact coset sums) at d=3, p=0.1 succeeds %.4f [%.4f, %.4f] on 10^4 "
                 "independent errors, so no decoder reaches 0.95 here [%.0fs]",
                 static_cast<double>(ok) / static_cast<double>(n), lo, hi, seconds_since(t0)));
    }
}

void criterion_7(const Trained &t, int workers) {
    DecoderSpec dqn = DecoderSpec::dqn(t.result.policy);
    NoiseModel model = NoiseModel::depolarizing(0.15);
    PairedResult pr = paired_compare(dqn, DecoderSpec::mwpm(), 3, model, 20000, 15, workers);
    double rate_dqn = static_cast<double>(pr.both_success + pr.only_a) / static_cast<double>(pr.n);
    double rate_mwpm = static_cast<double>(pr.both_success + pr.only_b) / static_cast<double>(pr.n);
    bool d3_ok = rate_dqn >= rate_mwpm - 0.01;
    report(7, d3_ok, "learned decoder against matching at p=0.15",
           fmt("d=3 paired n=%lld: learned %.4f, matching %.4f (diff %+.2f pp, floor -1 pp); only-learned %lld vs "
               "only-matching %lld, one-sided sign test p=%.3g; d=5 budget run not performed (gate reported only)",
               static_cast<long long>(pr.n), rate_dqn, rate_mwpm, 100 * (rate_dqn - rate_mwpm),
               static_cast<long long>(pr.only_a), static_cast<long long>(pr.only_b), pr.p_value));
}

void criterion_8(const Trained &t, const SyndromeTable &table) {
    std::vector<uint64_t> states;
    for (const auto &[packed, count] : t.result.visits) {
        if (packed != 0) {
            states.push_back(packed);
        }
        if (states.size() == 50) {
            break;
        }
    }
    ValueDiagnostic v = value_diagnostic(t.result.policy, table, states);
    bool pass = states.size() == 50 && v.spearman > 0.9 && v.near_terminal > 0 && v.max_error_near_terminal <= 10.0;
    report(8, pass, "value function against exact value iteration",
           fmt("50 most-visited d=3 syndromes: Spearman %.3f (needs > 0.9); %d of them one step from empty, max |V-V*| "
               "there %.2f (needs <= 10)",
               v.spearman, v.near_terminal, v.max_error_near_terminal));

    // Exact values tie at 100 for every state one step from empty, so any
    // prediction that orders those states strictly loses rank correlation.
    std::vector<double> untied = v.exact;
    for (size_t i = 0; i < untied.size(); i++) {
        untied[i] += 1e-9 * static_cast<double>(i);
    }
    note(fmt("%d of these 50 exact values tie at 100; ordering the ties strictly caps the rank correlation at %.3f",
             v.near_terminal, spearman(v.exact, untied)));

    std::vector<uint64_t> deeper;
    for (const auto &[packed, count] : t.result.visits) {
        if (packed != 0 && table.min_steps_packed(static_cast<uint32_t>(packed)) >= 2) {
            deeper.push_back(packed);
        }
        if (deeper.size() == 50) {
            break;
        }
    }
    ValueDiagnostic dv = value_diagnostic(t.result.policy, table, deeper);
    double worst = 0;
    for (size_t i = 0; i < dv.states.size(); i++) {
        worst = std::max(worst, std::abs(dv.predicted[i] - dv.exact[i]));
    }
    note(fmt("50 most-visited states two or more steps from empty: Spearman %.3f, max |V-V*| %.2f", dv.spearman, worst));
}

std::string read_file(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_9(const Options &opt) {
    TrainingConfig c;
    c.d = 3;
    c.total_steps = 3000;
    c.steps_per_epoch = 1000;
    c.target_sync = 250;
    c.metrics_interval = 250;
    c.seed = 99;
    fs::path a = opt.work_dir / "repro_a";
    fs::path b = opt.work_dir / "repro_b";
    fs::remove_all(a);
    fs::remove_all(b);
    train_to_directory(c, a.string());
    train_to_directory(c, b.string());
    bool metrics_same = read_file(a / "metrics.jsonl") == read_file(b / "metrics.jsonl");
    bool ckpt_same = true;
    int files = 0;
    for (const auto &entry : fs::directory_iterator(a / "checkpoints")) {
        files++;
        ckpt_same = ckpt_same && read_file(entry.path()) == read_file(b / "checkpoints" / entry.path().filename());
    }

    Checkpoint ck = load_checkpoint((a / "checkpoints" / "step_0000003000.tqc").string(), 3);
    DecoderSpec dqn = DecoderSpec::dqn(ck.net);
    std::vector<double> ps = {0.05, 0.1, 0.15};
    auto csv = [&](int workers) {
        std::ostringstream out;
        write_csv(out, sweep(dqn, 3, NoiseModel::depolarizing(0.1), ps, 4000, 5, workers));
        write_csv(out, sweep(DecoderSpec::mwpm(), 3, NoiseModel::depolarizing(0.1), ps, 4000, 5, workers));
        return out.str();
    };
    std::string e1 = csv(opt.workers);
    std::string e2 = csv(opt.workers);
    std::string e3 = csv(opt.workers + 2);
    bool eval_same = e1 == e2;
    bool workers_same = e1 == e3;
    report(9, metrics_same && ckpt_same && files > 0 && eval_same, "bit-identical reruns",
           fmt("two 3000-step trainings with seed 99: metrics.jsonl %s, %d checkpoint files %s; two evaluation "
               "sweeps (learned + matching, 3 rates x 4000) %s; with %d workers instead of %d: %s",
               metrics_same ? "identical" : "DIFFER", files, ckpt_same ? "identical" : "DIFFER",
               eval_same ? "identical" : "DIFFER", opt.workers + 2, opt.workers, workers_same ? "identical" : "DIFFER"));
}

void single_qubit_errors(const Trained &t) {
    // Every single-qubit error should be undone in one step.
    int one_step = 0;
    int total = 0;
    CodeDistance d(3);
    for (int q = 0; q < d.num_qubits(); q++) {
        for (Pauli op : kActions) {
            PauliFrame e(d);
            e.apply_index(q, op);
            DecodeResult r = decode_episode(t.result.policy, compute_syndrome(e), 75);
            bool ok = r.trace.outcome == EpisodeOutcome::Cleared && r.trace.steps.size() == 1 &&
                      !is_logical_failure(homology_class(e ^ r.correction));
            one_step += ok ? 1 : 0;
            total++;
        }
    }
    note(fmt("single-qubit errors corrected in exactly one step: %d/%d", one_step, total));
}

Options parse(int argc, char **argv) {
    Options o;
    for (int i = 1; i < argc; i++) {
        std::string a = argv[i];
        auto next = [&]() -> std::string {
            if (i + 1 >= argc) {
                std::fprintf(stderr, "missing value for %s\n", a.c_str());
                std::exit(2);
            }
            return argv[++i];
        };
        if (a == "--steps") {
            o.steps = std::stoll(next());
        } else if (a == "--workers") {
            o.workers = std::max(1, std::stoi(next()));
        } else if (a == "--work-dir") {
            o.work_dir = next();
        } else {
            std::fprintf(stderr, "usage: %s [--steps N] [--workers W] [--work-dir DIR]\n", argv[0]);
            std::exit(2);
        }
    }
    return o;
}

}  // namespace

int main(int argc, char **argv) {
    Options opt = parse(argc, argv);
    fs::create_directories(opt.work_dir);
    auto t0 = std::chrono::steady_clock::now();

    criterion_1();
    criterion_2(opt.workers);
    criterion_3(opt.workers);
    criterion_4();
    criterion_5();

    fs::path table_cache = opt.work_dir / "d3_values.bin";
    SyndromeTable table = SyndromeTable::load_or_build(table_cache.string(), 0.95);
    Trained t = train_reference(opt);
    single_qubit_errors(t);
    criterion_6(t, table, opt.workers);
    criterion_7(t, opt.workers);
    criterion_8(t, table);
    criterion_9(opt);

    std::printf("%d of 9 criteria passed [%.0fs]\n", 9 - g_failures, seconds_since(t0));
    return g_failures == 0 ? 0 : 1;
}
