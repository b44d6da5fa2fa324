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

#include "toricq/toricq.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "toricq/agent.hpp"
#include "toricq/analytic.hpp"
#include "toricq/error.hpp"
#include "toricq/evalharness.hpp"
#include "toricq/lattice.hpp"
#include "toricq/neural.hpp"
#include "toricq/noise.hpp"
#include "toricq/rng.hpp"
#include "toricq/trainer.hpp"

struct toricq_network {
    std::shared_ptr<const toricq::QNetwork> net;
    toricq::CheckpointMeta meta;
    std::string path;
};

namespace {

using json = nlohmann::ordered_json;
using namespace toricq;

thread_local std::string g_last_error;

int fail(int status, const std::string &message) {
    g_last_error = message;
    return status;
}

template <typename F>
int guarded(F &&body) {
    try {
        body();
        g_last_error.clear();
        return TORICQ_OK;
    } catch (const Error &e) {
        return fail(static_cast<int>(e.code()), e.what());
    } catch (const nlohmann::json::exception &e) {
        return fail(TORICQ_ERR_INVALID_ARGUMENT, std::string("InvalidArgument: ") + e.what());
    } catch (const std::bad_alloc &) {
        return fail(TORICQ_ERR_INTERNAL, "Internal: out of memory");
    } catch (const std::exception &e) {
        return fail(TORICQ_ERR_INTERNAL, std::string("Internal: ") + e.what());
    } catch (...) {
        return fail(TORICQ_ERR_INTERNAL, "Internal: unknown exception");
    }
}

void require(bool ok, const std::string &what) {
    if (!ok) {
        throw Error(ErrorCode::InvalidArgument, what);
    }
}

char *dup_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void emit(char **out, const std::string &s) {
    require(out != nullptr, "output pointer is null");
    *out = dup_string(s);
}

DecoderSpec make_decoder(toricq_decoder kind, const toricq_network *net, int d) {
    switch (kind) {
        case TORICQ_DECODER_MWPM:
            return DecoderSpec::mwpm();
        case TORICQ_DECODER_MCC:
            return DecoderSpec::mcc_restricted();
        case TORICQ_DECODER_DQN: {
            require(net != nullptr, "the dqn decoder needs a network");
            if (net->meta.d != d) {
                throw Error(ErrorCode::CheckpointIncompatible,
                            "network is for d=" + std::to_string(net->meta.d) + ", requested d=" + std::to_string(d));
            }
            DecoderSpec spec;
            spec.kind = DecoderKind::Dqn;
            spec.net = net->net;
            return spec;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown decoder " + std::to_string(static_cast<int>(kind)));
}

NoiseModel make_model(const char *model, double p, double p_rel) {
    require(model != nullptr, "noise model name is null");
    return NoiseModel::from_name(model, p, p_rel);
}

// Reads two d x d arrays of 0/1 named "vertex" and "plaquette".
Syndrome parse_syndrome(const std::string &text, int d) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(ErrorCode::InvalidArgument, std::string("syndrome is not valid JSON: ") + e.what());
    }
    require(j.is_object(), "syndrome must be a JSON object");
    for (const auto &[key, _] : j.items()) {
        require(key == "vertex" || key == "plaquette", "unknown syndrome key \"" + key + "\"");
    }
    Syndrome s{CodeDistance(d)};
    for (const char *name : {"vertex", "plaquette"}) {
        require(j.contains(name), std::string("syndrome is missing \"") + name + "\"");
        const json &grid = j.at(name);
        require(grid.is_array() && static_cast<int>(grid.size()) == d,
                std::string("\"") + name + "\" must have " + std::to_string(d) + " rows");
        for (int r = 0; r < d; ++r) {
            const json &row = grid[r];
            require(row.is_array() && static_cast<int>(row.size()) == d,
                    std::string("\"") + name + "\" row " + std::to_string(r) + " must have " + std::to_string(d) +
                        " entries");
            for (int c = 0; c < d; ++c) {
                const json &v = row[c];
                require(v.is_number_integer() && (v.get<int>() == 0 || v.get<int>() == 1),
                        std::string("\"") + name + "\" entries must be 0 or 1");
                if (std::strcmp(name, "vertex") == 0) {
                    s.set_vertex(r, c, v.get<int>() == 1);
                } else {
                    s.set_plaquette(r, c, v.get<int>() == 1);
                }
            }
        }
    }
    require(s.vertex_count() % 2 == 0 && s.plaquette_count() % 2 == 0,
            "syndrome has an odd number of vertex or plaquette defects, which no error can produce");
    return s;
}

json frame_json(const PauliFrame &frame) {
    json out = json::array();
    int d = frame.distance();
    for (int i = 0; i < 2 * d * d; ++i) {
        Pauli op = frame.at_index(i);
        if (op != Pauli::I) {
            Qubit q = qubit_at(d, i);
            out.push_back({{"sublattice", q.sublattice == Sublattice::Horizontal ? "H" : "V"},
                           {"row", q.row},
                           {"col", q.col},
                           {"op", std::string(1, pauli_char(op))}});
        }
    }
    return out;
}

json homology_json(const HomologyClass &h) {
    return {{"x_horizontal", h.x_horizontal},
            {"x_vertical", h.x_vertical},
            {"z_horizontal", h.z_horizontal},
            {"z_vertical", h.z_vertical}};
}

}  // namespace

extern "C" {

const char *toricq_version(void) {
    return "0.1.0";
}

const char *toricq_status_name(int status) {
    if (status == TORICQ_OK) {
        return "Ok";
    }
    if (status >= 1 && status <= 21) {
        return error_code_name(static_cast<ErrorCode>(status));
    }
    return "Internal";
}

const char *toricq_last_error(void) {
    return g_last_error.c_str();
}

void toricq_free(char *str) {
    std::free(str);
}

int toricq_analytic_json(int d, double p, char **out_json) {
    return guarded([&] {
        CodeDistance dist(d);
        analytic::AsymptoticRates r = analytic::asymptotic_rates(dist, p);
        json j = {{"d", r.d},
                  {"p", r.p},
                  {"k", dist.half_ceil()},
                  {"p_l_mcc", r.p_l_mcc},
                  {"p_l_mwpm", r.p_l_mwpm},
                  {"p_l_bitflip", analytic::p_l_bitflip(d, p)},
                  {"f_mcc", r.f_mcc},
                  {"f_mwpm", r.f_mwpm},
                  {"mcc_failing_chains", analytic::mcc_failing_chains(d).str()},
                  {"mwpm_failing_chains", analytic::mwpm_failing_chains(d).str()},
                  {"chain_population", analytic::chain_population(d).str()}};
        emit(out_json, j.dump());
    });
}

int toricq_training_config_resolve(const char *config_json, char **out_json) {
    return guarded([&] {
        require(config_json != nullptr, "training config is null");
        TrainingConfig cfg = TrainingConfig::from_json(config_json);
        emit(out_json, cfg.to_json());
    });
}

int toricq_train(const char *config_json, const char *run_dir, char **out_summary_json) {
    return guarded([&] {
        require(config_json != nullptr, "training config is null");
        require(run_dir != nullptr, "run directory is null");
        TrainingConfig cfg = TrainingConfig::from_json(config_json);
        TrainingResult result = train_to_directory(cfg, run_dir);
        char name[64];
        std::snprintf(name, sizeof(name), "step_%010lld.tqc", static_cast<long long>(result.steps));
        json visits = json::array();
        for (const auto &[key, count] : result.visits) {
            visits.push_back({key, count});
        }
        json j = {{"steps", result.steps},
                  {"syncs", result.syncs},
                  {"episodes", result.episodes},
                  {"config_hash", cfg.hash()},
                  {"final_checkpoint", std::string(run_dir) + "/checkpoints/" + name},
                  {"rewards_seen", result.rewards_seen},
                  {"visits", visits}};
        emit(out_summary_json, j.dump());
    });
}

int toricq_network_load(const char *path, int d, toricq_network **out) {
    return guarded([&] {
        require(path != nullptr, "checkpoint path is null");
        require(out != nullptr, "output pointer is null");
        *out = nullptr;
        Checkpoint ck = load_checkpoint(path);
        int want = d > 0 ? d : ck.meta.d;
        DecoderSpec spec = DecoderSpec::from_checkpoint(path, want);
        *out = new toricq_network{spec.net, ck.meta, path};
    });
}

void toricq_network_free(toricq_network *net) {
    delete net;
}

int toricq_network_distance(const toricq_network *net, int *out_d) {
    return guarded([&] {
        require(net != nullptr && out_d != nullptr, "null argument");
        *out_d = net->meta.d;
    });
}

int toricq_network_info_json(const toricq_network *net, char **out_json) {
    return guarded([&] {
        require(net != nullptr, "network is null");
        json extra = json::parse(net->meta.extra.empty() ? "{}" : net->meta.extra);
        json j = {{"path", net->path},
                  {"d", net->meta.d},
                  {"architecture", net->meta.architecture},
                  {"parameters", net->net->config().parameter_count()},
                  {"perspective_convention", net->meta.perspective_convention},
                  {"config_hash", net->meta.config_hash},
                  {"seed", net->meta.seed},
                  {"step", net->meta.step},
                  {"config", extra}};
        emit(out_json, j.dump());
    });
}

int toricq_evaluate_json(toricq_decoder decoder, const toricq_network *net, int d, const char *model, double p,
                         double p_rel, int64_t n, uint64_t seed, int workers, char **out_json) {
    return guarded([&] {
        DecoderSpec spec = make_decoder(decoder, net, d);
        EvalResult r = evaluate(spec, d, make_model(model, p, p_rel), n, seed, workers);
        emit(out_json, r.to_json());
    });
}

int toricq_sweep_csv(toricq_decoder decoder, const toricq_network *net, int d, const char *model,
                     const double *p_list, size_t p_count, double p_rel, int64_t n, uint64_t seed, int workers,
                     const char *provenance, char **out_csv) {
    return guarded([&] {
        require(p_list != nullptr || p_count == 0, "rate list is null");
        require(p_count > 0, "rate list is empty");
        DecoderSpec spec = make_decoder(decoder, net, d);
        std::vector<double> ps(p_list, p_list + p_count);
        NoiseModel base = make_model(model, ps.front(), p_rel);
        std::vector<EvalResult> rows = sweep(spec, d, base, ps, n, seed, workers);
        std::vector<std::string> lines;
        if (provenance != nullptr) {
            std::istringstream in(provenance);
            for (std::string line; std::getline(in, line);) {
                lines.push_back(line);
            }
        }
        std::ostringstream out;
        write_csv(out, rows, lines);
        emit(out_csv, out.str());
    });
}

int toricq_asymptotic_json(toricq_decoder decoder, const toricq_network *net, int d, uint64_t seed,
                           int64_t n_samples, int workers, char **out_json) {
    return guarded([&] {
        require(n_samples >= 0, "sample count must be non-negative");
        DecoderSpec spec = make_decoder(decoder, net, d);
        emit(out_json, asymptotic_fail_fraction(spec, d, seed, n_samples, workers).to_json());
    });
}

int toricq_paired_json(toricq_decoder decoder_a, const toricq_network *net_a, toricq_decoder decoder_b,
                       const toricq_network *net_b, int d, const char *model, double p, double p_rel, int64_t n,
                       uint64_t seed, int workers, char **out_json) {
    return guarded([&] {
        DecoderSpec a = make_decoder(decoder_a, net_a, d);
        DecoderSpec b = make_decoder(decoder_b, net_b, d);
        emit(out_json, paired_compare(a, b, d, make_model(model, p, p_rel), n, seed, workers).to_json());
    });
}

int toricq_inspect_json(const toricq_network *net, const char *syndrome_json, uint64_t seed, double p, int cap,
                        char **out_json) {
    return guarded([&] {
        require(net != nullptr, "network is null");
        require(cap > 0, "step cap must be positive");
        int d = net->meta.d;
        json j;
        std::optional<PauliFrame> error;
        Syndrome s0{CodeDistance(d)};
        if (syndrome_json != nullptr) {
            s0 = parse_syndrome(syndrome_json, d);
            j["source"] = "syndrome";
        } else {
            Rng rng(seed, 0);
            error = sample_error(CodeDistance(d), NoiseModel::depolarizing(p), rng);
            s0 = compute_syndrome(*error);
            j["source"] = "sampled";
            j["seed"] = seed;
            j["p"] = p;
            j["error"] = frame_json(*error);
        }
        DecodeResult result = decode_episode(*net->net, s0, cap);
        j["trace"] = json::parse(result.trace.to_json());
        j["correction"] = frame_json(result.correction);
        bool cleared = result.trace.outcome == EpisodeOutcome::Cleared;
        std::string verdict = cleared ? "success" : "failure";
        std::string reason = cleared ? "cleared" : "step limit";
        if (error && cleared) {
            HomologyClass h = homology_class(*error ^ result.correction);
            j["homology"] = homology_json(h);
            if (is_logical_failure(h)) {
                verdict = "failure";
                reason = "logical operator";
            }
        } else {
            j["homology"] = nullptr;
        }
        j["verdict"] = verdict;
        j["reason"] = reason;
        emit(out_json, j.dump());
    });
}

}  // extern "C"
