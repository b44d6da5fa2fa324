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

#include "toricq/trainer.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <unordered_map>

#include "toricq/error.hpp"
#include "toricq/mcc_oracle.hpp"
#include "toricq/noise.hpp"

namespace toricq {

using ojson = nlohmann::ordered_json;

void TrainingConfig::validate() const {
    auto fail = [](const std::string &msg) { throw Error(ErrorCode::ConfigInvalid, msg); };
    try {
        CodeDistance check(d);
        (void)check;
    } catch (const Error &e) {
        fail(std::string("d: ") + e.what());
    }
    network();
    try {
        NoiseModel::from_name(noise, 0.1);
    } catch (const Error &e) {
        fail(std::string("noise: ") + e.what());
    }
    if (batch < 1) {
        fail("batch must be positive");
    }
    if (steps_per_epoch < 1) {
        fail("steps_per_epoch must be positive");
    }
    if (total_steps < 0) {
        fail("total_steps must be non-negative");
    }
    if (replay_capacity < batch) {
        fail("replay_capacity must hold at least one batch");
    }
    if (!(alpha >= 0) || !(beta >= 0)) {
        fail("alpha and beta must be non-negative");
    }
    if (target_sync < 1) {
        fail("target_sync must be positive");
    }
    if (!(gamma >= 0 && gamma < 1)) {
        fail("gamma must lie in [0, 1)");
    }
    if (!(lr > 0)) {
        fail("lr must be positive");
    }
    if (!(epsilon_final >= 0 && epsilon_final <= epsilon_initial && epsilon_initial <= 1)) {
        fail("epsilon schedule must satisfy 0 <= final <= initial <= 1");
    }
    if (!(epsilon_decay_fraction > 0 && epsilon_decay_fraction <= 1)) {
        fail("epsilon_decay_fraction must lie in (0, 1]");
    }
    if (replay_start < 0 || replay_start > replay_capacity) {
        fail("replay_start must lie in [0, replay_capacity]");
    }
    if (max_steps < 1) {
        fail("max_steps must be positive");
    }
    if (curriculum.empty()) {
        fail("curriculum must list at least one error rate");
    }
    for (size_t k = 0; k < curriculum.size(); k++) {
        if (!(curriculum[k] >= 0.10 && curriculum[k] <= 0.30)) {
            fail("curriculum rates must lie in [0.10, 0.30]");
        }
        if (k > 0 && curriculum[k] < curriculum[k - 1]) {
            fail("curriculum must be nondecreasing");
        }
    }
    if (loss != "absolute" && loss != "smooth_absolute") {
        fail("loss must be \"absolute\" or \"smooth_absolute\"");
    }
    if (metrics_interval < 1) {
        fail("metrics_interval must be positive");
    }
}

QNetworkConfig TrainingConfig::network() const {
    QNetworkConfig cfg = architecture.find('=') != std::string::npos ? QNetworkConfig::from_descriptor(architecture)
                                                                      : QNetworkConfig::preset(architecture, d);
    if (cfg.d != d) {
        throw Error(ErrorCode::ConfigInvalid,
                    "architecture is for d=" + std::to_string(cfg.d) + " but d=" + std::to_string(d));
    }
    cfg.validate();
    return cfg;
}

double TrainingConfig::epsilon_at(int64_t step) const {
    double span = epsilon_decay_fraction * static_cast<double>(total_steps);
    double t = span > 0 ? std::min(1.0, static_cast<double>(step) / span) : 1.0;
    return epsilon_initial + (epsilon_final - epsilon_initial) * t;
}

double TrainingConfig::rate_at(int64_t step) const {
    if (total_steps <= 0) {
        return curriculum.front();
    }
    int64_t k = static_cast<int64_t>(curriculum.size());
    int64_t phase = std::min(k - 1, std::max<int64_t>(0, step) * k / total_steps);
    return curriculum[phase];
}

std::string TrainingConfig::to_json() const {
    ojson j;
    j["d"] = d;
    j["architecture"] = architecture;
    j["noise"] = noise;
    j["batch"] = batch;
    j["steps_per_epoch"] = steps_per_epoch;
    j["total_steps"] = total_steps;
    j["replay_capacity"] = replay_capacity;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["target_sync"] = target_sync;
    j["gamma"] = gamma;
    j["lr"] = lr;
    j["epsilon_initial"] = epsilon_initial;
    j["epsilon_final"] = epsilon_final;
    j["epsilon_decay_fraction"] = epsilon_decay_fraction;
    j["replay_start"] = replay_start;
    j["max_steps"] = max_steps;
    j["curriculum"] = curriculum;
    j["loss"] = loss;
    j["metrics_interval"] = metrics_interval;
    j["seed"] = seed;
    return j.dump();
}

TrainingConfig TrainingConfig::from_json(const std::string &text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const std::exception &e) {
        throw Error(ErrorCode::ConfigInvalid, std::string("training config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw Error(ErrorCode::ConfigInvalid, "training config must be a JSON object");
    }
    TrainingConfig c;
    const ojson defaults = ojson::parse(c.to_json());
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!defaults.contains(it.key())) {
            throw Error(ErrorCode::ConfigInvalid, "unknown training key \"" + it.key() + "\"");
        }
    }
    auto read = [&](const char *key, auto &field) {
        if (!j.contains(key)) {
            return;
        }
        try {
            j.at(key).get_to(field);
        } catch (const std::exception &e) {
            throw Error(ErrorCode::ConfigInvalid, std::string("bad value for \"") + key + "\": " + e.what());
        }
    };
    read("d", c.d);
    read("architecture", c.architecture);
    read("noise", c.noise);
    read("batch", c.batch);
    read("steps_per_epoch", c.steps_per_epoch);
    read("total_steps", c.total_steps);
    read("replay_capacity", c.replay_capacity);
    read("alpha", c.alpha);
    read("beta", c.beta);
    read("target_sync", c.target_sync);
    read("gamma", c.gamma);
    read("lr", c.lr);
    read("epsilon_initial", c.epsilon_initial);
    read("epsilon_final", c.epsilon_final);
    read("epsilon_decay_fraction", c.epsilon_decay_fraction);
    read("replay_start", c.replay_start);
    read("max_steps", c.max_steps);
    read("curriculum", c.curriculum);
    read("loss", c.loss);
    read("metrics_interval", c.metrics_interval);
    read("seed", c.seed);
    return c;
}

std::string TrainingConfig::hash() const {
    std::string text = to_json();
    uint32_t crc = crc32(0L, reinterpret_cast<const Bytef *>(text.data()), static_cast<uInt>(text.size()));
    char buf[9];
    std::snprintf(buf, sizeof(buf), "%08x", crc);
    return buf;
}

double reward(const Syndrome &s, const Syndrome &next, bool terminal) {
    if (terminal) {
        return kTerminalReward;
    }
    return step_reward(s.defect_count(), next.defect_count());
}

std::vector<double> td_targets(const std::vector<const Transition *> &batch, const QNetwork &target, double gamma) {
    std::vector<double> y(batch.size());
    std::vector<Perspective> all;
    std::vector<size_t> owner;
    for (size_t j = 0; j < batch.size(); j++) {
        y[j] = batch[j]->reward;
        if (batch[j]->terminal) {
            continue;
        }
        std::vector<Perspective> obs = observation(batch[j]->next_syndrome);
        for (Perspective &p : obs) {
            all.push_back(std::move(p));
            owner.push_back(j);
        }
    }
    if (all.empty()) {
        return y;
    }
    std::vector<QEntry> qv = q_values(target, all);
    std::vector<float> best(batch.size(), -std::numeric_limits<float>::infinity());
    for (size_t k = 0; k < qv.size(); k++) {
        for (float q : qv[k].q) {
            best[owner[k]] = std::max(best[owner[k]], q);
        }
    }
    for (size_t j = 0; j < batch.size(); j++) {
        if (!batch[j]->terminal) {
            y[j] += gamma * static_cast<double>(best[j]);
        }
    }
    return y;
}

double td_target(const Transition &t, const QNetwork &target, double gamma) {
    return td_targets({&t}, target, gamma)[0];
}

void sync_target(const QNetwork &policy, QNetwork &target) {
    if (!policy.same_architecture(target)) {
        throw Error(ErrorCode::ArchitectureMismatch, "policy " + policy.config().descriptor() + " vs target " +
                                                         target.config().descriptor());
    }
    target.parameters() = policy.parameters();
}

std::string MetricsRecord::to_json() const {
    ojson j;
    j["step"] = step;
    j["epoch"] = epoch;
    j["epsilon"] = epsilon;
    j["rate"] = rate;
    j["episodes"] = episodes;
    j["mean_episode_length"] = mean_episode_length;
    j["terminal_success"] = terminal_success;
    j["mean_loss"] = mean_loss;
    j["syncs"] = syncs;
    return j.dump();
}

CheckpointMeta checkpoint_meta(const TrainingConfig &config, int64_t step) {
    CheckpointMeta meta;
    meta.d = config.d;
    meta.architecture = config.network().descriptor();
    meta.perspective_convention = kPerspectiveConvention;
    meta.config_hash = config.hash();
    meta.seed = config.seed;
    meta.step = step;
    meta.extra = config.to_json();
    return meta;
}

namespace {

// Rng stream ids; fixed so runs stay reproducible across versions.
constexpr uint64_t kInitStream = 1;
constexpr uint64_t kEnvStream = 2;
constexpr uint64_t kActionStream = 3;
constexpr uint64_t kReplayStream = 4;

class Environment {
   public:
    Environment(const TrainingConfig &cfg, uint64_t seed)
        : d_(cfg.d), model_(NoiseModel::from_name(cfg.noise, cfg.curriculum.front())), rng_(seed, kEnvStream),
          state_(CodeDistance(cfg.d)) {
    }

    void reset(double rate) {
        NoiseModel m = model_.with_p(rate);
        do {
            state_ = compute_syndrome(sample_error(CodeDistance(d_), m, rng_));
        } while (state_.empty());
        length_ = 0;
    }
    const Syndrome &state() const {
        return state_;
    }
    int length() const {
        return length_;
    }
    Syndrome act(const Qubit &q, Pauli op) {
        state_.apply(q, op);
        length_++;
        return state_;
    }

   private:
    int d_;
    NoiseModel model_;
    Rng rng_;
    Syndrome state_;
    int length_ = 0;
};

struct IntervalStats {
    int64_t episodes = 0;
    int64_t length_sum = 0;
    int64_t cleared = 0;
    double loss_sum = 0;
    int64_t loss_count = 0;
};

}  // namespace

TrainingResult train(const TrainingConfig &cfg, const TrainingSinks &sinks) {
    cfg.validate();
    const QNetworkConfig ncfg = cfg.network();
    const LossKind loss_kind = cfg.loss == "absolute" ? LossKind::Absolute : LossKind::SmoothAbsolute;

    Rng init_rng(cfg.seed, kInitStream);
    Rng action_rng(cfg.seed, kActionStream);
    Rng replay_rng(cfg.seed, kReplayStream);

    TrainingResult res{QNetwork(ncfg), AdamState{}, 0, 0, 0, {}, {}, {}};
    QNetwork &policy = res.policy;
    policy.init_glorot(init_rng);
    QNetwork target = policy;
    res.adam.lr = cfg.lr;

    if (sinks.on_checkpoint) {
        sinks.on_checkpoint(0, policy, res.adam);
    }
    if (cfg.total_steps == 0) {
        return res;
    }

    PrioritizedBuffer replay(static_cast<size_t>(cfg.replay_capacity), cfg.alpha, cfg.beta);
    // Targets stay valid until the slot is rewritten or the target changes.
    std::vector<uint64_t> cached_serial(replay.capacity(), 0);
    std::vector<int64_t> cached_gen(replay.capacity(), -1);
    std::vector<double> cached_y(replay.capacity(), 0);
    int64_t generation = 0;

    Environment env(cfg, cfg.seed);
    std::set<double> rewards;
    std::unordered_map<uint64_t, int64_t> visits;
    const bool track_visits = cfg.d <= 5;
    IntervalStats stats;

    // One environment step. Returns after pushing the transition and
    // resetting the episode if it ended.
    auto env_step = [&](double epsilon, double rate, bool learning) {
        const Syndrome s = env.state();
        if (learning && track_visits) {
            visits[s.pack()]++;
        }
        std::vector<Perspective> obs = observation(s);
        std::vector<QEntry> qv;
        if (epsilon >= 1.0) {
            qv.resize(obs.size());
            for (size_t k = 0; k < obs.size(); k++) {
                qv[k].source = obs[k].source;
            }
        } else {
            qv = q_values(policy, obs);
        }
        Choice c = select_action(qv, epsilon, action_rng);
        Syndrome next = env.act(c.qubit, c.op);
        bool terminal = next.empty();
        double r = reward(s, next, terminal);
        rewards.insert(r);
        replay.push(Transition{std::move(obs[c.perspective]), c.op, r, next, terminal});
        if (terminal || env.length() >= cfg.max_steps) {
            if (learning) {
                stats.episodes++;
                stats.length_sum += env.length();
                stats.cleared += terminal ? 1 : 0;
                res.episodes++;
            }
            env.reset(rate);
        }
    };

    env.reset(cfg.rate_at(0));
    for (int64_t k = 0; k < cfg.replay_start; k++) {
        env_step(1.0, cfg.rate_at(0), false);
    }
    env.reset(cfg.rate_at(0));

    const int in = policy.input_size();
    const int n = cfg.batch;
    std::vector<float> grids(static_cast<size_t>(in) * n);
    std::vector<int> actions(n);
    std::vector<float> targets(n);
    std::vector<float> weights(n);
    std::vector<float> td(n);
    QNetwork::Mat dout;
    QNetwork::Cache cache;

    for (int64_t step = 1; step <= cfg.total_steps; step++) {
        const double eps = cfg.epsilon_at(step - 1);
        const double rate = cfg.rate_at(step - 1);
        env_step(eps, rate, true);

        if (replay.size() >= static_cast<size_t>(n)) {
            PrioritizedBuffer::Batch b = replay.sample(n, replay_rng);
            std::vector<const Transition *> missing;
            std::vector<size_t> missing_slot;
            for (int j = 0; j < n; j++) {
                size_t i = b.indices[j];
                if (cached_gen[i] != generation || cached_serial[i] != replay.serial(i)) {
                    // A slot drawn twice is computed once.
                    cached_gen[i] = generation;
                    cached_serial[i] = replay.serial(i);
                    missing.push_back(&replay.at(i));
                    missing_slot.push_back(i);
                }
            }
            if (!missing.empty()) {
                std::vector<double> y = td_targets(missing, target, cfg.gamma);
                for (size_t k = 0; k < y.size(); k++) {
                    cached_y[missing_slot[k]] = y[k];
                }
            }
            for (int j = 0; j < n; j++) {
                const Transition &t = replay.at(b.indices[j]);
                std::copy(t.perspective.grid.begin(), t.perspective.grid.end(), grids.begin() + static_cast<size_t>(j) * in);
                actions[j] = action_index(t.action);
                targets[j] = static_cast<float>(cached_y[b.indices[j]]);
                weights[j] = static_cast<float>(b.weights[j]);
            }
            QNetwork::Mat q = policy.forward_batch(grids.data(), n, &cache);
            float loss = weighted_td_loss<float>(q, actions, targets, weights, loss_kind, dout, &td);
            ParamVector<float> grads = policy.backward(cache, dout);
            adam_step(res.adam, policy.parameters(), grads);
            std::vector<double> abs_td(n);
            for (int j = 0; j < n; j++) {
                abs_td[j] = std::abs(static_cast<double>(td[j]));
            }
            replay.update_priorities(b.indices, abs_td);
            stats.loss_sum += loss;
            stats.loss_count++;
        }

        if (step % cfg.target_sync == 0) {
            sync_target(policy, target);
            generation++;
            res.syncs++;
        }
        res.steps = step;

        if (step % cfg.metrics_interval == 0 || step == cfg.total_steps) {
            MetricsRecord m;
            m.step = step;
            m.epoch = (step - 1) / cfg.steps_per_epoch;
            m.epsilon = eps;
            m.rate = rate;
            m.episodes = stats.episodes;
            m.mean_episode_length =
                stats.episodes ? static_cast<double>(stats.length_sum) / static_cast<double>(stats.episodes) : 0.0;
            m.terminal_success =
                stats.episodes ? static_cast<double>(stats.cleared) / static_cast<double>(stats.episodes) : 0.0;
            m.mean_loss = stats.loss_count ? stats.loss_sum / static_cast<double>(stats.loss_count) : 0.0;
            m.syncs = res.syncs;
            res.metrics.push_back(m);
            if (sinks.on_metrics) {
                sinks.on_metrics(m);
            }
            stats = IntervalStats{};
        }
        if (sinks.on_checkpoint && (step % cfg.steps_per_epoch == 0 || step == cfg.total_steps)) {
            sinks.on_checkpoint(step, policy, res.adam);
        }
    }

    res.visits.assign(visits.begin(), visits.end());
    std::sort(res.visits.begin(), res.visits.end(), [](const auto &a, const auto &b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    res.rewards_seen.assign(rewards.begin(), rewards.end());
    return res;
}

TrainingResult train_to_directory(const TrainingConfig &config, const std::string &dir) {
    namespace fs = std::filesystem;
    config.validate();
    std::error_code ec;
    fs::create_directories(fs::path(dir) / "checkpoints", ec);
    if (ec) {
        throw Error(ErrorCode::Io, "cannot create " + dir + ": " + ec.message());
    }
    std::string metrics_path = (fs::path(dir) / "metrics.jsonl").string();
    std::ofstream metrics(metrics_path, std::ios::trunc);
    if (!metrics) {
        throw Error(ErrorCode::Io, "cannot open " + metrics_path);
    }
    TrainingSinks sinks;
    sinks.on_metrics = [&](const MetricsRecord &m) { metrics << m.to_json() << '\n' << std::flush; };
    sinks.on_checkpoint = [&](int64_t step, const QNetwork &net, const AdamState &adam) {
        char name[64];
        std::snprintf(name, sizeof(name), "step_%010lld.tqc", static_cast<long long>(step));
        save_checkpoint((fs::path(dir) / "checkpoints" / name).string(), net, &adam, checkpoint_meta(config, step));
    };
    return train(config, sinks);
}

}  // namespace toricq
