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

#ifndef TORICQ_TRAINER_HPP
#define TORICQ_TRAINER_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "toricq/agent.hpp"
#include "toricq/neural.hpp"
#include "toricq/replay.hpp"

namespace toricq {

struct TrainingConfig {
    int d = 3;
    // A preset name ("desk", "large5", "large7") or a network descriptor.
    std::string architecture = "desk";
    std::string noise = "depolarizing";
    int batch = 32;
    int64_t steps_per_epoch = 10000;
    int64_t total_steps = 200000;
    int64_t replay_capacity = 10000;
    double alpha = 0.6;
    double beta = 0.4;
    int64_t target_sync = 1000;
    double gamma = 0.95;
    double lr = 0.00025;
    double epsilon_initial = 1.0;
    double epsilon_final = 0.1;
    // Fraction of total_steps over which epsilon decays linearly.
    double epsilon_decay_fraction = 0.2;
    int64_t replay_start = 1000;
    int max_steps = 75;
    std::vector<double> curriculum = {0.10, 0.15, 0.20, 0.25, 0.30};
    std::string loss = "absolute";
    int64_t metrics_interval = 1000;
    uint64_t seed = 0;

    // Throws ConfigInvalid.
    void validate() const;
    QNetworkConfig network() const;
    double epsilon_at(int64_t step) const;
    double rate_at(int64_t step) const;

    // Every field, in a fixed key order.
    std::string to_json() const;
    // Missing keys keep their defaults; unknown keys throw ConfigInvalid.
    static TrainingConfig from_json(const std::string &text);
    // CRC-32 of to_json(), as 8 hex digits.
    std::string hash() const;
};

// 100 if terminal, otherwise the drop in defect count.
double reward(const Syndrome &s, const Syndrome &next, bool terminal);

// r if terminal, else r + gamma * max over every (perspective, action) of
// the target network on the next observation.
double td_target(const Transition &t, const QNetwork &target, double gamma);
// The same for many transitions with one forward pass. Agrees with
// td_target up to float rounding.
std::vector<double> td_targets(const std::vector<const Transition *> &batch, const QNetwork &target, double gamma);

// Copies the policy parameters into the target. Throws ArchitectureMismatch.
void sync_target(const QNetwork &policy, QNetwork &target);

struct MetricsRecord {
    int64_t step = 0;
    int64_t epoch = 0;
    double epsilon = 0;
    double rate = 0;
    int64_t episodes = 0;
    double mean_episode_length = 0;
    double terminal_success = 0;
    double mean_loss = 0;
    int64_t syncs = 0;

    std::string to_json() const;
};

struct TrainingSinks {
    std::function<void(const MetricsRecord &)> on_metrics;
    // Called at step 0, after every epoch and after the final step.
    std::function<void(int64_t step, const QNetwork &, const AdamState &)> on_checkpoint;
};

struct TrainingResult {
    QNetwork policy;
    AdamState adam;
    int64_t steps = 0;
    int64_t syncs = 0;
    int64_t episodes = 0;
    std::vector<MetricsRecord> metrics;
    // Visit counts of episode states during learning, keyed by
    // Syndrome::pack(); filled for d <= 5 only. Sorted by count, then key.
    std::vector<std::pair<uint64_t, int64_t>> visits;
    // Every distinct reward seen.
    std::vector<double> rewards_seen;
};

// Runs the full loop: random-policy prefill of replay_start transitions,
// then total_steps epsilon-greedy environment steps, each followed by one
// prioritized gradient step. Deterministic for a given config.
TrainingResult train(const TrainingConfig &config, const TrainingSinks &sinks = {});

// train() writing metrics.jsonl and checkpoints/step_<n>.tqc under `dir`.
TrainingResult train_to_directory(const TrainingConfig &config, const std::string &dir);

CheckpointMeta checkpoint_meta(const TrainingConfig &config, int64_t step);

}  // namespace toricq

#endif
