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

#ifndef TORICQ_AGENT_HPP
#define TORICQ_AGENT_HPP

#include <array>
#include <string>
#include <vector>

#include "toricq/lattice.hpp"
#include "toricq/neural.hpp"
#include "toricq/perspectives.hpp"
#include "toricq/rng.hpp"

namespace toricq {

// Network output k is the Q-value of kActions[k], i.e. X, Y, Z.
int action_index(Pauli op);

struct AgentConfig {
    double gamma = 0.95;
    double epsilon_initial = 1.0;
    double epsilon_final = 0.1;
    int max_steps_per_episode = 75;
    // Throws ConfigInvalid.
    void validate() const;
};

struct QEntry {
    Qubit source;
    std::array<float, 3> q{};
};

// One batched forward pass over all perspectives, in observation order.
// Throws ShapeMismatch when a perspective does not fit the network input.
std::vector<QEntry> q_values(const QNetwork &net, const std::vector<Perspective> &obs);

struct Choice {
    size_t perspective = 0;
    Qubit qubit;
    Pauli op = Pauli::X;
};

// With probability epsilon a uniform (perspective, action) pair, otherwise
// the first maximal pair in (perspective, X < Y < Z) order. Always consumes
// one draw for the exploration coin.
Choice select_action(const std::vector<QEntry> &qvals, double epsilon, Rng &rng);

enum class EpisodeOutcome { Cleared, StepLimit };
const char *outcome_name(EpisodeOutcome outcome);

struct TraceStep {
    Syndrome before;
    Qubit qubit;
    Pauli op = Pauli::X;
    std::array<float, 3> q{};
};

struct DecodeTrace {
    std::vector<TraceStep> steps;
    Syndrome final_syndrome;
    EpisodeOutcome outcome = EpisodeOutcome::Cleared;

    // {"outcome": ..., "steps": [{"syndrome": {"vertex": [[..]], "plaquette":
    // [[..]]}, "qubit": {...}, "op": "X", "q": [x, y, z]}, ...], "final": ...}
    std::string to_json() const;
};

struct DecodeResult {
    PauliFrame correction;
    DecodeTrace trace;
};

// Greedy episode: repeatedly applies the best action until the syndrome is
// empty or `cap` actions have been taken.
DecodeResult decode_episode(const QNetwork &net, const Syndrome &s0, int cap = 75);

}  // namespace toricq

#endif
