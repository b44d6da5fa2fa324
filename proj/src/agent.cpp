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

#include "toricq/agent.hpp"

#include <nlohmann/json.hpp>

#include "toricq/error.hpp"

namespace toricq {

int action_index(Pauli op) {
    switch (op) {
        case Pauli::X:
            return 0;
        case Pauli::Y:
            return 1;
        case Pauli::Z:
            return 2;
        default:
            throw Error(ErrorCode::InvalidArgument, "the identity is not an action");
    }
}

void AgentConfig::validate() const {
    if (!(gamma >= 0 && gamma < 1)) {
        throw Error(ErrorCode::ConfigInvalid, "gamma must lie in [0, 1)");
    }
    if (!(epsilon_final >= 0 && epsilon_final <= epsilon_initial && epsilon_initial <= 1)) {
        throw Error(ErrorCode::ConfigInvalid, "epsilon schedule must satisfy 0 <= final <= initial <= 1");
    }
    if (max_steps_per_episode <= 0) {
        throw Error(ErrorCode::ConfigInvalid, "max_steps_per_episode must be positive");
    }
}

std::vector<QEntry> q_values(const QNetwork &net, const std::vector<Perspective> &obs) {
    const QNetworkConfig &cfg = net.config();
    if (cfg.outputs != 3) {
        throw Error(ErrorCode::ShapeMismatch, "agent networks need 3 outputs");
    }
    if (obs.empty()) {
        return {};
    }
    const size_t in = static_cast<size_t>(net.input_size());
    std::vector<float> grids(in * obs.size());
    for (size_t k = 0; k < obs.size(); k++) {
        if (obs[k].d != cfg.d || obs[k].grid.size() != in) {
            throw Error(ErrorCode::ShapeMismatch, "perspective of distance " + std::to_string(obs[k].d) +
                                                      " does not fit a d=" + std::to_string(cfg.d) + " network");
        }
        std::copy(obs[k].grid.begin(), obs[k].grid.end(), grids.begin() + k * in);
    }
    QNetwork::Mat out = net.forward_batch(grids.data(), static_cast<int>(obs.size()));
    std::vector<QEntry> result(obs.size());
    for (size_t k = 0; k < obs.size(); k++) {
        result[k].source = obs[k].source;
        for (int a = 0; a < 3; a++) {
            result[k].q[a] = out(a, static_cast<Eigen::Index>(k));
        }
    }
    return result;
}

Choice select_action(const std::vector<QEntry> &qvals, double epsilon, Rng &rng) {
    if (qvals.empty()) {
        throw Error(ErrorCode::EmptySyndrome, "no perspectives to choose from");
    }
    Choice c;
    if (rng.bernoulli(epsilon)) {
        uint64_t pick = rng.below(qvals.size() * 3);
        c.perspective = pick / 3;
        c.op = kActions[pick % 3];
    } else {
        float best = qvals[0].q[0];
        for (size_t k = 0; k < qvals.size(); k++) {
            for (int a = 0; a < 3; a++) {
                if (qvals[k].q[a] > best) {
                    best = qvals[k].q[a];
                    c.perspective = k;
                    c.op = kActions[a];
                }
            }
        }
    }
    c.qubit = qvals[c.perspective].source;
    return c;
}

const char *outcome_name(EpisodeOutcome outcome) {
    return outcome == EpisodeOutcome::Cleared ? "Cleared" : "StepLimit";
}

namespace {

nlohmann::json grid_json(const std::vector<uint8_t> &bits, int d) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < d; r++) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < d; c++) {
            row.push_back(static_cast<int>(bits[r * d + c]));
        }
        rows.push_back(row);
    }
    return rows;
}

nlohmann::json syndrome_json(const Syndrome &s) {
    return {{"vertex", grid_json(s.vertices(), s.distance())}, {"plaquette", grid_json(s.plaquettes(), s.distance())}};
}

}  // namespace

std::string DecodeTrace::to_json() const {
    nlohmann::json steps_json = nlohmann::json::array();
    for (const TraceStep &st : steps) {
        steps_json.push_back({{"syndrome", syndrome_json(st.before)},
                              {"qubit",
                               {{"sublattice", st.qubit.sublattice == Sublattice::Horizontal ? "H" : "V"},
                                {"row", st.qubit.row},
                                {"col", st.qubit.col}}},
                              {"op", std::string(1, pauli_char(st.op))},
                              {"q", {st.q[0], st.q[1], st.q[2]}}});
    }
    nlohmann::json j = {{"outcome", outcome_name(outcome)},
                        {"length", steps.size()},
                        {"steps", steps_json},
                        {"final", syndrome_json(final_syndrome)}};
    return j.dump(2);
}

DecodeResult decode_episode(const QNetwork &net, const Syndrome &s0, int cap) {
    const int d = s0.distance();
    DecodeResult res{PauliFrame(CodeDistance(d)), DecodeTrace{{}, s0, EpisodeOutcome::Cleared}};
    Syndrome s = s0;
    Rng unused(0);
    while (!s.empty()) {
        if (static_cast<int>(res.trace.steps.size()) >= cap) {
            res.trace.outcome = EpisodeOutcome::StepLimit;
            break;
        }
        std::vector<QEntry> qv = q_values(net, observation(s));
        Choice c = select_action(qv, 0.0, unused);
        res.trace.steps.push_back(TraceStep{s, c.qubit, c.op, qv[c.perspective].q});
        res.correction.apply(c.qubit, c.op);
        s.apply(c.qubit, c.op);
    }
    res.trace.final_syndrome = s;
    return res;
}

}  // namespace toricq
