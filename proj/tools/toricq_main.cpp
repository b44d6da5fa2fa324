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

// Command-line front end. Everything numerical goes through the C API in
// toricq.h; this file only handles arguments, files and formatting.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "toricq/toricq.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitInput = 2;
constexpr int kExitIncompatible = 3;

struct CliFailure {
    int exit_code;
    std::string message;
};

[[noreturn]] void input_error(const std::string &message) {
    throw CliFailure{kExitInput, message};
}

int exit_code_for(int status) {
    switch (status) {
        case TORICQ_ERR_CHECKPOINT_INCOMPATIBLE:
        case TORICQ_ERR_ARCHITECTURE_MISMATCH:
        case TORICQ_ERR_VERSION_MISMATCH:
            return kExitIncompatible;
        case TORICQ_ERR_INVALID_ARGUMENT:
        case TORICQ_ERR_INVALID_DISTANCE:
        case TORICQ_ERR_INVALID_PROBABILITY:
        case TORICQ_ERR_UNSUPPORTED_DISTANCE:
        case TORICQ_ERR_UNSUPPORTED_INPUT:
        case TORICQ_ERR_CONFIG_INVALID:
        case TORICQ_ERR_CORRUPT_FILE:
        case TORICQ_ERR_IO:
            return kExitInput;
        default:
            return kExitRuntime;
    }
}

void check(int status) {
    if (status != TORICQ_OK) {
        throw CliFailure{exit_code_for(status), toricq_last_error()};
    }
}

std::string take(char *s) {
    std::string out(s);
    toricq_free(s);
    return out;
}

struct NetworkDeleter {
    void operator()(toricq_network *n) const {
        toricq_network_free(n);
    }
};
using Network = std::unique_ptr<toricq_network, NetworkDeleter>;

std::string read_text(const std::string &path, const char *what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        input_error(std::string("cannot read ") + what + " '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path &path, const std::string &text) {
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text)) {
        throw CliFailure{kExitRuntime, "cannot write '" + path.string() + "'"};
    }
}

fs::path default_output_root() {
    const char *env = std::getenv("TORICQ_RUNS_DIR");
    return env != nullptr && *env != '\0' ? fs::path(env) : fs::path("runs");
}

int default_workers() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

toricq_decoder parse_decoder(const std::string &name) {
    if (name == "mwpm") {
        return TORICQ_DECODER_MWPM;
    }
    if (name == "dqn") {
        return TORICQ_DECODER_DQN;
    }
    if (name == "mcc") {
        return TORICQ_DECODER_MCC;
    }
    input_error("unknown decoder '" + name + "' (expected dqn, mwpm or mcc)");
}

std::string command_line(int argc, char **argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        out += (i ? " " : "") + std::string(argv[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Run configuration

struct EvaluationSettings {
    std::string decoder = "dqn";
    std::string model = "depolarizing";
    std::vector<double> p = {0.05, 0.10, 0.15, 0.20};
    double p_rel = 1.0 / 3.0;
    int64_t n = 10000;
    uint64_t seed = 0;

    json to_json() const {
        return {{"decoder", decoder}, {"model", model}, {"p", p}, {"p_rel", p_rel}, {"n", n}, {"seed", seed}};
    }
};

struct RunConfig {
    std::string run_id;
    fs::path output_root;
    json training;
    std::optional<EvaluationSettings> evaluation;
};

template <typename T>
T field(const json &obj, const char *key, const char *section) {
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception &) {
        input_error(std::string("config field ") + section + "." + key + " has the wrong type");
    }
}

RunConfig parse_run_config(const std::string &path) {
    if (!fs::exists(path)) {
        input_error("config file '" + path + "' does not exist");
    }
    json j;
    try {
        j = json::parse(read_text(path, "config file"));
    } catch (const nlohmann::json::parse_error &e) {
        input_error("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object()) {
        input_error("config file '" + path + "' must hold a JSON object");
    }
    RunConfig rc;
    rc.output_root = default_output_root();
    rc.training = json::object();
    for (const auto &[key, value] : j.items()) {
        if (key == "run_id") {
            rc.run_id = field<std::string>(j, "run_id", "top");
        } else if (key == "output_root") {
            rc.output_root = field<std::string>(j, "output_root", "top");
        } else if (key == "training") {
            if (!value.is_object()) {
                input_error("config section 'training' must be an object");
            }
            rc.training = value;
        } else if (key == "evaluation") {
            if (!value.is_object()) {
                input_error("config section 'evaluation' must be an object");
            }
            EvaluationSettings ev;
            for (const auto &[k, v] : value.items()) {
                if (k == "decoder") {
                    ev.decoder = field<std::string>(value, "decoder", "evaluation");
                } else if (k == "model") {
                    ev.model = field<std::string>(value, "model", "evaluation");
                } else if (k == "p") {
                    ev.p = v.is_array() ? field<std::vector<double>>(value, "p", "evaluation")
                                        : std::vector<double>{field<double>(value, "p", "evaluation")};
                } else if (k == "p_rel") {
                    ev.p_rel = field<double>(value, "p_rel", "evaluation");
                } else if (k == "n") {
                    ev.n = field<int64_t>(value, "n", "evaluation");
                } else if (k == "seed") {
                    ev.seed = field<uint64_t>(value, "seed", "evaluation");
                } else {
                    input_error("unknown config key 'evaluation." + k + "'");
                }
            }
            parse_decoder(ev.decoder);
            rc.evaluation = ev;
        } else {
            input_error("unknown config key '" + key + "'");
        }
    }
    return rc;
}

// ---------------------------------------------------------------------------
// Checkpoints and output locations

fs::path latest_checkpoint(const fs::path &run_dir) {
    fs::path dir = run_dir / "checkpoints";
    if (!fs::is_directory(dir)) {
        input_error("run directory '" + run_dir.string() + "' has no checkpoints/");
    }
    std::vector<fs::path> found;
    for (const auto &entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".tqc") {
            found.push_back(entry.path());
        }
    }
    if (found.empty()) {
        input_error("no checkpoints in '" + dir.string() + "'");
    }
    // Zero-padded step numbers sort lexicographically.
    return *std::max_element(found.begin(), found.end());
}

struct Target {
    std::string checkpoint;
    std::string run_id;
    fs::path root = default_output_root();
    std::string out;

    void add_options(CLI::App *cmd, bool with_out = true) {
        cmd->add_option("--checkpoint", checkpoint, "Checkpoint file for the dqn decoder");
        cmd->add_option("--run", run_id, "Run id; uses its latest checkpoint and writes into its results/");
        cmd->add_option("--runs-dir", root, "Output root (default $TORICQ_RUNS_DIR or ./runs)");
        if (with_out) {
            cmd->add_option("--out", out, "Output file (overrides the default location)");
        }
    }

    std::string resolve_checkpoint() const {
        if (!checkpoint.empty()) {
            if (!fs::exists(checkpoint)) {
                input_error("checkpoint '" + checkpoint + "' does not exist");
            }
            return checkpoint;
        }
        if (!run_id.empty()) {
            return latest_checkpoint(root / run_id).string();
        }
        return {};
    }

    fs::path output(const std::string &name) const {
        if (!out.empty()) {
            return out;
        }
        if (!run_id.empty()) {
            return root / run_id / "results" / name;
        }
        return root / "results" / name;
    }
};

Network load_network(const std::string &path, int d) {
    toricq_network *raw = nullptr;
    check(toricq_network_load(path.c_str(), d, &raw));
    return Network(raw);
}

Network network_for(toricq_decoder decoder, const Target &target, int d) {
    std::string path = target.resolve_checkpoint();
    if (decoder == TORICQ_DECODER_DQN && path.empty()) {
        input_error("the dqn decoder needs --checkpoint or --run");
    }
    if (decoder != TORICQ_DECODER_DQN || path.empty()) {
        return nullptr;
    }
    return load_network(path, d);
}

json network_info(const toricq_network *net) {
    if (net == nullptr) {
        return nullptr;
    }
    char *info = nullptr;
    check(toricq_network_info_json(net, &info));
    return json::parse(take(info));
}

json provenance(const std::string &cmdline, const json &arguments, const toricq_network *net) {
    return {{"version", toricq_version()}, {"command", cmdline}, {"arguments", arguments}, {"network", network_info(net)}};
}

std::string provenance_lines(const json &prov) {
    std::string out;
    out += "toricq " + prov["version"].get<std::string>() + "\n";
    out += "command: " + prov["command"].get<std::string>() + "\n";
    out += "arguments: " + prov["arguments"].dump() + "\n";
    out += "network: " + prov["network"].dump();
    return out;
}

void print_eval_table(const std::string &csv) {
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line[0] != '#') {
            std::cout << line << "\n";
        }
    }
}

// ---------------------------------------------------------------------------
// Commands

struct TrainArgs {
    std::string config;
    std::string run_id;
    std::string root;
    bool force = false;
    int workers = default_workers();
};

int cmd_train(const TrainArgs &args, const std::string &cmdline) {
    RunConfig rc = parse_run_config(args.config);
    if (!args.root.empty()) {
        rc.output_root = args.root;
    }
    char *resolved_text = nullptr;
    check(toricq_training_config_resolve(rc.training.dump().c_str(), &resolved_text));
    json training = json::parse(take(resolved_text));
    if (!args.run_id.empty()) {
        rc.run_id = args.run_id;
    }
    if (rc.run_id.empty()) {
        rc.run_id = "d" + std::to_string(training["d"].get<int>()) + "-" + training["architecture"].get<std::string>() +
                    "-seed" + std::to_string(training["seed"].get<uint64_t>());
    }
    if (rc.run_id.find('/') != std::string::npos || rc.run_id == "." || rc.run_id == "..") {
        input_error("run id '" + rc.run_id + "' must be a plain directory name");
    }
    fs::path run_dir = rc.output_root / rc.run_id;
    if (fs::exists(run_dir / "checkpoints") && !args.force) {
        input_error("run directory '" + run_dir.string() + "' already holds checkpoints (pass --force to replace)");
    }
    if (args.force) {
        fs::remove_all(run_dir);
    }
    fs::create_directories(run_dir);

    json resolved = {{"version", toricq_version()},
                     {"command", cmdline},
                     {"run_id", rc.run_id},
                     {"output_root", rc.output_root.string()},
                     {"training", training},
                     {"evaluation", rc.evaluation ? rc.evaluation->to_json() : json(nullptr)}};
    write_text(run_dir / "config.json", resolved.dump(2) + "\n");

    std::cerr << "training " << rc.run_id << " into " << run_dir.string() << "\n";
    char *summary_text = nullptr;
    check(toricq_train(training.dump().c_str(), run_dir.string().c_str(), &summary_text));
    json summary = json::parse(take(summary_text));
    summary.erase("visits");
    summary["run_dir"] = run_dir.string();

    if (rc.evaluation) {
        const EvaluationSettings &ev = *rc.evaluation;
        toricq_decoder decoder = parse_decoder(ev.decoder);
        int d = training["d"].get<int>();
        Network net = decoder == TORICQ_DECODER_DQN
                          ? load_network(summary["final_checkpoint"].get<std::string>(), d)
                          : nullptr;
        json prov = provenance(cmdline, {{"evaluation", ev.to_json()}, {"training", training}}, net.get());
        char *csv = nullptr;
        check(toricq_sweep_csv(decoder, net.get(), d, ev.model.c_str(), ev.p.data(), ev.p.size(), ev.p_rel, ev.n,
                               ev.seed, args.workers, provenance_lines(prov).c_str(), &csv));
        std::string text = take(csv);
        fs::path out = run_dir / "results" / ("sweep_" + ev.decoder + "_d" + std::to_string(d) + "_" + ev.model + ".csv");
        write_text(out, text);
        summary["results"] = out.string();
    }
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

struct EvalArgs {
    std::string decoder = "dqn";
    int d = 3;
    std::string model = "depolarizing";
    std::vector<double> p;
    double p_rel = 1.0 / 3.0;
    int64_t n = 10000;
    uint64_t seed = 0;
    int workers = default_workers();
    Target target;

    void add_options(CLI::App *cmd, bool many_p) {
        cmd->add_option("--decoder", decoder, "dqn, mwpm or mcc")->capture_default_str();
        cmd->add_option("--d", d, "Code distance")->capture_default_str();
        cmd->add_option("--model", model, "depolarizing, bitflip or biased")->capture_default_str();
        auto *opt = cmd->add_option("--p", p, many_p ? "Comma-separated error rates" : "Error rate")->required();
        if (many_p) {
            opt->delimiter(',');
        } else {
            opt->expected(1);
        }
        cmd->add_option("--p-rel", p_rel, "Z share of errors for the biased model")->capture_default_str();
        cmd->add_option("--n", n, "Samples per rate")->capture_default_str();
        cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
        cmd->add_option("--workers", workers, "Worker threads (results do not depend on it)")
            ->check(CLI::PositiveNumber);
        target.add_options(cmd);
    }

    json to_json() const {
        return {{"decoder", decoder}, {"d", d},       {"model", model},
                {"p", p},             {"p_rel", p_rel}, {"n", n},
                {"seed", seed},       {"workers", workers}};
    }
};

int cmd_sweep(const EvalArgs &args, const std::string &cmdline, const char *kind) {
    toricq_decoder decoder = parse_decoder(args.decoder);
    Network net = network_for(decoder, args.target, args.d);
    json prov = provenance(cmdline, args.to_json(), net.get());
    char *csv = nullptr;
    check(toricq_sweep_csv(decoder, net.get(), args.d, args.model.c_str(), args.p.data(), args.p.size(), args.p_rel,
                           args.n, args.seed, args.workers, provenance_lines(prov).c_str(), &csv));
    std::string text = take(csv);
    fs::path out = args.target.output(std::string(kind) + "_" + args.decoder + "_d" + std::to_string(args.d) + "_" +
                                      args.model + ".csv");
    write_text(out, text);
    print_eval_table(text);
    std::cerr << "wrote " << out.string() << "\n";
    return kExitOk;
}

struct AsymptoticArgs {
    std::string decoder = "mcc";
    int d = 5;
    int64_t samples = 0;
    uint64_t seed = 0;
    int workers = default_workers();
    Target target;
};

int cmd_asymptotic(const AsymptoticArgs &args, const std::string &cmdline) {
    toricq_decoder decoder = parse_decoder(args.decoder);
    Network net = network_for(decoder, args.target, args.d);
    char *out = nullptr;
    check(toricq_asymptotic_json(decoder, net.get(), args.d, args.seed, args.samples, args.workers, &out));
    json estimate = json::parse(take(out));
    json arguments = {{"decoder", args.decoder},
                      {"d", args.d},
                      {"samples", args.samples},
                      {"seed", args.seed},
                      {"workers", args.workers}};
    json doc = {{"provenance", provenance(cmdline, arguments, net.get())}, {"result", estimate}};
    fs::path path = args.target.output("asymptotic_" + args.decoder + "_d" + std::to_string(args.d) + ".json");
    write_text(path, doc.dump(2) + "\n");

    char line[256];
    std::snprintf(line, sizeof(line), "%-8s %3s %12s %12s %12s %s\n", "decoder", "d", "estimate", "stderr",
                  "analytic", "method");
    std::cout << line;
    std::snprintf(line, sizeof(line), "%-8s %3d %12.4e %12.4e %12.4e %s\n", args.decoder.c_str(), args.d,
                  estimate["f"].get<double>(), estimate["f_stderr"].get<double>(), estimate["analytic"].get<double>(),
                  estimate["exhaustive"].get<bool>() ? "exhaustive" : "sampled");
    std::cout << line;
    std::cerr << "wrote " << path.string() << "\n";
    return kExitOk;
}

struct PairedArgs {
    std::string decoder_a = "dqn";
    std::string decoder_b = "mwpm";
    std::string checkpoint_b;
    int d = 3;
    std::string model = "depolarizing";
    double p = 0.15;
    double p_rel = 1.0 / 3.0;
    int64_t n = 10000;
    uint64_t seed = 0;
    int workers = default_workers();
    Target target;
};

int cmd_paired(const PairedArgs &args, const std::string &cmdline) {
    toricq_decoder a = parse_decoder(args.decoder_a);
    toricq_decoder b = parse_decoder(args.decoder_b);
    Network net_a = network_for(a, args.target, args.d);
    Network net_b;
    if (b == TORICQ_DECODER_DQN) {
        net_b = args.checkpoint_b.empty() ? network_for(b, args.target, args.d)
                                          : load_network(args.checkpoint_b, args.d);
    }
    char *out = nullptr;
    check(toricq_paired_json(a, net_a.get(), b, net_b.get(), args.d, args.model.c_str(), args.p, args.p_rel, args.n,
                             args.seed, args.workers, &out));
    json result = json::parse(take(out));
    json arguments = {{"decoder_a", args.decoder_a}, {"decoder_b", args.decoder_b}, {"d", args.d},
                      {"model", args.model},         {"p", args.p},                 {"p_rel", args.p_rel},
                      {"n", args.n},                 {"seed", args.seed},           {"workers", args.workers}};
    result.erase("outcomes");
    json doc = {{"provenance", provenance(cmdline, arguments, net_a ? net_a.get() : net_b.get())}, {"result", result}};
    fs::path path =
        args.target.output("paired_" + args.decoder_a + "_" + args.decoder_b + "_d" + std::to_string(args.d) + ".json");
    write_text(path, doc.dump(2) + "\n");
    std::cout << result.dump(2) << "\n";
    std::cerr << "wrote " << path.string() << "\n";
    return kExitOk;
}

int cmd_analytic(int d, double p) {
    char *out = nullptr;
    check(toricq_analytic_json(d, p, &out));
    json j = json::parse(take(out));
    j["version"] = toricq_version();
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

std::vector<std::string> grid_rows(const json &grid, char mark) {
    std::vector<std::string> rows;
    for (const json &row : grid) {
        std::string line;
        for (const json &v : row) {
            line += line.empty() ? "" : " ";
            line += v.get<int>() ? mark : '.';
        }
        rows.push_back(line);
    }
    return rows;
}

void render_syndrome(std::ostream &out, const json &syndrome) {
    std::vector<std::string> v = grid_rows(syndrome["vertex"], 'v');
    std::vector<std::string> pl = grid_rows(syndrome["plaquette"], 'p');
    std::string header = "vertex";
    header.resize(std::max<size_t>(v.empty() ? 0 : v[0].size(), 6) + 4, ' ');
    out << "    " << header << "plaquette\n";
    for (size_t r = 0; r < v.size(); ++r) {
        std::string left = v[r];
        left.resize(header.size(), ' ');
        out << "    " << left << pl[r] << "\n";
    }
}

void render_trace(std::ostream &out, const json &doc) {
    const json &trace = doc["trace"];
    if (doc.contains("error")) {
        out << "sampled error (seed " << doc["seed"] << ", p " << doc["p"] << "):";
        for (const json &e : doc["error"]) {
            out << " " << e["op"].get<std::string>() << "@" << e["sublattice"].get<std::string>() << "(" << e["row"]
                << "," << e["col"] << ")";
        }
        out << "\n";
    }
    int step = 0;
    for (const json &st : trace["steps"]) {
        ++step;
        render_syndrome(out, st["syndrome"]);
        const json &q = st["qubit"];
        char line[200];
        std::snprintf(line, sizeof(line), "step %d: %s on %s(%d,%d)   Q[X,Y,Z] = [%.3f, %.3f, %.3f]\n", step,
                      st["op"].get<std::string>().c_str(), q["sublattice"].get<std::string>().c_str(),
                      q["row"].get<int>(), q["col"].get<int>(), st["q"][0].get<double>(), st["q"][1].get<double>(),
                      st["q"][2].get<double>());
        out << line;
    }
    out << "final syndrome:\n";
    render_syndrome(out, trace["final"]);
    out << "length: " << trace["length"] << "\n";
    out << "verdict: " << doc["verdict"].get<std::string>() << " (" << doc["reason"].get<std::string>() << ")\n";
}

struct InspectArgs {
    std::string checkpoint;
    std::string run_id;
    std::string root;
    std::string syndrome;
    uint64_t seed = 0;
    double p = 0.1;
    int cap = 75;
    bool as_json = false;
};

int cmd_inspect(const InspectArgs &args) {
    Target target;
    target.checkpoint = args.checkpoint;
    target.run_id = args.run_id;
    if (!args.root.empty()) {
        target.root = args.root;
    }
    std::string path = target.resolve_checkpoint();
    if (path.empty()) {
        input_error("inspect needs --checkpoint or --run");
    }
    Network net = load_network(path, 0);
    std::string syndrome;
    if (!args.syndrome.empty()) {
        syndrome = read_text(args.syndrome, "syndrome file");
    }
    char *out = nullptr;
    check(toricq_inspect_json(net.get(), args.syndrome.empty() ? nullptr : syndrome.c_str(), args.seed, args.p,
                              args.cap, &out));
    json doc = json::parse(take(out));
    doc["checkpoint"] = path;
    if (args.as_json) {
        std::cout << doc.dump(2) << "\n";
    } else {
        render_trace(std::cout, doc);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Deep Q-learning decoders for the toric code"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("toricq ") + toricq_version());

    TrainArgs train_args;
    auto *train = app.add_subcommand("train", "Train a decoder from a JSON run config");
    train->add_option("--config", train_args.config, "Run config file")->required();
    train->add_option("--run-id", train_args.run_id, "Run id (default derived from the config)");
    train->add_option("--runs-dir", train_args.root, "Output root (default $TORICQ_RUNS_DIR or ./runs)");
    train->add_flag("--force", train_args.force, "Replace an existing run directory");
    train->add_option("--workers", train_args.workers, "Worker threads for the post-training evaluation")
        ->check(CLI::PositiveNumber);

    EvalArgs eval_args;
    auto *evaluate = app.add_subcommand("evaluate", "Success rate at one error rate");
    eval_args.add_options(evaluate, false);

    EvalArgs sweep_args;
    auto *sweep = app.add_subcommand("sweep", "Success rates over a list of error rates, as CSV");
    sweep_args.add_options(sweep, true);

    AsymptoticArgs asym_args;
    auto *asymptotic = app.add_subcommand("asymptotic", "Low-p fail fraction from single row/column chains");
    asymptotic->add_option("--decoder", asym_args.decoder, "dqn, mwpm or mcc")->capture_default_str();
    asymptotic->add_option("--d", asym_args.d, "Code distance")->capture_default_str();
    asymptotic->add_option("--samples", asym_args.samples, "Sampled chains (0 enumerates all)")->capture_default_str();
    asymptotic->add_option("--seed", asym_args.seed, "Random seed")->capture_default_str();
    asymptotic->add_option("--workers", asym_args.workers, "Worker threads")->check(CLI::PositiveNumber);
    asym_args.target.add_options(asymptotic);

    PairedArgs paired_args;
    auto *paired = app.add_subcommand("paired", "Paired comparison of two decoders on shared errors");
    paired->add_option("--decoder-a", paired_args.decoder_a, "First decoder")->capture_default_str();
    paired->add_option("--decoder-b", paired_args.decoder_b, "Second decoder")->capture_default_str();
    paired->add_option("--checkpoint-b", paired_args.checkpoint_b, "Checkpoint for a second dqn decoder");
    paired->add_option("--d", paired_args.d, "Code distance")->capture_default_str();
    paired->add_option("--model", paired_args.model, "Noise model")->capture_default_str();
    paired->add_option("--p", paired_args.p, "Error rate")->capture_default_str();
    paired->add_option("--p-rel", paired_args.p_rel, "Z share for the biased model");
    paired->add_option("--n", paired_args.n, "Samples")->capture_default_str();
    paired->add_option("--seed", paired_args.seed, "Random seed")->capture_default_str();
    paired->add_option("--workers", paired_args.workers, "Worker threads")->check(CLI::PositiveNumber);
    paired_args.target.add_options(paired);

    int analytic_d = 5;
    double analytic_p = 0.01;
    auto *analytic = app.add_subcommand("analytic", "Closed-form low-p fail rates as JSON");
    analytic->add_option("--d", analytic_d, "Code distance")->capture_default_str();
    analytic->add_option("--p", analytic_p, "Error rate")->capture_default_str();

    InspectArgs inspect_args;
    auto *inspect = app.add_subcommand("inspect", "Step-by-step greedy decoding trace");
    inspect->add_option("--checkpoint", inspect_args.checkpoint, "Checkpoint file");
    inspect->add_option("--run", inspect_args.run_id, "Run id (uses its latest checkpoint)");
    inspect->add_option("--runs-dir", inspect_args.root, "Output root");
    auto *syn = inspect->add_option("--syndrome", inspect_args.syndrome, "Syndrome JSON file");
    inspect->add_option("--seed", inspect_args.seed, "Seed for a sampled error")->excludes(syn);
    inspect->add_option("--p", inspect_args.p, "Depolarizing rate for a sampled error")->capture_default_str();
    inspect->add_option("--cap", inspect_args.cap, "Step limit")->capture_default_str();
    inspect->add_flag("--json", inspect_args.as_json, "Print JSON instead of text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    const std::string cmdline = command_line(argc, argv);
    try {
        if (*train) {
            return cmd_train(train_args, cmdline);
        }
        if (*evaluate) {
            return cmd_sweep(eval_args, cmdline, "evaluate");
        }
        if (*sweep) {
            return cmd_sweep(sweep_args, cmdline, "sweep");
        }
        if (*asymptotic) {
            return cmd_asymptotic(asym_args, cmdline);
        }
        if (*paired) {
            return cmd_paired(paired_args, cmdline);
        }
        if (*analytic) {
            return cmd_analytic(analytic_d, analytic_p);
        }
        if (*inspect) {
            return cmd_inspect(inspect_args);
        }
    } catch (const CliFailure &f) {
        std::cerr << "error: " << f.message << "\n";
        return f.exit_code;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitRuntime;
}
