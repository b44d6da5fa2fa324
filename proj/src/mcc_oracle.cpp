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

#include "toricq/mcc_oracle.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <bitset>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "toricq/error.hpp"

namespace toricq {

namespace {

constexpr int kCells = 9;
constexpr int kQubits = 18;
constexpr char kTableMagic[8] = {'T', 'Q', 'M', 'C', 'C', 'T', 'B', 'L'};
constexpr uint32_t kTableFormat = 1;

// Packed-state geometry for d = 3, laid out like Syndrome::pack.
struct SmallGeometry {
    uint32_t flip[kQubits][4] = {};  // indexed by Pauli bits
    uint32_t adjacent[kQubits] = {};

    SmallGeometry() {
        const int d = SyndromeTable::kDistance;
        for (int k = 0; k < kQubits; k++) {
            Qubit q = qubit_at(d, k);
            uint32_t plaq = 0;
            uint32_t vert = 0;
            for (const Cell &c : plaquettes_of(d, q)) {
                plaq ^= 1u << (c.row * d + c.col);
            }
            for (const Cell &c : vertices_of(d, q)) {
                vert ^= 1u << (kCells + c.row * d + c.col);
            }
            flip[k][static_cast<int>(Pauli::X)] = plaq;
            flip[k][static_cast<int>(Pauli::Z)] = vert;
            flip[k][static_cast<int>(Pauli::Y)] = plaq | vert;
            adjacent[k] = plaq | vert;
        }
    }
};

const SmallGeometry &small_geometry() {
    static const SmallGeometry g;
    return g;
}

void require_d3(CodeDistance d) {
    if (d.value() != SyndromeTable::kDistance) {
        throw Error(ErrorCode::UnsupportedDistance,
                    "exact syndrome tables exist only for d = 3 (got d = " + std::to_string(d.value()) + ")");
    }
}

uint32_t packed_of(const Syndrome &s) {
    require_d3(CodeDistance(s.distance()));
    return static_cast<uint32_t>(s.pack());
}

template <typename T>
void put(std::string &out, const T &v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.append(buf, sizeof(T));
}

template <typename T>
T take(const std::string &in, size_t &pos) {
    if (pos + sizeof(T) > in.size()) {
        throw Error(ErrorCode::CorruptFile, "syndrome table file is truncated");
    }
    T v;
    std::memcpy(&v, in.data() + pos, sizeof(T));
    pos += sizeof(T);
    return v;
}

}  // namespace

double step_reward(int defects_before, int defects_after) {
    if (defects_after == 0) {
        return kTerminalReward;
    }
    return static_cast<double>(defects_before - defects_after);
}

SyndromeTable SyndromeTable::build_min_steps(CodeDistance d) {
    require_d3(d);
    const SmallGeometry &g = small_geometry();
    SyndromeTable t;
    t.steps_.assign(kStates, -1);
    t.steps_[0] = 0;
    std::vector<uint32_t> frontier = {0};
    int depth = 0;
    while (!frontier.empty()) {
        std::vector<uint32_t> next;
        for (uint32_t after : frontier) {
            for (int k = 0; k < kQubits; k++) {
                for (Pauli op : kActions) {
                    uint32_t before = after ^ g.flip[k][static_cast<int>(op)];
                    // The action must be legal in the earlier state.
                    if (before != 0 && t.steps_[before] < 0 && (before & g.adjacent[k]) != 0) {
                        t.steps_[before] = static_cast<int8_t>(depth + 1);
                        next.push_back(before);
                    }
                }
            }
        }
        frontier = std::move(next);
        depth++;
    }
    return t;
}

SyndromeTable SyndromeTable::build(CodeDistance d, double gamma, double tolerance) {
    if (!(gamma >= 0.0 && gamma < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "discount must lie in [0, 1)");
    }
    SyndromeTable t = build_min_steps(d);
    t.gamma_ = gamma;
    t.run_value_iteration(tolerance);
    return t;
}

void SyndromeTable::run_value_iteration(double tolerance) {
    const SmallGeometry &g = small_geometry();
    std::vector<uint32_t> order;
    for (uint32_t s = 1; s < static_cast<uint32_t>(kStates); s++) {
        if (steps_[s] > 0) {
            order.push_back(s);
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) { return steps_[a] < steps_[b]; });

    values_.assign(kStates, 0.0);
    double delta = std::numeric_limits<double>::infinity();
    while (delta >= tolerance) {
        delta = 0;
        for (uint32_t s : order) {
            int e = std::popcount(s);
            double best = -std::numeric_limits<double>::infinity();
            for (int k = 0; k < kQubits; k++) {
                if ((s & g.adjacent[k]) == 0) {
                    continue;
                }
                for (Pauli op : kActions) {
                    uint32_t n = s ^ g.flip[k][static_cast<int>(op)];
                    double q = n == 0 ? kTerminalReward : (e - std::popcount(n)) + gamma_ * values_[n];
                    best = std::max(best, q);
                }
            }
            delta = std::max(delta, std::abs(best - values_[s]));
            values_[s] = best;
        }
    }
}

int SyndromeTable::min_steps(const Syndrome &s) const {
    return steps_[packed_of(s)];
}

double SyndromeTable::value(const Syndrome &s) const {
    return value_packed(packed_of(s));
}

double SyndromeTable::value_packed(uint32_t packed) const {
    if (values_.empty()) {
        throw Error(ErrorCode::MissingCache, "syndrome table was built without state values");
    }
    return values_[packed];
}

std::vector<Action> SyndromeTable::legal_actions(const Syndrome &s) {
    std::vector<Action> out;
    int d = s.distance();
    for (int k = 0; k < 2 * d * d; k++) {
        Qubit q = qubit_at(d, k);
        if (s.touches_defect(q)) {
            for (Pauli op : kActions) {
                out.push_back({q, op});
            }
        }
    }
    return out;
}

std::vector<Action> SyndromeTable::shortest_actions(const Syndrome &s) const {
    std::vector<Action> out;
    int here = min_steps(s);
    if (here <= 0) {
        return out;
    }
    for (const Action &a : legal_actions(s)) {
        Syndrome n = s;
        n.apply(a.qubit, a.op);
        if (min_steps(n) == here - 1) {
            out.push_back(a);
        }
    }
    return out;
}

double SyndromeTable::bellman_backup(const Syndrome &s) const {
    if (s.empty()) {
        return 0.0;
    }
    double best = -std::numeric_limits<double>::infinity();
    int e = s.defect_count();
    for (const Action &a : legal_actions(s)) {
        Syndrome n = s;
        n.apply(a.qubit, a.op);
        double q = step_reward(e, n.defect_count());
        if (!n.empty()) {
            q += gamma_ * value(n);
        }
        best = std::max(best, q);
    }
    return best;
}

void SyndromeTable::save(const std::string &path) const {
    std::string blob(kTableMagic, sizeof(kTableMagic));
    put(blob, kTableFormat);
    put(blob, static_cast<uint32_t>(kDistance));
    put(blob, gamma_);
    put(blob, kRewardSchemeVersion);
    put(blob, static_cast<uint32_t>(has_values()));
    put(blob, static_cast<uint64_t>(steps_.size()));
    blob.append(reinterpret_cast<const char *>(steps_.data()), steps_.size());
    if (has_values()) {
        blob.append(reinterpret_cast<const char *>(values_.data()), values_.size() * sizeof(double));
    }
    uint32_t crc = crc32(0L, reinterpret_cast<const Bytef *>(blob.data()), static_cast<uInt>(blob.size()));
    put(blob, crc);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write syndrome table to " + path);
    }
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
    if (!out) {
        throw Error(ErrorCode::Io, "failed writing syndrome table to " + path);
    }
}

SyndromeTable SyndromeTable::load(const std::string &path, double gamma) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open syndrome table " + path);
    }
    std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (blob.size() < sizeof(kTableMagic) + sizeof(uint32_t) ||
        std::memcmp(blob.data(), kTableMagic, sizeof(kTableMagic)) != 0) {
        throw Error(ErrorCode::CorruptFile, path + " is not a syndrome table file");
    }
    size_t body = blob.size() - sizeof(uint32_t);
    uint32_t stored_crc;
    std::memcpy(&stored_crc, blob.data() + body, sizeof(uint32_t));
    if (crc32(0L, reinterpret_cast<const Bytef *>(blob.data()), static_cast<uInt>(body)) != stored_crc) {
        throw Error(ErrorCode::CorruptFile, "checksum mismatch in " + path);
    }
    blob.resize(body);

    size_t pos = sizeof(kTableMagic);
    uint32_t format = take<uint32_t>(blob, pos);
    uint32_t d = take<uint32_t>(blob, pos);
    double file_gamma = take<double>(blob, pos);
    uint32_t scheme = take<uint32_t>(blob, pos);
    uint32_t with_values = take<uint32_t>(blob, pos);
    uint64_t n = take<uint64_t>(blob, pos);
    if (format != kTableFormat || d != kDistance || scheme != kRewardSchemeVersion || file_gamma != gamma ||
        n != static_cast<uint64_t>(kStates)) {
        throw Error(ErrorCode::VersionMismatch, path + " holds a table for a different (d, gamma, reward scheme)");
    }
    size_t need = n + (with_values ? n * sizeof(double) : 0);
    if (blob.size() - pos != need) {
        throw Error(ErrorCode::CorruptFile, "unexpected payload size in " + path);
    }
    SyndromeTable t;
    t.gamma_ = file_gamma;
    t.steps_.resize(n);
    std::memcpy(t.steps_.data(), blob.data() + pos, n);
    pos += n;
    if (with_values) {
        t.values_.resize(n);
        std::memcpy(t.values_.data(), blob.data() + pos, n * sizeof(double));
    }
    return t;
}

SyndromeTable SyndromeTable::load_or_build(const std::string &path, double gamma) {
    try {
        SyndromeTable t = load(path, gamma);
        if (t.has_values()) {
            return t;
        }
    } catch (const Error &) {
    }
    SyndromeTable t = build(CodeDistance(kDistance), gamma);
    t.save(path);
    return t;
}

ChainLine restricted_line(const PauliFrame &frame) {
    int d = frame.distance();
    std::vector<Qubit> support;
    for (int k = 0; k < 2 * d * d; k++) {
        if (frame.at_index(k) != Pauli::I) {
            support.push_back(qubit_at(d, k));
        }
    }
    if (support.size() < 2) {
        throw Error(ErrorCode::UnsupportedInput, "restricted decoding needs at least two errors on one line");
    }
    const Qubit &a = support[0];
    bool same_sub = true;
    bool same_row = true;
    bool same_col = true;
    for (const Qubit &q : support) {
        same_sub &= q.sublattice == a.sublattice;
        same_row &= q.row == a.row;
        same_col &= q.col == a.col;
    }
    if (!same_sub || !(same_row || same_col)) {
        throw Error(ErrorCode::UnsupportedInput, "error support is not confined to a single row or column");
    }
    return same_row ? ChainLine{a.sublattice, true, a.row} : ChainLine{a.sublattice, false, a.col};
}

namespace {

using CellSet = std::bitset<CodeDistance::kMax * CodeDistance::kMax>;

// Masks m over line positions whose X (or Z) product has no syndrome: the
// null space of the line's boundary map, found by GF(2) elimination.
std::vector<uint32_t> line_kernel(int d, const ChainLine &line, bool x_type) {
    struct Row {
        CellSet v;
        uint32_t combo;
        int pivot;
    };
    std::vector<Row> basis;
    std::vector<uint32_t> kernel_basis;
    for (int t = 0; t < d; t++) {
        Qubit q = line.qubit(t);
        CellSet v;
        for (const Cell &c : x_type ? plaquettes_of(d, q) : vertices_of(d, q)) {
            v.flip(c.row * d + c.col);
        }
        uint32_t combo = 1u << t;
        for (const Row &b : basis) {
            if (v.test(b.pivot)) {
                v ^= b.v;
                combo ^= b.combo;
            }
        }
        if (v.none()) {
            kernel_basis.push_back(combo);
        } else {
            int pivot = 0;
            while (!v.test(pivot)) {
                pivot++;
            }
            basis.push_back({v, combo, pivot});
        }
    }
    std::vector<uint32_t> span = {0};
    for (uint32_t k : kernel_basis) {
        size_t n = span.size();
        for (size_t i = 0; i < n; i++) {
            span.push_back(span[i] ^ k);
        }
    }
    return span;
}

}  // namespace

std::pair<int, int> mcc_restricted_counts(const PauliFrame &frame) {
    ChainLine line = restricted_line(frame);
    int d = frame.distance();
    uint32_t ex = 0;
    uint32_t ez = 0;
    for (int t = 0; t < d; t++) {
        Pauli p = frame.at(line.qubit(t));
        ex |= static_cast<uint32_t>(has_x(p)) << t;
        ez |= static_cast<uint32_t>(has_z(p)) << t;
    }
    std::vector<uint32_t> kx = line_kernel(d, line, true);
    std::vector<uint32_t> kz = line_kernel(d, line, false);

    int best = std::numeric_limits<int>::max();
    int failing = 0;
    int total = 0;
    for (uint32_t mx : kx) {
        for (uint32_t mz : kz) {
            uint32_t cx = ex ^ mx;
            uint32_t cz = ez ^ mz;
            int w = std::popcount(cx | cz);
            if (w > best) {
                continue;
            }
            PauliFrame residual = frame;
            for (int t = 0; t < d; t++) {
                int bits = static_cast<int>((cx >> t) & 1) | (static_cast<int>((cz >> t) & 1) << 1);
                residual.apply(line.qubit(t), static_cast<Pauli>(bits));
            }
            bool fails = is_logical_failure(homology_class(residual));
            if (w < best) {
                best = w;
                failing = 0;
                total = 0;
            }
            failing += fails;
            total++;
        }
    }
    return {failing, total};
}

double mcc_decode_restricted(const PauliFrame &frame) {
    auto [failing, total] = mcc_restricted_counts(frame);
    return static_cast<double>(failing) / total;
}

}  // namespace toricq
