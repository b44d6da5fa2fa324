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

#include "toricq/replay.hpp"

#include <algorithm>
#include <cmath>

#include "toricq/error.hpp"

namespace toricq {

SumTree::SumTree(size_t leaves) : leaves_(leaves), base_(1) {
    if (leaves == 0) {
        throw Error(ErrorCode::InvalidArgument, "sum tree needs at least one leaf");
    }
    while (base_ < leaves) {
        base_ <<= 1;
    }
    nodes_.assign(2 * base_, 0.0);
}

void SumTree::set(size_t i, double value) {
    if (i >= leaves_) {
        throw Error(ErrorCode::IndexOutOfRange, "sum tree leaf out of range");
    }
    size_t n = base_ + i;
    nodes_[n] = value;
    // Parents are recomputed from both children so the stored sums never
    // drift from a fresh recomputation.
    for (n >>= 1; n >= 1; n >>= 1) {
        nodes_[n] = nodes_[2 * n] + nodes_[2 * n + 1];
    }
}

size_t SumTree::find(double u) const {
    size_t n = 1;
    while (n < base_) {
        double left = nodes_[2 * n];
        if (u < left || nodes_[2 * n + 1] <= 0.0) {
            n = 2 * n;
        } else {
            u -= left;
            n = 2 * n + 1;
        }
    }
    size_t i = n - base_;
    // Rounding can only push the walk right onto an empty leaf; step back to
    // the nearest populated one.
    while (i > 0 && nodes_[base_ + i] <= 0.0) {
        i--;
    }
    return i;
}

PrioritizedBuffer::PrioritizedBuffer(size_t capacity, double alpha, double beta)
    : capacity_(capacity), alpha_(alpha), beta_(beta), tree_(std::max<size_t>(capacity, 1)) {
    if (capacity == 0) {
        throw Error(ErrorCode::InvalidArgument, "replay capacity must be positive");
    }
    if (!(alpha >= 0) || !(beta >= 0)) {
        throw Error(ErrorCode::InvalidArgument, "replay exponents must be non-negative");
    }
    entries_.reserve(capacity);
    priorities_.reserve(capacity);
    serials_.reserve(capacity);
}

void PrioritizedBuffer::push(Transition t) {
    size_t slot;
    if (entries_.size() < capacity_) {
        slot = entries_.size();
        entries_.push_back(std::move(t));
        priorities_.push_back(max_priority_);
        serials_.push_back(++written_);
    } else {
        slot = next_;
        entries_[slot] = std::move(t);
        priorities_[slot] = max_priority_;
        serials_[slot] = ++written_;
    }
    next_ = (slot + 1) % capacity_;
    tree_.set(slot, std::pow(max_priority_, alpha_));
}

PrioritizedBuffer::Batch PrioritizedBuffer::sample(size_t n, Rng &rng) const {
    if (entries_.size() < n || entries_.empty()) {
        throw Error(ErrorCode::BufferTooSmall, "replay holds " + std::to_string(entries_.size()) +
                                                   " transitions, batch needs " + std::to_string(n));
    }
    Batch b;
    b.indices.resize(n);
    b.weights.resize(n);
    const double total = tree_.total();
    const double m = static_cast<double>(entries_.size());
    double max_w = 0;
    for (size_t j = 0; j < n; j++) {
        size_t i = tree_.find(rng.uniform() * total);
        b.indices[j] = i;
        double p = tree_.get(i) / total;
        b.weights[j] = std::pow(m * p, -beta_);
        max_w = std::max(max_w, b.weights[j]);
    }
    for (double &w : b.weights) {
        w /= max_w;
    }
    return b;
}

void PrioritizedBuffer::update_priorities(const std::vector<size_t> &indices, const std::vector<double> &abs_td) {
    if (indices.size() != abs_td.size()) {
        throw Error(ErrorCode::ShapeMismatch, "indices and TD errors differ in length");
    }
    for (size_t k = 0; k < indices.size(); k++) {
        if (indices[k] >= entries_.size()) {
            throw Error(ErrorCode::IndexOutOfRange, "replay index " + std::to_string(indices[k]) + " out of range");
        }
    }
    for (size_t k = 0; k < indices.size(); k++) {
        double p = std::abs(abs_td[k]) + kPriorityFloor;
        priorities_[indices[k]] = p;
        max_priority_ = std::max(max_priority_, p);
        tree_.set(indices[k], std::pow(p, alpha_));
    }
}

double PrioritizedBuffer::probability(size_t i) const {
    if (i >= entries_.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "replay index out of range");
    }
    return tree_.get(i) / tree_.total();
}

}  // namespace toricq
