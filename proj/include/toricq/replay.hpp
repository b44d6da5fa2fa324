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

#ifndef TORICQ_REPLAY_HPP
#define TORICQ_REPLAY_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "toricq/lattice.hpp"
#include "toricq/perspectives.hpp"
#include "toricq/rng.hpp"

namespace toricq {

struct Transition {
    Perspective perspective;
    Pauli action = Pauli::X;
    double reward = 0;
    Syndrome next_syndrome;  // empty exactly when terminal
    bool terminal = false;
};

// Binary tree of partial sums over a fixed number of leaves.
class SumTree {
   public:
    explicit SumTree(size_t leaves);

    size_t leaves() const noexcept {
        return leaves_;
    }
    void set(size_t i, double value);
    double get(size_t i) const {
        return nodes_[base_ + i];
    }
    double total() const {
        return nodes_[1];
    }
    // Smallest leaf i with get(0) + ... + get(i) > u, for u in [0, total()).
    // Leaves with zero value are never returned.
    size_t find(double u) const;
    // Sum stored at internal node `node` (1 is the root).
    double node(size_t node) const {
        return nodes_[node];
    }
    size_t base() const noexcept {
        return base_;
    }

   private:
    size_t leaves_;
    size_t base_;
    std::vector<double> nodes_;
};

// Proportional prioritized replay: entry j is drawn with probability
// p_j^alpha / sum_k p_k^alpha and weighted by (M P_j)^-beta, normalized by
// the largest weight in the batch.
class PrioritizedBuffer {
   public:
    static constexpr double kPriorityFloor = 1e-6;

    explicit PrioritizedBuffer(size_t capacity = 10000, double alpha = 0.6, double beta = 0.4);

    size_t size() const noexcept {
        return entries_.size();
    }
    size_t capacity() const noexcept {
        return capacity_;
    }
    double alpha() const noexcept {
        return alpha_;
    }
    double beta() const noexcept {
        return beta_;
    }

    // New entries get the largest priority seen so far (1 in a fresh buffer)
    // and overwrite the oldest entry once the buffer is full.
    void push(Transition t);

    struct Batch {
        std::vector<size_t> indices;
        std::vector<double> weights;
    };
    // Draws n indices with replacement. Throws BufferTooSmall if fewer than
    // n entries are stored.
    Batch sample(size_t n, Rng &rng) const;

    // Sets priority |delta| + floor for each index. Throws IndexOutOfRange.
    void update_priorities(const std::vector<size_t> &indices, const std::vector<double> &abs_td);

    const Transition &at(size_t i) const {
        return entries_[i];
    }
    double priority(size_t i) const {
        return priorities_[i];
    }
    double probability(size_t i) const;
    double max_priority() const noexcept {
        return max_priority_;
    }
    // Increments every time a slot is written; lets callers cache values
    // derived from an entry.
    uint64_t serial(size_t i) const {
        return serials_[i];
    }
    const SumTree &tree() const noexcept {
        return tree_;
    }

   private:
    size_t capacity_;
    double alpha_;
    double beta_;
    size_t next_ = 0;
    uint64_t written_ = 0;
    double max_priority_ = 1.0;
    std::vector<Transition> entries_;
    std::vector<double> priorities_;
    std::vector<uint64_t> serials_;
    SumTree tree_;
};

}  // namespace toricq

#endif
