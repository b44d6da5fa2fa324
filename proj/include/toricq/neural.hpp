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

#ifndef TORICQ_NEURAL_HPP
#define TORICQ_NEURAL_HPP

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toricq/rng.hpp"

namespace toricq {

// Periodic and Zero keep the spatial size; Valid shrinks it by 2.
enum class Padding : uint8_t { Periodic, Zero, Valid };

struct ConvSpec {
    int out_channels = 0;
    Padding padding = Padding::Zero;
    bool operator==(const ConvSpec &) const = default;
};

// Kernel 3, stride 1 convolutions, each followed by a rectified-linear unit,
// then a dense layer to `outputs` Q-values.
struct QNetworkConfig {
    int d = 3;
    int in_channels = 2;
    std::vector<ConvSpec> convs;
    int outputs = 3;

    // Four 32-channel layers; small enough to train on one CPU core.
    static QNetworkConfig desk(int d);
    // Wide d = 5 and d = 7 architectures. Their parameter totals require
    // the last convolution to be unpadded.
    static QNetworkConfig large_d5();
    static QNetworkConfig large_d7();
    // "desk", "large5" or "large7"; throws ConfigInvalid.
    static QNetworkConfig preset(const std::string &name, int d);

    // Throws ConfigInvalid on empty stacks, non-positive channels, a
    // non-periodic first layer or spatial size collapsing below 1.
    void validate() const;
    int output_height() const;
    std::vector<int64_t> layer_parameter_counts() const;
    int64_t parameter_count() const;

    // Compact text form, e.g. "d=5;in=2;conv=128P,128Z,64V;out=3".
    std::string descriptor() const;
    static QNetworkConfig from_descriptor(const std::string &text);
    bool operator==(const QNetworkConfig &) const = default;
};

// Parameter-sized buffers. A fixed base alignment keeps the vectorized
// kernels summing in the same order from run to run.
template <typename T>
using ParamVector = std::vector<T, Eigen::aligned_allocator<T>>;

template <typename T>
struct Tensor {
    std::vector<int> shape;
    std::vector<T> data;
};

enum class LossKind { Absolute, SmoothAbsolute };

template <typename T>
class QNetworkT {
   public:
    using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

    // Activations kept by forward() for backward().
    struct Cache {
        int batch = 0;
        std::vector<Mat> cols;
        std::vector<Mat> acts;
        bool valid() const {
            return batch > 0 && !acts.empty();
        }
    };

    // All parameters start at zero.
    explicit QNetworkT(QNetworkConfig config);

    // Weights uniform in +-sqrt(6 / (fan_in + fan_out)), biases zero.
    void init_glorot(Rng &rng);

    const QNetworkConfig &config() const noexcept {
        return config_;
    }
    ParamVector<T> &parameters() noexcept {
        return params_;
    }
    const ParamVector<T> &parameters() const noexcept {
        return params_;
    }
    size_t parameter_count() const noexcept {
        return params_.size();
    }
    int input_size() const noexcept {
        return config_.in_channels * config_.d * config_.d;
    }

    // `grids` holds `batch` inputs of input_size() values, each channel-major
    // (channel, row, col). Returns an outputs x batch matrix.
    Mat forward_batch(const T *grids, int batch, Cache *cache = nullptr) const;
    // Single input of shape (in_channels, d, d); throws ShapeMismatch.
    Tensor<T> forward(const Tensor<T> &input) const;
    // Output of the first convolution (after its activation) for one input,
    // as a (channels, h, w) tensor.
    Tensor<T> first_layer(const Tensor<T> &input) const;

    // Gradient of sum_ij dout(i,j) * out(i,j) with respect to every
    // parameter, in parameters() order. Throws MissingCache.
    ParamVector<T> backward(const Cache &cache, const Mat &dout) const;

    bool same_architecture(const QNetworkT &other) const {
        return config_ == other.config_;
    }
    template <typename U>
    QNetworkT<U> cast() const {
        QNetworkT<U> out(config_);
        for (size_t i = 0; i < params_.size(); i++) {
            out.parameters()[i] = static_cast<U>(params_[i]);
        }
        return out;
    }

   private:
    struct Layer {
        int cin = 0;
        int cout = 0;
        int hin = 0;
        int hout = 0;
        size_t w_offset = 0;
        size_t b_offset = 0;
        // src[pos * 9 + kk]: input pixel feeding output pixel pos through
        // kernel tap kk, or -1 for zero padding.
        std::vector<int> src;
    };

    Mat gather(const Layer &layer, const Mat &in, int batch) const;

    QNetworkConfig config_;
    std::vector<Layer> layers_;
    size_t dense_w_offset_ = 0;
    size_t dense_b_offset_ = 0;
    int dense_inputs_ = 0;
    ParamVector<T> params_;
};

using QNetwork = QNetworkT<float>;
using QNetwork64 = QNetworkT<double>;

// Mean over the batch of w_j |y_j - Q(P_j, a_j)|. Fills `dout` (outputs x
// batch) with the loss gradient with respect to the network output and
// `td_errors` with y_j - Q(P_j, a_j). The absolute value has subgradient 0
// at the kink; SmoothAbsolute replaces it by a quadratic inside |x| < 1.
template <typename T>
T weighted_td_loss(const typename QNetworkT<T>::Mat &q, const std::vector<int> &actions,
                   const std::vector<T> &targets, const std::vector<T> &weights, LossKind kind,
                   typename QNetworkT<T>::Mat &dout, std::vector<T> *td_errors = nullptr);

template <typename T>
struct AdamStateT {
    int64_t step = 0;
    double lr = 0.00025;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    ParamVector<T> m;
    ParamVector<T> v;
};
using AdamState = AdamStateT<float>;

// Bias-corrected Adam update. Moments are sized on first use; throws
// ShapeMismatch if params, grads and moments disagree.
template <typename T>
void adam_step(AdamStateT<T> &state, ParamVector<T> &params, const ParamVector<T> &grads);

struct CheckpointMeta {
    int d = 0;
    std::string architecture;
    std::string perspective_convention;
    std::string config_hash;
    uint64_t seed = 0;
    int64_t step = 0;
    // Free-form JSON object text stored alongside (resolved run config).
    std::string extra = "{}";
};

struct Checkpoint {
    QNetwork net;
    std::optional<AdamState> adam;
    CheckpointMeta meta;
};

constexpr uint32_t kCheckpointFormat = 1;

// Layout: 8-byte magic, u32 format, u32 header length, JSON header, then
// little-endian float32 parameters (and Adam moments when present), then a
// CRC-32 of everything before it.
void save_checkpoint(const std::string &path, const QNetwork &net, const AdamState *adam, const CheckpointMeta &meta);
// Throws Io, CorruptFile (bad magic, size or checksum) or VersionMismatch
// (unknown format).
Checkpoint load_checkpoint(const std::string &path);
// Additionally throws VersionMismatch when the stored distance differs.
Checkpoint load_checkpoint(const std::string &path, int expected_d);

}  // namespace toricq

#endif
