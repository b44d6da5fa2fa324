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

#include "toricq/neural.hpp"

#include <zlib.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "toricq/error.hpp"

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

namespace toricq {

namespace {

constexpr int kTaps = 9;
constexpr char kCheckpointMagic[8] = {'T', 'Q', 'C', 'K', 'P', 'T', '0', '1'};

char padding_letter(Padding p) {
    switch (p) {
        case Padding::Periodic:
            return 'P';
        case Padding::Zero:
            return 'Z';
        case Padding::Valid:
            return 'V';
    }
    return '?';
}

Padding padding_from_letter(char c) {
    switch (c) {
        case 'P':
            return Padding::Periodic;
        case 'Z':
            return Padding::Zero;
        case 'V':
            return Padding::Valid;
    }
    throw Error(ErrorCode::ConfigInvalid, std::string("unknown padding letter '") + c + "'");
}

QNetworkConfig stack(int d, const std::vector<int> &channels, bool valid_last) {
    QNetworkConfig c;
    c.d = d;
    for (size_t i = 0; i < channels.size(); i++) {
        Padding p = i == 0 ? Padding::Periodic : Padding::Zero;
        if (valid_last && i + 1 == channels.size()) {
            p = Padding::Valid;
        }
        c.convs.push_back({channels[i], p});
    }
    return c;
}

}  // namespace

QNetworkConfig QNetworkConfig::desk(int d) {
    return stack(d, {32, 32, 32, 32}, false);
}

QNetworkConfig QNetworkConfig::large_d5() {
    return stack(5, {128, 128, 120, 111, 104, 103, 90, 80, 73, 71, 64}, true);
}

QNetworkConfig QNetworkConfig::large_d7() {
    return stack(7, {256, 256, 251, 250, 240, 240, 235, 233, 233, 229, 225, 223, 220, 220, 220, 215, 214, 205, 204, 200},
                 true);
}

QNetworkConfig QNetworkConfig::preset(const std::string &name, int d) {
    QNetworkConfig c;
    if (name == "desk") {
        c = desk(d);
    } else if (name == "large5") {
        c = large_d5();
    } else if (name == "large7") {
        c = large_d7();
    } else {
        throw Error(ErrorCode::ConfigInvalid, "unknown architecture preset '" + name + "'");
    }
    if (c.d != d) {
        throw Error(ErrorCode::ConfigInvalid,
                    "preset '" + name + "' is defined for d = " + std::to_string(c.d) + ", not " + std::to_string(d));
    }
    return c;
}

void QNetworkConfig::validate() const {
    if (d < 3 || in_channels <= 0 || outputs <= 0) {
        throw Error(ErrorCode::ConfigInvalid, "network needs d >= 3 and positive input/output sizes");
    }
    if (convs.empty()) {
        throw Error(ErrorCode::ConfigInvalid, "network needs at least one convolution");
    }
    if (convs.front().padding != Padding::Periodic) {
        throw Error(ErrorCode::ConfigInvalid, "the first convolution must use periodic padding");
    }
    int h = d;
    for (const ConvSpec &c : convs) {
        if (c.out_channels <= 0) {
            throw Error(ErrorCode::ConfigInvalid, "convolution channels must be positive");
        }
        h -= c.padding == Padding::Valid ? 2 : 0;
    }
    if (h < 1) {
        throw Error(ErrorCode::ConfigInvalid, "unpadded convolutions shrink the grid to nothing");
    }
}

int QNetworkConfig::output_height() const {
    int h = d;
    for (const ConvSpec &c : convs) {
        h -= c.padding == Padding::Valid ? 2 : 0;
    }
    return h;
}

std::vector<int64_t> QNetworkConfig::layer_parameter_counts() const {
    std::vector<int64_t> out;
    int64_t cin = in_channels;
    for (const ConvSpec &c : convs) {
        out.push_back(cin * kTaps * c.out_channels + c.out_channels);
        cin = c.out_channels;
    }
    int64_t h = output_height();
    out.push_back(cin * h * h * outputs + outputs);
    return out;
}

int64_t QNetworkConfig::parameter_count() const {
    int64_t total = 0;
    for (int64_t n : layer_parameter_counts()) {
        total += n;
    }
    return total;
}

std::string QNetworkConfig::descriptor() const {
    std::ostringstream os;
    os << "d=" << d << ";in=" << in_channels << ";conv=";
    for (size_t i = 0; i < convs.size(); i++) {
        os << (i ? "," : "") << convs[i].out_channels << padding_letter(convs[i].padding);
    }
    os << ";out=" << outputs;
    return os.str();
}

QNetworkConfig QNetworkConfig::from_descriptor(const std::string &text) {
    QNetworkConfig c;
    c.convs.clear();
    std::istringstream fields(text);
    std::string field;
    bool seen_d = false;
    bool seen_conv = false;
    try {
        while (std::getline(fields, field, ';')) {
            auto eq = field.find('=');
            if (eq == std::string::npos) {
                throw Error(ErrorCode::ConfigInvalid, "malformed descriptor field '" + field + "'");
            }
            std::string key = field.substr(0, eq);
            std::string value = field.substr(eq + 1);
            if (key == "d") {
                c.d = std::stoi(value);
                seen_d = true;
            } else if (key == "in") {
                c.in_channels = std::stoi(value);
            } else if (key == "out") {
                c.outputs = std::stoi(value);
            } else if (key == "conv") {
                std::istringstream layers(value);
                std::string layer;
                while (std::getline(layers, layer, ',')) {
                    if (layer.size() < 2) {
                        throw Error(ErrorCode::ConfigInvalid, "malformed layer '" + layer + "'");
                    }
                    c.convs.push_back({std::stoi(layer.substr(0, layer.size() - 1)), padding_from_letter(layer.back())});
                }
                seen_conv = true;
            } else {
                throw Error(ErrorCode::ConfigInvalid, "unknown descriptor key '" + key + "'");
            }
        }
    } catch (const std::logic_error &) {
        throw Error(ErrorCode::ConfigInvalid, "malformed architecture descriptor '" + text + "'");
    }
    if (!seen_d || !seen_conv) {
        throw Error(ErrorCode::ConfigInvalid, "architecture descriptor misses d or conv: '" + text + "'");
    }
    c.validate();
    return c;
}

template <typename T>
QNetworkT<T>::QNetworkT(QNetworkConfig config) : config_(std::move(config)) {
    config_.validate();
    const int d = config_.d;
    size_t offset = 0;
    int cin = config_.in_channels;
    int h = d;
    for (const ConvSpec &spec : config_.convs) {
        Layer L;
        L.cin = cin;
        L.cout = spec.out_channels;
        L.hin = h;
        L.hout = spec.padding == Padding::Valid ? h - 2 : h;
        L.w_offset = offset;
        offset += static_cast<size_t>(L.cout) * kTaps * L.cin;
        L.b_offset = offset;
        offset += L.cout;
        L.src.resize(static_cast<size_t>(L.hout) * L.hout * kTaps);
        for (int r = 0; r < L.hout; r++) {
            for (int c = 0; c < L.hout; c++) {
                for (int kk = 0; kk < kTaps; kk++) {
                    int dr = kk / 3;
                    int dc = kk % 3;
                    int sr;
                    int sc;
                    if (spec.padding == Padding::Valid) {
                        sr = r + dr;
                        sc = c + dc;
                    } else {
                        sr = r + dr - 1;
                        sc = c + dc - 1;
                    }
                    int idx;
                    if (spec.padding == Padding::Periodic) {
                        idx = ((sr + h) % h) * h + (sc + h) % h;
                    } else if (sr < 0 || sc < 0 || sr >= h || sc >= h) {
                        idx = -1;
                    } else {
                        idx = sr * h + sc;
                    }
                    L.src[(r * L.hout + c) * kTaps + kk] = idx;
                }
            }
        }
        layers_.push_back(std::move(L));
        cin = spec.out_channels;
        h = layers_.back().hout;
    }
    dense_inputs_ = cin * h * h;
    dense_w_offset_ = offset;
    offset += static_cast<size_t>(config_.outputs) * dense_inputs_;
    dense_b_offset_ = offset;
    offset += config_.outputs;
    params_.assign(offset, T(0));
}

template <typename T>
void QNetworkT<T>::init_glorot(Rng &rng) {
    std::fill(params_.begin(), params_.end(), T(0));
    auto fill = [&](size_t offset, size_t count, double fan_in, double fan_out) {
        double limit = std::sqrt(6.0 / (fan_in + fan_out));
        for (size_t i = 0; i < count; i++) {
            params_[offset + i] = static_cast<T>((2.0 * rng.uniform() - 1.0) * limit);
        }
    };
    for (const Layer &L : layers_) {
        fill(L.w_offset, static_cast<size_t>(L.cout) * kTaps * L.cin, L.cin * kTaps, L.cout * kTaps);
    }
    fill(dense_w_offset_, static_cast<size_t>(config_.outputs) * dense_inputs_, dense_inputs_, config_.outputs);
}

template <typename T>
typename QNetworkT<T>::Mat QNetworkT<T>::gather(const Layer &L, const Mat &in, int batch) const {
    const int hw_in = L.hin * L.hin;
    const int hw_out = L.hout * L.hout;
    Mat cols(kTaps * L.cin, static_cast<Eigen::Index>(batch) * hw_out);
    for (int b = 0; b < batch; b++) {
        for (int pos = 0; pos < hw_out; pos++) {
            T *dst = cols.data() + (static_cast<size_t>(b) * hw_out + pos) * kTaps * L.cin;
            const int *src = &L.src[pos * kTaps];
            for (int kk = 0; kk < kTaps; kk++) {
                if (src[kk] < 0) {
                    std::fill(dst + kk * L.cin, dst + (kk + 1) * L.cin, T(0));
                } else {
                    const T *from = in.data() + (static_cast<size_t>(b) * hw_in + src[kk]) * L.cin;
                    std::copy(from, from + L.cin, dst + kk * L.cin);
                }
            }
        }
    }
    return cols;
}

template <typename T>
typename QNetworkT<T>::Mat QNetworkT<T>::forward_batch(const T *grids, int batch, Cache *cache) const {
    if (batch <= 0) {
        throw Error(ErrorCode::ShapeMismatch, "forward needs a positive batch size");
    }
    const int d = config_.d;
    const int hw = d * d;
    const int cin0 = config_.in_channels;
    // Activations are channels x (batch * pixels), one column per pixel.
    Mat act(cin0, static_cast<Eigen::Index>(batch) * hw);
    for (int b = 0; b < batch; b++) {
        const T *g = grids + static_cast<size_t>(b) * cin0 * hw;
        for (int c = 0; c < cin0; c++) {
            for (int pos = 0; pos < hw; pos++) {
                act(c, static_cast<Eigen::Index>(b) * hw + pos) = g[c * hw + pos];
            }
        }
    }
    if (cache) {
        cache->batch = batch;
        cache->cols.clear();
        cache->acts.clear();
    }
    for (const Layer &L : layers_) {
        Mat cols = gather(L, act, batch);
        Eigen::Map<const Mat> W(params_.data() + L.w_offset, L.cout, kTaps * L.cin);
        Eigen::Map<const Eigen::Matrix<T, Eigen::Dynamic, 1>> bias(params_.data() + L.b_offset, L.cout);
        Mat z = W * cols;
        z.colwise() += bias;
        act = z.cwiseMax(T(0));
        if (cache) {
            cache->cols.push_back(std::move(cols));
            cache->acts.push_back(act);
        }
    }
    // Each sample's activations are one contiguous (pixel, channel) block,
    // so flattening is a reinterpretation of the same memory.
    Eigen::Map<const Mat> x(act.data(), dense_inputs_, batch);
    Eigen::Map<const Mat> Wd(params_.data() + dense_w_offset_, config_.outputs, dense_inputs_);
    Eigen::Map<const Eigen::Matrix<T, Eigen::Dynamic, 1>> bd(params_.data() + dense_b_offset_, config_.outputs);
    Mat out = Wd * x;
    out.colwise() += bd;
    return out;
}

template <typename T>
Tensor<T> QNetworkT<T>::forward(const Tensor<T> &input) const {
    const int d = config_.d;
    if (input.shape != std::vector<int>{config_.in_channels, d, d} || input.data.size() != static_cast<size_t>(input_size())) {
        throw Error(ErrorCode::ShapeMismatch, "network expects input shape (" + std::to_string(config_.in_channels) +
                                                  ", " + std::to_string(d) + ", " + std::to_string(d) + ")");
    }
    Mat out = forward_batch(input.data.data(), 1);
    Tensor<T> t;
    t.shape = {config_.outputs};
    t.data.assign(out.data(), out.data() + out.size());
    return t;
}

template <typename T>
Tensor<T> QNetworkT<T>::first_layer(const Tensor<T> &input) const {
    if (input.data.size() != static_cast<size_t>(input_size())) {
        throw Error(ErrorCode::ShapeMismatch, "input size does not match the network");
    }
    Cache cache;
    forward_batch(input.data.data(), 1, &cache);
    const Mat &a = cache.acts.front();
    int h = layers_.front().hout;
    Tensor<T> t;
    t.shape = {static_cast<int>(a.rows()), h, h};
    t.data.resize(a.size());
    for (int c = 0; c < a.rows(); c++) {
        for (int pos = 0; pos < h * h; pos++) {
            t.data[c * h * h + pos] = a(c, pos);
        }
    }
    return t;
}

template <typename T>
ParamVector<T> QNetworkT<T>::backward(const Cache &cache, const Mat &dout) const {
    if (!cache.valid() || cache.acts.size() != layers_.size()) {
        throw Error(ErrorCode::MissingCache, "backward needs the activations of a preceding forward pass");
    }
    const int batch = cache.batch;
    if (dout.rows() != config_.outputs || dout.cols() != batch) {
        throw Error(ErrorCode::ShapeMismatch, "output gradient shape does not match the cached batch");
    }
    ParamVector<T> grads(params_.size(), T(0));
    using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

    const Mat &last = cache.acts.back();
    Eigen::Map<const Mat> x(last.data(), dense_inputs_, batch);
    Eigen::Map<const Mat> Wd(params_.data() + dense_w_offset_, config_.outputs, dense_inputs_);
    Eigen::Map<Mat> dWd(grads.data() + dense_w_offset_, config_.outputs, dense_inputs_);
    Eigen::Map<Vec> dbd(grads.data() + dense_b_offset_, config_.outputs);
    dWd.noalias() = dout * x.transpose();
    dbd = dout.rowwise().sum();
    Mat dx = Wd.transpose() * dout;
    Mat dact = Eigen::Map<Mat>(dx.data(), last.rows(), last.cols());

    for (int l = static_cast<int>(layers_.size()) - 1; l >= 0; l--) {
        const Layer &L = layers_[l];
        Mat dz = (cache.acts[l].array() > T(0)).select(dact, T(0));
        Eigen::Map<Mat> dW(grads.data() + L.w_offset, L.cout, kTaps * L.cin);
        Eigen::Map<Vec> db(grads.data() + L.b_offset, L.cout);
        dW.noalias() = dz * cache.cols[l].transpose();
        db = dz.rowwise().sum();
        if (l == 0) {
            break;
        }
        Eigen::Map<const Mat> W(params_.data() + L.w_offset, L.cout, kTaps * L.cin);
        Mat dcols = W.transpose() * dz;
        const int hw_in = L.hin * L.hin;
        const int hw_out = L.hout * L.hout;
        Mat dprev = Mat::Zero(L.cin, static_cast<Eigen::Index>(batch) * hw_in);
        for (int b = 0; b < batch; b++) {
            for (int pos = 0; pos < hw_out; pos++) {
                const T *from = dcols.data() + (static_cast<size_t>(b) * hw_out + pos) * kTaps * L.cin;
                const int *src = &L.src[pos * kTaps];
                for (int kk = 0; kk < kTaps; kk++) {
                    if (src[kk] >= 0) {
                        T *to = dprev.data() + (static_cast<size_t>(b) * hw_in + src[kk]) * L.cin;
                        for (int c = 0; c < L.cin; c++) {
                            to[c] += from[kk * L.cin + c];
                        }
                    }
                }
            }
        }
        dact = std::move(dprev);
    }
    return grads;
}

template <typename T>
T weighted_td_loss(const typename QNetworkT<T>::Mat &q, const std::vector<int> &actions, const std::vector<T> &targets,
                   const std::vector<T> &weights, LossKind kind, typename QNetworkT<T>::Mat &dout,
                   std::vector<T> *td_errors) {
    const auto batch = q.cols();
    if (static_cast<size_t>(batch) != actions.size() || actions.size() != targets.size() ||
        targets.size() != weights.size()) {
        throw Error(ErrorCode::ShapeMismatch, "loss inputs disagree on batch size");
    }
    dout.setZero(q.rows(), batch);
    if (td_errors) {
        td_errors->resize(batch);
    }
    T loss = 0;
    const T inv = T(1) / static_cast<T>(batch);
    for (Eigen::Index j = 0; j < batch; j++) {
        int a = actions[j];
        if (a < 0 || a >= q.rows()) {
            throw Error(ErrorCode::IndexOutOfRange, "action index out of range");
        }
        T delta = targets[j] - q(a, j);
        if (td_errors) {
            (*td_errors)[j] = delta;
        }
        T mag = std::abs(delta);
        T grad;
        if (kind == LossKind::SmoothAbsolute && mag < T(1)) {
            loss += weights[j] * T(0.5) * delta * delta * inv;
            grad = -delta;
        } else {
            loss += weights[j] * (kind == LossKind::SmoothAbsolute ? mag - T(0.5) : mag) * inv;
            grad = delta > 0 ? T(-1) : (delta < 0 ? T(1) : T(0));
        }
        dout(a, j) = weights[j] * grad * inv;
    }
    return loss;
}

template <typename T>
void adam_step(AdamStateT<T> &s, ParamVector<T> &params, const ParamVector<T> &grads) {
    if (params.size() != grads.size()) {
        throw Error(ErrorCode::ShapeMismatch, "parameter and gradient sizes differ");
    }
    if (s.m.empty() && s.v.empty()) {
        s.m.assign(params.size(), T(0));
        s.v.assign(params.size(), T(0));
    }
    if (s.m.size() != params.size() || s.v.size() != params.size()) {
        throw Error(ErrorCode::ShapeMismatch, "Adam moments do not match the parameters");
    }
    s.step++;
    const T b1 = static_cast<T>(s.beta1);
    const T b2 = static_cast<T>(s.beta2);
    const T c1 = static_cast<T>(1.0 - std::pow(s.beta1, static_cast<double>(s.step)));
    const T c2 = static_cast<T>(1.0 - std::pow(s.beta2, static_cast<double>(s.step)));
    const T lr = static_cast<T>(s.lr);
    const T eps = static_cast<T>(s.eps);
    for (size_t i = 0; i < params.size(); i++) {
        T g = grads[i];
        s.m[i] = b1 * s.m[i] + (T(1) - b1) * g;
        s.v[i] = b2 * s.v[i] + (T(1) - b2) * g * g;
        T mhat = s.m[i] / c1;
        T vhat = s.v[i] / c2;
        params[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}

template class QNetworkT<float>;
template class QNetworkT<double>;
template float weighted_td_loss<float>(const QNetworkT<float>::Mat &, const std::vector<int> &,
                                       const std::vector<float> &, const std::vector<float> &, LossKind,
                                       QNetworkT<float>::Mat &, std::vector<float> *);
template double weighted_td_loss<double>(const QNetworkT<double>::Mat &, const std::vector<int> &,
                                         const std::vector<double> &, const std::vector<double> &, LossKind,
                                         QNetworkT<double>::Mat &, std::vector<double> *);
template void adam_step<float>(AdamStateT<float> &, ParamVector<float> &, const ParamVector<float> &);
template void adam_step<double>(AdamStateT<double> &, ParamVector<double> &, const ParamVector<double> &);

namespace {

template <typename V>
void put_raw(std::string &out, const V &v) {
    char buf[sizeof(V)];
    std::memcpy(buf, &v, sizeof(V));
    out.append(buf, sizeof(V));
}

void put_floats(std::string &out, const ParamVector<float> &v) {
    out.append(reinterpret_cast<const char *>(v.data()), v.size() * sizeof(float));
}

}  // namespace

void save_checkpoint(const std::string &path, const QNetwork &net, const AdamState *adam, const CheckpointMeta &meta) {
    nlohmann::json extra;
    try {
        extra = nlohmann::json::parse(meta.extra);
    } catch (const nlohmann::json::exception &) {
        throw Error(ErrorCode::InvalidArgument, "checkpoint metadata extra must be JSON text");
    }
    nlohmann::json header = {
        {"architecture", net.config().descriptor()},
        {"d", net.config().d},
        {"parameter_count", net.parameter_count()},
        {"perspective_convention", meta.perspective_convention},
        {"config_hash", meta.config_hash},
        {"seed", meta.seed},
        {"step", meta.step},
        {"extra", extra},
        {"has_adam", adam != nullptr},
    };
    if (adam) {
        header["adam"] = {{"step", adam->step},   {"lr", adam->lr},   {"beta1", adam->beta1},
                          {"beta2", adam->beta2}, {"eps", adam->eps}, {"moments", !adam->m.empty()}};
    }
    std::string text = header.dump();

    std::string blob(kCheckpointMagic, sizeof(kCheckpointMagic));
    put_raw(blob, kCheckpointFormat);
    put_raw(blob, static_cast<uint32_t>(text.size()));
    blob += text;
    put_floats(blob, net.parameters());
    if (adam && !adam->m.empty()) {
        if (adam->m.size() != net.parameter_count() || adam->v.size() != net.parameter_count()) {
            throw Error(ErrorCode::ShapeMismatch, "Adam moments do not match the network");
        }
        put_floats(blob, adam->m);
        put_floats(blob, adam->v);
    }
    uint32_t crc = crc32(0L, reinterpret_cast<const Bytef *>(blob.data()), static_cast<uInt>(blob.size()));
    put_raw(blob, crc);

    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorCode::Io, "cannot write checkpoint " + path);
        }
        out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
        if (!out) {
            throw Error(ErrorCode::Io, "failed writing checkpoint " + path);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw Error(ErrorCode::Io, "cannot move checkpoint into place at " + path);
    }
}

Checkpoint load_checkpoint(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open checkpoint " + path);
    }
    std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const size_t fixed = sizeof(kCheckpointMagic) + 2 * sizeof(uint32_t);
    if (blob.size() < fixed + sizeof(uint32_t) || std::memcmp(blob.data(), kCheckpointMagic, 8) != 0) {
        throw Error(ErrorCode::CorruptFile, path + " is not a checkpoint file");
    }
    size_t body = blob.size() - sizeof(uint32_t);
    uint32_t stored_crc;
    std::memcpy(&stored_crc, blob.data() + body, sizeof(uint32_t));
    if (crc32(0L, reinterpret_cast<const Bytef *>(blob.data()), static_cast<uInt>(body)) != stored_crc) {
        throw Error(ErrorCode::CorruptFile, "checksum mismatch in checkpoint " + path);
    }
    uint32_t format;
    uint32_t header_len;
    std::memcpy(&format, blob.data() + 8, 4);
    std::memcpy(&header_len, blob.data() + 12, 4);
    if (format != kCheckpointFormat) {
        throw Error(ErrorCode::VersionMismatch, "checkpoint format " + std::to_string(format) + " is not supported");
    }
    if (fixed + header_len > body) {
        throw Error(ErrorCode::CorruptFile, "checkpoint header overruns the file");
    }
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(blob.substr(fixed, header_len));
    } catch (const nlohmann::json::exception &) {
        throw Error(ErrorCode::CorruptFile, "checkpoint header is not valid JSON");
    }
    try {
        QNetwork net(QNetworkConfig::from_descriptor(header.at("architecture").get<std::string>()));
        size_t n = net.parameter_count();
        if (header.at("parameter_count").get<size_t>() != n) {
            throw Error(ErrorCode::CorruptFile, "checkpoint parameter count disagrees with its architecture");
        }
        bool moments = header.at("has_adam").get<bool>() && header.at("adam").at("moments").get<bool>();
        size_t expect = fixed + header_len + n * sizeof(float) * (moments ? 3 : 1);
        if (expect != body) {
            throw Error(ErrorCode::CorruptFile, "checkpoint payload has the wrong size");
        }
        const char *p = blob.data() + fixed + header_len;
        std::memcpy(net.parameters().data(), p, n * sizeof(float));
        std::optional<AdamState> adam;
        if (header.at("has_adam").get<bool>()) {
            const auto &a = header.at("adam");
            AdamState s;
            s.step = a.at("step").get<int64_t>();
            s.lr = a.at("lr").get<double>();
            s.beta1 = a.at("beta1").get<double>();
            s.beta2 = a.at("beta2").get<double>();
            s.eps = a.at("eps").get<double>();
            if (moments) {
                s.m.resize(n);
                s.v.resize(n);
                std::memcpy(s.m.data(), p + n * sizeof(float), n * sizeof(float));
                std::memcpy(s.v.data(), p + 2 * n * sizeof(float), n * sizeof(float));
            }
            adam = std::move(s);
        }
        CheckpointMeta meta;
        meta.d = header.at("d").get<int>();
        meta.architecture = header.at("architecture").get<std::string>();
        meta.perspective_convention = header.at("perspective_convention").get<std::string>();
        meta.config_hash = header.at("config_hash").get<std::string>();
        meta.seed = header.at("seed").get<uint64_t>();
        meta.step = header.at("step").get<int64_t>();
        meta.extra = header.at("extra").dump();
        return Checkpoint{std::move(net), std::move(adam), std::move(meta)};
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::CorruptFile, std::string("checkpoint header is incomplete: ") + e.what());
    }
}

Checkpoint load_checkpoint(const std::string &path, int expected_d) {
    Checkpoint c = load_checkpoint(path);
    if (c.meta.d != expected_d) {
        throw Error(ErrorCode::VersionMismatch, "checkpoint " + path + " was trained for d = " + std::to_string(c.meta.d) +
                                                    ", session uses d = " + std::to_string(expected_d));
    }
    return c;
}

}  // namespace toricq
