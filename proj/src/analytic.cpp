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

#include "toricq/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "toricq/error.hpp"
#include "toricq/lattice.hpp"

namespace toricq::analytic {

namespace {

int half_ceil(int d) {
    return CodeDistance(d).half_ceil();
}

void check_p(double p) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw Error(ErrorCode::InvalidProbability, "p must lie in [0, 1), got " + std::to_string(p));
    }
}

BigInt ipow(int base, int exp) {
    BigInt r = 1;
    for (int i = 0; i < exp; i++) {
        r *= base;
    }
    return r;
}

double times_power(const BigInt &prefactor, double q, int k) {
    return prefactor.convert_to<double>() * std::pow(q, k);
}

}  // namespace

BigInt binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    BigInt r = 1;
    for (int i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;
    }
    return r;
}

BigInt mcc_failing_chains(int d) {
    int k = half_ceil(d);
    return 4 * d * (1 + k) * binomial(d, k);
}

BigInt mwpm_failing_chains(int d) {
    int k = half_ceil(d);
    return 4 * d * ipow(2, k) * binomial(d, k);
}

double p_l_mcc(int d, double p) {
    check_p(p);
    return times_power(mcc_failing_chains(d), p / 3.0, half_ceil(d));
}

double p_l_mwpm(int d, double p) {
    check_p(p);
    return times_power(mwpm_failing_chains(d), p / 3.0, half_ceil(d));
}

double p_l_bitflip(int d, double p) {
    check_p(p);
    int k = half_ceil(d);
    return times_power(2 * d * binomial(d, k), p, k);
}

BigInt chain_population(int d, ChainNormalization norm) {
    int k = half_ceil(d);
    BigInt labels = norm == ChainNormalization::TableI ? ipow(k, 3) : ipow(3, k);
    return binomial(2 * d * d, k) * labels;
}

BigInt restricted_chain_population(int d) {
    int k = half_ceil(d);
    return 4 * d * binomial(d, k) * ipow(3, k);
}

Rational f_mcc_exact(int d, ChainNormalization norm) {
    return Rational(mcc_failing_chains(d), chain_population(d, norm));
}

Rational f_mwpm_exact(int d, ChainNormalization norm) {
    return Rational(mwpm_failing_chains(d), chain_population(d, norm));
}

double f_mcc(int d, ChainNormalization norm) {
    return f_mcc_exact(d, norm).convert_to<double>();
}

double f_mwpm(int d, ChainNormalization norm) {
    return f_mwpm_exact(d, norm).convert_to<double>();
}

AsymptoticRates asymptotic_rates(int d, double p) {
    return AsymptoticRates{d, p, p_l_mcc(d, p), p_l_mwpm(d, p), f_mcc(d), f_mwpm(d)};
}

SuccessCurve::SuccessCurve(std::vector<std::pair<double, double>> points) : points_(std::move(points)) {
    if (points_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "success curve needs at least one point");
    }
    std::sort(points_.begin(), points_.end());
}

double SuccessCurve::at(double p) const {
    const double eps = 1e-12;
    if (p < points_.front().first - eps || p > points_.back().first + eps) {
        throw Error(ErrorCode::OutOfRange, "rate " + std::to_string(p) + " outside measured curve [" +
                                               std::to_string(points_.front().first) + ", " +
                                               std::to_string(points_.back().first) + "]");
    }
    if (points_.size() == 1 || p <= points_.front().first) {
        return points_.front().second;
    }
    auto hi = std::lower_bound(points_.begin(), points_.end(), std::make_pair(p, -1.0));
    if (hi == points_.end()) {
        return points_.back().second;
    }
    if (hi == points_.begin() || hi->first == p) {
        return hi->second;
    }
    auto lo = hi - 1;
    double t = (p - lo->first) / (hi->first - lo->first);
    return lo->second + t * (hi->second - lo->second);
}

double mwpm_success_approx(const SuccessCurve &bitflip_curve, double p, EffectiveRate rate) {
    double q = rate == EffectiveRate::TwoThirds ? 2.0 * p / 3.0 : p / 2.0;
    double s = bitflip_curve.at(q);
    return s * s;
}

}  // namespace toricq::analytic
