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

#ifndef TORICQ_ANALYTIC_HPP
#define TORICQ_ANALYTIC_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <utility>
#include <vector>

namespace toricq::analytic {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial(int n, int k);

// Lowest-order logical fail rates for depolarizing noise. With
// k = ceil(d/2) and q = p/3:
//   minimal-correction-chain decoding: 4d(1+k) C(d,k) q^k
//   independent X/Z matching:          4d 2^k  C(d,k) q^k
//   pure bit flip at rate p:           2d      C(d,k) p^k
double p_l_mcc(int d, double p);
double p_l_mwpm(int d, double p);
double p_l_bitflip(int d, double p);

// Integer prefactors of the rates above: the number of length-k single
// row/column chains that fail, weighted by failure probability.
BigInt mcc_failing_chains(int d);
BigInt mwpm_failing_chains(int d);

// How the population of all length-k chains is counted when turning
// failing-chain counts into a fraction. TableI uses C(2d^2, k) * k^3, which
// reproduces the reference values; Exact uses C(2d^2, k) * 3^k (positions
// times Pauli labels). Both agree at d = 5.
enum class ChainNormalization { TableI, Exact };
BigInt chain_population(int d, ChainNormalization norm = ChainNormalization::TableI);
// All length-k chains confined to one of the 4d rows/columns.
BigInt restricted_chain_population(int d);

Rational f_mcc_exact(int d, ChainNormalization norm = ChainNormalization::TableI);
Rational f_mwpm_exact(int d, ChainNormalization norm = ChainNormalization::TableI);
double f_mcc(int d, ChainNormalization norm = ChainNormalization::TableI);
double f_mwpm(int d, ChainNormalization norm = ChainNormalization::TableI);

struct AsymptoticRates {
    int d = 0;
    double p = 0;
    double p_l_mcc = 0;
    double p_l_mwpm = 0;
    double f_mcc = 0;
    double f_mwpm = 0;
};
AsymptoticRates asymptotic_rates(int d, double p);

// Measured pure bit-flip success curve, points (p, P_S,X) sorted by p.
class SuccessCurve {
   public:
    explicit SuccessCurve(std::vector<std::pair<double, double>> points);
    // Linear interpolation; throws OutOfRange outside [front.p, back.p].
    double at(double p) const;

   private:
    std::vector<std::pair<double, double>> points_;
};

// Effective independent X/Z rate used by the matching approximation:
// 2p/3 for depolarizing noise, p/2 for the p_z = 0 biased limit.
enum class EffectiveRate { TwoThirds, Half };
double mwpm_success_approx(const SuccessCurve &bitflip_curve, double p, EffectiveRate rate);

}  // namespace toricq::analytic

#endif
