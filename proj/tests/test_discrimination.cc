// Copyright 2026 The HQMM Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hqmm/discrimination.h"
#include "hqmm/qubit_model.h"
#include "oracles.h"

namespace hqmm {
namespace {

ChannelPair stated_pair(double theta) {
    auto k = stated_kraus_pair(theta);
    return ChannelPair(KrausMap(2, 2, {k.k_f}), KrausMap(2, 2, {k.k_g}));
}

// Explicit 4x4 Choi difference |psi_F><psi_F| - |psi_G><psi_G| for the two single-Kraus maps.
double oracle_choi_trace_norm(double theta) {
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    oracle::Mat f = oracle::Mat::Zero(4, 1), g = oracle::Mat::Zero(4, 1);
    f(0) = c;
    f(2) = std::complex<double>(0, -s);
    g(0) = c;
    g(1) = std::complex<double>(0, -s);
    return oracle::trace_norm(f * f.adjoint() - g * g.adjoint());
}

TEST(DiscriminationTest, ChoiTraceNormClosedFormAcrossGrid) {
    for (int i = 0; i < 33; i++) {
        double theta = std::numbers::pi / 16 + (14 * std::numbers::pi / 16) * i / 32.0;
        double closed = 2 * std::sqrt(1 - std::pow(std::cos(theta / 2), 4));
        double got = choi_difference_trace_norm(stated_pair(theta));
        EXPECT_NEAR(got, closed, 1e-10) << theta;
        EXPECT_NEAR(got, oracle_choi_trace_norm(theta), 1e-10) << theta;
    }
}

TEST(DiscriminationTest, BracketsAtHalfPi) {
    auto pair = stated_pair(std::numbers::pi / 2);
    auto diamond = diamond_bounds(pair);
    EXPECT_NEAR(diamond.choi_trace_norm, std::sqrt(3.0), 1e-10);
    EXPECT_NEAR(diamond.lower, std::sqrt(3.0) / 2, 1e-10);
    EXPECT_NEAR(diamond.upper, std::sqrt(3.0), 1e-10);
    EXPECT_EQ(diamond.d_in, 2u);
    auto success = success_probability_bracket(pair);
    EXPECT_NEAR(success.lower, 0.5 + std::sqrt(3.0) / 8, 1e-10);
    EXPECT_NEAR(success.upper, 0.5 + std::sqrt(3.0) / 4, 1e-10);
    EXPECT_NEAR(success.lower, 0.7165, 1e-4);
    EXPECT_NEAR(success.upper, 0.9330, 1e-4);
    EXPECT_TRUE(success.not_channels);
}

TEST(DiscriminationTest, IdenticalChannelsGiveZero) {
    auto u = build_unitary(0.8);
    ChannelPair pair(KrausMap(2, 2, {u}), KrausMap(2, 2, {u}));
    EXPECT_NEAR(choi_difference_trace_norm(pair), 0.0, 1e-12);
    auto success = success_probability_bracket(pair);
    EXPECT_DOUBLE_EQ(success.lower, 0.5);
    EXPECT_FALSE(success.not_channels);
}

TEST(DiscriminationTest, OrthogonalUnitariesSaturateSuccess) {
    ComplexMatrix x{{0, 1}, {1, 0}};
    ChannelPair pair(KrausMap(2, 2, {ComplexMatrix::identity(2)}), KrausMap(2, 2, {x}));
    auto success = success_probability_bracket(pair);
    EXPECT_LE(success.upper, 1.0);
    EXPECT_NEAR(choi_difference_trace_norm(pair), 4.0, 1e-10);
}

TEST(DiscriminationTest, RejectsMismatchedDimensions) {
    EXPECT_THROW(
        ChannelPair(KrausMap(2, 2, {ComplexMatrix::identity(2)}), KrausMap(3, 3, {ComplexMatrix::identity(3)})),
        DimensionError);
}

}  // namespace
}  // namespace hqmm
