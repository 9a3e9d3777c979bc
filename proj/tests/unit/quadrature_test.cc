// Copyright 2026 The rbdephase Authors
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

#include "quadrature.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "numeric.h"

namespace rbdephase::detail {
namespace {

TEST(QuadratureTest, PolynomialIsExact) {
    const auto r = integrate_panels([](double x) { return 3.0 * x * x; }, 0.0, 2.0, 0.5);
    EXPECT_NEAR(r.value, 8.0, 1e-13);
    EXPECT_LT(r.error, 1e-10);
}

TEST(QuadratureTest, OscillatoryIntegrand) {
    const auto r = integrate_panels([](double x) { return std::cos(40.0 * x); }, 0.0, std::numbers::pi / 4, 0.1);
    EXPECT_NEAR(r.value, std::sin(10.0 * std::numbers::pi) / 40.0, 1e-13);
}

TEST(QuadratureTest, KinkAtBreakpoint) {
    const auto r = integrate_panels([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, 1.0, {0.3});
    EXPECT_NEAR(r.value, 0.5 * (0.09 + 0.49), 1e-14);
}

TEST(QuadratureTest, EmptyInterval) {
    EXPECT_EQ(integrate_panels([](double) { return 1.0; }, 1.0, 1.0, 0.1).value, 0.0);
}

TEST(OscillatoryTailTest, MatchesHighPrecisionReference) {
    EXPECT_NEAR(oscillatory_tail_cos(1, 1.0, 2.0), -0.4229808287748649957, 1e-13);
    EXPECT_NEAR(oscillatory_tail_sin(1, 1.0, 2.0), -0.034616650007798229345, 1e-13);
    EXPECT_NEAR(oscillatory_tail_cos(2, 3.0, 0.5), -0.59686398353292499641, 1e-13);
    EXPECT_NEAR(oscillatory_tail_sin(2, 3.0, 0.5), 0.58392102162190920186, 1e-13);
    EXPECT_NEAR(oscillatory_tail_cos(3, -2.0, 1.5), -0.074818765935120927763, 1e-13);
    EXPECT_NEAR(oscillatory_tail_sin(3, -2.0, 1.5), 0.072922593533405425604, 1e-13);
    EXPECT_NEAR(oscillatory_tail_cos(2, 0.0, 4.0), 0.25, 1e-15);
    EXPECT_EQ(oscillatory_tail_sin(2, 0.0, 4.0), 0.0);
}

TEST(NumericTest, NeumaierRecoversCancelledTerms) {
    NeumaierSum s;
    s.add(1.0);
    s.add(1e100);
    s.add(1.0);
    s.add(-1e100);
    EXPECT_EQ(s.value(), 2.0);
}

TEST(NumericTest, WelfordMergeMatchesSinglePass) {
    Welford all;
    Welford a;
    Welford b;
    for (int i = 0; i < 100; ++i) {
        const double x = std::sin(0.37 * i);
        all.add(x);
        (i < 40 ? a : b).add(x);
    }
    a.merge(b);
    EXPECT_EQ(a.count, all.count);
    EXPECT_NEAR(a.mean, all.mean, 1e-15);
    EXPECT_NEAR(a.variance(), all.variance(), 1e-15);
}

TEST(NumericTest, ParallelForVisitsEveryIndexOnce) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
    for (int h : hits) EXPECT_EQ(h, 1);
}

}  // namespace
}  // namespace rbdephase::detail
