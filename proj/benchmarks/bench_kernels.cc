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

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "rbdephase/rbdephase.h"

namespace {

using rbdephase::DecayCurve;
using rbdephase::DecayPoint;
using rbdephase::DecoherenceTable;
using rbdephase::GroupKind;
using rbdephase::NoiseModel;

DecoherenceTable rect_table(int n_max) {
    return rbdephase::build_table(rbdephase::RectangularSpectrum{0.1, 0.5}, n_max, std::nullopt, false);
}

void BM_TwirlClosed(benchmark::State &state) {
    const auto channel = rbdephase::compose(rbdephase::rotation_z(0.3), rbdephase::dephasing_channel(0.1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rbdephase::twirl_closed(GroupKind::Clif, channel));
    }
}
BENCHMARK(BM_TwirlClosed);

void BM_TwirlBruteForce(benchmark::State &state) {
    const auto channel = rbdephase::compose(rbdephase::rotation_z(0.3), rbdephase::dephasing_channel(0.1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rbdephase::twirl_bruteforce(GroupKind::Clif, channel));
    }
}
BENCHMARK(BM_TwirlBruteForce);

void BM_BuildTableRect(benchmark::State &state) {
    const int n_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rect_table(n_max));
    }
}
BENCHMARK(BM_BuildTableRect)->Arg(10)->Arg(30);

void BM_BuildTableDoubleGaussian(benchmark::State &state) {
    const rbdephase::DoubleGaussianSpectrum model{0.1, 5.0, 0.5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(rbdephase::build_table(model, 10, std::nullopt, false));
    }
}
BENCHMARK(BM_BuildTableDoubleGaussian);

void BM_ExactEnum(benchmark::State &state) {
    const int m = static_cast<int>(state.range(0));
    const auto table = rect_table(m);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rbdephase::decay_exact_enum(NoiseModel::Classical, GroupKind::Clif, table, m));
    }
}
BENCHMARK(BM_ExactEnum)->Arg(4)->Arg(8)->Arg(12);

void BM_MonteCarlo(benchmark::State &state) {
    const auto table = rect_table(30);
    rbdephase::MonteCarloOptions options;
    options.samples = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rbdephase::decay_mc(NoiseModel::Classical, GroupKind::Clif, table, 30, options));
    }
}
BENCHMARK(BM_MonteCarlo)->Arg(10000)->Arg(100000);

DecayCurve order1_curve() {
    const auto pair = rbdephase::lambda_pair(NoiseModel::Classical, GroupKind::Clif, 0.1, 0.05);
    DecayCurve curve{NoiseModel::Classical, GroupKind::Clif, {}};
    for (int m = 1; m <= 30; ++m) {
        curve.points.push_back(DecayPoint{m, rbdephase::decay_order1(pair, m), 0.0});
    }
    return curve;
}

void BM_FitSingle(benchmark::State &state) {
    const auto curve = order1_curve();
    for (auto _ : state) {
        benchmark::DoNotOptimize(rbdephase::fit_single_exp(curve));
    }
}
BENCHMARK(BM_FitSingle);

void BM_FitDouble(benchmark::State &state) {
    const auto curve = order1_curve();
    for (auto _ : state) {
        benchmark::DoNotOptimize(rbdephase::fit_double_exp(curve, false));
    }
}
BENCHMARK(BM_FitDouble);

}  // namespace

BENCHMARK_MAIN();
