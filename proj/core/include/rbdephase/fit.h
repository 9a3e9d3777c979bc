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

#ifndef RBDEPHASE_FIT_H
#define RBDEPHASE_FIT_H

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rbdephase/decay.h"

namespace rbdephase {

enum class FitModel { SingleExp, DoubleExp };
std::string_view to_string(FitModel model);
FitModel parse_fit_model(std::string_view name);

/// A p^m + B.
struct SingleExpParams {
    double a = 0.0;
    double p = 0.0;
    double b = 0.0;
};

/// A+ lambda+^m + A- lambda-^m.
struct DoubleExpParams {
    double a_plus = 0.0;
    double lambda_plus = 0.0;
    double a_minus = 0.0;
    double lambda_minus = 0.0;
};

struct FitResult {
    FitModel model = FitModel::SingleExp;
    std::variant<SingleExpParams, DoubleExpParams> params;
    /// Unweighted root-mean-square residual over all points.
    double residual_rms = 0.0;
    bool converged = false;
    int iterations = 0;
    std::vector<std::string> warnings;

    double evaluate(double m) const;
};

struct FitOptions {
    int max_iterations = 200;
    double gradient_tolerance = 1e-12;
};

/// Weighted least squares (weights 1/stderr^2, or unit weights when any
/// stderr is zero) with 0 < p <= 1. Needs at least 4 points, otherwise
/// PreconditionError. Non-convergence is reported through the result.
FitResult fit_single_exp(const DecayCurve &curve, const FitOptions &options = {});

/// Two-rate fit with 0 <= lambda- <= lambda+ <= 1. With fix_sum_to_one,
/// A- = 1 - A+. Needs at least 6 points.
FitResult fit_double_exp(const DecayCurve &curve, bool fix_sum_to_one, const FitOptions &options = {});

}  // namespace rbdephase

#endif  // RBDEPHASE_FIT_H
