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

#ifndef RBDEPHASE_SRC_QUADRATURE_H
#define RBDEPHASE_SRC_QUADRATURE_H

#include <functional>
#include <vector>

namespace rbdephase::detail {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // sum of per-panel absolute error estimates
};

// Integrates f over [a, b] split at every breakpoint inside (a, b) and into
// panels no wider than max_width. Each panel runs adaptive 31-point
// Gauss-Kronrod.
QuadratureResult integrate_panels(const std::function<double(double)> &f, double a, double b, double max_width,
                                  const std::vector<double> &breakpoints = {});

// int_x0^inf x^-p cos(w x) dx and int_x0^inf x^-p sin(w x) dx for integer
// p >= 1 and x0 > 0, with w of either sign (w = 0 needs p >= 2 for cos).
double oscillatory_tail_cos(int p, double w, double x0);
double oscillatory_tail_sin(int p, double w, double x0);

}  // namespace rbdephase::detail

#endif  // RBDEPHASE_SRC_QUADRATURE_H
