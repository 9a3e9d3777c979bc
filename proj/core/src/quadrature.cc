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

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_expint.h>

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace rbdephase::detail {
namespace {

constexpr unsigned kMaxDepth = 12;
constexpr double kPanelRelTolerance = 1e-13;

// E(p, y) = int_y^inf t^-p e^{it} dt via E(1, y) = -Ci(y) + i (pi/2 - Si(y))
// and E(p+1, y) = (y^-p e^{iy} + i E(p, y)) / p.
std::complex<double> exp_integral_tail(int p, double y) {
    static const bool handler_off = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)handler_off;
    gsl_sf_result si;
    gsl_sf_result ci;
    if (gsl_sf_Si_e(y, &si) != GSL_SUCCESS || gsl_sf_Ci_e(y, &ci) != GSL_SUCCESS) {
        throw std::runtime_error("sine/cosine integral evaluation failed");
    }
    std::complex<double> e(-ci.val, std::numbers::pi / 2 - si.val);
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> eiy = std::exp(i * y);
    for (int k = 1; k < p; ++k) {
        e = (std::pow(y, -k) * eiy + i * e) / static_cast<double>(k);
    }
    return e;
}

// int_x0^inf x^-p e^{i w x} dx for w > 0.
std::complex<double> tail(int p, double w, double x0) {
    return std::pow(w, p - 1) * exp_integral_tail(p, w * x0);
}

}  // namespace

QuadratureResult integrate_panels(const std::function<double(double)> &f, double a, double b, double max_width,
                                  const std::vector<double> &breakpoints) {
    std::vector<double> cuts{a};
    for (double x : breakpoints) {
        if (x > a && x < b) cuts.push_back(x);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    QuadratureResult out;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double lo = cuts[s];
        const double hi = cuts[s + 1];
        const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / max_width)));
        const double h = (hi - lo) / static_cast<double>(panels);
        for (std::size_t k = 0; k < panels; ++k) {
            const double p0 = lo + h * static_cast<double>(k);
            const double p1 = k + 1 == panels ? hi : p0 + h;
            double err = 0.0;
            out.value += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                f, p0, p1, kMaxDepth, kPanelRelTolerance, &err);
            out.error += err;
        }
    }
    return out;
}

double oscillatory_tail_cos(int p, double w, double x0) {
    if (p < 1 || x0 <= 0.0) throw std::invalid_argument("oscillatory tail needs p >= 1 and x0 > 0");
    w = std::abs(w);
    if (w == 0.0) {
        if (p == 1) throw std::invalid_argument("divergent tail integral");
        return std::pow(x0, 1 - p) / (p - 1);
    }
    return tail(p, w, x0).real();
}

double oscillatory_tail_sin(int p, double w, double x0) {
    if (p < 1 || x0 <= 0.0) throw std::invalid_argument("oscillatory tail needs p >= 1 and x0 > 0");
    if (w == 0.0) return 0.0;
    const double sign = w < 0.0 ? -1.0 : 1.0;
    return sign * tail(p, std::abs(w), x0).imag();
}

}  // namespace rbdephase::detail
