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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rbdephase/groups.h"

namespace rbdephase::testing {

std::complex<double> brute_force_decay(NoiseModel model, GroupKind group, const std::vector<double> &gamma,
                                       const std::vector<double> &phi, int m) {
    const TupleSet set = tuple_set(group, model);
    const std::size_t size = set.size();
    std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
    std::complex<long double> acc = 0.0L;
    long double count = 0.0L;
    for (;;) {
        long double exponent = 0.0L;
        long double theta = 0.0L;
        for (int j = 0; j < m; ++j) {
            for (int k = 0; k < m; ++k) {
                const auto &a = set.elements[idx[static_cast<std::size_t>(j)]];
                const auto &b = set.elements[idx[static_cast<std::size_t>(k)]];
                exponent += static_cast<long double>(a.u * b.u) * gamma[static_cast<std::size_t>(std::abs(j - k))];
                if (j > k && model == NoiseModel::Quantum) {
                    const int sign = k - j < 0 ? -1 : 1;
                    theta += 2.0L * a.u * b.v * sign * phi[static_cast<std::size_t>(j - k)];
                }
            }
        }
        acc += std::polar(std::exp(-exponent), theta);
        count += 1.0L;
        int pos = 0;
        while (pos < m && ++idx[static_cast<std::size_t>(pos)] == size) {
            idx[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == m) break;
    }
    return {static_cast<double>(acc.real() / count), static_cast<double>(acc.imag() / count)};
}

double binomial_dc(double eta, int m) {
    long double sum = 0.0L;
    long double c = 1.0L;
    for (int k = 0; k <= m; ++k) {
        const long double d = 2.0L * k - m;
        sum += c * std::exp(-static_cast<long double>(eta) * d * d);
        c = c * (m - k) / (k + 1);
    }
    return static_cast<double>(sum / std::pow(2.0L, m));
}

double time_domain_rect_gamma(double eta, double xi, int n) {
    // Integrand (1-|u|) on u in [-1, 1] intersected with [-xi-n, xi-n].
    const double lo = std::max(-1.0, -xi - n);
    const double hi = std::min(1.0, xi - n);
    if (hi <= lo) return 0.0;
    auto primitive = [](double u) { return u >= 0.0 ? u - 0.5 * u * u : u + 0.5 * u * u; };
    return eta * (primitive(hi) - primitive(lo));
}

namespace {

template <class F>
double simpson(F f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

}  // namespace

double time_domain_double_gaussian_gamma(double eta, double xbar, double sigma, int n) {
    auto f = [&](double u) {
        const double t = n + u;
        return (1.0 - std::abs(u)) * std::exp(-0.5 * sigma * sigma * t * t) * std::cos(xbar * t);
    };
    // The kink at u = 0 is a panel boundary.
    return eta * (simpson(f, -1.0, 0.0, 20000) + simpson(f, 0.0, 1.0, 20000));
}

double simpson_thermal_double_gaussian(double eta, double xbar, double sigma, double beta, int n) {
    const double norm = eta / (std::sqrt(2.0 * std::numbers::pi) * sigma);
    auto f = [&](double x) {
        if (x == 0.0) return 0.0;
        const double s = norm * (std::exp(-0.5 * std::pow((x - xbar) / sigma, 2)) +
                                 std::exp(-0.5 * std::pow((x + xbar) / sigma, 2)));
        const double sinc = std::sin(0.5 * x) / (0.5 * x);
        return s / std::tanh(0.5 * beta * x) * sinc * sinc * std::cos(n * x);
    };
    return simpson(f, 0.0, xbar + 16.0 * sigma, 400000);
}

TransferMatrix random_matrix(std::mt19937_64 &gen) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    TransferMatrix t;
    for (auto &row : t.entries) {
        for (auto &x : row) x = dist(gen);
    }
    return t;
}

double block_determinant(const TransferMatrix &t) {
    return t(1, 1) * (t(2, 2) * t(3, 3) - t(2, 3) * t(3, 2)) - t(1, 2) * (t(2, 1) * t(3, 3) - t(2, 3) * t(3, 1)) +
           t(1, 3) * (t(2, 1) * t(3, 2) - t(2, 2) * t(3, 1));
}

}  // namespace rbdephase::testing
