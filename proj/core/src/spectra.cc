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

#include "rbdephase/spectra.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "numeric.h"
#include "quadrature.h"
#include "rbdephase/errors.h"

namespace rbdephase {
namespace {

constexpr double kPi = std::numbers::pi;

// Upper end of the numerical range for spectra with an analytic tail.
constexpr double kTailStart = 64.0 * kPi;

// Relative size of S(0) above which the thermal integral is divergent.
constexpr double kThermalZeroThreshold = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string &what) {
    if (!ok) throw std::invalid_argument(what);
}

bool positive_finite(double x) {
    return std::isfinite(x) && x > 0.0;
}

// sinc(x/2)^2 with sinc(t) = sin(t)/t.
double sinc2_half(double x) {
    const double t = 0.5 * x;
    if (std::abs(t) < 1e-4) {
        const double t2 = t * t;
        return 1.0 - t2 / 3.0 + 2.0 * t2 * t2 / 45.0;
    }
    const double s = std::sin(t) / t;
    return s * s;
}

bool even_extension(const TabulatedSpectrum &t) {
    return t.x.front() >= 0.0;
}

// Linear interpolation of the samples; zero outside their range.
double interpolate_samples(const TabulatedSpectrum &t, double x) {
    if (x < t.x.front() || x > t.x.back()) return 0.0;
    const auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
    if (it == t.x.end()) return t.s.back();
    const auto i = static_cast<std::size_t>(it - t.x.begin());
    if (i == 0) return t.s.front();
    const double x0 = t.x[i - 1];
    const double x1 = t.x[i];
    const double w = (x - x0) / (x1 - x0);
    return (1.0 - w) * t.s[i - 1] + w * t.s[i];
}

double tabulated_density(const TabulatedSpectrum &t, double x) {
    return interpolate_samples(t, even_extension(t) ? std::abs(x) : x);
}

double rect_density(const RectangularSpectrum &r, double x) {
    if (std::abs(r.xi * x) < 1e-8) return 2.0 * r.eta * r.xi / kPi;
    return 2.0 * r.eta * std::sin(r.xi * x) / (kPi * x);
}

double double_gaussian_density(const DoubleGaussianSpectrum &g, double x) {
    const double norm = g.eta / (std::sqrt(2.0 * kPi) * g.sigma);
    const double a = (x - g.xbar) / g.sigma;
    const double b = (x + g.xbar) / g.sigma;
    return norm * (std::exp(-0.5 * a * a) + std::exp(-0.5 * b * b));
}

double peak_density(const SpectralModel &model) {
    return std::visit(Overloaded{
                          [](const DcSpectrum &) { return 0.0; },
                          [](const WhiteSpectrum &w) { return w.eta / kPi; },
                          [](const RectangularSpectrum &r) { return 2.0 * r.eta * r.xi / kPi; },
                          [](const DoubleGaussianSpectrum &g) {
                              return std::max(double_gaussian_density(g, 0.0), double_gaussian_density(g, g.xbar));
                          },
                          [](const TabulatedSpectrum &t) {
                              double m = 0.0;
                              for (double s : t.s) m = std::max(m, std::abs(s));
                              return m;
                          },
                      },
                      model);
}

// S(x) coth(beta |x| / 2), finite at x = 0 when S(0) = 0.
double thermal_weight(double s, double x, double beta) {
    const double ax = std::abs(x);
    if (ax == 0.0) return 0.0;
    const double y = 0.5 * beta * ax;
    double x_coth;  // |x| coth(y)
    if (y < 1e-4) {
        x_coth = (2.0 / beta) * (1.0 + y * y / 3.0);
    } else {
        x_coth = ax / std::tanh(y);
    }
    return s / ax * x_coth;
}

void check_thermal(const SpectralModel &model, double beta) {
    if (std::holds_alternative<DcSpectrum>(model)) {
        throw std::invalid_argument("a temperature parameter is ill-defined for the dc spectrum");
    }
    require(positive_finite(beta), "beta_over_dt must be positive and finite");
    const double s0 = spectral_density(model, 0.0);
    const double peak = peak_density(model);
    if (std::abs(s0) > kThermalZeroThreshold * peak) {
        throw PreconditionError(fmt::format(
            "thermal decoherence integral diverges: S(0) = {:.6g} is not negligible (peak {:.6g}); the coth "
            "factor requires a spectrum that vanishes at x = 0",
            s0, peak));
    }
}

enum class Kernel { Cos, Sin };

void check_error(const detail::QuadratureResult &r, const QuadratureOptions &options, int n) {
    if (!(r.error <= options.abs_tolerance) || !std::isfinite(r.value)) {
        throw QuadratureError(fmt::format("quadrature for n = {} reached error estimate {:.3g}, requested {:.3g}", n,
                                          r.error, options.abs_tolerance),
                              r.error, options.abs_tolerance);
    }
}

// Analytic tails beyond kTailStart of the even, slowly decaying spectra.
double white_tail(const WhiteSpectrum &w, int n) {
    using detail::oscillatory_tail_cos;
    const double x0 = kTailStart;
    return w.eta / kPi *
           (2.0 * oscillatory_tail_cos(2, n, x0) - oscillatory_tail_cos(2, n + 1, x0) -
            oscillatory_tail_cos(2, n - 1, x0));
}

double rect_tail(const RectangularSpectrum &r, int n) {
    using detail::oscillatory_tail_sin;
    const double x0 = kTailStart;
    double acc = 0.0;
    const int ks[3] = {n, n + 1, n - 1};
    const double cs[3] = {1.0, -0.5, -0.5};
    for (int i = 0; i < 3; ++i) {
        acc += cs[i] * 0.5 *
               (oscillatory_tail_sin(3, r.xi + ks[i], x0) + oscillatory_tail_sin(3, r.xi - ks[i], x0));
    }
    return 4.0 * r.eta / kPi * acc;
}

// Numerical value of 1/2 int S sinc^2 kernel(n x) [coth] over the real line.
double integrate_model(const SpectralModel &model, int n, Kernel kernel, std::optional<double> beta,
                       const QuadratureOptions &options) {
    auto integrand = [&](double x) {
        double s = spectral_density(model, x);
        if (beta) s = thermal_weight(s, x, *beta);
        const double k = kernel == Kernel::Cos ? std::cos(n * x) : std::sin(n * x);
        return s * sinc2_half(x) * k;
    };
    const double nf = static_cast<double>(n);

    if (const auto *t = std::get_if<TabulatedSpectrum>(&model)) {
        const double width = kPi / (nf + 1.0);
        std::vector<double> cuts(t->x.begin(), t->x.end());
        if (even_extension(*t)) {
            if (kernel == Kernel::Sin) return 0.0;
            const auto r = detail::integrate_panels(integrand, 0.0, t->x.back(), width, cuts);
            check_error(r, options, n);
            return r.value;
        }
        const auto r = detail::integrate_panels(integrand, t->x.front(), t->x.back(), width, cuts);
        check_error(r, options, n);
        return 0.5 * r.value;
    }

    if (kernel == Kernel::Sin) {
        // Odd integrand of an even spectrum, integrated over a symmetric
        // range; any residue is rounding.
        double x_max = kTailStart;
        double width = kPi / (nf + 1.0);
        if (const auto *g = std::get_if<DoubleGaussianSpectrum>(&model)) {
            x_max = g->xbar + 14.0 * g->sigma;
            width = std::min(width, g->sigma);
        }
        const auto r = detail::integrate_panels(integrand, -x_max, x_max, width);
        check_error(r, options, n);
        return 0.5 * r.value;
    }

    return std::visit(
        Overloaded{
            [&](const WhiteSpectrum &w) {
                const auto r = detail::integrate_panels(integrand, 0.0, kTailStart, kPi / (nf + 1.0));
                check_error(r, options, n);
                return r.value + white_tail(w, n);
            },
            [&](const RectangularSpectrum &rect) {
                const auto r = detail::integrate_panels(integrand, 0.0, kTailStart, kPi / (nf + 1.0 + rect.xi));
                check_error(r, options, n);
                return r.value + rect_tail(rect, n);
            },
            [&](const DoubleGaussianSpectrum &g) {
                const double width = std::min(kPi / (nf + 1.0), g.sigma);
                const auto r = detail::integrate_panels(integrand, 0.0, g.xbar + 14.0 * g.sigma, width, {g.xbar});
                check_error(r, options, n);
                return r.value;
            },
            [&](const auto &) -> double { throw std::invalid_argument("dc spectrum has no quadrature form"); },
        },
        model);
}

void check_n(int n, int min) {
    require(n >= min, fmt::format("decoherence index must be >= {}, got {}", min, n));
}

}  // namespace

void validate(const SpectralModel &model) {
    std::visit(Overloaded{
                   [](const DcSpectrum &d) { require(positive_finite(d.eta), "dc: eta must be > 0"); },
                   [](const WhiteSpectrum &w) { require(positive_finite(w.eta), "white: eta must be > 0"); },
                   [](const RectangularSpectrum &r) {
                       require(positive_finite(r.eta), "rect: eta must be > 0");
                       require(positive_finite(r.xi), "rect: xi must be > 0");
                   },
                   [](const DoubleGaussianSpectrum &g) {
                       require(positive_finite(g.eta), "double_gaussian: eta must be > 0");
                       require(positive_finite(g.sigma), "double_gaussian: sigma must be > 0");
                       require(std::isfinite(g.xbar) && g.xbar >= 0.0, "double_gaussian: xbar must be >= 0");
                   },
                   [](const TabulatedSpectrum &t) {
                       require(t.x.size() == t.s.size(), "tabulated: x and S sample counts differ");
                       require(t.x.size() >= 2, "tabulated: at least two samples are required");
                       double peak = 0.0;
                       for (std::size_t i = 0; i < t.x.size(); ++i) {
                           require(std::isfinite(t.x[i]) && std::isfinite(t.s[i]), "tabulated: non-finite sample");
                           require(t.s[i] >= 0.0, "tabulated: S(x) must be nonnegative");
                           if (i > 0) require(t.x[i] > t.x[i - 1], "tabulated: x must be strictly increasing");
                           peak = std::max(peak, t.s[i]);
                       }
                       require(peak > 0.0, "tabulated: spectrum is identically zero");
                       if (!even_extension(t)) {
                           for (std::size_t i = 0; i < t.x.size(); ++i) {
                               const double mirror = interpolate_samples(t, -t.x[i]);
                               require(std::abs(mirror - t.s[i]) <= 1e-6 * peak,
                                       fmt::format("tabulated: S is not even at x = {}", t.x[i]));
                           }
                       }
                       // The sinc^2 envelope bound 4 S / x^2 integrated past the
                       // last sample must be negligible.
                       const double edge = t.s.back();
                       const double x_edge = t.x.back();
                       require(x_edge > 0.0 && edge * 4.0 / x_edge < 1e-10,
                               fmt::format("tabulated: samples end at x = {} with S = {}; extend the table until "
                                           "the spectrum has decayed",
                                           x_edge, edge));
                   },
               },
               model);
}

std::string_view model_name(const SpectralModel &model) {
    return std::visit(Overloaded{
                          [](const DcSpectrum &) { return std::string_view("dc"); },
                          [](const WhiteSpectrum &) { return std::string_view("white"); },
                          [](const RectangularSpectrum &) { return std::string_view("rect"); },
                          [](const DoubleGaussianSpectrum &) { return std::string_view("double_gaussian"); },
                          [](const TabulatedSpectrum &) { return std::string_view("tabulated"); },
                      },
                      model);
}

double spectral_density(const SpectralModel &model, double x) {
    return std::visit(
        Overloaded{
            [](const DcSpectrum &) -> double {
                throw std::invalid_argument("the dc spectrum is a delta function and has no pointwise value");
            },
            [](const WhiteSpectrum &w) { return w.eta / kPi; },
            [x](const RectangularSpectrum &r) { return rect_density(r, x); },
            [x](const DoubleGaussianSpectrum &g) { return double_gaussian_density(g, x); },
            [x](const TabulatedSpectrum &t) { return tabulated_density(t, x); },
        },
        model);
}

double rect_gamma_closed(double eta, double xi, int n) {
    require(positive_finite(eta) && positive_finite(xi), "rect: eta and xi must be > 0");
    check_n(n, 0);
    const double nf = static_cast<double>(n);
    double g;
    if (xi >= 1.0) {
        if (nf <= xi - 1.0) {
            g = 1.0;
        } else if (nf >= xi + 1.0) {
            g = 0.0;
        } else {
            const double x0 = nf - xi;
            g = 0.5 - 0.5 * x0 * (2.0 - std::abs(x0));
        }
    } else {
        g = n == 0 ? xi * (2.0 - xi) : n == 1 ? 0.5 * xi * xi : 0.0;
    }
    return eta * g;
}

double rect_gamma_master(double eta, double xi, int n) {
    check_n(n, 0);
    auto sq = [](double z) { return z == 0.0 ? 0.0 : (z > 0.0 ? z * z : -z * z); };
    const double nf = static_cast<double>(n);
    const double s = nf + xi;
    return 0.25 * eta *
           (1.0 + s * (2.0 - s) + sq(nf - (1.0 - xi)) + 2.0 * sq(nf - xi) - sq(nf - (xi - 1.0)) -
            sq(nf - (xi + 1.0)));
}

double gamma_n_quadrature(const SpectralModel &model, int n, std::optional<double> beta_over_dt,
                          const QuadratureOptions &options) {
    validate(model);
    check_n(n, 0);
    if (std::holds_alternative<DcSpectrum>(model)) {
        throw std::invalid_argument("the dc spectrum is handled symbolically, not by quadrature");
    }
    if (beta_over_dt) check_thermal(model, *beta_over_dt);
    return integrate_model(model, n, Kernel::Cos, beta_over_dt, options);
}

double phi_n_quadrature(const SpectralModel &model, int n, const QuadratureOptions &options) {
    validate(model);
    check_n(n, 1);
    if (std::holds_alternative<DcSpectrum>(model)) {
        throw std::invalid_argument("the dc spectrum is handled symbolically, not by quadrature");
    }
    return integrate_model(model, n, Kernel::Sin, std::nullopt, options);
}

double gamma_n(const SpectralModel &model, int n, std::optional<double> beta_over_dt,
               const QuadratureOptions &options) {
    validate(model);
    check_n(n, 0);
    if (beta_over_dt) {
        check_thermal(model, *beta_over_dt);
        return integrate_model(model, n, Kernel::Cos, beta_over_dt, options);
    }
    if (const auto *d = std::get_if<DcSpectrum>(&model)) return d->eta;
    if (const auto *w = std::get_if<WhiteSpectrum>(&model)) return n == 0 ? w->eta : 0.0;
    if (const auto *r = std::get_if<RectangularSpectrum>(&model)) return rect_gamma_closed(r->eta, r->xi, n);
    return integrate_model(model, n, Kernel::Cos, std::nullopt, options);
}

double phi_n(const SpectralModel &model, int n, const QuadratureOptions &options) {
    validate(model);
    check_n(n, 1);
    if (const auto *t = std::get_if<TabulatedSpectrum>(&model)) {
        if (!even_extension(*t)) return integrate_model(model, n, Kernel::Sin, std::nullopt, options);
    }
    return 0.0;
}

std::string_view to_string(TableMethod method) {
    switch (method) {
        case TableMethod::ClosedForm:
            return "closed_form";
        case TableMethod::Quadrature:
            return "quadrature";
        case TableMethod::Manual:
            return "manual";
    }
    return "?";
}

TableMethod parse_table_method(std::string_view name) {
    if (name == "closed_form") return TableMethod::ClosedForm;
    if (name == "quadrature") return TableMethod::Quadrature;
    if (name == "manual") return TableMethod::Manual;
    throw std::invalid_argument(fmt::format("unknown table method '{}'", name));
}

double DecoherenceTable::gamma_at(int n) const {
    check_n(n, 0);
    if (n <= n_max()) return gamma[static_cast<std::size_t>(n)];
    if (truncated) return 0.0;
    throw PreconditionError(fmt::format(
        "decoherence table holds Gamma(0..{}) but Gamma({}) is required; extend n_max or mark the table truncated",
        n_max(), n));
}

double DecoherenceTable::phi_at(int n) const {
    check_n(n, 0);
    if (n == 0) return 0.0;
    if (!phi) throw PreconditionError("decoherence table has no Phi entries (required by the quantum model)");
    if (static_cast<std::size_t>(n) <= phi->size()) return (*phi)[static_cast<std::size_t>(n) - 1];
    if (truncated) return 0.0;
    throw PreconditionError(fmt::format(
        "decoherence table holds Phi(1..{}) but Phi({}) is required; extend n_max or mark the table truncated",
        phi->size(), n));
}

DecoherenceTable DecoherenceTable::manual(std::vector<double> gamma, std::optional<std::vector<double>> phi,
                                          bool truncated) {
    require(!gamma.empty(), "decoherence table needs at least Gamma(0)");
    for (double g : gamma) require(std::isfinite(g), "decoherence table entries must be finite");
    if (phi) {
        require(phi->size() + 1 == gamma.size(), "Phi must hold entries n = 1..n_max, one fewer than Gamma");
        for (double p : *phi) require(std::isfinite(p), "decoherence table entries must be finite");
    }
    DecoherenceTable t;
    t.gamma = std::move(gamma);
    t.phi = std::move(phi);
    t.method = TableMethod::Manual;
    t.truncated = truncated;
    return t;
}

bool DecoherenceTable::is_constant_gamma(double tolerance) const {
    for (double g : gamma) {
        if (std::abs(g - gamma.front()) > tolerance) return false;
    }
    return true;
}

bool DecoherenceTable::all_zero() const {
    for (double g : gamma) {
        if (g != 0.0) return false;
    }
    if (phi) {
        for (double p : *phi) {
            if (p != 0.0) return false;
        }
    }
    return true;
}

DecoherenceTable build_table(const SpectralModel &model, int n_max, std::optional<double> beta_over_dt,
                             bool include_phi, const QuadratureOptions &options, int threads) {
    validate(model);
    require(n_max >= 1, fmt::format("n_max must be >= 1, got {}", n_max));
    if (beta_over_dt) check_thermal(model, *beta_over_dt);

    const auto count = static_cast<std::size_t>(n_max) + 1;
    std::vector<double> gamma(count, 0.0);
    std::vector<double> phi(include_phi ? count - 1 : 0, 0.0);
    const std::size_t tasks = count + phi.size();
    detail::parallel_for(tasks, threads, [&](std::size_t i) {
        if (i < count) {
            gamma[i] = gamma_n(model, static_cast<int>(i), beta_over_dt, options);
        } else {
            const std::size_t k = i - count;
            phi[k] = phi_n(model, static_cast<int>(k) + 1, options);
        }
    });

    DecoherenceTable t;
    t.gamma = std::move(gamma);
    if (include_phi) t.phi = std::move(phi);
    t.beta_over_dt = beta_over_dt;
    t.model = model;
    const bool closed = !beta_over_dt && (std::holds_alternative<DcSpectrum>(model) ||
                                          std::holds_alternative<WhiteSpectrum>(model) ||
                                          std::holds_alternative<RectangularSpectrum>(model));
    t.method = closed ? TableMethod::ClosedForm : TableMethod::Quadrature;
    return t;
}

SmallXCoefficients double_gaussian_smallx_coeffs(const DoubleGaussianSpectrum &model) {
    require(positive_finite(model.sigma), "double_gaussian: sigma must be > 0");
    const double s = model.sigma;
    return {std::sqrt(2.0 / kPi) / s, -1.0 / (std::sqrt(2.0 * kPi) * s * s * s)};
}

double effective_correlation_time(const DoubleGaussianSpectrum &model) {
    return 0.5 * kPi * double_gaussian_smallx_coeffs(model).c0;
}

}  // namespace rbdephase
