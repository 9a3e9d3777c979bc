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

#ifndef RBDEPHASE_SPECTRA_H
#define RBDEPHASE_SPECTRA_H

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rbdephase {

// Dimensionless noise spectra S(x), x = omega * dt. All analytic models are
// even in x.

/// S(x) = eta * delta(x): quasi-static noise, Gamma(n) = eta for every n.
struct DcSpectrum {
    double eta = 0.0;
};

/// S(x) = eta / pi.
struct WhiteSpectrum {
    double eta = 0.0;
};

/// Spectrum of a rectangular correlation function of half-width xi gate
/// intervals: S(x) = 2 eta sin(xi x) / (pi x).
struct RectangularSpectrum {
    double eta = 0.0;
    double xi = 0.0;
};

/// Two Gaussian peaks of width sigma at +-xbar, total weight 2 eta.
struct DoubleGaussianSpectrum {
    double eta = 0.0;
    double xbar = 0.0;
    double sigma = 0.0;
};

/// Samples (x, S(x)), strictly increasing in x and linearly interpolated.
/// S is taken to be zero beyond the last sample. If all x >= 0 the
/// spectrum is the even extension of the samples; otherwise the samples
/// must themselves be even.
struct TabulatedSpectrum {
    std::vector<double> x;
    std::vector<double> s;
};

using SpectralModel =
    std::variant<DcSpectrum, WhiteSpectrum, RectangularSpectrum, DoubleGaussianSpectrum, TabulatedSpectrum>;

/// Throws std::invalid_argument when a parameter invariant is violated.
void validate(const SpectralModel &model);

/// "dc", "white", "rect", "double_gaussian" or "tabulated".
std::string_view model_name(const SpectralModel &model);

/// S(x). Not defined for DcSpectrum (throws std::invalid_argument).
double spectral_density(const SpectralModel &model, double x);

struct QuadratureOptions {
    /// Absolute tolerance on each decoherence function.
    double abs_tolerance = 1e-9;
};

/// n-step decoherence function
///   Gamma(n) = 1/2 int S(x) sinc^2(x/2) cos(n x) [coth(beta |x| / 2)] dx.
/// Without beta_over_dt the thermal factor is absent (classical noise, or the
/// zero-temperature quantum bath). Closed forms are used for DC, white and
/// rectangular spectra; other models go through quadrature.
///
/// Throws std::invalid_argument for a thermal factor with a DC spectrum,
/// PreconditionError when the thermal integral diverges because S(0) > 0,
/// and QuadratureError when the tolerance cannot be met.
double gamma_n(const SpectralModel &model, int n, std::optional<double> beta_over_dt = std::nullopt,
               const QuadratureOptions &options = {});

/// Quantum commutator phase Phi(n) = 1/2 int S(x) sinc^2(x/2) sin(n x) dx.
/// Zero for every even spectrum.
double phi_n(const SpectralModel &model, int n, const QuadratureOptions &options = {});

/// Always integrates numerically, bypassing closed forms. DC is rejected.
double gamma_n_quadrature(const SpectralModel &model, int n, std::optional<double> beta_over_dt = std::nullopt,
                          const QuadratureOptions &options = {});
double phi_n_quadrature(const SpectralModel &model, int n, const QuadratureOptions &options = {});

/// Rectangular-correlation decoherence function, piecewise in xi >= 1 and
/// 0 < xi < 1.
double rect_gamma_closed(double eta, double xi, int n);

/// Single-expression form of the same function,
///   eta/4 {1 + (n+xi)[2-(n+xi)] + [n-(1-xi)] + 2[n-xi] - [n-(xi-1)] - [n-(xi+1)]}
/// with [z] = z^2 sgn(z).
double rect_gamma_master(double eta, double xi, int n);

enum class TableMethod { ClosedForm, Quadrature, Manual };
std::string_view to_string(TableMethod method);
TableMethod parse_table_method(std::string_view name);

/// Decoherence functions Gamma(0..n_max) and, for the quantum model,
/// Phi(1..n_max). phi[i] holds Phi(i + 1).
struct DecoherenceTable {
    std::vector<double> gamma;
    std::optional<std::vector<double>> phi;
    std::optional<double> beta_over_dt;
    std::optional<SpectralModel> model;
    TableMethod method = TableMethod::Manual;
    /// When set, entries beyond n_max are exactly zero by declaration.
    bool truncated = false;

    int n_max() const {
        return static_cast<int>(gamma.size()) - 1;
    }
    bool has_phi() const {
        return phi.has_value();
    }

    /// Gamma(n); zero past n_max if truncated, else PreconditionError.
    double gamma_at(int n) const;
    /// Phi(n) with Phi(0) = 0; zero past n_max if truncated, else
    /// PreconditionError. Throws PreconditionError if phi is absent.
    double phi_at(int n) const;

    /// Directly entered table; method is Manual. Throws
    /// std::invalid_argument on empty or non-finite input.
    static DecoherenceTable manual(std::vector<double> gamma, std::optional<std::vector<double>> phi = std::nullopt,
                                   bool truncated = false);

    bool is_constant_gamma(double tolerance = 0.0) const;
    bool all_zero() const;
};

/// Evaluates gamma_n (and phi_n when include_phi) for n = 0..n_max.
/// Entries are computed independently, so threads > 1 gives bit-identical
/// results.
DecoherenceTable build_table(const SpectralModel &model, int n_max, std::optional<double> beta_over_dt,
                             bool include_phi, const QuadratureOptions &options = {}, int threads = 1);

/// Second-order small-x expansion of S(x)/eta for two merged peaks,
/// S/eta ~ c0 + c2 x^2 with c0 = sqrt(2/pi)/sigma, c2 = -1/(sqrt(2 pi) sigma^3).
struct SmallXCoefficients {
    double c0 = 0.0;
    double c2 = 0.0;
};
SmallXCoefficients double_gaussian_smallx_coeffs(const DoubleGaussianSpectrum &model);

/// Correlation time xi that gives a rectangular spectrum the same S(0)/eta,
/// i.e. 2 xi / pi = c0.
double effective_correlation_time(const DoubleGaussianSpectrum &model);

}  // namespace rbdephase

#endif  // RBDEPHASE_SPECTRA_H
