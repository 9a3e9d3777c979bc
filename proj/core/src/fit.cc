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

#include "rbdephase/fit.h"

#include <fmt/format.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "rbdephase/errors.h"

namespace rbdephase {
namespace {

struct Data {
    std::vector<double> m;
    std::vector<double> y;
    std::vector<double> w;
    std::vector<double> sigma;
};

Data prepare(const DecayCurve &curve, std::size_t min_points, std::string_view what) {
    if (curve.points.size() < min_points) {
        throw PreconditionError(fmt::format("{} fit needs at least {} points, got {}", what, min_points,
                                            curve.points.size()));
    }
    Data d;
    bool unit = false;
    for (const auto &p : curve.points) {
        if (!std::isfinite(p.value) || !std::isfinite(p.std_error) || p.std_error < 0.0) {
            throw std::invalid_argument(fmt::format("curve point m = {} is not a finite estimate", p.m));
        }
        unit = unit || p.std_error == 0.0;
        d.m.push_back(p.m);
        d.y.push_back(p.value);
        d.sigma.push_back(p.std_error);
    }
    double mean_w = 0.0;
    for (const auto &p : curve.points) {
        d.w.push_back(unit ? 1.0 : 1.0 / (p.std_error * p.std_error));
        mean_w += d.w.back();
    }
    mean_w /= static_cast<double>(d.w.size());
    for (auto &w : d.w) w /= mean_w;
    return d;
}

// Model value and gradient with respect to the free parameters.
using ModelFn = std::function<double(const Eigen::VectorXd &, double, Eigen::Ref<Eigen::RowVectorXd>)>;
using ProjectFn = std::function<void(Eigen::VectorXd &)>;
using Jacobian = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
// Fills the weighted residual vector and, when jac is non-null, its
// Jacobian with respect to theta (d residual = -jac d theta).
using ResidualFn = std::function<void(const Eigen::VectorXd &, Eigen::VectorXd &, Jacobian *)>;

struct LmOutcome {
    Eigen::VectorXd theta;
    bool converged = false;
    int iterations = 0;
};

// Damped Gauss-Newton (Levenberg-Marquardt) with box projection.
LmOutcome levenberg_marquardt(const ResidualFn &residual, const ProjectFn &project, Eigen::VectorXd theta,
                              const FitOptions &options) {
    project(theta);
    const Eigen::Index k = theta.size();
    Eigen::VectorXd res;
    Jacobian jac;
    Eigen::VectorXd trial_res;
    residual(theta, res, nullptr);
    double cost = res.squaredNorm();
    const Eigen::Index n = res.size();

    LmOutcome out;
    double mu = -1.0;
    for (int it = 0; it < options.max_iterations; ++it) {
        out.iterations = it + 1;
        residual(theta, res, &jac);
        const Eigen::VectorXd grad = jac.transpose() * res;
        const Eigen::VectorXd scale = jac.colwise().squaredNorm().transpose().cwiseMax(1e-30);
        // Scale-free gradient norm: the largest cosine between the residual
        // and a Jacobian column.
        const double res_norm = res.norm();
        const double scaled_grad =
            res_norm == 0.0 ? 0.0 : (grad.array().abs() / (scale.array().sqrt() * res_norm)).maxCoeff();
        if (scaled_grad <= options.gradient_tolerance) {
            out.converged = true;
            break;
        }
        if (mu < 0.0) mu = 1e-3;
        bool accepted = false;
        bool stalled = false;
        while (!accepted) {
            // The damped step solves [J; sqrt(mu D)] step = [r; 0] by QR,
            // which avoids squaring the condition number.
            Eigen::MatrixXd a(n + k, k);
            a.topRows(n) = jac;
            a.bottomRows(k) = (mu * scale).cwiseSqrt().asDiagonal();
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + k);
            rhs.head(n) = res;
            const Eigen::VectorXd step = a.colPivHouseholderQr().solve(rhs);
            Eigen::VectorXd trial = theta + step;
            project(trial);
            residual(trial, trial_res, nullptr);
            const double trial_cost = trial_res.squaredNorm();
            const double moved = (trial - theta).lpNorm<Eigen::Infinity>();
            if (std::isfinite(trial_cost) && trial_cost < cost) {
                const double drop = cost - trial_cost;
                theta = trial;
                accepted = true;
                mu = std::max(mu / 3.0, 1e-15);
                if (drop <= 1e-15 * cost && moved <= 1e-14 * (1.0 + theta.lpNorm<Eigen::Infinity>())) {
                    stalled = true;
                }
                cost = trial_cost;
            } else {
                mu *= 4.0;
                if (mu > 1e16 || moved == 0.0) {
                    stalled = true;
                    break;
                }
            }
        }
        if (stalled) {
            // No further decrease is representable: a stationary point to
            // working precision.
            out.converged = true;
            break;
        }
    }
    out.theta = theta;
    return out;
}

// Per-point model residuals sqrt(w_i) (y_i - f(theta, m_i)).
ResidualFn pointwise_residual(const Data &d, ModelFn f) {
    return [&d, f = std::move(f)](const Eigen::VectorXd &theta, Eigen::VectorXd &res, Jacobian *jac) {
        const auto n = static_cast<Eigen::Index>(d.m.size());
        res.resize(n);
        Eigen::RowVectorXd g(theta.size());
        if (jac) jac->resize(n, theta.size());
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto iu = static_cast<std::size_t>(i);
            const double sw = std::sqrt(d.w[iu]);
            res(i) = sw * (d.y[iu] - f(theta, d.m[iu], g));
            if (jac) jac->row(i) = sw * g;
        }
    };
}

double rms(const Data &d, const FitResult &r) {
    double s = 0.0;
    for (std::size_t i = 0; i < d.m.size(); ++i) {
        const double e = d.y[i] - r.evaluate(d.m[i]);
        s += e * e;
    }
    return std::sqrt(s / static_cast<double>(d.m.size()));
}

double safe_pow(double base, double m) {
    return std::pow(base, m);
}

// d/dl l^m, finite at l = 0.
double dpow(double base, double m) {
    if (m == 0.0) return 0.0;
    return m * std::pow(base, m - 1.0);
}

constexpr double kMinRate = 1e-12;

SingleExpParams initial_single(const Data &d) {
    const double y_min = *std::min_element(d.y.begin(), d.y.end());
    const double b0 = 0.5 * y_min;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < d.m.size(); ++i) {
        if (d.y[i] <= 0.0 || d.y[i] - b0 <= 0.0) continue;
        const double ly = std::log(d.y[i] - b0);
        sx += d.m[i];
        sy += ly;
        sxx += d.m[i] * d.m[i];
        sxy += d.m[i] * ly;
        ++count;
    }
    SingleExpParams p{1.0, 0.9, b0};
    if (count >= 2) {
        const double denom = count * sxx - sx * sx;
        if (denom > 0.0) {
            const double slope = (count * sxy - sx * sy) / denom;
            const double intercept = (sy - slope * sx) / count;
            p.p = std::clamp(std::exp(slope), kMinRate, 1.0);
            p.a = std::exp(intercept);
        }
    }
    return p;
}

}  // namespace

std::string_view to_string(FitModel model) {
    return model == FitModel::SingleExp ? "single_exp" : "double_exp";
}

FitModel parse_fit_model(std::string_view name) {
    if (name == "single_exp" || name == "single") return FitModel::SingleExp;
    if (name == "double_exp" || name == "double") return FitModel::DoubleExp;
    throw std::invalid_argument(fmt::format("unknown fit model '{}' (expected single_exp, double_exp)", name));
}

double FitResult::evaluate(double m) const {
    if (const auto *s = std::get_if<SingleExpParams>(&params)) return s->a * std::pow(s->p, m) + s->b;
    const auto &p = std::get<DoubleExpParams>(params);
    return p.a_plus * std::pow(p.lambda_plus, m) + p.a_minus * std::pow(p.lambda_minus, m);
}

FitResult fit_single_exp(const DecayCurve &curve, const FitOptions &options) {
    const Data d = prepare(curve, 4, "single-exponential");
    const SingleExpParams init = initial_single(d);
    const ModelFn f = [](const Eigen::VectorXd &t, double m, Eigen::Ref<Eigen::RowVectorXd> g) {
        const double pm = safe_pow(t(1), m);
        g(0) = pm;
        g(1) = t(0) * dpow(t(1), m);
        g(2) = 1.0;
        return t(0) * pm + t(2);
    };
    const ProjectFn project = [](Eigen::VectorXd &t) { t(1) = std::clamp(t(1), kMinRate, 1.0); };
    Eigen::VectorXd theta(3);
    theta << init.a, init.p, init.b;
    const LmOutcome lm = levenberg_marquardt(pointwise_residual(d, f), project, theta, options);

    FitResult r;
    r.model = FitModel::SingleExp;
    r.params = SingleExpParams{lm.theta(0), lm.theta(1), lm.theta(2)};
    r.converged = lm.converged;
    r.iterations = lm.iterations;
    r.residual_rms = rms(d, r);
    if (!r.converged) r.warnings.push_back(fmt::format("not converged after {} iterations", lm.iterations));
    return r;
}

FitResult fit_double_exp(const DecayCurve &curve, bool fix_sum_to_one, const FitOptions &options) {
    const Data d = prepare(curve, 6, "double-exponential");
    const FitResult single = fit_single_exp(curve, options);
    const auto &s = std::get<SingleExpParams>(single.params);
    const double a_plus0 = s.a;
    const double l_plus0 = s.p;
    const double l_minus0 = l_plus0 / 10.0;
    const double a_minus0 = 1.0 - a_plus0;

    // Stage 1: the amplitudes enter linearly, so they are eliminated by a
    // weighted linear solve and only the log-rates are iterated (variable
    // projection with the Kaufman Jacobian). This follows the shallow
    // valley A- lambda- = const that a joint iteration crawls along.
    const auto n = static_cast<Eigen::Index>(d.m.size());
    Eigen::VectorXd sqrt_w(n);
    Eigen::VectorXd mvec(n);
    Eigen::VectorXd yw(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        sqrt_w(i) = std::sqrt(d.w[iu]);
        mvec(i) = d.m[iu];
        yw(i) = sqrt_w(i) * d.y[iu];
    }
    auto powers = [&](double l, Eigen::VectorXd &pw, Eigen::VectorXd &dpw) {
        pw.resize(n);
        dpw.resize(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            pw(i) = sqrt_w(i) * std::pow(l, mvec(i));
            dpw(i) = sqrt_w(i) * dpow(l, mvec(i));
        }
    };
    // Amplitudes for given rates, and the residual projected off the basis.
    auto amplitudes = [&](const Eigen::VectorXd &log_rates, Eigen::VectorXd &amp, Eigen::VectorXd &res,
                          Jacobian *jac) {
        const double lp = std::exp(log_rates(0));
        const double lm = std::exp(log_rates(1));
        Eigen::VectorXd pp, dpp, pm, dpm;
        powers(lp, pp, dpp);
        powers(lm, pm, dpm);
        Eigen::MatrixXd basis;
        Eigen::VectorXd target = yw;
        if (fix_sum_to_one) {
            basis = pp - pm;
            target -= pm;
        } else {
            basis.resize(n, 2);
            basis.col(0) = pp;
            basis.col(1) = pm;
        }
        const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
        const Eigen::VectorXd coef = qr.solve(target);
        amp.resize(2);
        amp(0) = coef(0);
        amp(1) = fix_sum_to_one ? 1.0 - coef(0) : coef(1);
        res = target - basis * coef;
        if (!jac) return;
        // Kaufman: J_j = P_perp dmodel/dlambda_j with amplitudes held fixed.
        Eigen::MatrixXd dmodel(n, 2);
        dmodel.col(0) = amp(0) * lp * dpp;
        dmodel.col(1) = amp(1) * lm * dpm;
        const Eigen::Index rank = qr.rank();
        const Eigen::MatrixXd q = Eigen::MatrixXd(qr.householderQ()).leftCols(rank);
        *jac = dmodel - q * (q.transpose() * dmodel);
    };
    const double log_floor = std::log(kMinRate);
    const ProjectFn project_rates = [log_floor](Eigen::VectorXd &t) {
        t(0) = std::clamp(t(0), log_floor, 0.0);
        t(1) = std::clamp(t(1), log_floor, t(0));
    };
    Eigen::VectorXd log_rates(2);
    log_rates << std::log(std::max(l_plus0, kMinRate)), std::log(std::max(l_minus0, kMinRate));
    const ResidualFn reduced = [&](const Eigen::VectorXd &t, Eigen::VectorXd &res, Jacobian *jac) {
        Eigen::VectorXd amp;
        amplitudes(t, amp, res, jac);
    };
    log_rates = levenberg_marquardt(reduced, project_rates, log_rates, options).theta;
    Eigen::VectorXd amp;
    {
        Eigen::VectorXd res;
        amplitudes(log_rates, amp, res, nullptr);
    }
    const Eigen::VectorXd rates = log_rates.array().exp();
    // Keep the single-fit start if the projection stage found nothing better.
    const bool projected_ok = amp.allFinite();

    // Stage 2: joint polish of all parameters.
    const ProjectFn project = [fix_sum_to_one](Eigen::VectorXd &t) {
        const Eigen::Index lp = 1;
        const Eigen::Index lm = fix_sum_to_one ? 2 : 3;
        t(lp) = std::clamp(t(lp), 0.0, 1.0);
        t(lm) = std::clamp(t(lm), 0.0, t(lp));
    };
    ModelFn f;
    Eigen::VectorXd theta;
    if (fix_sum_to_one) {
        f = [](const Eigen::VectorXd &t, double m, Eigen::Ref<Eigen::RowVectorXd> g) {
            const double pp = std::pow(t(1), m);
            const double pm = std::pow(t(2), m);
            g(0) = pp - pm;
            g(1) = t(0) * dpow(t(1), m);
            g(2) = (1.0 - t(0)) * dpow(t(2), m);
            return t(0) * pp + (1.0 - t(0)) * pm;
        };
        theta.resize(3);
        if (projected_ok) {
            theta << amp(0), rates(0), rates(1);
        } else {
            theta << a_plus0, l_plus0, l_minus0;
        }
    } else {
        f = [](const Eigen::VectorXd &t, double m, Eigen::Ref<Eigen::RowVectorXd> g) {
            const double pp = std::pow(t(1), m);
            const double pm = std::pow(t(3), m);
            g(0) = pp;
            g(1) = t(0) * dpow(t(1), m);
            g(2) = pm;
            g(3) = t(2) * dpow(t(3), m);
            return t(0) * pp + t(2) * pm;
        };
        theta.resize(4);
        if (projected_ok) {
            theta << amp(0), rates(0), amp(1), rates(1);
        } else {
            theta << a_plus0, l_plus0, a_minus0, l_minus0;
        }
    }
    const LmOutcome lm = levenberg_marquardt(pointwise_residual(d, f), project, theta, options);

    FitResult r;
    r.model = FitModel::DoubleExp;
    DoubleExpParams p;
    p.a_plus = lm.theta(0);
    p.lambda_plus = lm.theta(1);
    if (fix_sum_to_one) {
        p.a_minus = 1.0 - p.a_plus;
        p.lambda_minus = lm.theta(2);
    } else {
        p.a_minus = lm.theta(2);
        p.lambda_minus = lm.theta(3);
    }
    r.params = p;
    r.converged = lm.converged;
    r.iterations = lm.iterations;
    r.residual_rms = rms(d, r);
    if (!r.converged) r.warnings.push_back(fmt::format("not converged after {} iterations", lm.iterations));

    // The fast component is resolvable only if it exceeds the noise floor at
    // the shortest sequence length.
    const double m_min = *std::min_element(d.m.begin(), d.m.end());
    double noise = 0.0;
    for (double sg : d.sigma) noise = std::max(noise, sg);
    double y_scale = 0.0;
    for (double y : d.y) y_scale = std::max(y_scale, std::abs(y));
    if (noise == 0.0) noise = 1e-12 * y_scale;
    const double fast = std::abs(p.a_minus) * std::pow(p.lambda_minus, m_min);
    if (fast < noise) {
        r.warnings.push_back(fmt::format(
            "second decay component is unresolvable: |A-| lambda-^{} = {:.3g} is below the noise scale {:.3g}", m_min,
            fast, noise));
    }
    return r;
}

}  // namespace rbdephase
