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

#include "rbdephase/decay.h"

#include <fmt/format.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "numeric.h"
#include "rbdephase/errors.h"
#include "rbdephase/groups.h"
#include "rbdephase/rng.h"

namespace rbdephase {
namespace {

constexpr double kDegeneracyTolerance = 1e-10;

double capped_exp_neg(double x) {
    return x > kGammaCap ? 0.0 : std::exp(-x);
}

void check_model_group(NoiseModel model, GroupKind group) {
    if (group == GroupKind::Id && model != NoiseModel::Quantum) {
        throw std::invalid_argument("the id group is only defined for the quantum model");
    }
}

void check_m(int m) {
    if (m < 0) throw std::invalid_argument(fmt::format("sequence length must be >= 0, got {}", m));
}

// Gamma(0..m-1) and, for the quantum model, Phi(0..m-1) gathered from the
// table, so coverage errors surface before any work.
struct Couplings {
    std::vector<double> gamma;
    std::vector<double> phi;
};

Couplings gather(NoiseModel model, const DecoherenceTable &table, int m) {
    Couplings c;
    const int span = std::max(m, 1);
    c.gamma.resize(static_cast<std::size_t>(span));
    for (int n = 0; n < span; ++n) c.gamma[static_cast<std::size_t>(n)] = table.gamma_at(n);
    if (model == NoiseModel::Quantum) {
        if (!table.has_phi()) {
            throw PreconditionError("the quantum model needs Phi entries in the decoherence table");
        }
        c.phi.resize(static_cast<std::size_t>(span));
        for (int n = 0; n < span; ++n) c.phi[static_cast<std::size_t>(n)] = table.phi_at(n);
    }
    return c;
}

// Exponent sum_{j,k} u_j u_k Gamma(|j-k|) and phase
// theta = 2 sum_{j>k} u_j v_k sgn(k-j) Phi(j-k) of one tuple.
struct Summand {
    double exponent = 0.0;
    double theta = 0.0;
};

Summand summand(const Couplings &c, const std::vector<TupleElement> &t, bool quantum) {
    Summand s;
    const std::size_t m = t.size();
    for (std::size_t j = 0; j < m; ++j) {
        const int uj = t[j].u;
        if (uj == 0) continue;
        s.exponent += c.gamma[0];
        for (std::size_t k = 0; k < j; ++k) {
            const std::size_t n = j - k;
            s.exponent += 2.0 * uj * t[k].u * c.gamma[n];
            if (quantum) s.theta -= 2.0 * uj * t[k].v * c.phi[n];
        }
    }
    return s;
}

double enumerate(NoiseModel model, GroupKind group, const DecoherenceTable &table, int m, bool cosine_path) {
    check_model_group(model, group);
    check_m(m);
    const TupleSet set = tuple_set(group, model);
    const double total = std::pow(static_cast<double>(set.size()), m);
    if (total > kEnumerationCap) {
        throw PreconditionError(fmt::format("exact enumeration of {}^{} = {:.4g} tuples exceeds the cap of {:.0e}",
                                            set.size(), m, total, kEnumerationCap));
    }
    if (m == 0) return 1.0;
    const Couplings c = gather(model, table, m);
    const bool quantum = model == NoiseModel::Quantum;
    const auto distinct = distinct_elements(set);
    const std::size_t d = distinct.size();

    std::vector<std::size_t> digits(static_cast<std::size_t>(m), 0);
    std::vector<TupleElement> tuple(static_cast<std::size_t>(m), distinct[0].element);
    detail::NeumaierSum re;
    detail::NeumaierSum im;
    for (;;) {
        double weight = 1.0;
        for (std::size_t j = 0; j < digits.size(); ++j) weight *= distinct[digits[j]].multiplicity;
        const Summand s = summand(c, tuple, quantum);
        const double mag = capped_exp_neg(s.exponent);
        if (cosine_path) {
            re.add(weight * mag * std::cos(s.theta));
        } else {
            const std::complex<double> z = std::polar(mag, s.theta);
            re.add(weight * z.real());
            im.add(weight * z.imag());
        }
        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == d) {
            digits[pos] = 0;
            tuple[pos] = distinct[0].element;
            ++pos;
        }
        if (pos == digits.size()) break;
        tuple[pos] = distinct[digits[pos]].element;
    }
    // The imaginary part cancels exactly between (u, v) and (u, -v) tuples.
    return re.value() / total;
}

double decay_value(NoiseModel model, GroupKind group, const DecoherenceTable &table, int m, DecayMethod method,
                   const MonteCarloOptions &options, double *std_error) {
    if (std_error) *std_error = 0.0;
    switch (method) {
        case DecayMethod::ExactEnum:
            return decay_exact_enum(model, group, table, m);
        case DecayMethod::MonteCarlo: {
            const Estimate e = decay_mc(model, group, table, m, options);
            if (std_error) *std_error = e.std_error;
            return e.value;
        }
        case DecayMethod::Order0:
            return decay_order0(model, group, table, m);
        case DecayMethod::Order1:
            return decay_order1(model, group, table, m);
        case DecayMethod::DcClosedForm:
        case DecayMethod::DcAsymptotic: {
            const DecaySpec spec{model, group, method, options, table, {m}};
            validate(spec);
            return dc_fm(table.gamma_at(0), m,
                         method == DecayMethod::DcClosedForm ? DcMode::ExactSum : DcMode::Asymptotic);
        }
        case DecayMethod::OraclePhases:
        case DecayMethod::OracleProtocol:
            break;
    }
    throw std::invalid_argument(
        fmt::format("method '{}' is provided by the oracle engines, not the decay engines", to_string(method)));
}

}  // namespace

std::string_view to_string(DecayMethod method) {
    switch (method) {
        case DecayMethod::ExactEnum:
            return "exact";
        case DecayMethod::MonteCarlo:
            return "mc";
        case DecayMethod::Order0:
            return "order0";
        case DecayMethod::Order1:
            return "order1";
        case DecayMethod::DcClosedForm:
            return "dc_closed";
        case DecayMethod::DcAsymptotic:
            return "dc_asymptotic";
        case DecayMethod::OraclePhases:
            return "oracle_phases";
        case DecayMethod::OracleProtocol:
            return "oracle_protocol";
    }
    return "?";
}

DecayMethod parse_decay_method(std::string_view name) {
    for (DecayMethod m : {DecayMethod::ExactEnum, DecayMethod::MonteCarlo, DecayMethod::Order0, DecayMethod::Order1,
                          DecayMethod::DcClosedForm, DecayMethod::DcAsymptotic, DecayMethod::OraclePhases,
                          DecayMethod::OracleProtocol}) {
        if (to_string(m) == name) return m;
    }
    throw std::invalid_argument(fmt::format("unknown decay method '{}'", name));
}

void validate(const DecaySpec &spec) {
    check_model_group(spec.model, spec.group);
    if (spec.model == NoiseModel::Quantum && !spec.table.has_phi()) {
        throw PreconditionError("the quantum model needs Phi entries in the decoherence table");
    }
    for (int m : spec.m_values) {
        if (m < 1) throw std::invalid_argument(fmt::format("sequence lengths must be >= 1, got {}", m));
    }
    switch (spec.method) {
        case DecayMethod::MonteCarlo:
            if (spec.monte_carlo.samples < 1000) {
                throw PreconditionError(
                    fmt::format("Monte Carlo needs at least 1000 samples, got {}", spec.monte_carlo.samples));
            }
            break;
        case DecayMethod::DcClosedForm:
        case DecayMethod::DcAsymptotic: {
            if (spec.model != NoiseModel::Classical || spec.group != GroupKind::Pauli) {
                throw PreconditionError("the dc closed form applies to the classical model with the pauli group");
            }
            int max_m = 1;
            for (int m : spec.m_values) max_m = std::max(max_m, m);
            const double eta = spec.table.gamma_at(0);
            for (int n = 1; n < max_m; ++n) {
                if (spec.table.gamma_at(n) != eta) {
                    throw PreconditionError("the dc closed form needs a constant Gamma table");
                }
            }
            if (!(eta > 0.0)) throw PreconditionError("the dc closed form needs Gamma > 0");
            break;
        }
        default:
            break;
    }
}

double decay_exact_enum(NoiseModel model, GroupKind group, const DecoherenceTable &table, int m) {
    return enumerate(model, group, table, m, false);
}

double decay_exact_enum_cosine(NoiseModel model, GroupKind group, const DecoherenceTable &table, int m) {
    return enumerate(model, group, table, m, true);
}

Estimate decay_mc(NoiseModel model, GroupKind group, const DecoherenceTable &table, int m,
                  const MonteCarloOptions &options) {
    check_model_group(model, group);
    check_m(m);
    if (options.samples < 1000) {
        throw PreconditionError(fmt::format("Monte Carlo needs at least 1000 samples, got {}", options.samples));
    }
    if (m == 0) return {1.0, 0.0};
    const Couplings c = gather(model, table, m);
    const bool quantum = model == NoiseModel::Quantum;
    const TupleSet set = tuple_set(group, model);

    const std::uint64_t blocks = (options.samples + detail::kMonteCarloBlock - 1) / detail::kMonteCarloBlock;
    std::vector<detail::Welford> partial(blocks);
    detail::parallel_for(blocks, options.threads, [&](std::size_t b) {
        CounterRng rng(derive_seed(options.seed, b));
        const std::uint64_t begin = b * detail::kMonteCarloBlock;
        const std::uint64_t end = std::min(options.samples, begin + detail::kMonteCarloBlock);
        std::vector<TupleElement> tuple(static_cast<std::size_t>(m));
        detail::Welford w;
        for (std::uint64_t i = begin; i < end; ++i) {
            for (auto &t : tuple) t = set.elements[rng.uniform_index(set.size())];
            const Summand s = summand(c, tuple, quantum);
            w.add(capped_exp_neg(s.exponent) * std::cos(s.theta));
        }
        partial[b] = w;
    });
    detail::Welford total;
    for (const auto &w : partial) total.merge(w);
    return {total.mean, total.std_error()};
}

double decay_order0(NoiseModel model, GroupKind group, double gamma0, int m) {
    check_model_group(model, group);
    check_m(m);
    const double z = zero_ratio(group, model);
    return std::pow(z + (1.0 - z) * capped_exp_neg(gamma0), m);
}

double decay_order0(NoiseModel model, GroupKind group, const DecoherenceTable &table, int m) {
    return decay_order0(model, group, table.gamma_at(0), m);
}

LambdaPair lambda_pair(NoiseModel model, GroupKind group, double gamma0, double gamma1, std::optional<double> phi1) {
    check_model_group(model, group);
    if (model == NoiseModel::Quantum && !phi1) {
        throw std::invalid_argument("the quantum decay rates need Phi(1)");
    }
    LambdaPair r;
    r.z = zero_ratio(group, model);
    r.z_prime = model == NoiseModel::Quantum ? r.z * std::cos(2.0 * *phi1) : r.z;
    const double e0 = capped_exp_neg(gamma0);
    r.p1 = r.z + (1.0 - r.z) * e0;
    r.q1 = r.z_prime + (1.0 - r.z) * e0 * std::cosh(2.0 * gamma1);

    const double tr = r.q1 + r.z - r.z_prime;
    const double det = r.z * r.q1 - r.z_prime * r.p1;
    double disc = tr * tr - 4.0 * det;
    if (disc < 0.0) {
        if (disc >= -1e-14 * std::max(1.0, tr * tr)) {
            disc = 0.0;
        } else {
            throw PreconditionError(fmt::format(
                "first-order decay rates are complex: discriminant {:.17g} < 0 (Gamma(0) = {}, Gamma(1) = {}, "
                "Phi(1) = {})",
                disc, gamma0, gamma1, phi1.value_or(0.0)));
        }
    }
    const double root = std::sqrt(disc);
    // Larger-magnitude root first, the other from the determinant.
    if (tr >= 0.0) {
        r.lambda_plus = 0.5 * (tr + root);
        r.lambda_minus = r.lambda_plus != 0.0 ? det / r.lambda_plus : 0.5 * (tr - root);
    } else {
        r.lambda_minus = 0.5 * (tr - root);
        r.lambda_plus = det / r.lambda_minus;
    }
    const double gap = r.lambda_plus - r.lambda_minus;
    if (std::abs(gap) < kDegeneracyTolerance) {
        r.degenerate = true;
        r.a_plus = 1.0;
        r.a_minus = 0.0;
    } else {
        r.a_plus = (r.p1 - r.lambda_minus) / gap;
        r.a_minus = (r.lambda_plus - r.p1) / gap;
    }
    return r;
}

double decay_order1(const LambdaPair &pair, int m) {
    check_m(m);
    if (m == 0) return 1.0;
    if (m == 1) return pair.p1;
    if (pair.degenerate) {
        const double lambda = 0.5 * (pair.lambda_plus + pair.lambda_minus);
        if (lambda == 0.0) return 0.0;
        const double b = pair.p1 / lambda - 1.0;
        return (1.0 + b * m) * std::pow(lambda, m);
    }
    return pair.a_plus * std::pow(pair.lambda_plus, m) + pair.a_minus * std::pow(pair.lambda_minus, m);
}

double decay_order1(NoiseModel model, GroupKind group, const DecoherenceTable &table, int m) {
    check_model_group(model, group);
    check_m(m);
    std::optional<double> phi1;
    if (model == NoiseModel::Quantum) {
        if (!table.has_phi()) {
            throw PreconditionError("the quantum model needs Phi entries in the decoherence table");
        }
        phi1 = table.phi_at(1);
    }
    return decay_order1(lambda_pair(model, group, table.gamma_at(0), table.gamma_at(1), phi1), m);
}

double decay_order1_pauli_closed(double gamma0, double gamma1, int m) {
    check_m(m);
    if (m == 0) return 1.0;
    return std::pow(capped_exp_neg(gamma0), m) * std::pow(std::cosh(2.0 * gamma1), m - 1);
}

double recurrence_matrix_power(NoiseModel model, GroupKind group, double gamma0, double gamma1,
                               std::optional<double> phi1, int m) {
    check_model_group(model, group);
    check_m(m);
    if (model == NoiseModel::Quantum && !phi1) {
        throw std::invalid_argument("the quantum recurrence needs Phi(1)");
    }
    const double z = zero_ratio(group, model);
    const double zp = model == NoiseModel::Quantum ? z * std::cos(2.0 * *phi1) : z;
    const double e0 = capped_exp_neg(gamma0);
    const double p1 = z + (1.0 - z) * e0;
    const double q1 = zp + (1.0 - z) * e0 * std::cosh(2.0 * gamma1);
    // (p_{k+1}, q_{k+1}) = M (p_k, q_k), M = [[z, p1 - z], [z', q1 - z']].
    double p = 1.0;
    double q = 1.0;
    for (int k = 0; k < m; ++k) {
        const double np = z * p + (p1 - z) * q;
        const double nq = zp * p + (q1 - zp) * q;
        p = np;
        q = nq;
    }
    return p;
}

double dc_fm(double eta, int m, DcMode mode) {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("dc_fm: eta must be > 0");
    check_m(m);
    if (m == 0) return 1.0;
    if (mode == DcMode::Asymptotic) return 1.0 / std::sqrt(1.0 + 2.0 * eta * m);
    detail::NeumaierSum sum;
    const double md = static_cast<double>(m);
    if (m <= 500) {
        double w = std::pow(0.5, m);  // C(m, k) / 2^m, updated in place
        for (int k = 0; k <= m; ++k) {
            const double d = 2.0 * k - md;
            sum.add(w * std::exp(-eta * d * d));
            w *= (md - k) / (k + 1.0);
        }
    } else {
        const double log_norm = std::lgamma(md + 1.0) - md * std::log(2.0);
        for (int k = 0; k <= m; ++k) {
            const double d = 2.0 * k - md;
            const double log_term = log_norm - std::lgamma(k + 1.0) - std::lgamma(md - k + 1.0) - eta * d * d;
            sum.add(std::exp(log_term));
        }
    }
    return sum.value();
}

TransferMatrix sequence_channel(NoiseModel model, GroupKind group, const DecoherenceTable &table, int m,
                                DecayMethod method, const MonteCarloOptions &options) {
    check_model_group(model, group);
    auto p = [&](GroupKind g) { return decay_value(model, g, table, m, method, options, nullptr); };
    switch (group) {
        case GroupKind::Id:
            return TransferMatrix::identity();
        case GroupKind::Pauli: {
            const double f = p(GroupKind::Pauli);
            return TransferMatrix::diagonal(1.0, f, f, 1.0);
        }
        case GroupKind::RClif: {
            const double g = p(GroupKind::RClif);
            const double f = p(GroupKind::Pauli);
            return TransferMatrix::diagonal(1.0, g, f, g);
        }
        case GroupKind::Clif: {
            const double h = p(GroupKind::Clif);
            return TransferMatrix::diagonal(1.0, h, h, h);
        }
    }
    return TransferMatrix::identity();
}

DecayCurve evaluate_curve(const DecaySpec &spec) {
    validate(spec);
    DecayCurve curve;
    curve.model = spec.model;
    curve.group = spec.group;
    for (int m : spec.m_values) {
        DecayPoint pt;
        pt.m = m;
        pt.method = spec.method;
        pt.value = decay_value(spec.model, spec.group, spec.table, m, spec.method, spec.monte_carlo, &pt.std_error);
        curve.points.push_back(pt);
    }
    return curve;
}

}  // namespace rbdephase
