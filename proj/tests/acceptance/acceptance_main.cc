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

// Acceptance checks. Prints one PASS/FAIL line per criterion; with
// --criterion N runs only that one. Exit status is nonzero if any fails.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "oracles.h"
#include "rbdephase/rbdephase.h"

namespace rbdephase::acceptance {
namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char *title;
    double time_limit_s;
    std::function<Outcome()> run;
};

constexpr GroupKind kTwirlGroups[] = {GroupKind::Pauli, GroupKind::RClif, GroupKind::Clif};

// Groups defined for a noise model; id exists for the quantum model only.
std::vector<GroupKind> groups_for(NoiseModel model) {
    std::vector<GroupKind> out(std::begin(kTwirlGroups), std::end(kTwirlGroups));
    if (model == NoiseModel::Quantum) out.insert(out.begin(), GroupKind::Id);
    return out;
}

int worker_threads() {
    return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

// 1. Closed-form twirls against group averages.
Outcome twirl_equivalence() {
    std::mt19937_64 gen(20240601);
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const TransferMatrix e = testing::random_matrix(gen);
        for (GroupKind g : kTwirlGroups) worst = std::max(worst, max_abs_difference(twirl_closed(g, e), twirl_bruteforce(g, e)));
    }
    return {worst <= 1e-12, fmt::format("500 matrices x 3 groups, max deviation {:.3g} (limit 1e-12)", worst)};
}

// 2. Catalog sizes, shapes and nesting.
Outcome group_catalogs() {
    const auto &pauli = enumerate_group(GroupKind::Pauli);
    const auto &rclif = enumerate_group(GroupKind::RClif);
    const auto &clif = enumerate_group(GroupKind::Clif);
    Outcome o;
    o.pass = pauli.size() == 4 && rclif.size() == 8 && clif.size() == 24;
    int bad_shape = 0;
    for (const auto &g : clif) {
        bool ok = g(0, 0) == 1.0;
        for (std::size_t i = 1; i < 4; ++i) {
            ok = ok && g(0, i) == 0.0 && g(i, 0) == 0.0;
            int row_nonzero = 0;
            int col_nonzero = 0;
            for (std::size_t j = 1; j < 4; ++j) {
                if (g(i, j) != 0.0) {
                    ok = ok && std::abs(g(i, j)) == 1.0;
                    ++row_nonzero;
                }
                if (g(j, i) != 0.0) ++col_nonzero;
            }
            ok = ok && row_nonzero == 1 && col_nonzero == 1;
        }
        ok = ok && testing::block_determinant(g) == 1.0;
        if (!ok) ++bad_shape;
    }
    auto subset = [](const std::vector<TransferMatrix> &a, const std::vector<TransferMatrix> &b) {
        return std::all_of(a.begin(), a.end(), [&](const TransferMatrix &g) { return std::find(b.begin(), b.end(), g) != b.end(); });
    };
    const bool chain = subset(pauli, rclif) && subset(rclif, clif);
    o.pass = o.pass && bad_shape == 0 && chain;
    o.detail = fmt::format("sizes {}/{}/{}, clifford shape violations {}, subset chain {}", pauli.size(), rclif.size(),
                           clif.size(), bad_shape, chain ? "holds" : "broken");
    return o;
}

// 3. Quadrature against the rectangular and white closed forms.
Outcome closed_forms_vs_quadrature() {
    double rect_worst = 0.0;  // in units of eta
    double white_worst = 0.0;
    for (double eta : {0.1, 1.0}) {
        for (double xi : {0.3, 0.5, 1.0, 2.5}) {
            for (int n = 0; n <= 6; ++n) {
                const RectangularSpectrum r{eta, xi};
                const double q = gamma_n_quadrature(r, n);
                rect_worst = std::max(rect_worst, std::abs(q - rect_gamma_closed(eta, xi, n)) / eta);
            }
        }
        for (int n = 0; n <= 6; ++n) {
            const double q = gamma_n_quadrature(WhiteSpectrum{eta}, n);
            white_worst = std::max(white_worst, std::abs(q - (n == 0 ? eta : 0.0)));
        }
    }
    return {rect_worst <= 1e-6 && white_worst <= 1e-9,
            fmt::format("rectangular max |dev|/eta {:.3g} (limit 1e-6), white max |dev| {:.3g} (limit 1e-9)", rect_worst,
                        white_worst)};
}

// 4. Constant-correlation (dc) decay.
Outcome dc_reproduction() {
    const double eta = 0.1;
    const DecoherenceTable dc = build_table(DcSpectrum{eta}, 30, std::nullopt, false);
    double enum_worst = 0.0;
    for (int m = 1; m <= 12; ++m) {
        enum_worst = std::max(enum_worst, std::abs(dc_fm(eta, m, DcMode::ExactSum) -
                                                   decay_exact_enum(NoiseModel::Classical, GroupKind::Pauli, dc, m)));
    }
    double mc_worst_sigma = 0.0;
    for (int m = 1; m <= 30; ++m) {
        const MonteCarloOptions opts{1000000, static_cast<std::uint64_t>(4000 + m), worker_threads()};
        const Estimate e = decay_mc(NoiseModel::Classical, GroupKind::Pauli, dc, m, opts);
        mc_worst_sigma = std::max(mc_worst_sigma, std::abs(e.value - dc_fm(eta, m, DcMode::ExactSum)) / e.std_error);
    }
    double asym_worst = 0.0;
    for (int m = 4; m <= 30; ++m) {
        const double exact = dc_fm(eta, m, DcMode::ExactSum);
        asym_worst = std::max(asym_worst, std::abs(dc_fm(eta, m, DcMode::Asymptotic) - exact) / exact);
    }
    const double exact20 = dc_fm(eta, 20, DcMode::ExactSum);
    const double order1_20 = decay_order1(NoiseModel::Classical, GroupKind::Pauli, dc, 20);
    const bool pass = enum_worst <= 1e-12 && mc_worst_sigma <= 4.0 && asym_worst <= 0.02 && exact20 >= 2.0 * order1_20;
    return {pass, fmt::format("(a) enum max dev {:.3g}, mc worst {:.2f} sigma at 1e6 samples; (b) asymptotic max rel "
                              "dev {:.4f}; (c) m=20 exact {:.6f} vs order1 {:.6f} (ratio {:.3f})",
                              enum_worst, mc_worst_sigma, asym_worst, exact20, order1_20, exact20 / order1_20)};
}

// 5. Order-1 closed form against the 2x2 matrix power, plus trace and
// determinant identities of the roots.
Outcome recurrence_correctness() {
    const double grid[] = {0.0, 0.05, 0.2};
    double power_worst = 0.0;
    double identity_worst = 0.0;
    for (NoiseModel model : {NoiseModel::Classical, NoiseModel::Quantum}) {
        for (GroupKind g : groups_for(model)) {
            for (double g0 : grid) {
                for (double g1 : grid) {
                    for (double ph : grid) {
                        const std::optional<double> phi1 =
                            model == NoiseModel::Quantum ? std::optional<double>(ph) : std::nullopt;
                        const LambdaPair pair = lambda_pair(model, g, g0, g1, phi1);
                        for (int m = 1; m <= 10; ++m) {
                            power_worst = std::max(power_worst, std::abs(decay_order1(pair, m) -
                                                                         recurrence_matrix_power(model, g, g0, g1, phi1, m)));
                        }
                        const double z = zero_ratio(g, model);
                        const double zp = model == NoiseModel::Quantum ? z * std::cos(2.0 * ph) : z;
                        const double p1 = z + (1.0 - z) * std::exp(-g0);
                        const double q1 = zp + (1.0 - z) * std::exp(-g0) * std::cosh(2.0 * g1);
                        const double tr = q1 + z - zp;
                        const double det = z * q1 - zp * p1;
                        identity_worst = std::max(identity_worst, std::abs(pair.lambda_plus + pair.lambda_minus - tr));
                        identity_worst = std::max(identity_worst, std::abs(pair.lambda_plus * pair.lambda_minus - det));
                    }
                }
            }
        }
    }
    return {power_worst <= 1e-12 && identity_worst <= 1e-12,
            fmt::format("max |order1 - matrix power| {:.3g}, max trace/determinant residual {:.3g} (limit 1e-12)",
                        power_worst, identity_worst)};
}

// 6. First-order truncation is exact when only n <= 1 correlations exist.
Outcome truncation_exactness() {
    struct Named {
        std::string name;
        DecoherenceTable table;
    };
    std::vector<Named> tables;
    for (double xi : {0.5, 1.0}) {
        const DecoherenceTable r = build_table(RectangularSpectrum{0.1, xi}, 7, std::nullopt, false);
        std::vector<double> phi(7, 0.0);
        phi[0] = 0.03;
        tables.push_back({fmt::format("rect xi={}", xi), DecoherenceTable::manual(r.gamma, phi)});
    }
    std::vector<double> gamma(8, 0.0);
    gamma[0] = 0.15;
    gamma[1] = -0.04;
    std::vector<double> phi(7, 0.0);
    phi[0] = -0.05;
    tables.push_back({"manual", DecoherenceTable::manual(gamma, phi)});

    double worst = 0.0;
    std::string where;
    for (const auto &t : tables) {
        for (NoiseModel model : {NoiseModel::Classical, NoiseModel::Quantum}) {
            for (GroupKind g : groups_for(model)) {
                for (int m = 1; m <= 8; ++m) {
                    const double d = std::abs(decay_order1(model, g, t.table, m) - decay_exact_enum(model, g, t.table, m));
                    if (d > worst) {
                        worst = d;
                        where = fmt::format("{} {} {} m={}", t.name, to_string(model), to_string(g), m);
                    }
                }
            }
        }
    }
    return {worst <= 1e-10, fmt::format("3 tables, both models, all groups, m<=8, max dev {:.3g} (limit 1e-10){}", worst,
                                        where.empty() ? "" : " at " + where)};
}

// 7. Quadratic expansion of the roots has quartic error.
Outcome expansion_consistency() {
    const double g0 = 0.05;
    struct Approx {
        double plus;
        double minus;
    };
    auto expansion = [&](NoiseModel model, GroupKind g, double g1, double ph) {
        const double z = zero_ratio(g, model);
        const double p1 = z + (1.0 - z) * std::exp(-g0);
        if (model == NoiseModel::Classical) {
            return Approx{p1 + 2.0 * (p1 - z) * (p1 - z) / p1 * g1 * g1, 2.0 * z * (p1 - z) / p1 * g1 * g1};
        }
        const double inner = z > 0.0 ? g1 * g1 - z / (p1 - z) * ph * ph : g1 * g1;
        return Approx{p1 + 2.0 * (p1 - z) * (p1 - z) / p1 * inner, 2.0 * z * (p1 - z) / p1 * (g1 * g1 + ph * ph)};
    };
    auto defects = [&](NoiseModel model, GroupKind g, double g1, double ph) {
        const LambdaPair pair =
            lambda_pair(model, g, g0, g1, model == NoiseModel::Quantum ? std::optional<double>(ph) : std::nullopt);
        const Approx a = expansion(model, g, g1, ph);
        return std::pair{std::abs(pair.lambda_plus - a.plus), std::abs(pair.lambda_minus - a.minus)};
    };
    double worst_ratio = INFINITY;
    std::string where;
    auto check = [&](NoiseModel model, GroupKind g, const char *label, double big_g1, double big_phi) {
        const auto [p_big, m_big] = defects(model, g, big_g1, big_phi);
        const auto [p_small, m_small] = defects(model, g, 0.5 * big_g1, 0.5 * big_phi);
        const double rp = p_big / p_small;
        if (rp < worst_ratio) {
            worst_ratio = rp;
            where = fmt::format("{} {} {} lambda+", to_string(model), to_string(g), label);
        }
        if (zero_ratio(g, model) > 0.0) {
            const double rm = m_big / m_small;
            if (rm < worst_ratio) {
                worst_ratio = rm;
                where = fmt::format("{} {} {} lambda-", to_string(model), to_string(g), label);
            }
        }
    };
    for (GroupKind g : kTwirlGroups) {
        check(NoiseModel::Classical, g, "gamma1", 0.02, 0.0);
        check(NoiseModel::Quantum, g, "gamma1", 0.02, 0.0);
        if (g != GroupKind::Pauli) {
            check(NoiseModel::Quantum, g, "phi1", 0.0, 0.02);
            check(NoiseModel::Quantum, g, "gamma1+phi1", 0.02, 0.02);
        }
    }
    // Sign structure: lambda+ falls as |phi1| grows when z > 0.
    bool monotone = true;
    for (GroupKind g : {GroupKind::RClif, GroupKind::Clif}) {
        for (double g1 : {0.0, 0.02}) {
            double previous = INFINITY;
            for (double ph : {0.0, 0.01, 0.02, 0.04}) {
                const double lp = lambda_pair(NoiseModel::Quantum, g, g0, g1, ph).lambda_plus;
                const double lm = lambda_pair(NoiseModel::Quantum, g, g0, g1, -ph).lambda_plus;
                monotone = monotone && lp < previous && std::abs(lp - lm) <= 1e-15;
                previous = lp;
            }
        }
    }
    return {worst_ratio >= 8.0 && monotone,
            fmt::format("worst defect ratio on halving {:.2f} (limit 8) at {}; lambda+ decreasing in |phi1|: {}",
                        worst_ratio, where, monotone ? "yes" : "no")};
}

// 8. Full protocol simulation against the twirl reduction.
Outcome protocol_validation() {
    Outcome o;
    std::vector<std::string> notes;
    double worst_sigma = 0.0;
    for (double xi : {0.5, 2.5}) {
        const DecoherenceTable table = build_table(RectangularSpectrum{0.1, xi}, 7, std::nullopt, false);
        struct Reading {
            GroupKind group;
            StateVector psi;
            const char *name;
        };
        for (const Reading r : {Reading{GroupKind::Pauli, StateVector::plus(), "pauli |+>"},
                                Reading{GroupKind::Clif, StateVector::zero(), "clif |0>"}}) {
            for (int m : {2, 4, 6, 8}) {
                const double p = decay_exact_enum(NoiseModel::Classical, r.group, table, m);
                try {
                    const MonteCarloOptions opts{100000, static_cast<std::uint64_t>(800 + m), worker_threads()};
                    const Estimate f = rb_protocol_fidelity(r.group, table, m, r.psi, opts);
                    const double sigma = std::abs(f.value - 0.5 * (1.0 + p)) / f.std_error;
                    worst_sigma = std::max(worst_sigma, sigma);
                    if (sigma > 4.0) {
                        o.pass = false;
                        notes.push_back(fmt::format("xi={} {} m={}: {:.2f} sigma", xi, r.name, m, sigma));
                    }
                } catch (const CovarianceError &e) {
                    o.pass = false;
                    notes.push_back(fmt::format("xi={} {} m={}: phase covariance not positive semidefinite "
                                                "(min eigenvalue {:.4g})",
                                                xi, r.name, m, e.min_eigenvalue()));
                }
            }
        }
    }
    o.detail = fmt::format("worst deviation among sampled cases {:.2f} sigma (limit 4)", worst_sigma);
    for (const auto &n : notes) o.detail += "; " + n;
    return o;
}

// 9. Identity group and vanishing phase.
Outcome quantum_identities() {
    std::vector<DecoherenceTable> tables;
    {
        const DecoherenceTable r = build_table(RectangularSpectrum{0.1, 2.5}, 9, std::nullopt, false);
        std::vector<double> phi{0.03, -0.02, 0.01, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
        tables.push_back(DecoherenceTable::manual(r.gamma, phi));
    }
    tables.push_back(build_table(DoubleGaussianSpectrum{0.1, 10.0, 1.0}, 9, std::nullopt, true));
    double id_worst = 0.0;
    for (const auto &t : tables) {
        for (int m = 1; m <= 10; ++m) {
            const double values[] = {
                decay_exact_enum(NoiseModel::Quantum, GroupKind::Id, t, m),
                decay_exact_enum_cosine(NoiseModel::Quantum, GroupKind::Id, t, m),
                decay_mc(NoiseModel::Quantum, GroupKind::Id, t, m, {10000, 1, 1}).value,
                decay_order0(NoiseModel::Quantum, GroupKind::Id, t, m),
                decay_order1(NoiseModel::Quantum, GroupKind::Id, t, m),
            };
            for (double v : values) id_worst = std::max(id_worst, std::abs(v - 1.0));
        }
    }
    double classical_worst = 0.0;
    for (const auto &src : tables) {
        const DecoherenceTable t = DecoherenceTable::manual(src.gamma, std::vector<double>(src.gamma.size() - 1, 0.0));
        for (GroupKind g : kTwirlGroups) {
            for (int m = 1; m <= 8; ++m) {
                const double pairs[][2] = {
                    {decay_exact_enum(NoiseModel::Quantum, g, t, m), decay_exact_enum(NoiseModel::Classical, g, t, m)},
                    {decay_order0(NoiseModel::Quantum, g, t, m), decay_order0(NoiseModel::Classical, g, t, m)},
                    {decay_order1(NoiseModel::Quantum, g, t, m), decay_order1(NoiseModel::Classical, g, t, m)},
                    {recurrence_matrix_power(NoiseModel::Quantum, g, t.gamma_at(0), t.gamma_at(1), 0.0, m),
                     recurrence_matrix_power(NoiseModel::Classical, g, t.gamma_at(0), t.gamma_at(1), std::nullopt, m)},
                };
                for (const auto &p : pairs) classical_worst = std::max(classical_worst, std::abs(p[0] - p[1]));
            }
        }
    }
    return {id_worst <= 1e-12 && classical_worst <= 1e-12,
            fmt::format("max |p_m(id) - 1| {:.3g}, max |quantum(phi=0) - classical| {:.3g} (limit 1e-12)", id_worst,
                        classical_worst)};
}

// 10. Fits recover noiseless generators.
Outcome fit_recovery() {
    auto curve_of = [](int m_min, int m_max, const std::function<double(int)> &f) {
        DecayCurve c;
        for (int m = m_min; m <= m_max; ++m) c.points.push_back({m, f(m), 0.0, DecayMethod::ExactEnum});
        return c;
    };
    double worst = 0.0;
    std::string where;
    auto note = [&](double dev, const char *what) {
        if (dev > worst) {
            worst = dev;
            where = what;
        }
    };
    {
        const auto r = fit_single_exp(curve_of(1, 20, [](int m) { return 0.99 * std::pow(0.95, m); }));
        const auto &p = std::get<SingleExpParams>(r.params);
        note(std::abs(p.p - 0.95), "single synthetic p");
        note(std::abs(p.b), "single synthetic B");
        note(std::abs(p.a - 0.99), "single synthetic A");
    }
    {
        const double p1 = decay_order0(NoiseModel::Classical, GroupKind::Clif, 0.1, 1);
        const auto r = fit_single_exp(
            curve_of(1, 30, [](int m) { return decay_order0(NoiseModel::Classical, GroupKind::Clif, 0.1, m); }));
        note(std::abs(std::get<SingleExpParams>(r.params).p - p1), "order-0 clif p");
    }
    {
        const auto r = fit_double_exp(
            curve_of(1, 30, [](int m) { return 0.98 * std::pow(0.95, m) + 0.02 * std::pow(0.30, m); }), false);
        const auto &p = std::get<DoubleExpParams>(r.params);
        note(std::abs(p.a_plus - 0.98), "double synthetic A+");
        note(std::abs(p.lambda_plus - 0.95), "double synthetic lambda+");
        note(std::abs(p.a_minus - 0.02), "double synthetic A-");
        note(std::abs(p.lambda_minus - 0.30), "double synthetic lambda-");
    }
    {
        const LambdaPair pair = lambda_pair(NoiseModel::Classical, GroupKind::Clif, 0.1, 0.05);
        const auto r = fit_double_exp(curve_of(1, 30, [&](int m) { return decay_order1(pair, m); }), false);
        const auto &p = std::get<DoubleExpParams>(r.params);
        note(std::abs(p.lambda_plus - pair.lambda_plus), "order-1 clif lambda+");
        note(std::abs(p.lambda_minus - pair.lambda_minus), "order-1 clif lambda-");
    }
    return {worst <= 1e-6, fmt::format("max parameter deviation {:.3g} (limit 1e-6){}", worst,
                                       where.empty() ? "" : " at " + where)};
}

const std::vector<Criterion> &criteria() {
    static const std::vector<Criterion> all{
        {1, "twirl closed form equals group average", 1.0, twirl_equivalence},
        {2, "group catalogs", 1.0, group_catalogs},
        {3, "decoherence closed forms vs quadrature", 30.0, closed_forms_vs_quadrature},
        {4, "dc noise decay", 120.0, dc_reproduction},
        {5, "order-1 recurrence", 5.0, recurrence_correctness},
        {6, "first-order truncation exactness", 60.0, truncation_exactness},
        {7, "quadratic expansion of the decay rates", 1.0, expansion_consistency},
        {8, "end-to-end protocol simulation", 300.0, protocol_validation},
        {9, "quantum identities", 10.0, quantum_identities},
        {10, "fit recovery", 5.0, fit_recovery},
    };
    return all;
}

bool run_one(const Criterion &c) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = c.run();
    } catch (const std::exception &e) {
        o = {false, std::string("unexpected error: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.time_limit_s;
    const bool pass = o.pass && in_time;
    fmt::print("criterion {:2d} {} {}: {} [{:.2f} s, limit {:g} s{}]\n", c.id, pass ? "PASS" : "FAIL", c.title, o.detail,
               seconds, c.time_limit_s, in_time ? "" : ", too slow");
    std::fflush(stdout);
    return pass;
}

}  // namespace
}  // namespace rbdephase::acceptance

int main(int argc, char **argv) {
    using rbdephase::acceptance::criteria;
    std::optional<int> only;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            fmt::print(stderr, "usage: {} [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    bool all_pass = true;
    bool found = false;
    for (const auto &c : criteria()) {
        if (only && c.id != *only) continue;
        found = true;
        all_pass = rbdephase::acceptance::run_one(c) && all_pass;
    }
    if (!found) {
        fmt::print(stderr, "no criterion {}\n", *only);
        return 2;
    }
    return all_pass ? 0 : 1;
}
