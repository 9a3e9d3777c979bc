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

#ifndef RBDEPHASE_DECAY_H
#define RBDEPHASE_DECAY_H

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rbdephase/group_kind.h"
#include "rbdephase/spectra.h"
#include "rbdephase/transfer.h"

namespace rbdephase {

// Decay parameters p_m(G) of the sequence-averaged RB channel. The
// classical summand for a tuple a in A_G^m is
//   exp(-sum_{j,k} a_j a_k Gamma(|j-k|)),
// the quantum summand for (u, v) in V_G^m is
//   exp(-sum_{j,k} u_j u_k Gamma(|j-k|)) * exp(i theta),
//   theta = 2 sum_{j>k} u_j v_k sgn(k-j) Phi(j-k).

enum class DecayMethod {
    ExactEnum,
    MonteCarlo,
    Order0,
    Order1,
    DcClosedForm,
    DcAsymptotic,
    OraclePhases,
    OracleProtocol,
};

/// CSV tags: exact, mc, order0, order1, dc_closed, dc_asymptotic,
/// oracle_phases, oracle_protocol.
std::string_view to_string(DecayMethod method);
DecayMethod parse_decay_method(std::string_view name);

struct MonteCarloOptions {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    /// Worker threads. Results do not depend on this value.
    int threads = 1;
};

/// Largest |A_G|^m handled by exact enumeration.
inline constexpr double kEnumerationCap = 2e6;

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

struct DecaySpec {
    NoiseModel model = NoiseModel::Classical;
    GroupKind group = GroupKind::Pauli;
    DecayMethod method = DecayMethod::ExactEnum;
    MonteCarloOptions monte_carlo;
    DecoherenceTable table;
    std::vector<int> m_values;
};

/// Throws PreconditionError when the method cannot run on this DecaySpec (for
/// example the DC closed form on a non-constant table) and
/// std::invalid_argument for inconsistent (model, group) pairs.
void validate(const DecaySpec &spec);

struct DecayPoint {
    int m = 0;
    double value = 0.0;
    double std_error = 0.0;
    DecayMethod method = DecayMethod::ExactEnum;
};

struct DecayCurve {
    NoiseModel model = NoiseModel::Classical;
    GroupKind group = GroupKind::Pauli;
    std::vector<DecayPoint> points;
};

/// Exact tuple average, complex exponent with the real part taken after
/// averaging. Throws PreconditionError if |A_G|^m exceeds kEnumerationCap
/// or the table does not reach Gamma(m-1).
double decay_exact_enum(NoiseModel model, GroupKind group, const DecoherenceTable &table, int m);

/// Same average with the quantum phase written as a cosine per tuple.
double decay_exact_enum_cosine(NoiseModel model, GroupKind group, const DecoherenceTable &table, int m);

/// Monte Carlo over uniformly drawn tuples; std_error is the sample
/// standard deviation over sqrt(samples). Requires samples >= 1000.
Estimate decay_mc(NoiseModel model, GroupKind group, const DecoherenceTable &table, int m,
                  const MonteCarloOptions &options);

/// [z + (1 - z) e^{-Gamma(0)}]^m.
double decay_order0(NoiseModel model, GroupKind group, double gamma0, int m);
double decay_order0(NoiseModel model, GroupKind group, const DecoherenceTable &table, int m);

/// Rates and weights of the first-order two-term law
/// p_m = A+ lambda+^m + A- lambda-^m.
struct LambdaPair {
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    double p1 = 0.0;
    double q1 = 0.0;
    double z = 0.0;
    /// z cos(2 Phi(1)) for the quantum model, z otherwise.
    double z_prime = 0.0;
    double a_plus = 1.0;
    double a_minus = 0.0;
    /// |lambda+ - lambda-| below 1e-10; weights are then unused and the
    /// confluent form (1 + B m) lambda^m applies.
    bool degenerate = false;
};

/// Throws PreconditionError when the discriminant is negative (the
/// message carries its value) and std::invalid_argument when a quantum
/// model is given without phi1.
LambdaPair lambda_pair(NoiseModel model, GroupKind group, double gamma0, double gamma1,
                       std::optional<double> phi1 = std::nullopt);

double decay_order1(const LambdaPair &pair, int m);
double decay_order1(NoiseModel model, GroupKind group, const DecoherenceTable &table, int m);

/// e^{-m Gamma(0)} cosh(2 Gamma(1))^{m-1}, the classical Pauli case.
double decay_order1_pauli_closed(double gamma0, double gamma1, int m);

/// First component of M^m (1, 1)^T for the 2x2 recurrence of (p_m, q_m).
double recurrence_matrix_power(NoiseModel model, GroupKind group, double gamma0, double gamma1,
                               std::optional<double> phi1, int m);

enum class DcMode { ExactSum, Asymptotic };

/// Quasi-static Pauli decay: 2^-m sum_k C(m,k) e^{-eta (2k-m)^2}, or its
/// large-m form (1 + 2 eta m)^{-1/2}.
double dc_fm(double eta, int m, DcMode mode);

/// Sequence-averaged channel
///   Pauli diag{d, f, f, d}, RClif diag{d, g, f, g}, Clif diag{d, h, h, h},
/// with d = 1. Each parameter is computed with the requested method.
TransferMatrix sequence_channel(NoiseModel model, GroupKind group, const DecoherenceTable &table, int m,
                                DecayMethod method, const MonteCarloOptions &options = {});

/// One point per m in spec.m_values, in order.
DecayCurve evaluate_curve(const DecaySpec &spec);

}  // namespace rbdephase

#endif  // RBDEPHASE_DECAY_H
