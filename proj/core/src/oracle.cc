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

#include "rbdephase/oracle.h"

#include <fmt/format.h>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "numeric.h"
#include "rbdephase/errors.h"
#include "rbdephase/groups.h"

namespace rbdephase {
namespace {

constexpr double kJitterSchedule[] = {0.0, 1e-12, 1e-11, 1e-10, 1e-9, 1e-8};

// Stream tags keep oracle draws independent of the tuple Monte Carlo.
constexpr std::uint64_t kPhaseStream = 0xF1A5E;
constexpr std::uint64_t kProtocolStream = 0x9A7E5;

void check_classical_group(GroupKind group) {
    if (group == GroupKind::Id) {
        throw std::invalid_argument("the trajectory oracles need the pauli, rclif or clif group");
    }
}

double group_factor(GroupKind group, double phi) {
    const double c = std::cos(phi);
    switch (group) {
        case GroupKind::Pauli:
            return c;
        case GroupKind::RClif:
            return 0.5 * (1.0 + c);
        case GroupKind::Clif:
            return (1.0 + 2.0 * c) / 3.0;
        case GroupKind::Id:
            break;
    }
    return 1.0;
}

template <class Body>
Estimate block_estimate(std::uint64_t samples, const MonteCarloOptions &options, std::uint64_t stream, Body body) {
    if (samples < 1) throw std::invalid_argument("at least one sample is required");
    const std::uint64_t blocks = (samples + detail::kMonteCarloBlock - 1) / detail::kMonteCarloBlock;
    std::vector<detail::Welford> partial(blocks);
    detail::parallel_for(blocks, options.threads, [&](std::size_t b) {
        CounterRng rng(derive_seed(options.seed, b, stream));
        const std::uint64_t begin = b * detail::kMonteCarloBlock;
        const std::uint64_t end = std::min(samples, begin + detail::kMonteCarloBlock);
        detail::Welford w;
        body(rng, end - begin, w);
        partial[b] = w;
    });
    detail::Welford total;
    for (const auto &w : partial) total.merge(w);
    return {total.mean, total.std_error()};
}

}  // namespace

PhaseCovariance phase_covariance(const DecoherenceTable &table, int m) {
    if (m < 1) throw std::invalid_argument(fmt::format("sequence length must be >= 1, got {}", m));
    PhaseCovariance c;
    c.m = m;
    c.matrix.resize(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    std::vector<double> g(static_cast<std::size_t>(m));
    for (int n = 0; n < m; ++n) g[static_cast<std::size_t>(n)] = 2.0 * table.gamma_at(n);
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
            c.matrix[static_cast<std::size_t>(j * m + k)] = g[static_cast<std::size_t>(std::abs(j - k))];
        }
    }
    return c;
}

PhaseSampler::PhaseSampler(const PhaseCovariance &covariance) : m_(covariance.m) {
    const Eigen::Index n = m_;
    Eigen::MatrixXd cov(n, n);
    bool all_zero = true;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            cov(j, k) = covariance(static_cast<int>(j), static_cast<int>(k));
            all_zero = all_zero && cov(j, k) == 0.0;
        }
    }
    if (all_zero) {
        zero_ = true;
        return;
    }
    for (double jitter : kJitterSchedule) {
        Eigen::MatrixXd shifted = cov;
        shifted.diagonal().array() += jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(shifted);
        if (llt.info() != Eigen::Success) continue;
        const Eigen::MatrixXd l = llt.matrixL();
        if (!l.allFinite()) continue;
        jitter_ = jitter;
        lower_.assign(static_cast<std::size_t>(n * n), 0.0);
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index k = 0; k <= j; ++k) lower_[static_cast<std::size_t>(j * n + k)] = l(j, k);
        }
        return;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov, Eigen::EigenvaluesOnly);
    const double min_eig = eig.eigenvalues().minCoeff();
    throw CovarianceError(fmt::format("phase covariance of dimension {} is not positive semidefinite: minimum "
                                      "eigenvalue {:.6g} is beyond the jitter budget of {:g}",
                                      m_, min_eig, kJitterSchedule[std::size(kJitterSchedule) - 1]),
                          min_eig);
}

PhaseSampler::PhaseSampler(const DecoherenceTable &table, int m) : PhaseSampler(phase_covariance(table, m)) {
}

void PhaseSampler::sample_into(CounterRng &rng, std::vector<double> &normals, std::vector<double> &out) const {
    const auto n = static_cast<std::size_t>(m_);
    out.assign(n, 0.0);
    if (zero_) return;
    normals.resize(n);
    for (auto &z : normals) z = rng.normal();
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k <= j; ++k) s += lower_[j * n + k] * normals[k];
        out[j] = s;
    }
}

std::vector<double> PhaseSampler::sample(CounterRng &rng) const {
    std::vector<double> normals;
    std::vector<double> out;
    sample_into(rng, normals, out);
    return out;
}

std::vector<double> sample_phase_vector(const DecoherenceTable &table, int m, std::uint64_t seed) {
    const PhaseSampler sampler(table, m);
    CounterRng rng(seed, kPhaseStream);
    return sampler.sample(rng);
}

Estimate decay_from_phases(const DecoherenceTable &table, GroupKind group, int m, const MonteCarloOptions &options) {
    check_classical_group(group);
    const PhaseSampler sampler(table, m);
    return block_estimate(options.samples, options, kPhaseStream,
                          [&](CounterRng &rng, std::uint64_t count, detail::Welford &w) {
                              std::vector<double> normals;
                              std::vector<double> phi;
                              for (std::uint64_t i = 0; i < count; ++i) {
                                  sampler.sample_into(rng, normals, phi);
                                  double prod = 1.0;
                                  for (double p : phi) prod *= group_factor(group, p);
                                  w.add(prod);
                              }
                          });
}

Estimate rb_protocol_fidelity(GroupKind group, const DecoherenceTable &table, int m, const StateVector &psi0,
                              const MonteCarloOptions &options) {
    check_classical_group(group);
    if (!psi0.is_pure()) throw std::invalid_argument("the RB protocol needs a pure input state");
    const PhaseSampler sampler(table, m);
    return block_estimate(options.samples, options, kProtocolStream,
                          [&](CounterRng &rng, std::uint64_t count, detail::Welford &w) {
                              std::vector<double> normals;
                              std::vector<double> phi;
                              for (std::uint64_t i = 0; i < count; ++i) {
                                  const auto gates = random_sequence_with_inverse(group, m, rng);
                                  sampler.sample_into(rng, normals, phi);
                                  // Noise phi_k acts between gates G_(k-1) and G_k.
                                  TransferMatrix s = gates[0];
                                  for (int k = 1; k <= m; ++k) {
                                      const auto ku = static_cast<std::size_t>(k);
                                      s = compose(gates[ku], compose(rotation_z(phi[ku - 1]), s));
                                  }
                                  w.add(survival_probability(psi0, s));
                              }
                          });
}

}  // namespace rbdephase
