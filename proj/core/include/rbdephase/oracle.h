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

#ifndef RBDEPHASE_ORACLE_H
#define RBDEPHASE_ORACLE_H

#include <cstdint>
#include <vector>

#include "rbdephase/decay.h"
#include "rbdephase/group_kind.h"
#include "rbdephase/rng.h"
#include "rbdephase/spectra.h"
#include "rbdephase/transfer.h"

namespace rbdephase {

/// Covariance of the accumulated gate-interval phases,
/// Cov(phi_j, phi_k) = 2 Gamma(|j - k|). Row-major m x m.
struct PhaseCovariance {
    int m = 0;
    std::vector<double> matrix;

    double operator()(int j, int k) const {
        return matrix[static_cast<std::size_t>(j) * static_cast<std::size_t>(m) + static_cast<std::size_t>(k)];
    }
};

/// Throws PreconditionError if the table does not reach Gamma(m-1).
PhaseCovariance phase_covariance(const DecoherenceTable &table, int m);

/// Draws zero-mean Gaussian phase vectors with a given covariance through
/// a Cholesky factor. Jitter 1e-12 .. 1e-8 is added to the diagonal only
/// when the plain factorization fails; beyond that a CovarianceError with
/// the most negative eigenvalue is thrown.
class PhaseSampler {
   public:
    explicit PhaseSampler(const PhaseCovariance &covariance);
    PhaseSampler(const DecoherenceTable &table, int m);

    int dimension() const {
        return m_;
    }
    /// Diagonal shift that was needed, 0 if none.
    double jitter() const {
        return jitter_;
    }

    std::vector<double> sample(CounterRng &rng) const;
    void sample_into(CounterRng &rng, std::vector<double> &normals, std::vector<double> &out) const;

   private:
    int m_ = 0;
    double jitter_ = 0.0;
    bool zero_ = false;
    std::vector<double> lower_;  // row-major lower-triangular factor
};

std::vector<double> sample_phase_vector(const DecoherenceTable &table, int m, std::uint64_t seed);

/// Monte Carlo mean over phase vectors of
///   Pauli prod cos(phi_k), RClif prod (1 + cos phi_k)/2,
///   Clif prod (1 + 2 cos phi_k)/3.
Estimate decay_from_phases(const DecoherenceTable &table, GroupKind group, int m, const MonteCarloOptions &options);

/// Gate-level RB protocol: for each sequence draw m gates plus the
/// inverse and one phase vector, apply
///   G_m R(phi_m) G_(m-1) ... G_1 R(phi_1) G_0
/// (the first gate is noiseless) to psi0 and average the survival
/// probability. options.samples is the number of sequences.
Estimate rb_protocol_fidelity(GroupKind group, const DecoherenceTable &table, int m, const StateVector &psi0,
                              const MonteCarloOptions &options);

}  // namespace rbdephase

#endif  // RBDEPHASE_ORACLE_H
