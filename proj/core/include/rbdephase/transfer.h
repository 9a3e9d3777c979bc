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

#ifndef RBDEPHASE_TRANSFER_H
#define RBDEPHASE_TRANSFER_H

#include <array>
#include <cstddef>

#include "rbdephase/group_kind.h"

namespace rbdephase {

/// Real 4x4 matrix of a single-qubit map in the Pauli operator basis
/// {1, X, Y, Z}, normalized so that entry (a, b) = tr{s_a G(s_b)} / 2 and
/// the identity map is the identity matrix.
struct TransferMatrix {
    std::array<std::array<double, 4>, 4> entries{};

    static TransferMatrix identity();
    static TransferMatrix diagonal(double d0, double d1, double d2, double d3);

    double operator()(std::size_t row, std::size_t col) const {
        return entries[row][col];
    }
    double &operator()(std::size_t row, std::size_t col) {
        return entries[row][col];
    }

    /// Adjoint map. For the unitary maps used here this is the inverse.
    TransferMatrix transpose() const;

    bool operator==(const TransferMatrix &other) const = default;
};

/// Bloch-style coordinates (r0, r1, r2, r3) of rho = (1/2) sum_a r_a s_a.
struct StateVector {
    std::array<double, 4> bloch{1.0, 0.0, 0.0, 0.0};

    /// Throws std::invalid_argument unless r0 = 1 and |r| <= 1.
    static StateVector from_bloch(double x, double y, double z);
    static StateVector zero();  // |0>, Z eigenstate
    static StateVector plus();  // |+>, X eigenstate

    bool is_pure(double tolerance = 1e-12) const;
};

/// Matrix product a*b, i.e. apply b first.
TransferMatrix compose(const TransferMatrix &a, const TransferMatrix &b);

/// Interaction-picture z rotation by the accumulated phase phi.
TransferMatrix rotation_z(double phi);

/// diag{1, e^-gamma, e^-gamma, 1}. gamma above kGammaCap is treated as
/// full dephasing.
TransferMatrix dephasing_channel(double gamma);
inline constexpr double kGammaCap = 700.0;

/// Group average (1/|G|) sum G E G^T over the enumerated group elements.
TransferMatrix twirl_bruteforce(GroupKind group, const TransferMatrix &e);

/// Same average through the closed forms: Pauli keeps the diagonal, RClif
/// averages the X and Z entries, Clif averages all three.
TransferMatrix twirl_closed(GroupKind group, const TransferMatrix &e);

/// tr{psi0 S(psi0)} = (1/2) r . (S r). Requires a pure state.
double survival_probability(const StateVector &psi0, const TransferMatrix &channel);

double max_abs_difference(const TransferMatrix &a, const TransferMatrix &b);

}  // namespace rbdephase

#endif  // RBDEPHASE_TRANSFER_H
