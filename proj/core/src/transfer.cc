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

#include "rbdephase/transfer.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rbdephase/groups.h"

namespace rbdephase {

TransferMatrix TransferMatrix::identity() {
    return diagonal(1.0, 1.0, 1.0, 1.0);
}

TransferMatrix TransferMatrix::diagonal(double d0, double d1, double d2, double d3) {
    TransferMatrix t;
    t.entries[0][0] = d0;
    t.entries[1][1] = d1;
    t.entries[2][2] = d2;
    t.entries[3][3] = d3;
    return t;
}

TransferMatrix TransferMatrix::transpose() const {
    TransferMatrix t;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) t.entries[i][j] = entries[j][i];
    }
    return t;
}

StateVector StateVector::from_bloch(double x, double y, double z) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
        throw std::invalid_argument("Bloch vector must be finite");
    }
    if (x * x + y * y + z * z > 1.0 + 1e-12) {
        throw std::invalid_argument("Bloch vector length exceeds 1");
    }
    StateVector s;
    s.bloch = {1.0, x, y, z};
    return s;
}

StateVector StateVector::zero() {
    return from_bloch(0.0, 0.0, 1.0);
}

StateVector StateVector::plus() {
    return from_bloch(1.0, 0.0, 0.0);
}

bool StateVector::is_pure(double tolerance) const {
    const double r2 = bloch[1] * bloch[1] + bloch[2] * bloch[2] + bloch[3] * bloch[3];
    return std::abs(bloch[0] - 1.0) <= tolerance && std::abs(r2 - 1.0) <= tolerance;
}

TransferMatrix compose(const TransferMatrix &a, const TransferMatrix &b) {
    TransferMatrix c;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 4; ++k) s += a.entries[i][k] * b.entries[k][j];
            c.entries[i][j] = s;
        }
    }
    return c;
}

TransferMatrix rotation_z(double phi) {
    if (!std::isfinite(phi)) throw std::invalid_argument("rotation angle must be finite");
    TransferMatrix r = TransferMatrix::identity();
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    r.entries[1][1] = c;
    r.entries[1][2] = s;
    r.entries[2][1] = -s;
    r.entries[2][2] = c;
    return r;
}

TransferMatrix dephasing_channel(double gamma) {
    if (std::isnan(gamma) || gamma < 0.0) {
        throw std::invalid_argument("dephasing exponent must be >= 0, got " + std::to_string(gamma));
    }
    const double f = gamma > kGammaCap ? 0.0 : std::exp(-gamma);
    return TransferMatrix::diagonal(1.0, f, f, 1.0);
}

TransferMatrix twirl_bruteforce(GroupKind group, const TransferMatrix &e) {
    const auto &elements = enumerate_group(group);
    TransferMatrix sum;
    for (const auto &g : elements) {
        const TransferMatrix term = compose(g, compose(e, g.transpose()));
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) sum.entries[i][j] += term.entries[i][j];
        }
    }
    const double inv = 1.0 / static_cast<double>(elements.size());
    for (auto &row : sum.entries) {
        for (auto &x : row) x *= inv;
    }
    return sum;
}

TransferMatrix twirl_closed(GroupKind group, const TransferMatrix &e) {
    const double a = e(0, 0);
    const double x11 = e(1, 1);
    const double x22 = e(2, 2);
    const double x33 = e(3, 3);
    switch (group) {
        case GroupKind::Pauli:
            return TransferMatrix::diagonal(a, x11, x22, x33);
        case GroupKind::RClif: {
            const double v = 0.5 * (x11 + x33);
            return TransferMatrix::diagonal(a, v, x22, v);
        }
        case GroupKind::Clif: {
            const double w = (x11 + x22 + x33) / 3.0;
            return TransferMatrix::diagonal(a, w, w, w);
        }
        case GroupKind::Id:
            break;
    }
    throw std::invalid_argument("twirl requires the pauli, rclif or clif group");
}

double survival_probability(const StateVector &psi0, const TransferMatrix &channel) {
    if (!psi0.is_pure()) throw std::invalid_argument("survival probability needs a pure, normalized state");
    double s = 0.0;
    for (std::size_t a = 0; a < 4; ++a) {
        double row = 0.0;
        for (std::size_t b = 0; b < 4; ++b) row += channel(a, b) * psi0.bloch[b];
        s += psi0.bloch[a] * row;
    }
    return 0.5 * s;
}

double max_abs_difference(const TransferMatrix &a, const TransferMatrix &b) {
    double d = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
    }
    return d;
}

}  // namespace rbdephase
