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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "oracles.h"
#include "rbdephase/groups.h"

namespace rbdephase {
namespace {

TEST(TransferMatrixTest, IdentityIsNeutralForCompose) {
    std::mt19937_64 gen(7);
    const TransferMatrix a = testing::random_matrix(gen);
    EXPECT_EQ(compose(TransferMatrix::identity(), a), a);
    EXPECT_EQ(compose(a, TransferMatrix::identity()), a);
}

TEST(TransferMatrixTest, ComposeIsAssociative) {
    std::mt19937_64 gen(11);
    const TransferMatrix a = testing::random_matrix(gen);
    const TransferMatrix b = testing::random_matrix(gen);
    const TransferMatrix c = testing::random_matrix(gen);
    EXPECT_LE(max_abs_difference(compose(compose(a, b), c), compose(a, compose(b, c))), 1e-14);
}

TEST(TransferMatrixTest, TransposeSwapsEntries) {
    std::mt19937_64 gen(3);
    const TransferMatrix a = testing::random_matrix(gen);
    const TransferMatrix t = a.transpose();
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(t(i, j), a(j, i));
    }
}

TEST(RotationTest, ComposesAdditively) {
    const TransferMatrix r = compose(rotation_z(0.3), rotation_z(0.4));
    EXPECT_LE(max_abs_difference(r, rotation_z(0.7)), 1e-15);
    EXPECT_LE(max_abs_difference(compose(rotation_z(0.3), rotation_z(-0.3)), TransferMatrix::identity()), 1e-15);
}

TEST(RotationTest, QuarterTurnMapsXToMinusY) {
    const TransferMatrix r = rotation_z(std::numbers::pi / 2);
    EXPECT_NEAR(r(1, 1), 0.0, 1e-16);
    EXPECT_NEAR(r(2, 1), -1.0, 1e-16);
    EXPECT_NEAR(r(1, 2), 1.0, 1e-16);
    EXPECT_DOUBLE_EQ(r(3, 3), 1.0);
}

TEST(RotationTest, RejectsNonFiniteAngle) {
    EXPECT_THROW(rotation_z(std::nan("")), std::invalid_argument);
    EXPECT_THROW(rotation_z(INFINITY), std::invalid_argument);
}

TEST(DephasingTest, DampsTransverseComponents) {
    const TransferMatrix d = dephasing_channel(0.2);
    EXPECT_DOUBLE_EQ(d(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(d(1, 1), std::exp(-0.2));
    EXPECT_DOUBLE_EQ(d(2, 2), std::exp(-0.2));
    EXPECT_DOUBLE_EQ(d(3, 3), 1.0);
}

TEST(DephasingTest, LargeExponentUnderflowsToZero) {
    const TransferMatrix d = dephasing_channel(kGammaCap + 1.0);
    EXPECT_EQ(d(1, 1), 0.0);
    EXPECT_EQ(d(3, 3), 1.0);
}

TEST(DephasingTest, RejectsNegativeExponent) {
    EXPECT_THROW(dephasing_channel(-1e-3), std::invalid_argument);
    EXPECT_THROW(dephasing_channel(std::nan("")), std::invalid_argument);
}

TEST(TwirlTest, ClosedFormMatchesGroupAverage) {
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const TransferMatrix e = testing::random_matrix(gen);
        for (GroupKind g : {GroupKind::Pauli, GroupKind::RClif, GroupKind::Clif}) {
            EXPECT_LE(max_abs_difference(twirl_closed(g, e), twirl_bruteforce(g, e)), 1e-12);
        }
    }
}

TEST(TwirlTest, CliffordTwirlIsDepolarizing) {
    const TransferMatrix e = TransferMatrix::diagonal(1.0, 0.2, 0.5, 0.8);
    const TransferMatrix t = twirl_closed(GroupKind::Clif, e);
    EXPECT_DOUBLE_EQ(t(1, 1), 0.5);
    EXPECT_DOUBLE_EQ(t(2, 2), 0.5);
    EXPECT_DOUBLE_EQ(t(3, 3), 0.5);
}

TEST(TwirlTest, RClifAveragesXAndZ) {
    const TransferMatrix t = twirl_closed(GroupKind::RClif, TransferMatrix::diagonal(1.0, 0.2, 0.5, 0.8));
    EXPECT_DOUBLE_EQ(t(1, 1), 0.5);
    EXPECT_DOUBLE_EQ(t(2, 2), 0.5);
    EXPECT_DOUBLE_EQ(t(3, 3), 0.5);
    const TransferMatrix u = twirl_closed(GroupKind::RClif, TransferMatrix::diagonal(1.0, 0.2, 0.9, 0.4));
    EXPECT_NEAR(u(1, 1), 0.3, 1e-15);
    EXPECT_DOUBLE_EQ(u(2, 2), 0.9);
}

TEST(TwirlTest, TwirlIsIdempotent) {
    std::mt19937_64 gen(5);
    const TransferMatrix e = testing::random_matrix(gen);
    for (GroupKind g : {GroupKind::Pauli, GroupKind::RClif, GroupKind::Clif}) {
        const TransferMatrix once = twirl_closed(g, e);
        EXPECT_LE(max_abs_difference(twirl_closed(g, once), once), 1e-15);
    }
}

TEST(TwirlTest, IdentityGroupHasNoClosedForm) {
    EXPECT_THROW(twirl_closed(GroupKind::Id, TransferMatrix::identity()), std::invalid_argument);
}

TEST(StateTest, StandardStates) {
    EXPECT_TRUE(StateVector::zero().is_pure());
    EXPECT_TRUE(StateVector::plus().is_pure());
    EXPECT_DOUBLE_EQ(StateVector::zero().bloch[3], 1.0);
    EXPECT_DOUBLE_EQ(StateVector::plus().bloch[1], 1.0);
}

TEST(StateTest, RejectsInvalidBlochVectors) {
    EXPECT_THROW(StateVector::from_bloch(1.0, 0.1, 0.0), std::invalid_argument);
    EXPECT_THROW(StateVector::from_bloch(std::nan(""), 0.0, 0.0), std::invalid_argument);
}

TEST(SurvivalTest, IdentityChannelKeepsPureStates) {
    EXPECT_DOUBLE_EQ(survival_probability(StateVector::zero(), TransferMatrix::identity()), 1.0);
    EXPECT_DOUBLE_EQ(survival_probability(StateVector::plus(), TransferMatrix::identity()), 1.0);
}

TEST(SurvivalTest, DephasingReadsTransverseEntry) {
    const TransferMatrix d = dephasing_channel(0.3);
    EXPECT_DOUBLE_EQ(survival_probability(StateVector::plus(), d), 0.5 * (1.0 + std::exp(-0.3)));
    EXPECT_DOUBLE_EQ(survival_probability(StateVector::zero(), d), 1.0);
}

TEST(SurvivalTest, RejectsMixedState) {
    const StateVector mixed = StateVector::from_bloch(0.5, 0.0, 0.0);
    EXPECT_THROW(survival_probability(mixed, TransferMatrix::identity()), std::invalid_argument);
}

}  // namespace
}  // namespace rbdephase
