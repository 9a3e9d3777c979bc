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

#ifndef RBDEPHASE_GROUPS_H
#define RBDEPHASE_GROUPS_H

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rbdephase/group_kind.h"
#include "rbdephase/rng.h"
#include "rbdephase/transfer.h"

namespace rbdephase {

/// All distinct transfer matrices of the group, generated by closure of
/// {X, Y, Z} (Pauli), plus H (RClif), plus S (Clif). Sizes 4, 8, 24.
/// The catalog is built once and shared; element 0 is the identity.
/// Throws std::invalid_argument for GroupKind::Id.
const std::vector<TransferMatrix> &enumerate_group(GroupKind kind);

/// Generator maps used to build the catalogs.
TransferMatrix pauli_x_map();
TransferMatrix pauli_y_map();
TransferMatrix pauli_z_map();
TransferMatrix hadamard_map();
TransferMatrix phase_cycle_map();  // S: X -> Y -> Z -> X

/// One element of a tuple multiset. Classical sets use only u (the scalar
/// a); quantum sets carry the pair (u, v).
struct TupleElement {
    int u = 0;
    int v = 0;
};

/// Multiset A_G (classical) or V_G (quantum), with its zero ratio: the
/// fraction of elements whose u component vanishes.
struct TupleSet {
    NoiseModel model = NoiseModel::Classical;
    GroupKind group = GroupKind::Pauli;
    std::vector<TupleElement> elements;
    double zero_ratio = 0.0;

    std::size_t size() const {
        return elements.size();
    }
};

/// Distinct tuple elements with their multiplicities, for exact averages.
struct WeightedTuple {
    TupleElement element;
    int multiplicity = 1;
};
std::vector<WeightedTuple> distinct_elements(const TupleSet &set);

/// Exact multiset for (group, model). Id is only valid with the quantum
/// model; anything else throws std::invalid_argument.
TupleSet tuple_set(GroupKind kind, NoiseModel model);

/// Zero ratio without building the set.
double zero_ratio(GroupKind kind, NoiseModel model);

/// Gate indices into enumerate_group(kind) for one RB sequence.
std::vector<std::size_t> random_gate_indices(GroupKind kind, int m, CounterRng &rng);

/// m gates drawn uniformly, followed by the inverse G0^T G1^T ... G(m-1)^T
/// so that the ideal composite is the identity. Result has m + 1 maps.
/// Throws std::invalid_argument for m < 1 or GroupKind::Id.
std::vector<TransferMatrix> random_sequence_with_inverse(GroupKind kind, int m, std::uint64_t seed);
std::vector<TransferMatrix> random_sequence_with_inverse(GroupKind kind, int m, CounterRng &rng);

/// Index of a catalog element matching g within 1e-9, or -1.
int find_element(GroupKind kind, const TransferMatrix &g);

}  // namespace rbdephase

#endif  // RBDEPHASE_GROUPS_H
