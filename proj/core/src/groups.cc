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

#include "rbdephase/groups.h"

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace rbdephase {
namespace {

using Key = std::array<int, 16>;

Key key_of(const TransferMatrix &t) {
    Key k{};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) k[i * 4 + j] = static_cast<int>(std::lround(t(i, j)));
    }
    return k;
}

TransferMatrix rounded(const TransferMatrix &t) {
    TransferMatrix r;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) r(i, j) = static_cast<double>(std::lround(t(i, j)));
    }
    return r;
}

// Fixed-point closure under left multiplication by the generators, in
// breadth-first order so the catalog order is deterministic.
std::vector<TransferMatrix> closure(const std::vector<TransferMatrix> &generators) {
    std::vector<TransferMatrix> elements{TransferMatrix::identity()};
    std::map<Key, std::size_t> seen{{key_of(elements[0]), 0}};
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (const auto &g : generators) {
            const TransferMatrix next = rounded(compose(g, elements[i]));
            if (seen.emplace(key_of(next), elements.size()).second) elements.push_back(next);
        }
    }
    return elements;
}

std::vector<TransferMatrix> build_catalog(GroupKind kind) {
    std::vector<TransferMatrix> gens{pauli_x_map(), pauli_y_map(), pauli_z_map()};
    if (kind == GroupKind::RClif || kind == GroupKind::Clif) gens.push_back(hadamard_map());
    if (kind == GroupKind::Clif) gens.push_back(phase_cycle_map());
    return closure(gens);
}

TransferMatrix permutation_map(int from1, int to1, int sign1, int from2, int to2, int sign2, int from3, int to3,
                               int sign3) {
    TransferMatrix t;
    t(0, 0) = 1.0;
    t(static_cast<std::size_t>(to1), static_cast<std::size_t>(from1)) = sign1;
    t(static_cast<std::size_t>(to2), static_cast<std::size_t>(from2)) = sign2;
    t(static_cast<std::size_t>(to3), static_cast<std::size_t>(from3)) = sign3;
    return t;
}

}  // namespace

TransferMatrix pauli_x_map() {
    return TransferMatrix::diagonal(1, 1, -1, -1);
}
TransferMatrix pauli_y_map() {
    return TransferMatrix::diagonal(1, -1, 1, -1);
}
TransferMatrix pauli_z_map() {
    return TransferMatrix::diagonal(1, -1, -1, 1);
}
TransferMatrix hadamard_map() {
    // X <-> Z, Y -> -Y.
    return permutation_map(1, 3, 1, 2, 2, -1, 3, 1, 1);
}
TransferMatrix phase_cycle_map() {
    // X -> Y -> Z -> X.
    return permutation_map(1, 2, 1, 2, 3, 1, 3, 1, 1);
}

const std::vector<TransferMatrix> &enumerate_group(GroupKind kind) {
    static const std::vector<TransferMatrix> pauli = build_catalog(GroupKind::Pauli);
    static const std::vector<TransferMatrix> rclif = build_catalog(GroupKind::RClif);
    static const std::vector<TransferMatrix> clif = build_catalog(GroupKind::Clif);
    switch (kind) {
        case GroupKind::Pauli:
            return pauli;
        case GroupKind::RClif:
            return rclif;
        case GroupKind::Clif:
            return clif;
        case GroupKind::Id:
            break;
    }
    throw std::invalid_argument("the id group has no gate set to enumerate");
}

TupleSet tuple_set(GroupKind kind, NoiseModel model) {
    TupleSet set;
    set.model = model;
    set.group = kind;
    auto &e = set.elements;
    if (model == NoiseModel::Classical) {
        switch (kind) {
            case GroupKind::Pauli:
                e = {{-1, 0}, {1, 0}};
                break;
            case GroupKind::RClif:
                e = {{0, 0}, {0, 0}, {-1, 0}, {1, 0}};
                break;
            case GroupKind::Clif:
                e = {{0, 0}, {-1, 0}, {1, 0}};
                break;
            case GroupKind::Id:
                throw std::invalid_argument("the id group is only defined for the quantum model");
        }
    } else {
        const std::vector<TupleElement> id{{0, 1}, {0, -1}};
        const std::vector<TupleElement> pauli{{1, 0}, {-1, 0}};
        auto append = [&e](const std::vector<TupleElement> &part) { e.insert(e.end(), part.begin(), part.end()); };
        switch (kind) {
            case GroupKind::Id:
                append(id);
                break;
            case GroupKind::Pauli:
                append(pauli);
                break;
            case GroupKind::RClif:
                append(id);
                append(pauli);
                break;
            case GroupKind::Clif:
                append(id);
                append(pauli);
                append(pauli);
                break;
        }
    }
    std::size_t zeros = 0;
    for (const auto &x : e) zeros += x.u == 0 ? 1 : 0;
    set.zero_ratio = static_cast<double>(zeros) / static_cast<double>(e.size());
    return set;
}

double zero_ratio(GroupKind kind, NoiseModel model) {
    if (kind == GroupKind::Id) {
        if (model == NoiseModel::Classical) {
            throw std::invalid_argument("the id group is only defined for the quantum model");
        }
        return 1.0;
    }
    switch (kind) {
        case GroupKind::Pauli:
            return 0.0;
        case GroupKind::RClif:
            return 0.5;
        default:
            return 1.0 / 3.0;
    }
}

std::vector<WeightedTuple> distinct_elements(const TupleSet &set) {
    std::vector<WeightedTuple> out;
    for (const auto &x : set.elements) {
        bool found = false;
        for (auto &w : out) {
            if (w.element.u == x.u && w.element.v == x.v) {
                ++w.multiplicity;
                found = true;
                break;
            }
        }
        if (!found) out.push_back({x, 1});
    }
    return out;
}

std::vector<std::size_t> random_gate_indices(GroupKind kind, int m, CounterRng &rng) {
    const std::size_t n = enumerate_group(kind).size();
    std::vector<std::size_t> idx(static_cast<std::size_t>(m));
    for (auto &i : idx) i = static_cast<std::size_t>(rng.uniform_index(n));
    return idx;
}

std::vector<TransferMatrix> random_sequence_with_inverse(GroupKind kind, int m, CounterRng &rng) {
    if (m < 1) throw std::invalid_argument("sequence length must be >= 1, got " + std::to_string(m));
    const auto &catalog = enumerate_group(kind);
    std::vector<TransferMatrix> seq;
    seq.reserve(static_cast<std::size_t>(m) + 1);
    for (std::size_t i : random_gate_indices(kind, m, rng)) seq.push_back(catalog[i]);
    // Inverse of G_(m-1) ... G_0 is G_0^T G_1^T ... G_(m-1)^T.
    TransferMatrix inverse = TransferMatrix::identity();
    for (const auto &g : seq) inverse = compose(inverse, g.transpose());
    seq.push_back(rounded(inverse));
    return seq;
}

std::vector<TransferMatrix> random_sequence_with_inverse(GroupKind kind, int m, std::uint64_t seed) {
    CounterRng rng(seed);
    return random_sequence_with_inverse(kind, m, rng);
}

int find_element(GroupKind kind, const TransferMatrix &g) {
    const auto &catalog = enumerate_group(kind);
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        if (max_abs_difference(catalog[i], g) <= 1e-9) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace rbdephase
