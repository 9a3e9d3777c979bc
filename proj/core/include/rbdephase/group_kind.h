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

#ifndef RBDEPHASE_GROUP_KIND_H
#define RBDEPHASE_GROUP_KIND_H

#include <string_view>

namespace rbdephase {

/// Twirling groups. Id has no gate set; it only labels the trivial
/// tuple set of the quantum model.
enum class GroupKind { Id, Pauli, RClif, Clif };

enum class NoiseModel { Classical, Quantum };

std::string_view to_string(GroupKind group);
std::string_view to_string(NoiseModel model);

/// Accepts the lowercase names produced by to_string. Throws
/// std::invalid_argument otherwise.
GroupKind parse_group(std::string_view name);
NoiseModel parse_noise_model(std::string_view name);

}  // namespace rbdephase

#endif  // RBDEPHASE_GROUP_KIND_H
