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

#include "rbdephase/group_kind.h"

#include <stdexcept>
#include <string>

namespace rbdephase {

std::string_view to_string(GroupKind group) {
    switch (group) {
        case GroupKind::Id:
            return "id";
        case GroupKind::Pauli:
            return "pauli";
        case GroupKind::RClif:
            return "rclif";
        case GroupKind::Clif:
            return "clif";
    }
    return "?";
}

std::string_view to_string(NoiseModel model) {
    return model == NoiseModel::Classical ? "classical" : "quantum";
}

GroupKind parse_group(std::string_view name) {
    if (name == "id") return GroupKind::Id;
    if (name == "pauli") return GroupKind::Pauli;
    if (name == "rclif") return GroupKind::RClif;
    if (name == "clif") return GroupKind::Clif;
    throw std::invalid_argument("unknown group '" + std::string(name) + "' (expected id, pauli, rclif, clif)");
}

NoiseModel parse_noise_model(std::string_view name) {
    if (name == "classical") return NoiseModel::Classical;
    if (name == "quantum") return NoiseModel::Quantum;
    throw std::invalid_argument("unknown noise model '" + std::string(name) + "' (expected classical, quantum)");
}

}  // namespace rbdephase
