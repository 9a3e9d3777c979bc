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

#ifndef RBDEPHASE_TOOLS_CONFIG_H
#define RBDEPHASE_TOOLS_CONFIG_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rbdephase/group_kind.h"

namespace rbdephase::cli {

/// Invalid or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class KeyType { Number, Integer, Bool, String, OptNumber, OptInteger, OptString, IntList, StringList };

struct KeySpec {
    const char *name;
    KeyType type;
    nlohmann::ordered_json default_value;
    const char *help;
};

/// Every accepted configuration key, in output order.
const std::vector<KeySpec> &config_schema();
const KeySpec *find_key(const std::string &name);

/// Flat object holding every key at its default value.
nlohmann::ordered_json default_config();

/// Applies the keys of overlay onto base. Unknown keys and values of the
/// wrong type raise ConfigError.
void merge_config(nlohmann::ordered_json &base, const nlohmann::ordered_json &overlay, const std::string &origin);

/// Converts command-line text to the JSON value of the given key.
nlohmann::ordered_json flag_value(const KeySpec &spec, const std::string &text);

/// "a..b", "a,b,c" or a JSON array of integers.
std::vector<int> parse_m_values(const nlohmann::ordered_json &value);
/// "a,b" or a JSON array of strings.
std::vector<std::string> parse_string_list(const nlohmann::ordered_json &value);

/// Typed view of a merged configuration.
struct Settings {
    std::string model;
    double eta = 0.0;
    double xi = 0.0;
    double xbar = 0.0;
    double sigma = 0.0;
    std::optional<std::string> spectrum_file;
    std::optional<std::string> table_file;
    std::optional<double> beta_over_dt;
    std::optional<int> nmax;
    bool truncated = false;
    bool include_phi = false;
    NoiseModel noise = NoiseModel::Classical;
    GroupKind group = GroupKind::Pauli;
    std::vector<int> m_values;
    std::vector<std::string> methods;
    std::uint64_t samples = 0;
    std::uint64_t sequences = 0;
    std::uint64_t seed = 0;
    std::optional<int> threads;
    std::string psi0;
    std::optional<std::string> out;
    double tolerance = 0.0;
    std::optional<std::string> input;
    std::string fit_model;
    bool fix_sum = false;
};

/// Throws ConfigError on out-of-range or inconsistent values.
Settings settings_from(const nlohmann::ordered_json &config);

}  // namespace rbdephase::cli

#endif  // RBDEPHASE_TOOLS_CONFIG_H
