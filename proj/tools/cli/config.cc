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

#include "config.h"

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace rbdephase::cli {
namespace {

using json = nlohmann::ordered_json;

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

int parse_int_text(const std::string &text, const std::string &what) {
    const std::string t = trim(text);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw ConfigError(fmt::format("{}: '{}' is not an integer", what, text));
    }
    return v;
}

bool is_integer(const json &v) {
    if (v.is_number_integer()) return true;
    if (v.is_number_float()) {
        const double d = v.get<double>();
        return std::isfinite(d) && d == std::floor(d);
    }
    return false;
}

void check_type(const KeySpec &spec, const json &v, const std::string &origin) {
    auto fail = [&](const char *expected) {
        throw ConfigError(fmt::format("{}: key '{}' expects {}, got {}", origin, spec.name, expected, v.dump()));
    };
    switch (spec.type) {
        case KeyType::Number:
            if (!v.is_number()) fail("a number");
            break;
        case KeyType::Integer:
            if (!is_integer(v)) fail("an integer");
            break;
        case KeyType::Bool:
            if (!v.is_boolean()) fail("a boolean");
            break;
        case KeyType::String:
            if (!v.is_string()) fail("a string");
            break;
        case KeyType::OptNumber:
            if (!v.is_null() && !v.is_number()) fail("a number or null");
            break;
        case KeyType::OptInteger:
            if (!v.is_null() && !is_integer(v)) fail("an integer or null");
            break;
        case KeyType::OptString:
            if (!v.is_null() && !v.is_string()) fail("a string or null");
            break;
        case KeyType::IntList:
            parse_m_values(v);
            break;
        case KeyType::StringList:
            parse_string_list(v);
            break;
    }
}

std::optional<std::string> opt_string(const json &v) {
    if (v.is_null()) return std::nullopt;
    return v.get<std::string>();
}

std::uint64_t nonnegative_u64(const json &v, const char *key) {
    if (v.is_number_integer() && v.get<long long>() < 0) {
        throw ConfigError(fmt::format("key '{}' must be >= 0", key));
    }
    return v.get<std::uint64_t>();
}

}  // namespace

const std::vector<KeySpec> &config_schema() {
    static const std::vector<KeySpec> schema = {
        {"model", KeyType::String, "dc", "spectral model: dc, white, rect, double_gaussian, tabulated"},
        {"eta", KeyType::Number, 0.1, "noise strength"},
        {"xi", KeyType::Number, 1.0, "rect: correlation time in gate intervals"},
        {"xbar", KeyType::Number, 10.0, "double_gaussian: peak position"},
        {"sigma", KeyType::Number, 1.0, "double_gaussian: peak width"},
        {"spectrum_file", KeyType::OptString, nullptr, "tabulated: two-column (x, S) file"},
        {"table_file", KeyType::OptString, nullptr, "decoherence table JSON used instead of a spectral model"},
        {"beta_over_dt", KeyType::OptNumber, nullptr, "quantum bath inverse temperature in gate intervals"},
        {"nmax", KeyType::OptInteger, nullptr, "largest decoherence index (null: max(10, max m - 1))"},
        {"truncated", KeyType::Bool, false, "treat Gamma, Phi beyond nmax as exactly zero"},
        {"include_phi", KeyType::Bool, false, "compute Phi entries (always on for the quantum model)"},
        {"noise", KeyType::String, "classical", "noise model: classical, quantum"},
        {"group", KeyType::String, "pauli", "twirling group: id, pauli, rclif, clif"},
        {"m", KeyType::IntList, "1..30", "sequence lengths: a..b, a,b,c or an array"},
        {"methods", KeyType::StringList, "exact",
         "exact, mc, order0, order1, dc_closed, dc_asymptotic, oracle_phases, oracle_protocol"},
        {"samples", KeyType::Integer, 100000, "Monte Carlo samples (mc, oracle_phases)"},
        {"sequences", KeyType::Integer, 100000, "random sequences per length (oracle_protocol)"},
        {"seed", KeyType::Integer, 1, "random seed"},
        {"threads", KeyType::OptInteger, nullptr, "worker threads (null: RBDEPHASE_THREADS or 1)"},
        {"psi0", KeyType::String, "auto", "input state for oracle_protocol: auto, 0, 1, +, -, +i, -i"},
        {"out", KeyType::OptString, nullptr, "output file (scenario: directory); null writes to stdout"},
        {"tolerance", KeyType::Number, 1e-9, "absolute quadrature tolerance"},
        {"input", KeyType::OptString, nullptr, "fit: curve CSV to read"},
        {"fit_model", KeyType::String, "single_exp", "fit: single_exp or double_exp"},
        {"fix_sum", KeyType::Bool, false, "fit: constrain A+ + A- = 1"},
    };
    return schema;
}

const KeySpec *find_key(const std::string &name) {
    for (const auto &k : config_schema()) {
        if (name == k.name) return &k;
    }
    return nullptr;
}

json default_config() {
    json j = json::object();
    for (const auto &k : config_schema()) j[k.name] = k.default_value;
    return j;
}

void merge_config(json &base, const json &overlay, const std::string &origin) {
    if (!overlay.is_object()) throw ConfigError(fmt::format("{}: configuration must be a flat JSON object", origin));
    for (const auto &[key, value] : overlay.items()) {
        const KeySpec *spec = find_key(key);
        if (!spec) throw ConfigError(fmt::format("{}: unknown configuration key '{}'", origin, key));
        check_type(*spec, value, origin);
        base[key] = value;
    }
}

json flag_value(const KeySpec &spec, const std::string &text) {
    const std::string t = trim(text);
    auto number = [&] {
        std::istringstream in(t);
        double d;
        std::string rest;
        if (!(in >> d) || (in >> rest)) {
            throw ConfigError(fmt::format("--{}: '{}' is not a number", spec.name, text));
        }
        return d;
    };
    const bool null_text = t == "null" || t == "auto";
    switch (spec.type) {
        case KeyType::Number:
            return number();
        case KeyType::Integer:
            return parse_int_text(t, std::string("--") + spec.name);
        case KeyType::Bool:
            if (t == "true" || t == "1" || t.empty()) return true;
            if (t == "false" || t == "0") return false;
            throw ConfigError(fmt::format("--{}: '{}' is not a boolean", spec.name, text));
        case KeyType::String:
            return t;
        case KeyType::OptNumber:
            return null_text ? json(nullptr) : json(number());
        case KeyType::OptInteger:
            return null_text ? json(nullptr) : json(parse_int_text(t, std::string("--") + spec.name));
        case KeyType::OptString:
            return t == "null" ? json(nullptr) : json(t);
        case KeyType::IntList:
        case KeyType::StringList: {
            json v = t;
            parse_string_list(v);
            if (spec.type == KeyType::IntList) parse_m_values(v);
            return v;
        }
    }
    return nullptr;
}

std::vector<int> parse_m_values(const json &value) {
    std::vector<int> out;
    if (value.is_array()) {
        for (const auto &v : value) {
            if (!is_integer(v)) throw ConfigError("key 'm': array entries must be integers");
            out.push_back(v.get<int>());
        }
    } else if (is_integer(value)) {
        out.push_back(value.get<int>());
    } else if (value.is_string()) {
        const std::string s = value.get<std::string>();
        const auto dots = s.find("..");
        if (dots != std::string::npos) {
            const int a = parse_int_text(s.substr(0, dots), "key 'm'");
            const int b = parse_int_text(s.substr(dots + 2), "key 'm'");
            if (b < a) throw ConfigError(fmt::format("key 'm': empty range '{}'", s));
            for (int m = a; m <= b; ++m) out.push_back(m);
        } else {
            std::istringstream in(s);
            std::string item;
            while (std::getline(in, item, ',')) out.push_back(parse_int_text(item, "key 'm'"));
        }
    } else {
        throw ConfigError("key 'm' expects a range string, a list string or an integer array");
    }
    if (out.empty()) throw ConfigError("key 'm': no sequence lengths given");
    for (int m : out) {
        if (m < 1) throw ConfigError(fmt::format("key 'm': sequence lengths must be >= 1, got {}", m));
    }
    return out;
}

std::vector<std::string> parse_string_list(const json &value) {
    std::vector<std::string> out;
    if (value.is_array()) {
        for (const auto &v : value) {
            if (!v.is_string()) throw ConfigError("list entries must be strings");
            out.push_back(trim(v.get<std::string>()));
        }
    } else if (value.is_string()) {
        std::istringstream in(value.get<std::string>());
        std::string item;
        while (std::getline(in, item, ',')) {
            item = trim(item);
            if (!item.empty()) out.push_back(item);
        }
    } else {
        throw ConfigError("expected a comma-separated string or an array of strings");
    }
    return out;
}

Settings settings_from(const json &c) {
    Settings s;
    try {
        s.model = c.at("model").get<std::string>();
        s.eta = c.at("eta").get<double>();
        s.xi = c.at("xi").get<double>();
        s.xbar = c.at("xbar").get<double>();
        s.sigma = c.at("sigma").get<double>();
        s.spectrum_file = opt_string(c.at("spectrum_file"));
        s.table_file = opt_string(c.at("table_file"));
        if (!c.at("beta_over_dt").is_null()) s.beta_over_dt = c.at("beta_over_dt").get<double>();
        if (!c.at("nmax").is_null()) s.nmax = c.at("nmax").get<int>();
        s.truncated = c.at("truncated").get<bool>();
        s.include_phi = c.at("include_phi").get<bool>();
        s.noise = parse_noise_model(c.at("noise").get<std::string>());
        s.group = parse_group(c.at("group").get<std::string>());
        s.m_values = parse_m_values(c.at("m"));
        s.methods = parse_string_list(c.at("methods"));
        s.samples = nonnegative_u64(c.at("samples"), "samples");
        s.sequences = nonnegative_u64(c.at("sequences"), "sequences");
        s.seed = nonnegative_u64(c.at("seed"), "seed");
        if (!c.at("threads").is_null()) s.threads = c.at("threads").get<int>();
        s.psi0 = c.at("psi0").get<std::string>();
        s.out = opt_string(c.at("out"));
        s.tolerance = c.at("tolerance").get<double>();
        s.input = opt_string(c.at("input"));
        s.fit_model = c.at("fit_model").get<std::string>();
        s.fix_sum = c.at("fix_sum").get<bool>();
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("configuration: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    if (s.nmax && *s.nmax < 1) throw ConfigError("key 'nmax' must be >= 1");
    if (s.threads && *s.threads < 1) throw ConfigError("key 'threads' must be >= 1");
    if (!(s.tolerance > 0.0)) throw ConfigError("key 'tolerance' must be > 0");
    if (s.group == GroupKind::Id && s.noise != NoiseModel::Quantum) {
        throw ConfigError("group 'id' requires noise 'quantum'");
    }
    if (s.methods.empty()) throw ConfigError("key 'methods' is empty");
    return s;
}

}  // namespace rbdephase::cli
