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

#include "rbdephase/io.h"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "rbdephase/errors.h"

namespace rbdephase {
namespace {

using json = nlohmann::ordered_json;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<std::string> split(const std::string &line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

bool parse_double(std::string_view s, double &out) {
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_int(std::string_view s, int &out) {
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

void strip_cr(std::string &line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

json model_json(const SpectralModel &model) {
    return std::visit(Overloaded{
                          [](const DcSpectrum &d) { return json{{"type", "dc"}, {"eta", d.eta}}; },
                          [](const WhiteSpectrum &w) { return json{{"type", "white"}, {"eta", w.eta}}; },
                          [](const RectangularSpectrum &r) {
                              return json{{"type", "rect"}, {"eta", r.eta}, {"xi", r.xi}};
                          },
                          [](const DoubleGaussianSpectrum &g) {
                              return json{{"type", "double_gaussian"}, {"eta", g.eta}, {"xbar", g.xbar},
                                          {"sigma", g.sigma}};
                          },
                          [](const TabulatedSpectrum &t) {
                              return json{{"type", "tabulated"}, {"x", t.x}, {"s", t.s}};
                          },
                      },
                      model);
}

double number_field(const json &j, const char *key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw IoError(fmt::format("spectral model field '{}' must be a number", key));
    }
    return j.at(key).get<double>();
}

SpectralModel model_from(const json &j) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
        throw IoError("spectral model must be an object with a string 'type'");
    }
    const std::string type = j.at("type").get<std::string>();
    SpectralModel model;
    if (type == "dc") {
        model = DcSpectrum{number_field(j, "eta")};
    } else if (type == "white") {
        model = WhiteSpectrum{number_field(j, "eta")};
    } else if (type == "rect") {
        model = RectangularSpectrum{number_field(j, "eta"), number_field(j, "xi")};
    } else if (type == "double_gaussian") {
        model = DoubleGaussianSpectrum{number_field(j, "eta"), number_field(j, "xbar"), number_field(j, "sigma")};
    } else if (type == "tabulated") {
        try {
            model = TabulatedSpectrum{j.at("x").get<std::vector<double>>(), j.at("s").get<std::vector<double>>()};
        } catch (const json::exception &e) {
            throw IoError(std::string("tabulated spectrum needs numeric arrays 'x' and 's': ") + e.what());
        }
    } else {
        throw IoError(fmt::format("unknown spectral model type '{}'", type));
    }
    try {
        validate(model);
    } catch (const std::invalid_argument &e) {
        throw IoError(e.what());
    }
    return model;
}

std::vector<double> number_array(const json &j, const char *key) {
    if (!j.at(key).is_array()) throw IoError(fmt::format("table field '{}' must be an array", key));
    std::vector<double> out;
    for (const auto &v : j.at(key)) {
        if (!v.is_number()) throw IoError(fmt::format("table field '{}' must hold numbers only", key));
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

std::string format_number(double x) {
    return fmt::format("{:.17g}", x);
}

void write_curves_csv(std::ostream &out, const std::vector<DecayCurve> &curves) {
    out << kCurveCsvHeader << '\n';
    for (const auto &c : curves) {
        for (const auto &p : c.points) {
            out << p.m << ',' << format_number(p.value) << ',' << format_number(p.std_error) << ','
                << to_string(p.method) << ',' << to_string(c.group) << ',' << to_string(c.model) << '\n';
        }
    }
}

std::vector<DecayCurve> read_curves_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("curve CSV is empty");
    strip_cr(line);
    if (line != kCurveCsvHeader) {
        throw IoError(fmt::format("curve CSV header must be '{}', got '{}'", kCurveCsvHeader, line));
    }
    std::vector<DecayCurve> curves;
    std::map<std::tuple<DecayMethod, GroupKind, NoiseModel>, std::size_t> index;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 6) {
            throw IoError(fmt::format("line {}: expected 6 fields, got {}", line_no, fields.size()));
        }
        DecayPoint p;
        if (!parse_int(fields[0], p.m) || p.m < 0) {
            throw IoError(fmt::format("line {}: m must be a nonnegative integer, got '{}'", line_no, fields[0]));
        }
        if (!parse_double(fields[1], p.value)) {
            throw IoError(fmt::format("line {}: value '{}' is not a number", line_no, fields[1]));
        }
        if (!parse_double(fields[2], p.std_error) || p.std_error < 0.0) {
            throw IoError(fmt::format("line {}: stderr '{}' must be a nonnegative number", line_no, fields[2]));
        }
        GroupKind group;
        NoiseModel model;
        try {
            p.method = parse_decay_method(fields[3]);
            group = parse_group(fields[4]);
            model = parse_noise_model(fields[5]);
        } catch (const std::invalid_argument &e) {
            throw IoError(fmt::format("line {}: {}", line_no, e.what()));
        }
        const auto key = std::make_tuple(p.method, group, model);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, curves.size()).first;
            curves.push_back(DecayCurve{model, group, {}});
        }
        curves[it->second].points.push_back(p);
    }
    return curves;
}

std::string spectral_model_to_json(const SpectralModel &model) {
    return model_json(model).dump();
}

SpectralModel spectral_model_from_json(std::string_view text) {
    try {
        return model_from(json::parse(text));
    } catch (const json::exception &e) {
        throw IoError(std::string("malformed spectral model JSON: ") + e.what());
    }
}

std::string table_to_json(const DecoherenceTable &table) {
    json j;
    j["gamma"] = table.gamma;
    j["phi"] = table.phi ? json(*table.phi) : json(nullptr);
    j["beta_over_dt"] = table.beta_over_dt ? json(*table.beta_over_dt) : json(nullptr);
    j["model"] = table.model ? model_json(*table.model) : json(nullptr);
    j["method"] = std::string(to_string(table.method));
    j["truncated"] = table.truncated;
    return j.dump(2) + "\n";
}

DecoherenceTable table_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        throw IoError(std::string("malformed decoherence table JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("gamma")) throw IoError("decoherence table JSON needs a 'gamma' array");
    std::optional<std::vector<double>> phi;
    if (j.contains("phi") && !j.at("phi").is_null()) phi = number_array(j, "phi");
    bool truncated = false;
    if (j.contains("truncated")) {
        if (!j.at("truncated").is_boolean()) throw IoError("table field 'truncated' must be a boolean");
        truncated = j.at("truncated").get<bool>();
    }
    DecoherenceTable t;
    try {
        t = DecoherenceTable::manual(number_array(j, "gamma"), std::move(phi), truncated);
        if (j.contains("method")) {
            if (!j.at("method").is_string()) throw IoError("table field 'method' must be a string");
            t.method = parse_table_method(j.at("method").get<std::string>());
        }
    } catch (const std::invalid_argument &e) {
        throw IoError(std::string("invalid decoherence table: ") + e.what());
    }
    if (j.contains("beta_over_dt") && !j.at("beta_over_dt").is_null()) {
        if (!j.at("beta_over_dt").is_number()) throw IoError("table field 'beta_over_dt' must be a number");
        t.beta_over_dt = j.at("beta_over_dt").get<double>();
    }
    if (j.contains("model") && !j.at("model").is_null()) t.model = model_from(j.at("model"));
    return t;
}

std::string fit_result_to_json(const FitResult &result) {
    json params;
    if (const auto *s = std::get_if<SingleExpParams>(&result.params)) {
        params = json{{"A", s->a}, {"p", s->p}, {"B", s->b}};
    } else {
        const auto &d = std::get<DoubleExpParams>(result.params);
        params = json{{"A_plus", d.a_plus},
                      {"lambda_plus", d.lambda_plus},
                      {"A_minus", d.a_minus},
                      {"lambda_minus", d.lambda_minus}};
    }
    json j{{"model", std::string(to_string(result.model))},
           {"params", params},
           {"residual_rms", result.residual_rms},
           {"converged", result.converged}};
    return j.dump(2) + "\n";
}

TabulatedSpectrum read_spectrum_file(const std::string &path) {
    std::istringstream in(read_text_file(path));
    TabulatedSpectrum t;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        for (char &c : line) {
            if (c == ',' || c == '\t') c = ' ';
        }
        std::istringstream fields(line);
        std::string a;
        std::string b;
        std::string extra;
        if (!(fields >> a) || a.front() == '#') continue;
        double x;
        double s;
        if (!(fields >> b) || (fields >> extra) || !parse_double(a, x) || !parse_double(b, s)) {
            throw IoError(fmt::format("{}:{}: expected two numbers 'x S'", path, line_no));
        }
        t.x.push_back(x);
        t.s.push_back(s);
    }
    try {
        validate(SpectralModel{t});
    } catch (const std::invalid_argument &e) {
        throw IoError(fmt::format("{}: {}", path, e.what()));
    }
    return t;
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(fmt::format("cannot open '{}' for reading", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string &path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path));
    out << contents;
    if (!out) throw IoError(fmt::format("write to '{}' failed", path));
}

}  // namespace rbdephase
