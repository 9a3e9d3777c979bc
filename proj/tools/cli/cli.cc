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

#include "cli.h"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>

#include "config.h"
#include "rbdephase/rbdephase.h"

namespace rbdephase::cli {
namespace {

using json = nlohmann::ordered_json;

struct Command {
    CLI::App *app = nullptr;
    std::map<std::string, std::string> text;
    std::map<std::string, bool> flags;
    std::map<std::string, CLI::Option *> options;
    std::string config_path;
    bool print_defaults = false;
    std::string scenario;
};

std::string flag_name(const std::string &key) {
    std::string f = key;
    std::replace(f.begin(), f.end(), '_', '-');
    return "--" + f;
}

void add_key_options(Command &cmd) {
    cmd.app->add_option("--config", cmd.config_path, "flat JSON configuration file");
    cmd.app->add_flag("--print-defaults", cmd.print_defaults, "print the default configuration and exit");
    for (const auto &k : config_schema()) {
        const std::string key = k.name;
        if (k.type == KeyType::Bool) {
            cmd.flags[key] = false;
            cmd.options[key] = cmd.app->add_flag(flag_name(key), cmd.flags[key], k.help);
        } else {
            cmd.text[key];
            cmd.options[key] = cmd.app->add_option(flag_name(key), cmd.text[key], k.help);
        }
    }
}

json scenario_preset(const std::string &name) {
    if (name == "fig1") {
        return json{{"model", "dc"},
                    {"eta", 0.1},
                    {"noise", "classical"},
                    {"group", "pauli"},
                    {"m", "1..30"},
                    {"methods", "exact,order0,order1,mc,dc_asymptotic"}};
    }
    if (name == "fig2") return json{{"model", "rect"}, {"nmax", 6}};
    if (name == "fig3") return json{{"model", "double_gaussian"}, {"xbar", 10.0}, {"nmax", 10}};
    throw ConfigError(fmt::format("unknown scenario '{}' (expected fig1, fig2, fig3)", name));
}

// defaults <- preset <- config file <- flags.
json resolve_config(const Command &cmd, const json &preset, bool &methods_explicit) {
    json c = default_config();
    merge_config(c, preset, "scenario preset");
    methods_explicit = false;
    if (!cmd.config_path.empty()) {
        json file;
        try {
            file = json::parse(read_text_file(cmd.config_path));
        } catch (const json::exception &e) {
            throw ConfigError(fmt::format("{}: malformed JSON: {}", cmd.config_path, e.what()));
        }
        merge_config(c, file, cmd.config_path);
        methods_explicit = file.is_object() && file.contains("methods");
    }
    for (const auto &k : config_schema()) {
        const CLI::Option *opt = cmd.options.at(k.name);
        if (opt->count() == 0) continue;
        if (k.type == KeyType::Bool) {
            c[k.name] = cmd.flags.at(k.name);
        } else {
            c[k.name] = flag_value(k, cmd.text.at(k.name));
        }
        if (std::string(k.name) == "methods") methods_explicit = true;
    }
    return c;
}

int resolve_threads(const Settings &s) {
    if (s.threads) return *s.threads;
    if (const char *env = std::getenv("RBDEPHASE_THREADS")) {
        try {
            std::size_t used = 0;
            const int t = std::stoi(env, &used);
            if (used == std::string(env).size() && t >= 1) return t;
        } catch (const std::exception &) {
        }
        throw ConfigError(fmt::format("RBDEPHASE_THREADS must be a positive integer, got '{}'", env));
    }
    return 1;
}

SpectralModel spectral_model(const Settings &s) {
    if (s.model == "dc") return DcSpectrum{s.eta};
    if (s.model == "white") return WhiteSpectrum{s.eta};
    if (s.model == "rect") return RectangularSpectrum{s.eta, s.xi};
    if (s.model == "double_gaussian") return DoubleGaussianSpectrum{s.eta, s.xbar, s.sigma};
    if (s.model == "tabulated") {
        if (!s.spectrum_file) throw ConfigError("model 'tabulated' needs spectrum_file");
        return read_spectrum_file(*s.spectrum_file);
    }
    throw ConfigError(fmt::format("unknown model '{}' (expected dc, white, rect, double_gaussian, tabulated)", s.model));
}

DecoherenceTable make_table(const Settings &s, int nmax, int threads) {
    const bool phi = s.include_phi || s.noise == NoiseModel::Quantum;
    if (s.table_file) {
        DecoherenceTable t = table_from_json(read_text_file(*s.table_file));
        t.truncated = t.truncated || s.truncated;
        return t;
    }
    DecoherenceTable t = build_table(spectral_model(s), nmax, s.beta_over_dt, phi, {s.tolerance}, threads);
    t.truncated = s.truncated;
    return t;
}

StateVector resolve_psi0(const std::string &name, GroupKind group, std::string &resolved) {
    resolved = name;
    if (name == "auto") resolved = group == GroupKind::Clif ? "0" : "+";
    if (resolved == "0") return StateVector::from_bloch(0, 0, 1);
    if (resolved == "1") return StateVector::from_bloch(0, 0, -1);
    if (resolved == "+") return StateVector::from_bloch(1, 0, 0);
    if (resolved == "-") return StateVector::from_bloch(-1, 0, 0);
    if (resolved == "+i") return StateVector::from_bloch(0, 1, 0);
    if (resolved == "-i") return StateVector::from_bloch(0, -1, 0);
    throw ConfigError(fmt::format("unknown psi0 '{}' (expected auto, 0, 1, +, -, +i, -i)", name));
}

// The dc binomial sum is the exact Pauli average for a constant table, so
// it stands in for enumeration beyond the cap.
bool dc_exact_applies(const Settings &s, const DecoherenceTable &table, int m) {
    if (s.noise != NoiseModel::Classical || s.group != GroupKind::Pauli) return false;
    const double eta = table.gamma_at(0);
    if (!(eta > 0.0)) return false;
    for (int n = 1; n < m; ++n) {
        if (table.gamma_at(n) != eta) return false;
    }
    return true;
}

DecayCurve compute_curve(const Settings &s, DecayMethod method, const DecoherenceTable &table, int threads,
                         json &resolved) {
    DecayCurve curve{s.noise, s.group, {}};
    const MonteCarloOptions mc{s.samples, s.seed, threads};
    const bool oracle = method == DecayMethod::OraclePhases || method == DecayMethod::OracleProtocol;
    if (oracle && s.noise == NoiseModel::Quantum) {
        throw PreconditionError("the trajectory oracles exist for the classical model only");
    }
    StateVector psi0;
    if (method == DecayMethod::OracleProtocol) {
        std::string name;
        psi0 = resolve_psi0(s.psi0, s.group, name);
        resolved["psi0"] = name;
    }
    const double set_size = static_cast<double>(tuple_set(s.group, s.noise).size());
    for (int m : s.m_values) {
        DecayPoint p;
        p.m = m;
        p.method = method;
        switch (method) {
            case DecayMethod::ExactEnum:
                if (std::pow(set_size, m) > kEnumerationCap && dc_exact_applies(s, table, m)) {
                    p.value = dc_fm(table.gamma_at(0), m, DcMode::ExactSum);
                } else {
                    p.value = decay_exact_enum(s.noise, s.group, table, m);
                }
                break;
            case DecayMethod::MonteCarlo: {
                const Estimate e = decay_mc(s.noise, s.group, table, m, mc);
                p.value = e.value;
                p.std_error = e.std_error;
                break;
            }
            case DecayMethod::OraclePhases: {
                const Estimate e = decay_from_phases(table, s.group, m, mc);
                p.value = e.value;
                p.std_error = e.std_error;
                break;
            }
            case DecayMethod::OracleProtocol: {
                const MonteCarloOptions seq{s.sequences, s.seed, threads};
                const Estimate f = rb_protocol_fidelity(s.group, table, m, psi0, seq);
                p.value = 2.0 * f.value - 1.0;
                p.std_error = 2.0 * f.std_error;
                break;
            }
            default: {
                DecaySpec spec{s.noise, s.group, method, mc, table, {m}};
                p = evaluate_curve(spec).points.front();
                break;
            }
        }
        curve.points.push_back(p);
    }
    return curve;
}

void emit(const std::optional<std::string> &path, const std::string &contents, std::ostream &out) {
    if (path) {
        write_text_file(*path, contents);
    } else {
        out << contents;
    }
}

void write_resolved(const std::string &path, const json &resolved) {
    write_text_file(path, resolved.dump(2) + "\n");
}

int max_m(const Settings &s) {
    return *std::max_element(s.m_values.begin(), s.m_values.end());
}

void run_table(const Command &cmd, std::ostream &out) {
    bool methods_explicit;
    json c = resolve_config(cmd, json::object(), methods_explicit);
    const Settings s = settings_from(c);
    const int threads = resolve_threads(s);
    const int nmax = s.nmax.value_or(10);
    c["threads"] = threads;
    c["nmax"] = nmax;
    const DecoherenceTable t = make_table(s, nmax, threads);
    emit(s.out, table_to_json(t), out);
    if (s.out) write_resolved(*s.out + ".config.json", c);
}

std::string decay_csv(const Settings &s, const DecoherenceTable &table, int threads, json &resolved) {
    std::vector<DecayCurve> curves;
    for (const auto &name : s.methods) {
        DecayMethod method;
        try {
            method = parse_decay_method(name);
        } catch (const std::invalid_argument &e) {
            throw ConfigError(e.what());
        }
        curves.push_back(compute_curve(s, method, table, threads, resolved));
    }
    std::ostringstream csv;
    write_curves_csv(csv, curves);
    return csv.str();
}

void run_decay(const Command &cmd, std::ostream &out) {
    bool methods_explicit;
    json c = resolve_config(cmd, json::object(), methods_explicit);
    const Settings s = settings_from(c);
    const int threads = resolve_threads(s);
    const int nmax = s.nmax.value_or(std::max(10, max_m(s) - 1));
    c["threads"] = threads;
    c["nmax"] = nmax;
    const DecoherenceTable table = make_table(s, nmax, threads);
    const std::string csv = decay_csv(s, table, threads, c);
    emit(s.out, csv, out);
    if (s.out) write_resolved(*s.out + ".config.json", c);
}

void run_fit(const Command &cmd, std::ostream &out, std::ostream &err) {
    bool methods_explicit;
    json c = resolve_config(cmd, json::object(), methods_explicit);
    const Settings s = settings_from(c);
    if (!s.input) throw ConfigError("fit needs an input curve CSV (--input)");
    FitModel model;
    try {
        model = parse_fit_model(s.fit_model);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    std::istringstream in(read_text_file(*s.input));
    const auto curves = read_curves_csv(in);
    std::vector<const DecayCurve *> selected;
    std::string available;
    for (const auto &curve : curves) {
        const std::string tag = std::string(to_string(curve.points.front().method));
        available += fmt::format(" {}/{}/{}", tag, to_string(curve.group), to_string(curve.model));
        if (!methods_explicit || std::find(s.methods.begin(), s.methods.end(), tag) != s.methods.end()) {
            selected.push_back(&curve);
        }
    }
    if (selected.empty()) {
        throw PreconditionError(fmt::format("{}: no curve points to fit (series:{})", *s.input,
                                            available.empty() ? " none" : available));
    }
    if (selected.size() > 1) {
        throw ConfigError(fmt::format("{} holds several series ({}); select one with --methods", *s.input, available));
    }
    const FitResult r = model == FitModel::SingleExp ? fit_single_exp(*selected.front())
                                                     : fit_double_exp(*selected.front(), s.fix_sum);
    for (const auto &w : r.warnings) err << "warning: " << w << '\n';
    emit(s.out, fit_result_to_json(r), out);
    if (s.out) write_resolved(*s.out + ".config.json", c);
}

void run_scenario(const Command &cmd, std::ostream &out) {
    const json preset = scenario_preset(cmd.scenario);
    bool methods_explicit;
    json c = resolve_config(cmd, preset, methods_explicit);
    const Settings s = settings_from(c);
    const int threads = resolve_threads(s);
    c["threads"] = threads;
    const std::filesystem::path dir = s.out.value_or(".");
    std::filesystem::create_directories(dir);
    std::vector<std::string> written;

    if (cmd.scenario == "fig1") {
        const int nmax = s.nmax.value_or(std::max(10, max_m(s) - 1));
        c["nmax"] = nmax;
        const DecoherenceTable table = make_table(s, nmax, threads);
        const auto path = (dir / "fig1.csv").string();
        write_text_file(path, decay_csv(s, table, threads, c));
        written.push_back(path);
    } else if (cmd.scenario == "fig2") {
        const int nmax = s.nmax.value_or(6);
        c["nmax"] = nmax;
        for (double xi : {0.5, 1.0, 2.5}) {
            Settings si = s;
            si.xi = xi;
            const auto path = (dir / fmt::format("fig2_xi{}.json", xi)).string();
            write_text_file(path, table_to_json(make_table(si, nmax, threads)));
            written.push_back(path);
        }
    } else {
        const int nmax = s.nmax.value_or(10);
        c["nmax"] = nmax;
        std::ostringstream csv;
        csv << "sigma,n,gamma\n";
        for (double sigma : {0.5, 1.0, 2.0, 4.0}) {
            Settings si = s;
            si.sigma = sigma;
            const DecoherenceTable t = make_table(si, nmax, threads);
            for (int n = 0; n <= t.n_max(); ++n) {
                csv << format_number(sigma) << ',' << n << ',' << format_number(t.gamma_at(n)) << '\n';
            }
        }
        const auto path = (dir / "fig3.csv").string();
        write_text_file(path, csv.str());
        written.push_back(path);
    }
    const auto config_path = (dir / (cmd.scenario + ".config.json")).string();
    write_resolved(config_path, c);
    for (const auto &p : written) out << p << '\n';
}

json defaults_for(const Command &cmd, bool scenario) {
    json c = default_config();
    if (scenario && !cmd.scenario.empty()) merge_config(c, scenario_preset(cmd.scenario), "scenario preset");
    return c;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Randomized-benchmarking decay under time-correlated dephasing noise", "rbdephase"};
    app.require_subcommand(1);
    bool top_defaults = false;
    app.add_flag("--print-defaults", top_defaults, "print the default configuration and exit");

    Command table, decay, fit, scenario;
    table.app = app.add_subcommand("table", "compute a decoherence table (JSON)");
    decay.app = app.add_subcommand("decay", "compute decay curves (CSV)");
    fit.app = app.add_subcommand("fit", "fit a decay curve CSV (JSON)");
    scenario.app = app.add_subcommand("scenario", "run a named preset: fig1, fig2, fig3");
    for (Command *c : {&table, &decay, &fit, &scenario}) add_key_options(*c);
    scenario.app->add_option("name", scenario.scenario, "fig1, fig2 or fig3")->required();

    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    try {
        // --print-defaults alone needs no subcommand.
        if (args.size() == 2 && args[1] == "--print-defaults") {
            out << default_config().dump(2) << '\n';
            return kExitOk;
        }
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        for (Command *c : {&table, &decay, &fit, &scenario}) {
            if (!c->app->parsed()) continue;
            if (c->print_defaults || top_defaults) {
                out << defaults_for(*c, c == &scenario).dump(2) << '\n';
                return kExitOk;
            }
            if (c == &table) run_table(*c, out);
            if (c == &decay) run_decay(*c, out);
            if (c == &fit) run_fit(*c, out, err);
            if (c == &scenario) run_scenario(*c, out);
        }
        return kExitOk;
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const QuadratureError &e) {
        err << "quadrature error: " << e.what() << fmt::format(" (achieved {:.3g})", e.achieved_error()) << '\n';
        return kExitQuadrature;
    } catch (const PreconditionError &e) {
        err << "precondition failed: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const IoError &e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::filesystem::filesystem_error &e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument &e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace rbdephase::cli
