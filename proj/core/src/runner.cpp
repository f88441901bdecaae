#include "gradmode/runner.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace gradmode {

namespace {

using nlohmann::ordered_json;

// --- config parsing -------------------------------------------------------

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config: " + (path.empty() ? what : path + ": " + what));
}

std::string join(const std::string& path, const std::string& name) {
    return path.empty() ? name : path + "." + name;
}

const ordered_json& require_field(const ordered_json& obj, const char* name,
                                  const std::string& path) {
    if (!obj.is_object()) {
        fail(path, "expected an object");
    }
    const auto it = obj.find(name);
    if (it == obj.end()) {
        fail(join(path, name), "missing required field");
    }
    return *it;
}

double as_number(const ordered_json& value, const std::string& path) {
    if (!value.is_number()) {
        fail(path, "expected a number");
    }
    return value.get<double>();
}

double field_number(const ordered_json& obj, const char* name, const std::string& path) {
    return as_number(require_field(obj, name, path), join(path, name));
}

std::size_t field_count(const ordered_json& obj, const char* name, const std::string& path) {
    const ordered_json& value = require_field(obj, name, path);
    if (!value.is_number_integer() || value.get<long long>() < 0) {
        fail(join(path, name), "expected a non-negative integer");
    }
    return value.get<std::size_t>();
}

void reject_unknown_fields(const ordered_json& obj, std::initializer_list<const char*> known,
                           const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find_if(known.begin(), known.end(), [&](const char* k) {
                return key == k;
            }) == known.end()) {
            fail(join(path, key), "unknown field");
        }
    }
}

struct ParsedProfile {
    MaterialProfile profile;
    std::string description;
};

ParsedProfile parse_profile(const ordered_json& spec, const std::filesystem::path& base_dir) {
    const ordered_json& kind_field = require_field(spec, "kind", "profile");
    if (!kind_field.is_string()) {
        fail("profile.kind", "expected a string");
    }
    const std::string kind = kind_field.get<std::string>();
    if (kind == "constant") {
        reject_unknown_fields(spec, {"kind", "eps", "mu"}, "profile");
        const double eps = field_number(spec, "eps", "profile");
        const double mu = field_number(spec, "mu", "profile");
        return {MaterialProfile::constant(eps, mu),
                "constant(eps=" + format_double(eps) + ", mu=" + format_double(mu) + ")"};
    }
    if (kind == "gaussian_susy_pair") {
        reject_unknown_fields(spec, {"kind", "n0", "alpha"}, "profile");
        const double n0 = field_number(spec, "n0", "profile");
        const double alpha = field_number(spec, "alpha", "profile");
        return {MaterialProfile::gaussian_susy_pair(n0, alpha),
                "gaussian_susy_pair(n0=" + format_double(n0) +
                    ", alpha=" + format_double(alpha) + ")"};
    }
    if (kind == "sech_squared_eps") {
        reject_unknown_fields(spec, {"kind", "eps_b", "delta", "width"}, "profile");
        const double eps_b = field_number(spec, "eps_b", "profile");
        const double delta = field_number(spec, "delta", "profile");
        const double width = field_number(spec, "width", "profile");
        return {MaterialProfile::sech_squared_eps(eps_b, delta, width),
                "sech_squared_eps(eps_b=" + format_double(eps_b) +
                    ", delta=" + format_double(delta) +
                    ", width=" + format_double(width) + ")"};
    }
    if (kind == "tabulated") {
        reject_unknown_fields(spec, {"kind", "path"}, "profile");
        const ordered_json& path_field = require_field(spec, "path", "profile");
        if (!path_field.is_string()) {
            fail("profile.path", "expected a string");
        }
        std::filesystem::path table_path = path_field.get<std::string>();
        if (table_path.is_relative()) {
            table_path = base_dir / table_path;
        }
        return {load_tabulated(table_path.string()),
                "tabulated(" + path_field.get<std::string>() + ")"};
    }
    fail("profile.kind", "unknown profile kind '" + kind + "'");
}

std::vector<Polarization> parse_polarizations(const ordered_json& config) {
    const auto it = config.find("polarizations");
    if (it == config.end()) {
        return {Polarization::TE, Polarization::TM};
    }
    if (!it->is_array() || it->empty()) {
        fail("polarizations", "expected a non-empty array");
    }
    bool te = false;
    bool tm = false;
    for (const auto& entry : *it) {
        if (!entry.is_string()) {
            fail("polarizations", "entries must be \"TE\" or \"TM\"");
        }
        const std::string s = entry.get<std::string>();
        if (s == "TE") {
            te = true;
        } else if (s == "TM") {
            tm = true;
        } else {
            fail("polarizations", "entries must be \"TE\" or \"TM\", got '" + s + "'");
        }
    }
    std::vector<Polarization> pols;
    if (te) {
        pols.push_back(Polarization::TE);
    }
    if (tm) {
        pols.push_back(Polarization::TM);
    }
    return pols;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        fail("", "top level must be an object");
    }
    reject_unknown_fields(doc,
                          {"profile", "grid", "k0", "k0_sweep", "polarizations", "max_modes",
                           "susy_check", "tolerances", "output_dir"},
                          "");

    ParsedProfile parsed = parse_profile(require_field(doc, "profile", ""), base_dir);

    const ordered_json& grid_spec = require_field(doc, "grid", "");
    reject_unknown_fields(grid_spec, {"x_min", "x_max", "n_points"}, "grid");
    Grid grid(field_number(grid_spec, "x_min", "grid"), field_number(grid_spec, "x_max", "grid"),
              field_count(grid_spec, "n_points", "grid"));

    RunConfig config{.profile = std::move(parsed.profile),
                     .grid = grid,
                     .k0_values = {},
                     .is_sweep = false,
                     .polarizations = parse_polarizations(doc),
                     .max_modes = 4,
                     .susy_check = false,
                     .tolerances = {},
                     .output_dir = ".",
                     .profile_description = std::move(parsed.description)};

    const bool has_k0 = doc.contains("k0");
    const bool has_sweep = doc.contains("k0_sweep");
    if (has_k0 == has_sweep) {
        fail("k0", has_k0 ? "give either k0 or k0_sweep, not both"
                          : "either k0 or k0_sweep is required");
    }
    if (has_k0) {
        const double k0 = as_number(doc["k0"], "k0");
        if (!(k0 > 0.0)) {
            fail("k0", "must be positive");
        }
        config.k0_values.push_back(k0);
    } else {
        const ordered_json& sweep = doc["k0_sweep"];
        reject_unknown_fields(sweep, {"start", "stop", "steps"}, "k0_sweep");
        const double start = field_number(sweep, "start", "k0_sweep");
        const double stop = field_number(sweep, "stop", "k0_sweep");
        const std::size_t steps = field_count(sweep, "steps", "k0_sweep");
        if (steps < 2) {
            fail("k0_sweep.steps", "a sweep needs at least 2 points");
        }
        if (!(start > 0.0) || !(stop > 0.0)) {
            fail("k0_sweep", "start and stop must be positive");
        }
        if (start == stop) {
            fail("k0_sweep", "start and stop must differ");
        }
        config.is_sweep = true;
        config.k0_values.resize(steps);
        for (std::size_t i = 0; i < steps; ++i) {
            config.k0_values[i] = start + (stop - start) * static_cast<double>(i) /
                                              static_cast<double>(steps - 1);
        }
        config.k0_values.back() = stop;
    }

    if (doc.contains("max_modes")) {
        config.max_modes = field_count(doc, "max_modes", "");
        if (config.max_modes == 0) {
            fail("max_modes", "must be at least 1");
        }
    }
    if (doc.contains("susy_check")) {
        if (!doc["susy_check"].is_boolean()) {
            fail("susy_check", "expected a boolean");
        }
        config.susy_check = doc["susy_check"].get<bool>();
    }

    // Splines limit how exactly a tabulated profile can hold eps*mu constant,
    // so the default constancy tolerance is looser for tables.
    config.tolerances.constancy = config.profile.is<TabulatedProfile>() ? 1e-4 : 1e-9;
    if (doc.contains("tolerances")) {
        const ordered_json& tols = doc["tolerances"];
        reject_unknown_fields(tols, {"constancy", "pairing"}, "tolerances");
        if (tols.contains("constancy")) {
            config.tolerances.constancy = field_number(tols, "constancy", "tolerances");
            if (!(config.tolerances.constancy > 0.0)) {
                fail("tolerances.constancy", "must be positive");
            }
        }
        if (tols.contains("pairing")) {
            config.tolerances.pairing = field_number(tols, "pairing", "tolerances");
            if (!(config.tolerances.pairing > 0.0)) {
                fail("tolerances.pairing", "must be positive");
            }
        }
    }
    if (doc.contains("output_dir")) {
        if (!doc["output_dir"].is_string()) {
            fail("output_dir", "expected a string");
        }
        config.output_dir = doc["output_dir"].get<std::string>();
    }
    return config;
}

RunConfig load_run_config(const std::filesystem::path& config_path) {
    std::ifstream in(config_path);
    if (!in) {
        throw IoError("cannot open config '" + config_path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    if (in.bad()) {
        throw IoError("failed reading config '" + config_path.string() + "'");
    }
    return parse_run_config(text.str(), config_path.parent_path());
}

// --- execution ------------------------------------------------------------

RunResult execute(const RunConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    RunResult result;

    for (double k0 : config.k0_values) {
        for (Polarization pol : config.polarizations) {
            PolarizationRun run;
            run.k0 = k0;
            run.polarization = pol;
            run.potential = effective_potential(config.profile, config.grid, k0, pol);
            run.states =
                compute_all_states(config.profile, config.grid, k0, pol, config.max_modes);
            for (const Mode& mode : run.states) {
                double max_abs = 0.0;
                for (double p : mode.psi) {
                    max_abs = std::max(max_abs, std::abs(p));
                }
                // The first and last interior samples sit next to the Dirichlet
                // wall; a guided mode should have decayed to nothing there.
                const double edge =
                    std::max(std::abs(mode.psi[1]), std::abs(mode.psi[mode.psi.size() - 2]));
                const double ratio = max_abs > 0.0 ? edge / max_abs : 0.0;
                run.boundary_ratios.push_back(ratio);
                if (mode.guided && ratio > 1e-8) {
                    result.warnings.push_back(
                        "k0=" + format_double(k0) + " " + to_string(pol) + " mode " +
                        std::to_string(mode.mode_index) +
                        ": boundary magnitude ratio " + format_double(ratio) +
                        " exceeds 1e-8; the grid may be too small for this mode");
                }
            }
            result.runs.push_back(std::move(run));
        }

        if (config.susy_check) {
            const bool has_te = std::find(config.polarizations.begin(),
                                          config.polarizations.end(),
                                          Polarization::TE) != config.polarizations.end();
            const bool has_tm = std::find(config.polarizations.begin(),
                                          config.polarizations.end(),
                                          Polarization::TM) != config.polarizations.end();
            if (!has_te || !has_tm) {
                result.warnings.push_back(
                    "susy_check needs both polarizations; skipped at k0=" +
                    format_double(k0));
                continue;
            }
            // Pair on all computed states, not only the guided ones: the
            // degeneracy is a property of the operators, and sweep points
            // where a partner is bound but evanescent must still pair.
            const auto spectrum_of = [&](Polarization pol) {
                ModeSpectrum spectrum;
                spectrum.polarization = pol;
                spectrum.k0 = k0;
                spectrum.grid = config.grid;
                for (const PolarizationRun& run : result.runs) {
                    if (run.k0 == k0 && run.polarization == pol) {
                        spectrum.modes = run.states;
                    }
                }
                return spectrum;
            };

            SusyRunOutcome outcome;
            outcome.k0 = k0;
            try {
                outcome.report =
                    verify_susy(config.profile, spectrum_of(Polarization::TE),
                                spectrum_of(Polarization::TM), config.tolerances.constancy,
                                config.tolerances.pairing);
                outcome.constant_index = true;
            } catch (const NotConstantIndexError& e) {
                outcome.constant_index = false;
                outcome.deviation = e.deviation();
                outcome.at_x = e.at_x();
                outcome.message = e.what();
            }
            result.susy.push_back(std::move(outcome));
        }
    }

    result.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

// --- artifacts ------------------------------------------------------------

std::string format_double(double value) {
    std::array<char, 32> buffer;
    const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), ptr);
}

namespace {

std::string classification_name(SusyClassification c) {
    switch (c) {
        case SusyClassification::ExactTMZeroMode:
            return "exact_tm_zero_mode";
        case SusyClassification::ExactTEZeroMode:
            return "exact_te_zero_mode";
        case SusyClassification::Broken:
            return "broken";
    }
    return "broken";
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << contents;
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

ordered_json config_echo(const RunConfig& config) {
    ordered_json echo;
    echo["profile"] = config.profile_description;
    echo["grid"] = {{"x_min", config.grid.x_min()},
                    {"x_max", config.grid.x_max()},
                    {"n_points", config.grid.n_points()}};
    if (config.is_sweep) {
        echo["k0_sweep"] = config.k0_values;
    } else {
        echo["k0"] = config.k0_values.front();
    }
    ordered_json pols = ordered_json::array();
    for (Polarization pol : config.polarizations) {
        pols.push_back(to_string(pol));
    }
    echo["polarizations"] = std::move(pols);
    echo["max_modes"] = config.max_modes;
    echo["susy_check"] = config.susy_check;
    echo["tolerances"] = {{"constancy", config.tolerances.constancy},
                          {"pairing", config.tolerances.pairing}};
    return echo;
}

}  // namespace

void write_artifacts(const RunConfig& config, const RunResult& result,
                     const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + out_dir.string() +
                      "': " + ec.message());
    }

    // Pair ids: per k0, each SUSY pair gets a sequential id shared by its TE
    // and TM rows (ascending pair energy = list order from verify_susy).
    const auto pair_id_of = [&](double k0, Polarization pol,
                                std::size_t mode_index) -> ordered_json {
        for (const SusyRunOutcome& outcome : result.susy) {
            if (outcome.k0 != k0 || !outcome.report.has_value()) {
                continue;
            }
            const auto& pairs = outcome.report->pairs;
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                const std::size_t want =
                    pol == Polarization::TE ? pairs[p].te_index : pairs[p].tm_index;
                if (want == mode_index) {
                    return p;
                }
            }
        }
        return nullptr;
    };

    ordered_json report;
    report["config"] = config_echo(config);

    ordered_json runs = ordered_json::array();
    for (const PolarizationRun& run : result.runs) {
        ordered_json entry;
        entry["k0"] = run.k0;
        entry["polarization"] = to_string(run.polarization);
        std::size_t guided = 0;
        ordered_json modes = ordered_json::array();
        for (std::size_t i = 0; i < run.states.size(); ++i) {
            const Mode& mode = run.states[i];
            guided += mode.guided ? 1 : 0;
            ordered_json m;
            m["mode_index"] = mode.mode_index;
            m["beta_sq"] = mode.beta_sq;
            m["e_schr"] = mode.e_schr;
            m["nodes"] = mode.nodes;
            m["guided"] = mode.guided;
            m["boundary_ratio"] = run.boundary_ratios[i];
            m["grid_warning"] = mode.guided && run.boundary_ratios[i] > 1e-8;
            modes.push_back(std::move(m));
        }
        entry["guided_count"] = guided;
        entry["box_artifacts"] = run.states.size() - guided;
        entry["modes"] = std::move(modes);
        runs.push_back(std::move(entry));
    }
    report["runs"] = std::move(runs);

    if (config.susy_check) {
        ordered_json susy = ordered_json::array();
        for (const SusyRunOutcome& outcome : result.susy) {
            ordered_json entry;
            entry["k0"] = outcome.k0;
            entry["constant_index"] = outcome.constant_index;
            if (!outcome.constant_index) {
                entry["deviation"] = outcome.deviation;
                entry["at_x"] = outcome.at_x;
                entry["message"] = outcome.message;
            } else {
                const SusyReport& r = *outcome.report;
                entry["n0"] = r.n0;
                entry["constancy_residual"] = r.constancy_residual;
                entry["classification"] = classification_name(r.classification);
                entry["zero_mode_energy"] =
                    r.zero_mode_energy.has_value() ? ordered_json(*r.zero_mode_energy)
                                                   : ordered_json(nullptr);
                entry["zero_mode_polarization"] =
                    r.zero_mode.polarization.has_value()
                        ? ordered_json(to_string(*r.zero_mode.polarization))
                        : ordered_json(nullptr);
                ordered_json pairs = ordered_json::array();
                for (std::size_t p = 0; p < r.pairs.size(); ++p) {
                    pairs.push_back({{"pair_id", p},
                                     {"te_index", r.pairs[p].te_index},
                                     {"tm_index", r.pairs[p].tm_index},
                                     {"gap", r.pairs[p].gap},
                                     {"intertwining_residual",
                                      r.pairs[p].intertwining_residual}});
                }
                entry["pairs"] = std::move(pairs);
                entry["unpaired_te"] = r.unpaired_te;
                entry["unpaired_tm"] = r.unpaired_tm;
                entry["factorization_residual_te"] = r.factorization_residual_te;
                entry["factorization_residual_tm"] = r.factorization_residual_tm;
            }
            susy.push_back(std::move(entry));
        }
        report["susy"] = std::move(susy);
    }

    ordered_json dispersion = ordered_json::array();
    for (const PolarizationRun& run : result.runs) {
        for (const Mode& mode : run.states) {
            dispersion.push_back({{"k0", run.k0},
                                  {"polarization", to_string(run.polarization)},
                                  {"mode_index", mode.mode_index},
                                  {"beta_sq", mode.beta_sq},
                                  {"pair_id",
                                   pair_id_of(run.k0, run.polarization, mode.mode_index)}});
        }
    }
    report["dispersion"] = std::move(dispersion);
    report["warnings"] = result.warnings;

    write_file(out_dir / "report.json", report.dump(2) + "\n");

    std::string csv = "k0,polarization,mode_index,beta_sq,e_schr,nodes,guided\n";
    for (const PolarizationRun& run : result.runs) {
        for (const Mode& mode : run.states) {
            csv += format_double(run.k0);
            csv += ',';
            csv += to_string(run.polarization);
            csv += ',';
            csv += std::to_string(mode.mode_index);
            csv += ',';
            csv += format_double(mode.beta_sq);
            csv += ',';
            csv += format_double(mode.e_schr);
            csv += ',';
            csv += std::to_string(mode.nodes);
            csv += ',';
            csv += mode.guided ? '1' : '0';
            csv += '\n';
        }
    }
    write_file(out_dir / "spectrum.csv", csv);

    const std::vector<ProfileSample> samples = config.profile.sample_on_grid(config.grid);
    for (const PolarizationRun& run : result.runs) {
        for (const Mode& mode : run.states) {
            const std::vector<double> field =
                field_from_wavefunction(mode.psi, samples, run.polarization);
            std::string dat = "# x psi field potential\n";
            for (std::size_t i = 0; i < mode.psi.size(); ++i) {
                dat += format_double(config.grid.point(i));
                dat += ' ';
                dat += format_double(mode.psi[i]);
                dat += ' ';
                dat += format_double(field[i]);
                dat += ' ';
                dat += format_double(run.potential.v[i]);
                dat += '\n';
            }
            const std::string name = to_string(run.polarization) + "_mode" +
                                     format_double(run.k0) + "_" +
                                     std::to_string(mode.mode_index) + ".dat";
            write_file(out_dir / name, dat);
        }
    }
}

}  // namespace gradmode
