#pragma once

// Configuration-driven execution: JSON config in, report.json + spectrum.csv +
// per-mode plot data out. This is the engine behind the CLI; it lives in the
// library so tests can drive it without spawning processes.
//
// All artifact output is deterministic: identical config and inputs produce
// byte-identical files (doubles are written in shortest round-trip form, rows
// in a fixed order, and nothing time- or machine-dependent is written).

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gradmode/grid.hpp"
#include "gradmode/profiles.hpp"
#include "gradmode/reduction.hpp"
#include "gradmode/spectral.hpp"
#include "gradmode/susy.hpp"

namespace gradmode {

struct Tolerances {
    double constancy = 1e-9;  // default 1e-4 for tabulated profiles
    double pairing = 1e-3;
};

struct RunConfig {
    MaterialProfile profile = MaterialProfile::constant(1.0, 1.0);
    Grid grid{-1.0, 1.0, 16};
    std::vector<double> k0_values;  // one entry for a single run, the linspace for a sweep
    bool is_sweep = false;
    std::vector<Polarization> polarizations{Polarization::TE, Polarization::TM};
    std::size_t max_modes = 4;
    bool susy_check = false;
    Tolerances tolerances;
    std::string output_dir = ".";

    // Echo data for report.json (profile parameters as parsed).
    std::string profile_description;
};

// Parses and validates a config document. Malformed structure or values throw
// ConfigError naming the field; a tabulated profile is loaded immediately, so
// file problems surface here as IoError. Relative table paths resolve against
// base_dir (the config file's directory when loaded from disk).
[[nodiscard]] RunConfig parse_run_config(const std::string& json_text,
                                         const std::filesystem::path& base_dir = ".");
[[nodiscard]] RunConfig load_run_config(const std::filesystem::path& config_path);

// Everything computed for one (k0, polarization): the max_modes lowest states
// with guided flags, plus the potential they were solved in.
struct PolarizationRun {
    double k0 = 0.0;
    Polarization polarization = Polarization::TE;
    std::vector<Mode> states;
    EffectivePotential potential;
    // max(|psi| adjacent to either boundary) / max|psi| per state; above
    // 1e-8 the box is too small for that state and a warning is recorded.
    std::vector<double> boundary_ratios;
};

// SUSY verification outcome for one k0 (absent when susy_check is off).
struct SusyRunOutcome {
    double k0 = 0.0;
    bool constant_index = false;
    // NotConstantIndex diagnostics when the check fails:
    double deviation = 0.0;
    double at_x = 0.0;
    std::string message;
    // Full report when it passes:
    std::optional<SusyReport> report;
};

struct RunResult {
    std::vector<PolarizationRun> runs;       // ordered by k0, then TE before TM
    std::vector<SusyRunOutcome> susy;        // ordered by k0; empty if susy_check off
    std::vector<std::string> warnings;
    double elapsed_seconds = 0.0;            // never written to artifacts
};

// Runs the whole pipeline for every (k0, polarization). A failed
// constant-index check is a diagnostic, not an error: both polarizations are
// still solved independently.
[[nodiscard]] RunResult execute(const RunConfig& config);

// Writes report.json, spectrum.csv and <pol>_mode<k0>_<n>.dat into out_dir
// (created if missing). Throws IoError on filesystem failure.
void write_artifacts(const RunConfig& config, const RunResult& result,
                     const std::filesystem::path& out_dir);

// Shortest round-trip decimal representation of a double (the formatting used
// in every artifact this library writes).
[[nodiscard]] std::string format_double(double value);

}  // namespace gradmode
