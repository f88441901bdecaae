// gradmode: guided TE/TM modes of planar gradient waveguides, with detection
// of the supersymmetric TE/TM pairing on constant-index profiles.
//
// Exit codes: 0 success, 2 malformed configuration or usage, 3 IO or solver
// failure.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include "CLI11.hpp"

#include "gradmode/gradmode.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    bool quiet = false;
};

void add_common_options(CLI::App* cmd, CommonOptions& options) {
    cmd->add_option("config", options.config_path, "JSON configuration file")
        ->required()
        ->type_name("PATH");
    cmd->add_option("--out", options.out_dir,
                    "output directory (overrides output_dir in the config)")
        ->type_name("DIR");
    cmd->add_flag("--quiet", options.quiet, "suppress progress output");
}

int run_command(const CommonOptions& options, bool force_susy, const char* expectation) {
    gradmode::RunConfig config = gradmode::load_run_config(options.config_path);
    if (expectation == std::string("single") && config.is_sweep) {
        throw gradmode::ConfigError(
            "config: k0_sweep given; use the sweep subcommand for sweeps");
    }
    if (expectation == std::string("sweep") && !config.is_sweep) {
        throw gradmode::ConfigError("config: sweep requires k0_sweep, found single k0");
    }
    if (force_susy) {
        config.susy_check = true;
    }

    const gradmode::RunResult result = gradmode::execute(config);
    const std::filesystem::path out_dir =
        options.out_dir.empty() ? std::filesystem::path(config.output_dir)
                                : std::filesystem::path(options.out_dir);
    gradmode::write_artifacts(config, result, out_dir);

    if (!options.quiet) {
        for (const gradmode::PolarizationRun& run : result.runs) {
            std::size_t guided = 0;
            for (const gradmode::Mode& mode : run.states) {
                guided += mode.guided ? 1 : 0;
            }
            std::printf("k0=%s %s: %zu guided mode%s", gradmode::format_double(run.k0).c_str(),
                        gradmode::to_string(run.polarization).c_str(), guided,
                        guided == 1 ? "" : "s");
            const char* sep = " (beta^2 = ";
            for (const gradmode::Mode& mode : run.states) {
                if (!mode.guided) {
                    continue;
                }
                std::printf("%s%s", sep, gradmode::format_double(mode.beta_sq).c_str());
                sep = ", ";
            }
            std::printf("%s\n", guided > 0 ? ")" : "");
        }
        for (const gradmode::SusyRunOutcome& outcome : result.susy) {
            if (!outcome.constant_index) {
                std::printf("k0=%s susy: not constant-index (deviation %s at x=%s)\n",
                            gradmode::format_double(outcome.k0).c_str(),
                            gradmode::format_double(outcome.deviation).c_str(),
                            gradmode::format_double(outcome.at_x).c_str());
                continue;
            }
            const gradmode::SusyReport& report = *outcome.report;
            const char* label = "broken";
            if (report.classification == gradmode::SusyClassification::ExactTMZeroMode) {
                label = "exact (TM zero mode)";
            } else if (report.classification ==
                       gradmode::SusyClassification::ExactTEZeroMode) {
                label = "exact (TE zero mode)";
            }
            std::printf("k0=%s susy: n0=%s, %s, %zu degenerate pair%s\n",
                        gradmode::format_double(outcome.k0).c_str(),
                        gradmode::format_double(report.n0).c_str(), label,
                        report.pairs.size(), report.pairs.size() == 1 ? "" : "s");
        }
        for (const std::string& warning : result.warnings) {
            std::printf("warning: %s\n", warning.c_str());
        }
        std::printf("wrote %s in %.3f s\n", out_dir.string().c_str(), result.elapsed_seconds);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"guided modes of planar gradient waveguides"};
    app.set_version_flag("--version", std::string("gradmode ") + gradmode::version());
    app.require_subcommand(1);

    CommonOptions options;
    CLI::App* run = app.add_subcommand("run", "solve modes at a single k0");
    add_common_options(run, options);
    CLI::App* sweep = app.add_subcommand("sweep", "solve modes over a k0 sweep");
    add_common_options(sweep, options);
    CLI::App* susy =
        app.add_subcommand("susy", "solve modes with SUSY verification forced on");
    add_common_options(susy, options);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // --help/--version exit 0, usage errors 2
    }

    try {
        if (run->parsed()) {
            return run_command(options, false, "single");
        }
        if (sweep->parsed()) {
            return run_command(options, false, "sweep");
        }
        return run_command(options, true, "any");
    } catch (const gradmode::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const gradmode::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
