#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "pulsespec/analysis.hpp"
#include "pulsespec/config.hpp"
#include "pulsespec/invariants.hpp"

namespace pulsespec {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kToleranceFailure = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kParamError = 3;
}  // namespace exit_code

/// ConfigParse and Io map to 2, everything else to 3.
int exit_code_for(const Error& e);

/// Spectra for one parameter point, numeric first when both are requested.
/// Checks the closed-form pulse count before any numeric work.
std::vector<Spectrum> compute_spectra(EngineChoice engine, const DriveParams& p, const FrequencyGrid& fg,
                                      std::optional<int> substeps);

inline constexpr double kValidateL2Tolerance = 0.05;

struct ValidationOutcome {
    Spectrum a;
    Spectrum b;
    SpectrumMetrics metrics;
    bool metrics_passed = false;
    InvariantReport invariants;
    std::vector<Peak> peaks;
    std::string hint;

    bool passed() const { return metrics_passed && invariants.all_passed(); }
};

/// engine=both (or unset) compares numeric against closed form; a single
/// engine is compared against itself.
ValidationOutcome validate(const Config& c);

// The run_* functions throw Error on bad input and return an exit code
// otherwise. Written paths are reported on `log`.
int run_spectrum(const Config& c, std::ostream& log);
int run_sweep(const Config& c, std::ostream& log);
int run_validate(const Config& c, std::ostream& log);

/// Full command: load config, apply the output override, dispatch, and map
/// failures to exit codes with a message on `err`.
int run_command(std::string_view command, const std::filesystem::path& config_path,
                const std::optional<std::filesystem::path>& output_dir, std::ostream& log, std::ostream& err);

}  // namespace pulsespec
