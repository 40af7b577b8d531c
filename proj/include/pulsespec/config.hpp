#pragma once

// Flat key=value run configuration. '#' starts a comment, blank lines are
// ignored, list keys take comma-separated values (optionally in brackets).
//
//   delta = 3
//   tau = 0.2
//   n_pulses = 8
//   engine = both
//   n_pulses_list = 8, 12, 16, 20

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pulsespec/core.hpp"

namespace pulsespec {

enum class EngineChoice { Numeric, ClosedForm, Both };
enum class OutputFormat { Csv, Json, Both };

std::string_view to_string(EngineChoice e);
std::string_view to_string(OutputFormat f);

struct Config {
    std::optional<double> delta;
    double gamma = kDefaultGamma;
    std::optional<double> tau;
    std::optional<int> n_pulses;
    double amp = kDefaultAmp;
    std::optional<double> free_time;
    std::optional<int> substeps;
    std::optional<double> omega_min;
    std::optional<double> omega_max;
    std::optional<double> omega_step;
    std::optional<EngineChoice> engine;
    std::filesystem::path output_dir = "pulsespec_out";
    OutputFormat format = OutputFormat::Csv;

    std::vector<int> n_pulses_list;
    std::vector<double> tau_list;
    std::vector<double> delta_list;

    bool has_sweep_lists() const;
};

/// Throws Error(ConfigParse) on malformed lines, unknown or repeated keys and
/// values that do not parse.
Config parse_config(std::string_view text);
/// Reads and parses a file; an unreadable file is a ConfigParse error too.
Config load_config(const std::filesystem::path& path);

/// Scalar parameters; throws ConfigParse if delta, tau or n_pulses is absent.
DriveParams resolve_params(const Config& c);
/// Sweep point: list values override the scalars, which become optional.
DriveParams resolve_params(const Config& c, std::optional<int> n_pulses, std::optional<double> tau,
                           std::optional<double> delta);
/// Explicit omega keys, falling back to the default window for tau.
FrequencyGrid resolve_frequency_grid(const Config& c, double tau);

}  // namespace pulsespec
