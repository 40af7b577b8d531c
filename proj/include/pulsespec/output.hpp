#pragma once

// Spectrum serialization. CSV files open with `# key=value` lines holding
// the resolved parameters, then the header `omega,P1,P2,Q`. Every float is
// printed with %.17g so a rerun reproduces the file byte for byte.

#include <filesystem>
#include <string>

#include "pulsespec/core.hpp"

namespace pulsespec {

std::string format_double(double x);

std::string spectrum_csv(const Spectrum& s);
/// Engine, params, grids, the p1/p2/q arrays and the complex integrals as
/// [re, im] pairs.
std::string spectrum_json(const Spectrum& s);

/// Throws Error(Io) when the file cannot be written.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace pulsespec
