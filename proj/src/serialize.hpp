#pragma once

// JSON builders shared by the output and runner translation units.

#include <json.hpp>

#include "pulsespec/analysis.hpp"
#include "pulsespec/core.hpp"
#include "pulsespec/invariants.hpp"

namespace pulsespec::detail {

nlohmann::json to_json(const DriveParams& p);
nlohmann::json to_json(const FrequencyGrid& fg);
nlohmann::json to_json(const Spectrum& s);
nlohmann::json to_json(const SpectrumMetrics& m);
nlohmann::json to_json(const std::vector<Peak>& peaks);
nlohmann::json to_json(const InvariantReport& r);

}  // namespace pulsespec::detail
