#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pulsespec/core.hpp"
#include "pulsespec/correlators.hpp"
#include "pulsespec/lindblad.hpp"

namespace pulsespec {

struct InvariantCheck {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct InvariantReport {
    std::vector<InvariantCheck> checks;
    bool all_passed() const;
};

namespace tolerance {
inline constexpr double kTrajectory = 1e-12;
inline constexpr double kRhoGg = 1e-10;
inline constexpr double kFactorization = 1e-9;
inline constexpr double kClosedIdentity = 1e-12;
inline constexpr double kNumericVsClosed = 0.05;
inline constexpr double kPhaseSlack = 1e-9;
}  // namespace tolerance

/// Runs every check that applies to the supplied pieces. The closed-form
/// checks need `closed`; the numeric-vs-closed one needs both spectra on
/// the same frequency grid.
InvariantReport run_invariant_suite(const DriveParams& p, const TimeGrid& g, std::span<const DensityMatrix> traj,
                                    const CorrelatorGrid& cg, const Spectrum* numeric, const Spectrum* closed);

/// Builds the trajectory and correlators itself; adds the closed-form
/// checks when N_p is even and >= 2.
InvariantReport run_invariant_suite(const DriveParams& p, std::optional<int> substeps, const FrequencyGrid& fg);

}  // namespace pulsespec
