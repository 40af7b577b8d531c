#pragma once

// Quadrature assembly of the emission and absorption integrals
//   P1(w) = int_0^T dt int_0^{T-t} dtheta C1(t, theta) e^{-i w theta}
//   P2(w) = same with C2
// over the ragged correlator lattice, followed by P = 2A^2 Re{...} and
// Q = P2 - P1.
//
// Both axes use the composite trapezoid rule, split at pulse instants: the
// correlators jump there, and each piece takes its own one-sided endpoint
// values. That keeps the rule second order in dt.

#include <span>

#include "pulsespec/core.hpp"
#include "pulsespec/correlators.hpp"
#include "pulsespec/parallel.hpp"

namespace pulsespec {

/// Composite trapezoid of sum_j row[j] e^{-i omega j dt}. Needs >= 2 samples.
complex fourier_over_theta(std::span<const complex> row, double dt, double omega);

/// Trapezoid over one correlator row that honours the jumps at pulse
/// crossings. Rows with fewer than two samples integrate to zero.
struct RowTransform {
    complex c1;
    complex c2;
};
RowTransform fourier_over_row(const CorrelatorRow& row, double dt, double omega);

/// Serial reference: evaluates each phase factor in place and sums row by
/// row. Kept for testing the parallel kernel.
Spectrum compute_numeric_spectrum_reference(const DriveParams& p, const TimeGrid& g, const CorrelatorGrid& cg,
                                            const FrequencyGrid& fg);

/// OpenMP kernel: one phase table per frequency, frequencies spread over
/// workers. The summation order per frequency is fixed, so results do not
/// depend on the worker count.
Spectrum compute_numeric_spectrum(const DriveParams& p, const TimeGrid& g, const CorrelatorGrid& cg,
                                  const FrequencyGrid& fg, Execution exec = Execution::Parallel);

/// Trajectory, correlators and quadrature in one call.
Spectrum numeric_spectrum(const DriveParams& p, const FrequencyGrid& fg, std::optional<int> substeps = std::nullopt,
                          Execution exec = Execution::Parallel);

}  // namespace pulsespec
