#pragma once

// Two-time correlators on the node lattice:
//   C1(t, theta) = <sigma_+(t + theta) sigma_-(t)> = rho'_ge(t, t + theta)
//   C2(t, theta) = <sigma_-(t) sigma_+(t + theta)> = rho''_ge(t, t + theta)
// with rho'(t, t) = sigma_- rho(t) and rho''(t, t) = rho(t) sigma_-, both
// carried forward in theta by the same free steps and pulses as rho.

#include <span>
#include <vector>

#include "pulsespec/core.hpp"
#include "pulsespec/lindblad.hpp"
#include "pulsespec/parallel.hpp"

namespace pulsespec {

/// sigma_- rho: (ee=0, eg=0, gg=rho_eg, ge=rho_ee).
AuxMatrix init_rho_prime(const DensityMatrix& rho);
/// rho sigma_-: (ee=rho_eg, ge=rho_gg, eg=0, gg=0).
AuxMatrix init_rho_double_prime(const DensityMatrix& rho);

/// One fixed-t row, theta_j = j * dt for j = 0 .. size()-1.
///
/// Values at a pulse crossing are post-pulse. The correlators jump there,
/// so the pre-pulse left limits are kept as well, for the crossings at
/// j = first_crossing + k * stride, k = 0 .. n_crossings()-1.
struct CorrelatorRow {
    std::vector<complex> c1;
    std::vector<complex> c2;
    std::vector<complex> c1_left;
    std::vector<complex> c2_left;
    std::size_t first_crossing = 0;
    std::size_t stride = 1;

    std::size_t size() const { return c1.size(); }
    std::size_t n_crossings() const { return c1_left.size(); }
    std::size_t crossing(std::size_t k) const { return first_crossing + k * stride; }
};

class CorrelatorGrid {
public:
    CorrelatorGrid(std::vector<CorrelatorRow> rows, std::vector<CorrelatorRow> pre_pulse_rows, double dt,
                   std::size_t stride);

    std::size_t n_rows() const { return rows_.size(); }
    double dt() const { return dt_; }
    std::size_t stride() const { return stride_; }
    double t_node(std::size_t i) const { return static_cast<double>(i) * dt_; }
    double theta_node(std::size_t j) const { return static_cast<double>(j) * dt_; }

    /// Row for t_i; it holds the nodes theta_j in [0, T - t_i].
    const CorrelatorRow& row(std::size_t i) const { return rows_.at(i); }
    /// Row for t = n tau - 0 (left limit at pulse n, 1-based).
    const CorrelatorRow& pre_pulse_row(int n) const { return pre_pulse_rows_.at(static_cast<std::size_t>(n - 1)); }
    std::size_t n_pre_pulse_rows() const { return pre_pulse_rows_.size(); }

    complex c1(std::size_t i, std::size_t j) const { return rows_.at(i).c1.at(j); }
    complex c2(std::size_t i, std::size_t j) const { return rows_.at(i).c2.at(j); }

    std::size_t total_samples() const;

private:
    std::vector<CorrelatorRow> rows_;
    std::vector<CorrelatorRow> pre_pulse_rows_;
    double dt_;
    std::size_t stride_;
};

/// Throws GridMismatch if traj was not produced on g.
CorrelatorGrid build_correlator_grids(const DriveParams& p, const TimeGrid& g, std::span<const DensityMatrix> traj,
                                      Execution exec = Execution::Parallel);

}  // namespace pulsespec
