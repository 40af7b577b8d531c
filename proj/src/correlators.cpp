#include "pulsespec/correlators.hpp"

#include <omp.h>

namespace pulsespec {

AuxMatrix init_rho_prime(const DensityMatrix& rho) {
    AuxMatrix a;
    a.gg = rho.eg;
    a.ge = rho.ee;
    return a;
}

AuxMatrix init_rho_double_prime(const DensityMatrix& rho) {
    AuxMatrix a;
    a.ee = rho.eg;
    a.ge = rho.gg;
    return a;
}

CorrelatorGrid::CorrelatorGrid(std::vector<CorrelatorRow> rows, std::vector<CorrelatorRow> pre_pulse_rows, double dt,
                               std::size_t stride)
    : rows_(std::move(rows)), pre_pulse_rows_(std::move(pre_pulse_rows)), dt_(dt), stride_(stride) {}

std::size_t CorrelatorGrid::total_samples() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    for (const auto& r : pre_pulse_rows_) n += r.size();
    return n;
}

namespace {

// Marches rho' and rho'' from absolute node `start` to the last node.
// With `pulse_at_start` the row describes t = start*dt - 0, so the pulse at
// the starting node acts before the first sample.
CorrelatorRow march_row(const DensityMatrix& rho, std::size_t start, bool pulse_at_start, const TimeGrid& g,
                        const FreeStep& step) {
    AuxMatrix a = init_rho_prime(rho);
    AuxMatrix b = init_rho_double_prime(rho);
    if (pulse_at_start) {
        a = apply_pi_pulse(a);
        b = apply_pi_pulse(b);
    }
    const std::size_t len = g.last() - start + 1;
    CorrelatorRow row;
    row.stride = static_cast<std::size_t>(g.substeps());
    row.first_crossing = len;
    row.c1.resize(len);
    row.c2.resize(len);
    row.c1[0] = a.ge;
    row.c2[0] = b.ge;
    for (std::size_t j = 1; j < len; ++j) {
        a = step(a);
        b = step(b);
        if (g.is_pulse_node(start + j)) {
            if (row.c1_left.empty()) row.first_crossing = j;
            row.c1_left.push_back(a.ge);
            row.c2_left.push_back(b.ge);
            a = apply_pi_pulse(a);
            b = apply_pi_pulse(b);
        }
        row.c1[j] = a.ge;
        row.c2[j] = b.ge;
    }
    return row;
}

}  // namespace

CorrelatorGrid build_correlator_grids(const DriveParams& p, const TimeGrid& g, std::span<const DensityMatrix> traj,
                                      Execution exec) {
    if (traj.size() != g.n_nodes())
        throw Error(ErrorCode::GridMismatch, "trajectory has " + std::to_string(traj.size()) +
                                                 " nodes, time grid has " + std::to_string(g.n_nodes()));
    const FreeStep step(p, g.dt());
    const std::size_t n_rows = g.n_nodes();
    const std::size_t n_pre = static_cast<std::size_t>(g.n_pulses());
    std::vector<CorrelatorRow> rows(n_rows);
    std::vector<CorrelatorRow> pre(n_pre);

    // Rows are independent; each is written by exactly one iteration.
    const auto total = static_cast<long long>(n_rows + n_pre);
    auto build = [&](long long k) {
        if (k < static_cast<long long>(n_rows)) {
            const auto i = static_cast<std::size_t>(k);
            rows[i] = march_row(traj[i], i, false, g, step);
        } else {
            const auto n = static_cast<std::size_t>(k) - n_rows + 1;
            const std::size_t node = g.pulse_node(static_cast<int>(n));
            pre[n - 1] = march_row(pre_pulse_state(traj, g, node), node, true, g, step);
        }
    };
    if (exec == Execution::Serial) {
        for (long long k = 0; k < total; ++k) build(k);
    } else {
#pragma omp parallel for schedule(dynamic, 8) num_threads(worker_count())
        for (long long k = 0; k < total; ++k) build(k);
    }
    return CorrelatorGrid(std::move(rows), std::move(pre), g.dt(), static_cast<std::size_t>(g.substeps()));
}

}  // namespace pulsespec
