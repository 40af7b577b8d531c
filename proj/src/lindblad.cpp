#include "pulsespec/lindblad.hpp"

#include <algorithm>
#include <cmath>

namespace pulsespec {

FreeStep::FreeStep(const DriveParams& p, double dt) : dt_(dt) {
    if (!(dt >= 0.0)) throw Error(ErrorCode::NegativeDt, "dt must be >= 0");
    decay_ = std::exp(-p.gamma * dt);
    const double damp = std::exp(-0.5 * p.gamma * dt);
    rot_ge_ = std::polar(damp, p.delta * dt);
    rot_eg_ = std::polar(damp, -p.delta * dt);
}

std::vector<DensityMatrix> propagate_trajectory(const DriveParams& p, const TimeGrid& g) {
    validate_params(p);
    const FreeStep step(p, g.dt());
    std::vector<DensityMatrix> traj(g.n_nodes());
    traj[0] = DensityMatrix::excited();
    for (std::size_t i = 1; i < traj.size(); ++i) {
        DensityMatrix next = step(traj[i - 1]);
        if (g.is_pulse_node(i)) next = apply_pi_pulse(next);
        traj[i] = next;
    }
    return traj;
}

DensityMatrix pre_pulse_state(std::span<const DensityMatrix> traj, const TimeGrid& g, std::size_t i) {
    if (traj.size() != g.n_nodes())
        throw Error(ErrorCode::GridMismatch, "trajectory length does not match the time grid");
    return g.is_pulse_node(i) ? apply_pi_pulse(traj[i]) : traj[i];
}

StateDeviation check_density_invariants(std::span<const DensityMatrix> traj) {
    StateDeviation d;
    for (const auto& m : traj) {
        d.trace = std::max(d.trace, std::abs(m.ee + m.gg - 1.0));
        d.hermiticity = std::max(d.hermiticity, std::abs(m.ge - std::conj(m.eg)));
        d.coherence = std::max({d.coherence, std::abs(m.eg), std::abs(m.ge)});
        d.imag_population = std::max({d.imag_population, std::abs(m.ee.imag()), std::abs(m.gg.imag())});
        const double ee = m.ee.real();
        d.population_excess = std::max({d.population_excess, -ee, ee - 1.0});
    }
    return d;
}

}  // namespace pulsespec
