#pragma once

// Between-pulse propagation of 2x2 matrices under the optical Bloch
// equations with the drive off, and the instantaneous pi-pulse map.
//
// Between pulses the four entries decouple:
//   d/dt ee = -Gamma ee           d/dt gg = +Gamma ee
//   d/dt ge = (i Delta - Gamma/2) ge
//   d/dt eg = (-i Delta - Gamma/2) eg
// so every step is applied as its exact exponential map.

#include <concepts>
#include <span>
#include <vector>

#include "pulsespec/core.hpp"

namespace pulsespec {

struct Matrix2 {
    complex ee{0.0, 0.0};
    complex eg{0.0, 0.0};
    complex ge{0.0, 0.0};
    complex gg{0.0, 0.0};

    friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

/// Physical state: unit trace, hermitian, real populations.
struct DensityMatrix : Matrix2 {
    static DensityMatrix excited() {
        DensityMatrix m;
        m.ee = 1.0;
        return m;
    }
    static DensityMatrix ground() {
        DensityMatrix m;
        m.gg = 1.0;
        return m;
    }
};

/// Auxiliary matrix used for two-time correlators. Not a density matrix:
/// none of the trace or hermiticity constraints apply.
struct AuxMatrix : Matrix2 {};

template <typename M>
concept TwoByTwo = std::same_as<M, DensityMatrix> || std::same_as<M, AuxMatrix>;

/// Precomputed exact map for a fixed step dt. Reused across the inner loops
/// of the trajectory and correlator builders.
class FreeStep {
public:
    FreeStep(const DriveParams& p, double dt);

    double dt() const { return dt_; }

    template <TwoByTwo M>
    M operator()(const M& m) const {
        M out;
        out.ee = m.ee * decay_;
        out.gg = m.gg + m.ee * (1.0 - decay_);
        out.ge = m.ge * rot_ge_;
        out.eg = m.eg * rot_eg_;
        return out;
    }

private:
    double dt_;
    double decay_;
    complex rot_ge_;
    complex rot_eg_;
};

/// Exact free evolution over dt >= 0 (throws NegativeDt).
template <TwoByTwo M>
M free_evolve(const M& m, double dt, const DriveParams& p) {
    return FreeStep(p, dt)(m);
}

/// sigma_x m sigma_x: swaps ee <-> gg and eg <-> ge. An involution.
template <TwoByTwo M>
M apply_pi_pulse(const M& m) {
    M out;
    out.ee = m.gg;
    out.gg = m.ee;
    out.eg = m.ge;
    out.ge = m.eg;
    return out;
}

/// State at every node of g, starting from the excited state. A pulse node
/// holds the post-pulse matrix; see pre_pulse_state for the other side.
std::vector<DensityMatrix> propagate_trajectory(const DriveParams& p, const TimeGrid& g);

/// Left limit rho(t_i - 0). Equals traj[i] except at pulse nodes.
DensityMatrix pre_pulse_state(std::span<const DensityMatrix> traj, const TimeGrid& g, std::size_t i);

struct StateDeviation {
    double trace = 0.0;        // max |ee + gg - 1|
    double hermiticity = 0.0;  // max |ge - conj(eg)|
    double coherence = 0.0;    // max(|eg|, |ge|)
    double imag_population = 0.0;
    double population_excess = 0.0;  // how far Re(ee) strays outside [0, 1]
};

/// Worst-case invariant deviations over a trajectory.
StateDeviation check_density_invariants(std::span<const DensityMatrix> traj);

}  // namespace pulsespec
