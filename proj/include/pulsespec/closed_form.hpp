#pragma once

// Analytic long-time solution for an even number of equally spaced
// instantaneous pi-pulses starting from the excited state.
//
// Between pulses rho_ee decays and every pulse swaps the populations, so
// on the interval after the M-th pulse
//   rho_ee(t) = rho0(M) exp(-Gamma (t - M tau)),
//   rho0(M)   = [1 - (-1)^{M+1} e^{-(M+1) Gamma tau}] / (1 + e^{-Gamma tau}).
// The coherences stay zero, and both correlators reduce to
// C1 = f(t, theta) rho_ee(t), C2 = f(t, theta) rho_gg(t), where the kernel f
// vanishes across an odd number m of pulses and otherwise equals
// exp(-Gamma theta / 2) exp(i Delta (theta - m tau)).

#include "pulsespec/core.hpp"

namespace pulsespec {

/// gamma_0 = i(w - Delta) + Gamma/2, gamma_1 = i w + Gamma/2,
/// gamma_2 = gamma_0 - Gamma.
struct GammaTriple {
    complex g0;
    complex g1;
    complex g2;
};

GammaTriple gammas(double omega, const DriveParams& p);

/// Excited population right after pulse M (M = 0: the initial state).
double rho0(int M, const DriveParams& p);

/// Number of pulses in (0, t]. A time on a pulse instant counts that pulse,
/// matching the post-pulse storage of the trajectory.
int interval_index(double t, const DriveParams& p);

double rho_ee_analytic(double t, const DriveParams& p);
double rho_gg_analytic(double t, const DriveParams& p);

/// Pulses strictly after t and up to and including t + theta.
int pulse_separation(double t, double theta, const DriveParams& p);

/// Kernel value for a known separation count m.
complex f_kernel(int m, double theta, const DriveParams& p);
complex f_analytic(double t, double theta, const DriveParams& p);

/// Complex emission integral in the large-N_p limit (requires even N_p >= 2).
complex p1_closed(double omega, const DriveParams& p);
/// Integral of the bare kernel, P3 = P1 + P2 (requires even N_p >= 2).
complex p3_closed(double omega, const DriveParams& p);

/// p1 = 2A^2 Re P1, p2 = 2A^2 Re(P3 - P1), q = p2 - p1.
Spectrum closed_spectrum(const DriveParams& p, const FrequencyGrid& fg);

/// Throws OddPulseCount / TooFewPulses unless N_p is even and >= 2.
void require_closed_form_pulses(const DriveParams& p);

}  // namespace pulsespec
