#pragma once

#include <span>
#include <vector>

#include "pulsespec/core.hpp"

namespace pulsespec {

struct SpectrumMetrics {
    double linf_abs = 0.0;
    /// ||q_a - q_b|| / max(||q_a||, ||q_b||)
    double l2_rel = 0.0;
    /// Relative difference of max |q|.
    double peak_amp_rel_diff = 0.0;
};

/// Compares the q arrays. Throws GridMismatch on differing omega grids.
SpectrumMetrics compare_spectra(const Spectrum& a, const Spectrum& b);

struct Peak {
    double omega = 0.0;
    double q = 0.0;
    int sign = 0;
    double prominence = 0.0;
    std::size_t index = 0;
};

/// Interior local maxima of |q| whose topographic prominence exceeds
/// min_prominence, sorted by |omega|.
std::vector<Peak> find_peaks(const Spectrum& s, double min_prominence);
/// 2% of max |q|.
double default_prominence(const Spectrum& s);
/// Peak closest to omega, or nullptr for an empty list.
const Peak* nearest_peak(std::span<const Peak> peaks, double omega);

/// Largest |q| among peaks of harmonic order k = round(|omega| tau / pi), for
/// k = 0 .. k_max; 0 where an order has no peak.
std::vector<double> harmonic_amplitudes(std::span<const Peak> peaks, double tau, int k_max);

/// int max(q, 0) dw / int |q| dw (trapezoid). Throws ZeroSpectrum.
double positive_weight_fraction(const Spectrum& s);

/// Free line normalized to 1 at w = Delta: (Gamma/2)^2 / ((w - Delta)^2 + (Gamma/2)^2).
/// With Gamma = 2 this is 1 / ((w - Delta)^2 + 1).
double lorentzian_reference(double omega, const DriveParams& p);

/// l2 distance between the two curves after scaling each to unit l2 norm.
double shape_distance(std::span<const double> a, std::span<const double> b);

struct LineShape {
    double peak_omega = 0.0;
    double peak_value = 0.0;
    /// Half width at half maximum, from linear interpolation of the
    /// half-maximum crossings on both sides of the maximum of q.
    double hwhm = 0.0;
};
LineShape measure_line(const Spectrum& s);

/// Index of the grid node closest to omega.
std::size_t nearest_index(const Spectrum& s, double omega);

}  // namespace pulsespec
