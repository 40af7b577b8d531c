#include "pulsespec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pulsespec {

namespace {

double l2_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t j = 1; j < x.size(); ++j) s += 0.5 * (x[j] - x[j - 1]) * (y[j] + y[j - 1]);
    return s;
}

}  // namespace

SpectrumMetrics compare_spectra(const Spectrum& a, const Spectrum& b) {
    if (a.omegas.size() != b.omegas.size())
        throw Error(ErrorCode::GridMismatch, "spectra have different lengths");
    for (std::size_t j = 0; j < a.omegas.size(); ++j) {
        if (std::abs(a.omegas[j] - b.omegas[j]) > 1e-12 * std::max(1.0, std::abs(a.omegas[j])))
            throw Error(ErrorCode::GridMismatch, "spectra have different omega nodes");
    }
    SpectrumMetrics m;
    std::vector<double> diff(a.q.size());
    for (std::size_t j = 0; j < diff.size(); ++j) {
        diff[j] = a.q[j] - b.q[j];
        m.linf_abs = std::max(m.linf_abs, std::abs(diff[j]));
    }
    const double norm = std::max(l2_norm(a.q), l2_norm(b.q));
    m.l2_rel = norm > 0.0 ? l2_norm(diff) / norm : 0.0;
    const double pa = max_abs(a.q), pb = max_abs(b.q);
    const double pmax = std::max(pa, pb);
    m.peak_amp_rel_diff = pmax > 0.0 ? std::abs(pa - pb) / pmax : 0.0;
    return m;
}

double default_prominence(const Spectrum& s) { return 0.02 * max_abs(s.q); }

std::vector<Peak> find_peaks(const Spectrum& s, double min_prominence) {
    const std::size_t n = s.q.size();
    std::vector<double> mag(n);
    for (std::size_t j = 0; j < n; ++j) mag[j] = std::abs(s.q[j]);

    std::vector<Peak> peaks;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        if (!(mag[j] > mag[j - 1] && mag[j] >= mag[j + 1])) continue;
        // Lowest point between this peak and the nearest higher ground on
        // each side (or the edge).
        double left_min = mag[j];
        for (std::size_t k = j; k-- > 0;) {
            if (mag[k] > mag[j]) break;
            left_min = std::min(left_min, mag[k]);
        }
        double right_min = mag[j];
        for (std::size_t k = j + 1; k < n; ++k) {
            if (mag[k] > mag[j]) break;
            right_min = std::min(right_min, mag[k]);
        }
        const double prominence = mag[j] - std::max(left_min, right_min);
        if (prominence > min_prominence) {
            peaks.push_back({s.omegas[j], s.q[j], s.q[j] < 0.0 ? -1 : 1, prominence, j});
        }
    }
    std::stable_sort(peaks.begin(), peaks.end(),
                     [](const Peak& x, const Peak& y) { return std::abs(x.omega) < std::abs(y.omega); });
    return peaks;
}

const Peak* nearest_peak(std::span<const Peak> peaks, double omega) {
    const Peak* best = nullptr;
    for (const auto& pk : peaks) {
        if (best == nullptr || std::abs(pk.omega - omega) < std::abs(best->omega - omega)) best = &pk;
    }
    return best;
}

std::vector<double> harmonic_amplitudes(std::span<const Peak> peaks, double tau, int k_max) {
    std::vector<double> out(static_cast<std::size_t>(k_max) + 1, 0.0);
    for (const auto& pk : peaks) {
        const auto k = static_cast<long>(std::lround(std::abs(pk.omega) * tau / std::numbers::pi));
        if (k <= k_max) out[static_cast<std::size_t>(k)] = std::max(out[static_cast<std::size_t>(k)], std::abs(pk.q));
    }
    return out;
}

double positive_weight_fraction(const Spectrum& s) {
    std::vector<double> pos(s.q.size()), mag(s.q.size());
    for (std::size_t j = 0; j < s.q.size(); ++j) {
        pos[j] = std::max(s.q[j], 0.0);
        mag[j] = std::abs(s.q[j]);
    }
    const double total = trapezoid(s.omegas, mag);
    if (!(total > 0.0)) throw Error(ErrorCode::ZeroSpectrum, "spectrum has no weight");
    return trapezoid(s.omegas, pos) / total;
}

double lorentzian_reference(double omega, const DriveParams& p) {
    const double half = 0.5 * p.gamma;
    const double d = omega - p.delta;
    return half * half / (d * d + half * half);
}

double shape_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::GridMismatch, "curves have different lengths");
    const double na = l2_norm(a), nb = l2_norm(b);
    if (!(na > 0.0) || !(nb > 0.0)) throw Error(ErrorCode::ZeroSpectrum, "cannot normalize a zero curve");
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] / na - b[j] / nb;
        s += d * d;
    }
    return std::sqrt(s);
}

LineShape measure_line(const Spectrum& s) {
    if (s.q.empty()) throw Error(ErrorCode::ZeroSpectrum, "empty spectrum");
    const auto top = static_cast<std::size_t>(std::max_element(s.q.begin(), s.q.end()) - s.q.begin());
    LineShape line;
    line.peak_omega = s.omegas[top];
    line.peak_value = s.q[top];
    if (!(line.peak_value > 0.0)) throw Error(ErrorCode::ZeroSpectrum, "spectrum has no positive maximum");
    const double half = 0.5 * line.peak_value;

    auto crossing = [&](std::size_t inside, std::size_t outside) {
        const double y0 = s.q[inside], y1 = s.q[outside];
        const double f = (y0 - half) / (y0 - y1);
        return s.omegas[inside] + f * (s.omegas[outside] - s.omegas[inside]);
    };
    std::size_t k = top;
    while (k > 0 && s.q[k - 1] > half) --k;
    const double left = k > 0 ? crossing(k, k - 1) : s.omegas.front();
    k = top;
    while (k + 1 < s.q.size() && s.q[k + 1] > half) ++k;
    const double right = k + 1 < s.q.size() ? crossing(k, k + 1) : s.omegas.back();
    line.hwhm = 0.5 * (right - left);
    return line;
}

std::size_t nearest_index(const Spectrum& s, double omega) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < s.omegas.size(); ++j) {
        if (std::abs(s.omegas[j] - omega) < std::abs(s.omegas[best] - omega)) best = j;
    }
    return best;
}

}  // namespace pulsespec
