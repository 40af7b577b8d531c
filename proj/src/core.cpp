#include "pulsespec/core.hpp"

#include <algorithm>
#include <numbers>

namespace pulsespec {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonPositiveTau: return "NonPositiveTau";
        case ErrorCode::NonPositiveGamma: return "NonPositiveGamma";
        case ErrorCode::NonPositiveAmp: return "NonPositiveAmp";
        case ErrorCode::NegativePulseCount: return "NegativePulseCount";
        case ErrorCode::MissingFreeTime: return "MissingFreeTime";
        case ErrorCode::ConflictingFreeTime: return "ConflictingFreeTime";
        case ErrorCode::NonPositiveFreeTime: return "NonPositiveFreeTime";
        case ErrorCode::InvalidGrid: return "InvalidGrid";
        case ErrorCode::NegativeDt: return "NegativeDt";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::EmptyRow: return "EmptyRow";
        case ErrorCode::NegativeM: return "NegativeM";
        case ErrorCode::OutOfRangeT: return "OutOfRangeT";
        case ErrorCode::NegativeTheta: return "NegativeTheta";
        case ErrorCode::OddPulseCount: return "OddPulseCount";
        case ErrorCode::TooFewPulses: return "TooFewPulses";
        case ErrorCode::ZeroSpectrum: return "ZeroSpectrum";
        case ErrorCode::ConfigParse: return "ConfigParse";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

double DriveParams::total_time() const {
    if (n_pulses > 0) return n_pulses * tau;
    return free_time.value_or(0.0);
}

DriveParams validate_params(const DriveParams& p) {
    // Written as !(x > 0) so NaN is rejected too.
    if (!(p.tau > 0.0) || !std::isfinite(p.tau))
        throw Error(ErrorCode::NonPositiveTau, "tau must be > 0, got " + std::to_string(p.tau));
    if (!(p.gamma > 0.0) || !std::isfinite(p.gamma))
        throw Error(ErrorCode::NonPositiveGamma, "gamma must be > 0, got " + std::to_string(p.gamma));
    if (!(p.amp > 0.0) || !std::isfinite(p.amp))
        throw Error(ErrorCode::NonPositiveAmp, "amp must be > 0, got " + std::to_string(p.amp));
    if (!std::isfinite(p.delta))
        throw Error(ErrorCode::InvalidGrid, "delta must be finite");
    if (p.n_pulses < 0)
        throw Error(ErrorCode::NegativePulseCount, "n_pulses must be >= 0");
    if (p.n_pulses == 0 && !p.free_time)
        throw Error(ErrorCode::MissingFreeTime, "n_pulses = 0 requires free_time");
    if (p.n_pulses > 0 && p.free_time)
        throw Error(ErrorCode::ConflictingFreeTime, "free_time is only allowed with n_pulses = 0");
    if (p.free_time && (!(*p.free_time > 0.0) || !std::isfinite(*p.free_time)))
        throw Error(ErrorCode::NonPositiveFreeTime, "free_time must be > 0");
    return p;
}

int default_substeps(double tau) {
    // The 1e-9 slack keeps tau = 0.2 at 20 substeps despite 0.2/0.01 rounding up.
    const double needed = std::ceil(tau / 0.01 - 1e-9);
    return std::max(20, static_cast<int>(needed));
}

TimeGrid::TimeGrid(const DriveParams& p, int substeps)
    : substeps_(substeps), n_intervals_(0), n_pulses_(p.n_pulses), dt_(0.0) {
    validate_params(p);
    if (substeps < 1) throw Error(ErrorCode::InvalidGrid, "substeps must be >= 1");
    if (p.pulsed()) {
        n_intervals_ = p.n_pulses;
        dt_ = p.tau / substeps;
    } else {
        const double T = *p.free_time;
        n_intervals_ = std::max(1, static_cast<int>(std::ceil(T / p.tau - 1e-9)));
        dt_ = T / (static_cast<double>(n_intervals_) * substeps);
    }
}

bool TimeGrid::is_pulse_node(std::size_t i) const {
    if (n_pulses_ == 0 || i == 0) return false;
    const auto stride = static_cast<std::size_t>(substeps_);
    return i % stride == 0 && i / stride <= static_cast<std::size_t>(n_pulses_);
}

int TimeGrid::pulses_between(std::size_t a, std::size_t b) const {
    if (n_pulses_ == 0 || b <= a) return 0;
    const auto stride = static_cast<std::size_t>(substeps_);
    const auto cap = static_cast<std::size_t>(n_pulses_);
    const std::size_t upto_b = std::min(b / stride, cap);
    const std::size_t upto_a = std::min(a / stride, cap);
    return static_cast<int>(upto_b - upto_a);
}

TimeGrid make_time_grid(const DriveParams& p, std::optional<int> substeps) {
    return TimeGrid(p, substeps.value_or(default_substeps(p.tau)));
}

std::size_t FrequencyGrid::size() const {
    if (!(omega_step > 0.0) || !(omega_max > omega_min)) return 0;
    return static_cast<std::size_t>(std::floor((omega_max - omega_min) / omega_step + 1e-9)) + 1;
}

std::vector<double> FrequencyGrid::nodes() const {
    std::vector<double> out(size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = node(j);
    return out;
}

FrequencyGrid validate_frequency_grid(const FrequencyGrid& fg) {
    if (!std::isfinite(fg.omega_min) || !std::isfinite(fg.omega_max) || !(fg.omega_min < fg.omega_max))
        throw Error(ErrorCode::InvalidGrid, "omega_min must be < omega_max");
    if (!(fg.omega_step > 0.0) || !std::isfinite(fg.omega_step))
        throw Error(ErrorCode::InvalidGrid, "omega_step must be > 0");
    if (fg.size() < 3) throw Error(ErrorCode::InvalidGrid, "frequency grid needs at least 3 nodes");
    return fg;
}

FrequencyGrid default_frequency_grid(double tau) {
    if (!(tau > 0.0)) throw Error(ErrorCode::NonPositiveTau, "tau must be > 0");
    const double pi = std::numbers::pi;
    return FrequencyGrid{-3.0 * pi / tau, 3.0 * pi / tau, pi / (tau * 200.0)};
}

std::string_view to_string(Engine e) {
    return e == Engine::Numeric ? "numeric" : "closed_form";
}

Spectrum make_empty_spectrum(const FrequencyGrid& fg, SpectrumMeta meta) {
    Spectrum s;
    s.omegas = fg.nodes();
    const std::size_t n = s.omegas.size();
    s.p1.assign(n, 0.0);
    s.p2.assign(n, 0.0);
    s.q.assign(n, 0.0);
    meta.frequency_grid = fg;
    s.meta = std::move(meta);
    return s;
}

}  // namespace pulsespec
