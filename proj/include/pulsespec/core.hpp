#pragma once

// Parameter records, time/frequency grids and the spectrum container shared
// by the numeric and closed-form engines. Units are reduced so that the
// free spontaneous emission rate is Gamma = 2 unless stated otherwise.

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pulsespec {

using complex = std::complex<double>;

enum class ErrorCode {
    NonPositiveTau,
    NonPositiveGamma,
    NonPositiveAmp,
    NegativePulseCount,
    MissingFreeTime,
    ConflictingFreeTime,
    NonPositiveFreeTime,
    InvalidGrid,
    NegativeDt,
    GridMismatch,
    EmptyRow,
    NegativeM,
    OutOfRangeT,
    NegativeTheta,
    OddPulseCount,
    TooFewPulses,
    ZeroSpectrum,
    ConfigParse,
    Io,
};

std::string_view to_string(ErrorCode code);

/// Every recoverable failure in the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline const double kDefaultGamma = 2.0;
// 2 A^2 = 1
inline const double kDefaultAmp = 1.0 / std::sqrt(2.0);

struct DriveParams {
    double delta = 0.0;
    double gamma = kDefaultGamma;
    double tau = 0.0;
    int n_pulses = 0;
    double amp = kDefaultAmp;
    // Only meaningful without pulses: total protocol time T.
    std::optional<double> free_time;

    /// T = N_p * tau with pulses, free_time otherwise.
    double total_time() const;
    /// 2 A^2, the overall scale of P1, P2 and Q.
    double scale() const { return 2.0 * amp * amp; }
    bool pulsed() const { return n_pulses > 0; }

    friend bool operator==(const DriveParams&, const DriveParams&) = default;
};

/// Returns p unchanged when every invariant holds; throws Error otherwise.
DriveParams validate_params(const DriveParams& p);

/// Uniform node lattice t_i = i * dt, i = 0 .. n_nodes()-1.
///
/// With pulses dt = tau / substeps, so pulse n sits exactly on node
/// n * substeps. Without pulses the interval count is ceil(T / tau) and dt
/// is chosen so the last node lands on T.
class TimeGrid {
public:
    TimeGrid(const DriveParams& p, int substeps);

    int substeps() const { return substeps_; }
    int n_intervals() const { return n_intervals_; }
    int n_pulses() const { return n_pulses_; }
    double dt() const { return dt_; }
    std::size_t n_nodes() const { return static_cast<std::size_t>(n_intervals_) * substeps_ + 1; }
    /// Index of the last node, N_t.
    std::size_t last() const { return n_nodes() - 1; }
    double time(std::size_t i) const { return static_cast<double>(i) * dt_; }

    /// True if a pulse is applied at node i (post-pulse value is stored there).
    bool is_pulse_node(std::size_t i) const;
    /// Number of pulses at nodes k with a < k <= b.
    int pulses_between(std::size_t a, std::size_t b) const;
    /// Node index of pulse n (1-based).
    std::size_t pulse_node(int n) const { return static_cast<std::size_t>(n) * substeps_; }

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
    int substeps_;
    int n_intervals_;
    int n_pulses_;
    double dt_;
};

/// max(20, ceil(tau / 0.01)) so that dt <= 0.01.
int default_substeps(double tau);
TimeGrid make_time_grid(const DriveParams& p, std::optional<int> substeps = std::nullopt);

struct FrequencyGrid {
    double omega_min = 0.0;
    double omega_max = 0.0;
    double omega_step = 0.0;

    std::size_t size() const;
    double node(std::size_t j) const { return omega_min + static_cast<double>(j) * omega_step; }
    std::vector<double> nodes() const;

    friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;
};

/// Throws InvalidGrid unless omega_min < omega_max, step > 0 and >= 3 nodes.
FrequencyGrid validate_frequency_grid(const FrequencyGrid& fg);
/// [-3 pi/tau, 3 pi/tau] with step pi / (200 tau): 1201 nodes.
FrequencyGrid default_frequency_grid(double tau);

enum class Engine { Numeric, ClosedForm };
std::string_view to_string(Engine e);

struct SpectrumMeta {
    DriveParams params;
    FrequencyGrid frequency_grid;
    Engine engine = Engine::ClosedForm;
    // Numeric engine only.
    std::optional<int> substeps;
    std::optional<double> dt;
};

struct Spectrum {
    std::vector<double> omegas;
    std::vector<double> p1;
    std::vector<double> p2;
    std::vector<double> q;
    std::optional<std::vector<complex>> raw_p1;
    std::optional<std::vector<complex>> raw_p2;
    std::optional<std::vector<complex>> raw_p3;
    SpectrumMeta meta;

    std::size_t size() const { return omegas.size(); }
    double step() const { return meta.frequency_grid.omega_step; }
};

/// Allocates arrays sized to the frequency grid, all zero.
Spectrum make_empty_spectrum(const FrequencyGrid& fg, SpectrumMeta meta);

}  // namespace pulsespec
