#include "pulsespec/closed_form.hpp"

#include <algorithm>

namespace pulsespec {

namespace {

// Relative slack for deciding that t sits on a pulse instant.
constexpr double kSnap = 1e-9;

}  // namespace

GammaTriple gammas(double omega, const DriveParams& p) {
    const double half = 0.5 * p.gamma;
    GammaTriple g;
    g.g0 = complex(half, omega - p.delta);
    g.g1 = complex(half, omega);
    g.g2 = complex(-half, omega - p.delta);
    return g;
}

double rho0(int M, const DriveParams& p) {
    if (M < 0) throw Error(ErrorCode::NegativeM, "M must be >= 0");
    const double x = std::exp(-p.gamma * p.tau);
    const double sign = (M % 2 == 0) ? -1.0 : 1.0;  // (-1)^{M+1}
    return (1.0 - sign * std::exp(-(M + 1) * p.gamma * p.tau)) / (1.0 + x);
}

int interval_index(double t, const DriveParams& p) {
    if (!p.pulsed()) return 0;
    const double x = t / p.tau;
    double k = std::floor(x);
    if (x - k > 1.0 - kSnap) k += 1.0;
    return std::clamp(static_cast<int>(k), 0, p.n_pulses);
}

namespace {

void check_time(double t, const DriveParams& p) {
    const double T = p.total_time();
    if (!(t >= 0.0) || t > T * (1.0 + kSnap))
        throw Error(ErrorCode::OutOfRangeT, "t = " + std::to_string(t) + " outside [0, " + std::to_string(T) + "]");
}

}  // namespace

double rho_ee_analytic(double t, const DriveParams& p) {
    check_time(t, p);
    const int M = interval_index(t, p);
    const double since_pulse = std::max(0.0, t - M * p.tau);
    return rho0(M, p) * std::exp(-p.gamma * since_pulse);
}

double rho_gg_analytic(double t, const DriveParams& p) { return 1.0 - rho_ee_analytic(t, p); }

int pulse_separation(double t, double theta, const DriveParams& p) {
    if (!(theta >= 0.0)) throw Error(ErrorCode::NegativeTheta, "theta must be >= 0");
    return interval_index(t + theta, p) - interval_index(t, p);
}

complex f_kernel(int m, double theta, const DriveParams& p) {
    if (!(theta >= 0.0)) throw Error(ErrorCode::NegativeTheta, "theta must be >= 0");
    if (m % 2 != 0) return {0.0, 0.0};
    return std::polar(std::exp(-0.5 * p.gamma * theta), p.delta * (theta - m * p.tau));
}

complex f_analytic(double t, double theta, const DriveParams& p) {
    return f_kernel(pulse_separation(t, theta, p), theta, p);
}

void require_closed_form_pulses(const DriveParams& p) {
    if (p.n_pulses < 2 && p.n_pulses % 2 == 0)
        throw Error(ErrorCode::TooFewPulses, "closed form needs an even N_p >= 2");
    if (p.n_pulses % 2 != 0)
        throw Error(ErrorCode::OddPulseCount,
                    "closed form is derived for even N_p, got " + std::to_string(p.n_pulses));
}

namespace {

// Exponentials shared by P1 and P3 for one frequency.
struct Exponentials {
    GammaTriple g;
    double x;           // e^{-Gamma tau}
    complex e0_minus;   // e^{-gamma_0 tau}
    complex e0_plus;    // e^{+gamma_0 tau}
    complex e1_2plus;   // e^{2 gamma_1 tau}
    complex e1_2minus;  // e^{-2 gamma_1 tau}
    complex e1_np;      // e^{-N_p gamma_1 tau}
    complex e2_plus;    // e^{gamma_2 tau}

    Exponentials(double omega, const DriveParams& p) : g(gammas(omega, p)) {
        const double tau = p.tau;
        x = std::exp(-p.gamma * tau);
        e0_minus = std::exp(-g.g0 * tau);
        e0_plus = std::exp(g.g0 * tau);
        e1_2plus = std::exp(2.0 * g.g1 * tau);
        e1_2minus = std::exp(-2.0 * g.g1 * tau);
        e1_np = std::exp(-static_cast<double>(p.n_pulses) * g.g1 * tau);
        e2_plus = std::exp(g.g2 * tau);
    }
};

}  // namespace

complex p1_closed(double omega, const DriveParams& p) {
    validate_params(p);
    require_closed_form_pulses(p);
    const Exponentials e(omega, p);
    const double Np = p.n_pulses;
    const double x = e.x;

    const complex decay_integral = (e.e2_plus - 1.0) / e.g.g2;
    const complex cross = decay_integral * (1.0 - e.e0_minus) / (e.e1_2plus - 1.0);
    const complex linear = (1.0 - x) / p.gamma - e.e0_minus * decay_integral + cross;
    const complex tail = 2.0 * (e.e1_np - 1.0) / (e.e1_2minus - 1.0) +
                         (x - x * x) * e.e1_np / (e.e1_2minus - std::exp(-2.0 * p.gamma * p.tau));
    return (linear * (Np + x / (1.0 + x)) - cross * tail) / ((1.0 + x) * e.g.g0);
}

complex p3_closed(double omega, const DriveParams& p) {
    validate_params(p);
    require_closed_form_pulses(p);
    const Exponentials e(omega, p);
    const double Np = p.n_pulses;
    const complex g0 = e.g.g0;
    const complex g0sq = g0 * g0;
    const complex bracket = Np - 2.0 * (1.0 - e.e1_np) / (1.0 - e.e1_2minus);
    return Np * p.tau / g0 - Np / g0sq * (1.0 - e.e0_minus) +
           (e.e0_plus + e.e0_minus - 2.0) / (g0sq * (e.e1_2plus - 1.0)) * bracket;
}

Spectrum closed_spectrum(const DriveParams& p, const FrequencyGrid& fg) {
    validate_params(p);
    require_closed_form_pulses(p);
    validate_frequency_grid(fg);
    SpectrumMeta meta;
    meta.params = p;
    meta.engine = Engine::ClosedForm;
    Spectrum s = make_empty_spectrum(fg, meta);
    std::vector<complex> raw1(s.size()), raw2(s.size()), raw3(s.size());
    const double scale = p.scale();
    for (std::size_t j = 0; j < s.size(); ++j) {
        const double omega = s.omegas[j];
        raw1[j] = p1_closed(omega, p);
        raw3[j] = p3_closed(omega, p);
        raw2[j] = raw3[j] - raw1[j];
        s.p1[j] = scale * raw1[j].real();
        s.p2[j] = scale * raw2[j].real();
        s.q[j] = s.p2[j] - s.p1[j];
    }
    s.raw_p1 = std::move(raw1);
    s.raw_p2 = std::move(raw2);
    s.raw_p3 = std::move(raw3);
    return s;
}

}  // namespace pulsespec
