#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "pulsespec/closed_form.hpp"
#include "pulsespec/lindblad.hpp"

using namespace pulsespec;

namespace {

DriveParams params(double delta, double tau, int np) {
    DriveParams p;
    p.delta = delta;
    p.tau = tau;
    p.n_pulses = np;
    return p;
}

double l2_rel_complex(const std::vector<complex>& a, const std::vector<complex>& b) {
    double num = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        num += std::norm(a[j] - b[j]);
        na += std::norm(a[j]);
        nb += std::norm(b[j]);
    }
    return std::sqrt(num / std::max(na, nb));
}

}  // namespace

TEST_CASE("gamma parameters") {
    const auto p = params(3.0, 0.2, 8);
    auto g = gammas(3.0, p);
    CHECK(g.g0 == complex(1.0, 0.0));
    g = gammas(0.0, p);
    CHECK(g.g1 == complex(1.0, 0.0));
    CHECK(g.g0 == complex(1.0, -3.0));
    CHECK(g.g2 == complex(-1.0, -3.0));
    CHECK(g.g2 - g.g0 + p.gamma == complex(0.0));
}

TEST_CASE("rho0 values") {
    const auto p = params(3.0, 0.2, 8);
    const double x = std::exp(-0.4);
    CHECK(rho0(0, p) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rho0(1, p) == doctest::Approx(0.329680).epsilon(1e-6));
    CHECK(rho0(200, p) == doctest::Approx(1.0 / (1.0 + x)).epsilon(1e-14));
    CHECK_THROWS_AS(rho0(-1, p), Error);

    // Post-pulse population recursion: ee_M = 1 - ee_{M-1} x.
    double ee = 1.0;
    for (int M = 0; M < 30; ++M) {
        CHECK(rho0(M, p) == doctest::Approx(ee).epsilon(1e-13));
        CHECK(rho0(M, p) > 0.0);
        CHECK(rho0(M, p) <= 1.0);
        ee = 1.0 - ee * x;
    }
}

TEST_CASE("interval index snaps pulse instants to the later interval") {
    const auto p = params(3.0, 0.2, 8);
    CHECK(interval_index(0.0, p) == 0);
    CHECK(interval_index(0.2, p) == 1);
    CHECK(interval_index(0.6, p) == 3);  // 0.6 / 0.2 rounds to 2.9999999999999996
    CHECK(interval_index(0.199, p) == 0);
    CHECK(interval_index(1.6, p) == 8);
    CHECK(interval_index(1.0 * 3 * 0.2 + 1e-3, p) == 3);
}

TEST_CASE("rho_gg_analytic") {
    const auto p = params(3.0, 0.2, 8);
    CHECK(rho_gg_analytic(0.0, p) == 0.0);
    // Just inside the first interval, outside the pulse-instant snap.
    CHECK(rho_gg_analytic(0.2 * (1.0 - 1e-7), p) == doctest::Approx(1.0 - std::exp(-0.4)).epsilon(1e-6));
    CHECK(rho_gg_analytic(0.2, p) == doctest::Approx(std::exp(-0.4)).epsilon(1e-12));
    CHECK_THROWS_AS(rho_gg_analytic(-0.1, p), Error);
    CHECK_THROWS_AS(rho_gg_analytic(1.7, p), Error);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, p.total_time());
    for (int k = 0; k < 500; ++k) {
        const double gg = rho_gg_analytic(u(rng), p);
        CHECK(gg >= 0.0);
        CHECK(gg <= 1.0);
    }
}

TEST_CASE("rho_gg_analytic matches the trajectory on every node") {
    for (double tau : {0.1, 0.2, 0.45}) {
        const auto p = params(2.0, tau, 10);
        const TimeGrid g = make_time_grid(p);
        const auto traj = propagate_trajectory(p, g);
        double err = 0.0;
        for (std::size_t i = 0; i < traj.size(); ++i)
            err = std::max(err, std::abs(traj[i].gg.real() - rho_gg_analytic(g.time(i), p)));
        CHECK(err <= 1e-10);
    }
}

TEST_CASE("f kernel branches") {
    const auto p = params(3.0, 0.2, 8);
    CHECK(f_analytic(0.37, 0.0, p) == complex(1.0, 0.0));
    const complex same = f_analytic(0.05, 0.1, p);
    CHECK(std::abs(same - std::exp(-0.1) * std::polar(1.0, 0.3)) < 1e-15);
    CHECK(f_analytic(0.15, 0.1, p) == complex(0.0));  // one pulse
    CHECK(pulse_separation(0.05, 0.4, p) == 2);
    const complex two = f_analytic(0.05, 0.4, p);
    CHECK(std::abs(two - std::exp(-0.4) * std::polar(1.0, 3.0 * (0.4 - 0.4))) < 1e-15);
    CHECK(f_kernel(3, 0.5, p) == complex(0.0));
    CHECK_THROWS_AS(f_analytic(0.1, -0.01, p), Error);
}

TEST_CASE("f phase confinement and magnitude") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ud(0.0, 6.0), ut(0.1, 0.5), u01(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int np = 2 * (1 + static_cast<int>(u01(rng) * 12));
        const auto p = params(ud(rng), ut(rng), np);
        const double T = p.total_time();
        for (int k = 0; k < 200; ++k) {
            const double t = u01(rng) * T;
            const double theta = u01(rng) * (T - t);
            const complex f = f_analytic(t, theta, p);
            const double mag = std::abs(f);
            if (mag == 0.0) continue;
            CHECK(mag == doctest::Approx(std::exp(-0.5 * p.gamma * theta)).epsilon(1e-14));
            CHECK(std::abs(std::arg(f)) <= p.delta * p.tau * (1.0 + 1e-9) + 1e-12);
        }
    }
}

TEST_CASE("closed form needs an even pulse count") {
    const FrequencyGrid fg{-5.0, 5.0, 1.0};
    try {
        closed_spectrum(params(3.0, 0.2, 7), fg);
        FAIL("expected OddPulseCount");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OddPulseCount);
    }
    auto p = params(3.0, 0.2, 0);
    p.free_time = 5.0;
    try {
        p1_closed(0.0, p);
        FAIL("expected TooFewPulses");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooFewPulses);
    }
}

TEST_CASE("closed spectrum bookkeeping") {
    const auto p = params(3.0, 0.2, 8);
    const Spectrum s = closed_spectrum(p, default_frequency_grid(p.tau));
    CHECK(s.meta.engine == Engine::ClosedForm);
    REQUIRE(s.raw_p3);
    for (std::size_t j = 0; j < s.size(); ++j) {
        CHECK(std::abs(s.p1[j] + s.p2[j] - p.scale() * (*s.raw_p3)[j].real()) <= 1e-12 * std::max(1.0, std::abs(s.p2[j])));
        const double q = p.scale() * ((*s.raw_p3)[j] - 2.0 * (*s.raw_p1)[j]).real();
        CHECK(s.q[j] == doctest::Approx(q).epsilon(1e-12));
    }
}

TEST_CASE("denominators stay away from zero") {
    for (double tau : {0.1, 0.2, 0.5}) {
        const auto p = params(3.0, tau, 8);
        const double bound = std::exp(p.gamma * tau) - 1.0;
        for (double w : default_frequency_grid(tau).nodes()) {
            const complex g1 = gammas(w, p).g1;
            CHECK(std::abs(std::exp(2.0 * g1 * tau) - 1.0) >= bound * (1.0 - 1e-12));
        }
    }
    const auto p = params(0.0, 0.2, 8);
    CHECK(std::isfinite(std::abs(p1_closed(0.0, p))));
    CHECK(std::isfinite(std::abs(p3_closed(0.0, p))));
}

TEST_CASE("large-frequency tail is N_p tau / gamma_0") {
    const auto p = params(3.0, 0.2, 20);
    // Corrections fall off like 1 / (tau |gamma_0|).
    auto rel = [&](double w) {
        const complex lead = p.n_pulses * p.tau / gammas(w, p).g0;
        return std::abs(p3_closed(w, p) - lead) / std::abs(lead);
    };
    for (double w : {-5000.0, 4000.0}) CHECK(rel(w) < 0.01);
    CHECK(rel(5000.0) < rel(500.0));
}

TEST_CASE("closed forms are affine in N_p at long times") {
    const double w = 1.3;
    auto slope = [&](int np, auto fn) {
        return 0.5 * (fn(w, params(3.0, 0.2, np + 2)) - fn(w, params(3.0, 0.2, np)));
    };
    for (auto fn : {p1_closed, p3_closed}) {
        const complex far = slope(100, fn);
        CHECK(std::abs(slope(60, fn) - far) < 1e-4 * std::abs(far));
        CHECK(std::abs(slope(60, fn) - far) < std::abs(slope(4, fn) - far) + 1e-15);
    }
}

TEST_CASE("closed forms match the brute-force quadrature oracle") {
    std::vector<double> omegas;
    const FrequencyGrid fg = default_frequency_grid(0.2);
    for (std::size_t j = 0; j < fg.size(); j += 12) omegas.push_back(fg.node(j));
    omegas.push_back(0.0);

    SUBCASE("P3 is exact for even N_p") {
        const auto p = params(3.0, 0.2, 8);
        const auto ref = oracle::quadrature(p, omegas);
        std::vector<complex> p3(omegas.size());
        for (std::size_t j = 0; j < omegas.size(); ++j) p3[j] = p3_closed(omegas[j], p);
        CHECK(l2_rel_complex(p3, ref.p3) < 1e-4);
    }
    SUBCASE("P1 and P3 at N_p = 20") {
        const auto p = params(3.0, 0.2, 20);
        const auto ref = oracle::quadrature(p, omegas);
        std::vector<complex> p1(omegas.size()), p3(omegas.size());
        for (std::size_t j = 0; j < omegas.size(); ++j) {
            p1[j] = p1_closed(omegas[j], p);
            p3[j] = p3_closed(omegas[j], p);
        }
        CHECK(l2_rel_complex(p1, ref.p1) < 0.01);
        CHECK(l2_rel_complex(p3, ref.p3) < 0.01);
        // omega = 0 pointwise
        CHECK(std::abs(p1.back() - ref.p1.back()) < 0.01 * std::abs(ref.p1.back()));
        CHECK(std::abs(p3.back() - ref.p3.back()) < 0.01 * std::abs(ref.p3.back()));
    }
}
