#include "pulsespec/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "pulsespec/closed_form.hpp"
#include "pulsespec/spectrum_numeric.hpp"

namespace pulsespec {

bool InvariantReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.passed; });
}

namespace {

InvariantCheck bound(std::string name, double value, double tol) {
    return {std::move(name), value, tol, value <= tol};
}

double l2_rel(std::span<const double> a, std::span<const double> b) {
    double num = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        num += (a[j] - b[j]) * (a[j] - b[j]);
        na += a[j] * a[j];
        nb += b[j] * b[j];
    }
    const double den = std::sqrt(std::max(na, nb));
    return den > 0.0 ? std::sqrt(num) / den : 0.0;
}

}  // namespace

InvariantReport run_invariant_suite(const DriveParams& p, const TimeGrid& g, std::span<const DensityMatrix> traj,
                                    const CorrelatorGrid& cg, const Spectrum* numeric, const Spectrum* closed) {
    InvariantReport report;
    const StateDeviation dev = check_density_invariants(traj);
    report.checks.push_back(bound("trajectory_trace", dev.trace, tolerance::kTrajectory));
    report.checks.push_back(bound("trajectory_hermiticity", dev.hermiticity, tolerance::kTrajectory));
    report.checks.push_back(bound("trajectory_coherence", dev.coherence, tolerance::kTrajectory));

    double gg_err = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i)
        gg_err = std::max(gg_err, std::abs(traj[i].gg.real() - rho_gg_analytic(g.time(i), p)));
    report.checks.push_back(bound("rho_gg_vs_analytic", gg_err, tolerance::kRhoGg));

    double fact_err = 0.0;
    double max_phase = 0.0;
    for (std::size_t i = 0; i < cg.n_rows(); ++i) {
        const double t = cg.t_node(i);
        const double ee = rho_ee_analytic(t, p);
        const double gg = 1.0 - ee;
        const CorrelatorRow& row = cg.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            const complex f = f_analytic(t, cg.theta_node(j), p);
            fact_err = std::max(fact_err, std::abs(row.c1[j] - f * ee));
            fact_err = std::max(fact_err, std::abs(row.c2[j] - f * gg));
            if (std::abs(f) > 0.0) max_phase = std::max(max_phase, std::abs(std::arg(f)));
        }
    }
    report.checks.push_back(bound("correlator_factorization", fact_err, tolerance::kFactorization));
    // Without pulses the phase grows freely with theta.
    if (p.pulsed()) {
        const double limit = std::abs(p.delta) * p.tau;
        report.checks.push_back(
            bound("f_phase_confinement", max_phase, limit * (1.0 + tolerance::kPhaseSlack) + 1e-12));
    }

    if (closed != nullptr && closed->raw_p3) {
        double err = 0.0;
        for (std::size_t j = 0; j < closed->size(); ++j) {
            const complex p3 = (*closed->raw_p3)[j];
            const complex sum = (*closed->raw_p1)[j] + (*closed->raw_p2)[j];
            err = std::max(err, std::abs(sum - p3) / std::max(1.0, std::abs(p3)));
        }
        report.checks.push_back(bound("p1_plus_p2_equals_p3_closed", err, tolerance::kClosedIdentity));
    }
    if (numeric != nullptr && closed != nullptr && numeric->size() == closed->size()) {
        std::vector<double> a(numeric->size()), b(closed->size());
        for (std::size_t j = 0; j < a.size(); ++j) {
            a[j] = numeric->p1[j] + numeric->p2[j];
            b[j] = closed->p1[j] + closed->p2[j];
        }
        report.checks.push_back(bound("p3_numeric_vs_closed", l2_rel(a, b), tolerance::kNumericVsClosed));
    }
    return report;
}

InvariantReport run_invariant_suite(const DriveParams& p, std::optional<int> substeps, const FrequencyGrid& fg) {
    const TimeGrid g = make_time_grid(p, substeps);
    const auto traj = propagate_trajectory(p, g);
    const auto cg = build_correlator_grids(p, g, traj);
    const Spectrum numeric = compute_numeric_spectrum(p, g, cg, fg);
    if (p.n_pulses >= 2 && p.n_pulses % 2 == 0) {
        const Spectrum closed = closed_spectrum(p, fg);
        return run_invariant_suite(p, g, traj, cg, &numeric, &closed);
    }
    return run_invariant_suite(p, g, traj, cg, &numeric, nullptr);
}

}  // namespace pulsespec
