#include "pulsespec/spectrum_numeric.hpp"

#include <omp.h>

#include "pulsespec/lindblad.hpp"

namespace pulsespec {

complex fourier_over_theta(std::span<const complex> row, double dt, double omega) {
    if (row.size() < 2) throw Error(ErrorCode::EmptyRow, "trapezoid needs at least two samples");
    const std::size_t last = row.size() - 1;
    complex sum = 0.5 * (row[0] + row[last] * std::polar(1.0, -omega * static_cast<double>(last) * dt));
    for (std::size_t j = 1; j < last; ++j) sum += row[j] * std::polar(1.0, -omega * static_cast<double>(j) * dt);
    return sum * dt;
}

RowTransform fourier_over_row(const CorrelatorRow& row, double dt, double omega) {
    const std::size_t len = row.size();
    if (len < 2) return {};
    auto phase = [&](std::size_t j) { return std::polar(1.0, -omega * static_cast<double>(j) * dt); };
    const std::size_t last = len - 1;
    RowTransform out;
    out.c1 = 0.5 * (row.c1[0] + row.c1[last] * phase(last));
    out.c2 = 0.5 * (row.c2[0] + row.c2[last] * phase(last));
    for (std::size_t j = 1; j < last; ++j) {
        const complex z = phase(j);
        out.c1 += row.c1[j] * z;
        out.c2 += row.c2[j] * z;
    }
    // Interior crossings carry weight 1/2 on each side; the last node only
    // sees its left limit.
    for (std::size_t k = 0; k < row.n_crossings(); ++k) {
        const std::size_t j = row.crossing(k);
        const complex z = phase(j);
        out.c1 += 0.5 * (row.c1_left[k] - row.c1[j]) * z;
        out.c2 += 0.5 * (row.c2_left[k] - row.c2[j]) * z;
    }
    out.c1 *= dt;
    out.c2 *= dt;
    return out;
}

namespace {

void check_consistent(const DriveParams& p, const TimeGrid& g, const CorrelatorGrid& cg) {
    validate_params(p);
    if (cg.n_rows() != g.n_nodes() || cg.n_pre_pulse_rows() != static_cast<std::size_t>(g.n_pulses()) ||
        cg.dt() != g.dt())
        throw Error(ErrorCode::GridMismatch, "correlator grid was not built on this time grid");
}

Spectrum finish(const DriveParams& p, const TimeGrid& g, const FrequencyGrid& fg, std::vector<complex> raw1,
                std::vector<complex> raw2) {
    SpectrumMeta meta;
    meta.params = p;
    meta.engine = Engine::Numeric;
    meta.substeps = g.substeps();
    meta.dt = g.dt();
    Spectrum s = make_empty_spectrum(fg, meta);
    const double scale = p.scale();
    for (std::size_t j = 0; j < s.size(); ++j) {
        s.p1[j] = scale * raw1[j].real();
        s.p2[j] = scale * raw2[j].real();
        s.q[j] = s.p2[j] - s.p1[j];
    }
    s.raw_p1 = std::move(raw1);
    s.raw_p2 = std::move(raw2);
    return s;
}

// Outer trapezoid over t, piecewise between pulses: the right end of an
// interval that closes on a pulse uses the pre-pulse row.
template <typename PreFn>
RowTransform integrate_over_t(const TimeGrid& g, std::span<const RowTransform> rows, PreFn&& pre_row) {
    RowTransform total;
    const std::size_t last = g.last();
    for (std::size_t k = 0; k < last; ++k) {
        RowTransform right;
        if (g.is_pulse_node(k + 1)) {
            right = pre_row(static_cast<int>((k + 1) / static_cast<std::size_t>(g.substeps())));
        } else {
            right = rows[k + 1];
        }
        total.c1 += 0.5 * (rows[k].c1 + right.c1);
        total.c2 += 0.5 * (rows[k].c2 + right.c2);
    }
    total.c1 *= g.dt();
    total.c2 *= g.dt();
    return total;
}

// Hot loop of the parallel kernel. `phase` holds e^{-i w j dt} as
// interleaved (re, im) pairs.
RowTransform row_kernel(const CorrelatorRow& row, const double* phase, double dt) {
    const std::size_t len = row.size();
    if (len < 2) return {};
    const std::size_t last = len - 1;
    const auto* a = reinterpret_cast<const double*>(row.c1.data());
    const auto* b = reinterpret_cast<const double*>(row.c2.data());

    double r1 = 0.0, i1 = 0.0, r2 = 0.0, i2 = 0.0;
#pragma omp simd reduction(+ : r1, i1, r2, i2)
    for (std::size_t j = 1; j < last; ++j) {
        const double pr = phase[2 * j];
        const double pi = phase[2 * j + 1];
        const double ar = a[2 * j], ai = a[2 * j + 1];
        const double br = b[2 * j], bi = b[2 * j + 1];
        r1 += ar * pr - ai * pi;
        i1 += ar * pi + ai * pr;
        r2 += br * pr - bi * pi;
        i2 += br * pi + bi * pr;
    }
    auto add_weighted = [&](double w, complex c, std::size_t j, double& re, double& im) {
        const double pr = phase[2 * j];
        const double pi = phase[2 * j + 1];
        re += w * (c.real() * pr - c.imag() * pi);
        im += w * (c.real() * pi + c.imag() * pr);
    };
    add_weighted(0.5, row.c1[0], 0, r1, i1);
    add_weighted(0.5, row.c2[0], 0, r2, i2);
    add_weighted(0.5, row.c1[last], last, r1, i1);
    add_weighted(0.5, row.c2[last], last, r2, i2);
    for (std::size_t k = 0; k < row.n_crossings(); ++k) {
        const std::size_t j = row.crossing(k);
        add_weighted(0.5, row.c1_left[k] - row.c1[j], j, r1, i1);
        add_weighted(0.5, row.c2_left[k] - row.c2[j], j, r2, i2);
    }
    return {complex(r1 * dt, i1 * dt), complex(r2 * dt, i2 * dt)};
}

}  // namespace

Spectrum compute_numeric_spectrum_reference(const DriveParams& p, const TimeGrid& g, const CorrelatorGrid& cg,
                                            const FrequencyGrid& fg) {
    check_consistent(p, g, cg);
    validate_frequency_grid(fg);
    const std::size_t n_omega = fg.size();
    std::vector<complex> raw1(n_omega), raw2(n_omega);
    std::vector<RowTransform> rows(cg.n_rows());
    for (std::size_t w = 0; w < n_omega; ++w) {
        const double omega = fg.node(w);
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = fourier_over_row(cg.row(i), cg.dt(), omega);
        const auto total = integrate_over_t(
            g, rows, [&](int n) { return fourier_over_row(cg.pre_pulse_row(n), cg.dt(), omega); });
        raw1[w] = total.c1;
        raw2[w] = total.c2;
    }
    return finish(p, g, fg, std::move(raw1), std::move(raw2));
}

Spectrum compute_numeric_spectrum(const DriveParams& p, const TimeGrid& g, const CorrelatorGrid& cg,
                                  const FrequencyGrid& fg, Execution exec) {
    check_consistent(p, g, cg);
    validate_frequency_grid(fg);
    const auto n_omega = static_cast<long long>(fg.size());
    std::vector<complex> raw1(fg.size()), raw2(fg.size());
    const std::size_t n_nodes = g.n_nodes();
    const double dt = cg.dt();

    auto evaluate = [&](long long w, std::vector<double>& phase, std::vector<RowTransform>& rows) {
        const double omega = fg.node(static_cast<std::size_t>(w));
        for (std::size_t j = 0; j < n_nodes; ++j) {
            const complex z = std::polar(1.0, -omega * static_cast<double>(j) * dt);
            phase[2 * j] = z.real();
            phase[2 * j + 1] = z.imag();
        }
        for (std::size_t i = 0; i < n_nodes; ++i) rows[i] = row_kernel(cg.row(i), phase.data(), dt);
        const auto total = integrate_over_t(
            g, rows, [&](int n) { return row_kernel(cg.pre_pulse_row(n), phase.data(), dt); });
        raw1[static_cast<std::size_t>(w)] = total.c1;
        raw2[static_cast<std::size_t>(w)] = total.c2;
    };

    if (exec == Execution::Serial) {
        std::vector<double> phase(2 * n_nodes);
        std::vector<RowTransform> rows(n_nodes);
        for (long long w = 0; w < n_omega; ++w) evaluate(w, phase, rows);
    } else {
#pragma omp parallel num_threads(worker_count())
        {
            std::vector<double> phase(2 * n_nodes);
            std::vector<RowTransform> rows(n_nodes);
#pragma omp for schedule(dynamic, 4)
            for (long long w = 0; w < n_omega; ++w) evaluate(w, phase, rows);
        }
    }
    return finish(p, g, fg, std::move(raw1), std::move(raw2));
}

Spectrum numeric_spectrum(const DriveParams& p, const FrequencyGrid& fg, std::optional<int> substeps,
                          Execution exec) {
    const TimeGrid g = make_time_grid(p, substeps);
    const auto traj = propagate_trajectory(p, g);
    const auto cg = build_correlator_grids(p, g, traj, exec);
    return compute_numeric_spectrum(p, g, cg, fg, exec);
}

}  // namespace pulsespec
