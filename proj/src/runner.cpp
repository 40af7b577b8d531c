#include "pulsespec/runner.hpp"

#include <cstdio>
#include <system_error>

#include "pulsespec/closed_form.hpp"
#include "pulsespec/output.hpp"
#include "pulsespec/spectrum_numeric.hpp"
#include "serialize.hpp"

namespace pulsespec {

namespace fs = std::filesystem;

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::ConfigParse:
        case ErrorCode::Io: return exit_code::kConfigError;
        default: return exit_code::kParamError;
    }
}

namespace {

bool needs_closed(EngineChoice e) { return e != EngineChoice::Numeric; }
bool needs_numeric(EngineChoice e) { return e != EngineChoice::ClosedForm; }

void check_point(EngineChoice engine, const DriveParams& p, const FrequencyGrid& fg, std::optional<int> substeps) {
    validate_params(p);
    validate_frequency_grid(fg);
    if (needs_closed(engine)) require_closed_form_pulses(p);
    if (needs_numeric(engine)) make_time_grid(p, substeps);
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
}

// Writes the spectrum in the configured formats; returns the file names.
std::vector<fs::path> write_spectrum(const Spectrum& s, const fs::path& dir, const std::string& stem,
                                     OutputFormat format) {
    std::vector<fs::path> files;
    if (format != OutputFormat::Json) {
        files.push_back(dir / (stem + ".csv"));
        write_text_file(files.back(), spectrum_csv(s));
    }
    if (format != OutputFormat::Csv) {
        files.push_back(dir / (stem + ".json"));
        write_text_file(files.back(), spectrum_json(s));
    }
    return files;
}

// Removes everything written so far unless released.
class OutputGuard {
public:
    ~OutputGuard() {
        if (released_) return;
        std::error_code ec;
        for (const auto& f : files_) fs::remove(f, ec);
    }
    void add(const std::vector<fs::path>& files) { files_.insert(files_.end(), files.begin(), files.end()); }
    void add(const fs::path& file) { files_.push_back(file); }
    void release() { released_ = true; }

private:
    std::vector<fs::path> files_;
    bool released_ = false;
};

nlohmann::json file_names(const std::vector<fs::path>& files) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& f : files) out.push_back(f.filename().string());
    return out;
}

nlohmann::json weight_fraction(const Spectrum& s) {
    try {
        return positive_weight_fraction(s);
    } catch (const Error&) {
        return nullptr;
    }
}

}  // namespace

std::vector<Spectrum> compute_spectra(EngineChoice engine, const DriveParams& p, const FrequencyGrid& fg,
                                      std::optional<int> substeps) {
    check_point(engine, p, fg, substeps);
    std::vector<Spectrum> out;
    if (needs_numeric(engine)) out.push_back(numeric_spectrum(p, fg, substeps));
    if (needs_closed(engine)) out.push_back(closed_spectrum(p, fg));
    return out;
}

int run_spectrum(const Config& c, std::ostream& log) {
    const EngineChoice engine = c.engine.value_or(EngineChoice::Numeric);
    const DriveParams p = resolve_params(c);
    const FrequencyGrid fg = resolve_frequency_grid(c, p.tau);
    const auto spectra = compute_spectra(engine, p, fg, c.substeps);

    ensure_dir(c.output_dir);
    OutputGuard guard;
    for (const auto& s : spectra) {
        const auto files = write_spectrum(s, c.output_dir, "spectrum_" + std::string(to_string(s.meta.engine)), c.format);
        guard.add(files);
        for (const auto& f : files) log << "wrote " << f.string() << '\n';
    }
    if (spectra.size() == 2) {
        nlohmann::json report;
        report["params"] = detail::to_json(p);
        report["frequency_grid"] = detail::to_json(fg);
        report["metrics"] = detail::to_json(compare_spectra(spectra[0], spectra[1]));
        const fs::path path = c.output_dir / "comparison.json";
        write_text_file(path, report.dump(2) + "\n");
        guard.add(path);
        log << "wrote " << path.string() << '\n';
    }
    guard.release();
    return exit_code::kOk;
}

int run_sweep(const Config& c, std::ostream& log) {
    if (!c.has_sweep_lists())
        throw Error(ErrorCode::ConfigParse, "sweep needs at least one of n_pulses_list, tau_list, delta_list");
    const EngineChoice engine = c.engine.value_or(EngineChoice::Numeric);

    auto axis = [](const auto& list) {
        using T = typename std::decay_t<decltype(list)>::value_type;
        std::vector<std::optional<T>> out(list.begin(), list.end());
        if (out.empty()) out.push_back(std::nullopt);
        return out;
    };
    struct Point {
        DriveParams params;
        FrequencyGrid grid;
    };
    std::vector<Point> points;
    for (const auto& np : axis(c.n_pulses_list)) {
        for (const auto& tau : axis(c.tau_list)) {
            for (const auto& delta : axis(c.delta_list)) {
                const DriveParams p = resolve_params(c, np, tau, delta);
                points.push_back({p, resolve_frequency_grid(c, p.tau)});
            }
        }
    }
    // Reject bad points before anything is written.
    for (const auto& pt : points) check_point(engine, pt.params, pt.grid, c.substeps);

    ensure_dir(c.output_dir);
    OutputGuard guard;
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t k = 0; k < points.size(); ++k) {
        const auto& pt = points[k];
        const auto spectra = compute_spectra(engine, pt.params, pt.grid, c.substeps);
        nlohmann::json entry;
        entry["index"] = k;
        entry["params"] = detail::to_json(pt.params);
        entry["frequency_grid"] = detail::to_json(pt.grid);
        nlohmann::json all_files = nlohmann::json::array();
        nlohmann::json per_engine = nlohmann::json::array();
        for (const auto& s : spectra) {
            char stem[64];
            std::snprintf(stem, sizeof stem, "point_%03zu_%s", k, std::string(to_string(s.meta.engine)).c_str());
            const auto files = write_spectrum(s, c.output_dir, stem, c.format);
            guard.add(files);
            for (const auto& f : files) log << "wrote " << f.string() << '\n';
            for (const auto& name : file_names(files)) all_files.push_back(name);
            per_engine.push_back({{"engine", std::string(to_string(s.meta.engine))},
                                  {"files", file_names(files)},
                                  {"peaks", detail::to_json(find_peaks(s, default_prominence(s)))},
                                  {"positive_weight_fraction", weight_fraction(s)}});
        }
        entry["files"] = all_files;
        entry["spectra"] = per_engine;
        entries.push_back(entry);
    }

    nlohmann::json manifest;
    manifest["engine"] = std::string(to_string(engine));
    manifest["format"] = std::string(to_string(c.format));
    manifest["substeps"] = c.substeps ? nlohmann::json(*c.substeps) : nlohmann::json(nullptr);
    manifest["points"] = entries;
    const fs::path path = c.output_dir / "manifest.json";
    write_text_file(path, manifest.dump(2) + "\n");
    log << "wrote " << path.string() << '\n';
    guard.release();
    return exit_code::kOk;
}

ValidationOutcome validate(const Config& c) {
    const EngineChoice engine = c.engine.value_or(EngineChoice::Both);
    const DriveParams p = resolve_params(c);
    const FrequencyGrid fg = resolve_frequency_grid(c, p.tau);
    check_point(engine, p, fg, c.substeps);

    // The invariant suite always needs the trajectory and correlators.
    const TimeGrid g = make_time_grid(p, c.substeps);
    const auto traj = propagate_trajectory(p, g);
    const auto cg = build_correlator_grids(p, g, traj);
    const Spectrum numeric = compute_numeric_spectrum(p, g, cg, fg);
    std::optional<Spectrum> closed;
    if (p.n_pulses >= 2 && p.n_pulses % 2 == 0) closed = closed_spectrum(p, fg);

    ValidationOutcome out;
    switch (engine) {
        case EngineChoice::Both:
            out.a = numeric;
            out.b = *closed;
            break;
        case EngineChoice::Numeric:
            out.a = numeric;
            out.b = numeric;
            break;
        case EngineChoice::ClosedForm:
            out.a = *closed;
            out.b = *closed;
            break;
    }
    out.metrics = compare_spectra(out.a, out.b);
    out.metrics_passed = out.metrics.l2_rel <= kValidateL2Tolerance;
    out.invariants = run_invariant_suite(p, g, traj, cg, &numeric, closed ? &*closed : nullptr);
    const Spectrum& table = closed ? *closed : numeric;
    out.peaks = find_peaks(table, default_prominence(table));

    if (!out.metrics_passed) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "l2_rel = %.4g exceeds %.4g", out.metrics.l2_rel, kValidateL2Tolerance);
        out.hint = std::string(buf) + "; refine the time step (substeps = " +
                   std::to_string(g.substeps()) + ", try " + std::to_string(2 * g.substeps()) +
                   ") or run more pulses, since the closed form is a long-time result";
    } else if (!out.invariants.all_passed()) {
        out.hint = "invariant violation; refine the time step (substeps = " + std::to_string(g.substeps()) + ")";
    }
    return out;
}

int run_validate(const Config& c, std::ostream& log) {
    const ValidationOutcome v = validate(c);
    const DriveParams& p = v.a.meta.params;
    nlohmann::json report;
    report["engines"] = {std::string(to_string(v.a.meta.engine)), std::string(to_string(v.b.meta.engine))};
    report["params"] = detail::to_json(p);
    report["frequency_grid"] = detail::to_json(v.a.meta.frequency_grid);
    const auto& timed = v.a.meta.substeps ? v.a : v.b;
    if (timed.meta.substeps) {
        report["time_grid"] = {{"substeps", *timed.meta.substeps}, {"dt", *timed.meta.dt}};
    }
    report["metrics"] = detail::to_json(v.metrics);
    report["tolerances"] = {{"l2_rel", kValidateL2Tolerance}};
    report["metrics_passed"] = v.metrics_passed;
    report["invariants"] = detail::to_json(v.invariants);
    report["peaks"] = detail::to_json(v.peaks);
    report["passed"] = v.passed();
    report["hint"] = v.hint.empty() ? nlohmann::json(nullptr) : nlohmann::json(v.hint);

    ensure_dir(c.output_dir);
    const fs::path path = c.output_dir / "validation_report.json";
    write_text_file(path, report.dump(2) + "\n");
    log << "wrote " << path.string() << '\n';
    log << "l2_rel = " << format_double(v.metrics.l2_rel) << (v.passed() ? "  PASS" : "  FAIL") << '\n';
    if (!v.hint.empty()) log << "hint: " << v.hint << '\n';
    return v.passed() ? exit_code::kOk : exit_code::kToleranceFailure;
}

int run_command(std::string_view command, const fs::path& config_path, const std::optional<fs::path>& output_dir,
                std::ostream& log, std::ostream& err) {
    try {
        Config c = load_config(config_path);
        if (output_dir) c.output_dir = *output_dir;
        if (command == "spectrum") return run_spectrum(c, log);
        if (command == "sweep") return run_sweep(c, log);
        if (command == "validate") return run_validate(c, log);
        err << "error: unknown command '" << command << "'\n";
        return exit_code::kConfigError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

}  // namespace pulsespec
