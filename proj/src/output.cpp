#include "pulsespec/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "serialize.hpp"

namespace pulsespec {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail {

nlohmann::json to_json(const DriveParams& p) {
    nlohmann::json j;
    j["delta"] = p.delta;
    j["gamma"] = p.gamma;
    j["tau"] = p.tau;
    j["n_pulses"] = p.n_pulses;
    j["amp"] = p.amp;
    j["free_time"] = p.free_time ? nlohmann::json(*p.free_time) : nlohmann::json(nullptr);
    j["total_time"] = p.total_time();
    return j;
}

nlohmann::json to_json(const FrequencyGrid& fg) {
    return {{"omega_min", fg.omega_min}, {"omega_max", fg.omega_max}, {"omega_step", fg.omega_step},
            {"n_omega", fg.size()}};
}

namespace {

nlohmann::json pairs(const std::vector<complex>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& z : v) out.push_back({z.real(), z.imag()});
    return out;
}

}  // namespace

nlohmann::json to_json(const Spectrum& s) {
    nlohmann::json j;
    j["engine"] = std::string(to_string(s.meta.engine));
    j["params"] = to_json(s.meta.params);
    if (s.meta.substeps) {
        j["time_grid"] = {{"substeps", *s.meta.substeps}, {"dt", *s.meta.dt}};
    } else {
        j["time_grid"] = nullptr;
    }
    j["frequency_grid"] = to_json(s.meta.frequency_grid);
    j["omega"] = s.omegas;
    j["P1"] = s.p1;
    j["P2"] = s.p2;
    j["Q"] = s.q;
    nlohmann::json raw = nlohmann::json::object();
    if (s.raw_p1) raw["P1"] = pairs(*s.raw_p1);
    if (s.raw_p2) raw["P2"] = pairs(*s.raw_p2);
    if (s.raw_p3) raw["P3"] = pairs(*s.raw_p3);
    j["raw"] = raw;
    return j;
}

nlohmann::json to_json(const SpectrumMetrics& m) {
    return {{"linf_abs", m.linf_abs}, {"l2_rel", m.l2_rel}, {"peak_amp_rel_diff", m.peak_amp_rel_diff}};
}

nlohmann::json to_json(const std::vector<Peak>& peaks) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& pk : peaks)
        out.push_back({{"omega", pk.omega}, {"q", pk.q}, {"sign", pk.sign}, {"prominence", pk.prominence}});
    return out;
}

nlohmann::json to_json(const InvariantReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed}});
    return {{"passed", r.all_passed()}, {"checks", checks}};
}

}  // namespace detail

std::string spectrum_csv(const Spectrum& s) {
    const DriveParams& p = s.meta.params;
    const FrequencyGrid& fg = s.meta.frequency_grid;
    std::ostringstream out;
    auto kv = [&](const char* key, const std::string& value) { out << "# " << key << '=' << value << '\n'; };
    kv("engine", std::string(to_string(s.meta.engine)));
    kv("delta", format_double(p.delta));
    kv("gamma", format_double(p.gamma));
    kv("tau", format_double(p.tau));
    kv("n_pulses", std::to_string(p.n_pulses));
    kv("amp", format_double(p.amp));
    kv("free_time", p.free_time ? format_double(*p.free_time) : "none");
    kv("total_time", format_double(p.total_time()));
    if (s.meta.substeps) {
        kv("substeps", std::to_string(*s.meta.substeps));
        kv("dt", format_double(*s.meta.dt));
    }
    kv("omega_min", format_double(fg.omega_min));
    kv("omega_max", format_double(fg.omega_max));
    kv("omega_step", format_double(fg.omega_step));
    kv("n_omega", std::to_string(fg.size()));
    out << "omega,P1,P2,Q\n";
    for (std::size_t j = 0; j < s.size(); ++j) {
        out << format_double(s.omegas[j]) << ',' << format_double(s.p1[j]) << ',' << format_double(s.p2[j]) << ','
            << format_double(s.q[j]) << '\n';
    }
    return out.str();
}

std::string spectrum_json(const Spectrum& s) { return detail::to_json(s).dump(2) + "\n"; }

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

}  // namespace pulsespec
