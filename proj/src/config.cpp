#include "pulsespec/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace pulsespec {

std::string_view to_string(EngineChoice e) {
    switch (e) {
        case EngineChoice::Numeric: return "numeric";
        case EngineChoice::ClosedForm: return "closed_form";
        case EngineChoice::Both: return "both";
    }
    return "unknown";
}

std::string_view to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
        case OutputFormat::Both: return "both";
    }
    return "unknown";
}

bool Config::has_sweep_lists() const { return !n_pulses_list.empty() || !tau_list.empty() || !delta_list.empty(); }

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw Error(ErrorCode::ConfigParse, "line " + std::to_string(line) + ": " + msg);
}

template <typename T>
T parse_number(std::string_view key, std::string_view v, std::size_t line) {
    T out{};
    const char* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end)
        fail(line, "invalid value '" + std::string(v) + "' for " + std::string(key));
    return out;
}

template <typename T>
std::vector<T> parse_list(std::string_view key, std::string_view v, std::size_t line) {
    if (v.size() >= 2 && v.front() == '[' && v.back() == ']') v = trim(v.substr(1, v.size() - 2));
    std::vector<T> out;
    while (true) {
        const auto comma = v.find(',');
        const auto item = trim(v.substr(0, comma));
        if (item.empty()) fail(line, "empty list item in " + std::string(key));
        out.push_back(parse_number<T>(key, item, line));
        if (comma == std::string_view::npos) break;
        v = v.substr(comma + 1);
    }
    return out;
}

}  // namespace

Config parse_config(std::string_view text) {
    Config c;
    using Setter = std::function<void(std::string_view, std::size_t)>;
    auto real = [](std::optional<double>& slot, std::string_view key) -> Setter {
        return [&slot, key](std::string_view v, std::size_t line) { slot = parse_number<double>(key, v, line); };
    };
    const std::map<std::string_view, Setter> setters = {
        {"delta", real(c.delta, "delta")},
        {"gamma", [&](std::string_view v, std::size_t l) { c.gamma = parse_number<double>("gamma", v, l); }},
        {"tau", real(c.tau, "tau")},
        {"n_pulses", [&](std::string_view v, std::size_t l) { c.n_pulses = parse_number<int>("n_pulses", v, l); }},
        {"amp", [&](std::string_view v, std::size_t l) { c.amp = parse_number<double>("amp", v, l); }},
        {"free_time", real(c.free_time, "free_time")},
        {"substeps", [&](std::string_view v, std::size_t l) { c.substeps = parse_number<int>("substeps", v, l); }},
        {"omega_min", real(c.omega_min, "omega_min")},
        {"omega_max", real(c.omega_max, "omega_max")},
        {"omega_step", real(c.omega_step, "omega_step")},
        {"engine",
         [&](std::string_view v, std::size_t l) {
             if (v == "numeric") c.engine = EngineChoice::Numeric;
             else if (v == "closed_form") c.engine = EngineChoice::ClosedForm;
             else if (v == "both") c.engine = EngineChoice::Both;
             else fail(l, "engine must be numeric, closed_form or both");
         }},
        {"output_dir", [&](std::string_view v, std::size_t) { c.output_dir = std::string(v); }},
        {"format",
         [&](std::string_view v, std::size_t l) {
             if (v == "csv") c.format = OutputFormat::Csv;
             else if (v == "json") c.format = OutputFormat::Json;
             else if (v == "both") c.format = OutputFormat::Both;
             else fail(l, "format must be csv, json or both");
         }},
        {"n_pulses_list",
         [&](std::string_view v, std::size_t l) { c.n_pulses_list = parse_list<int>("n_pulses_list", v, l); }},
        {"tau_list", [&](std::string_view v, std::size_t l) { c.tau_list = parse_list<double>("tau_list", v, l); }},
        {"delta_list",
         [&](std::string_view v, std::size_t l) { c.delta_list = parse_list<double>("delta_list", v, l); }},
    };

    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected key = value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) fail(line_no, "unknown key '" + std::string(key) + "'");
        if (!seen.insert(std::string(key)).second) fail(line_no, "duplicate key '" + std::string(key) + "'");
        if (value.empty()) fail(line_no, "missing value for '" + std::string(key) + "'");
        it->second(value, line_no);
    }
    return c;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigParse, "cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

DriveParams resolve_params(const Config& c, std::optional<int> n_pulses, std::optional<double> tau,
                           std::optional<double> delta) {
    auto need = [](const auto& v, const char* key) {
        if (!v) throw Error(ErrorCode::ConfigParse, std::string("missing required key '") + key + "'");
        return *v;
    };
    DriveParams p;
    p.delta = need(delta ? delta : c.delta, "delta");
    p.tau = need(tau ? tau : c.tau, "tau");
    p.n_pulses = need(n_pulses ? n_pulses : c.n_pulses, "n_pulses");
    p.gamma = c.gamma;
    p.amp = c.amp;
    p.free_time = c.free_time;
    return p;
}

DriveParams resolve_params(const Config& c) { return resolve_params(c, std::nullopt, std::nullopt, std::nullopt); }

FrequencyGrid resolve_frequency_grid(const Config& c, double tau) {
    FrequencyGrid fg = default_frequency_grid(tau);
    if (c.omega_min) fg.omega_min = *c.omega_min;
    if (c.omega_max) fg.omega_max = *c.omega_max;
    if (c.omega_step) fg.omega_step = *c.omega_step;
    return fg;
}

}  // namespace pulsespec
