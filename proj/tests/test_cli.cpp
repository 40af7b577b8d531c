#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pulsespec/runner.hpp"

using namespace pulsespec;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("pulsespec_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path write_config(const TempDir& dir, const std::string& name, const std::string& body) {
    const fs::path p = dir.path / name;
    std::ofstream(p) << body;
    return p;
}

struct Result {
    int code;
    std::string log;
    std::string err;
};

Result run(std::string_view command, const fs::path& cfg, std::optional<fs::path> out = std::nullopt) {
    std::ostringstream log, err;
    const int code = run_command(command, cfg, out, log, err);
    return {code, log.str(), err.str()};
}

int run_binary(const std::string& args) {
    const std::string cmd = std::string(PULSESPEC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::size_t count_files(const fs::path& dir) {
    if (!fs::exists(dir)) return 0;
    return static_cast<std::size_t>(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}));
}

}  // namespace

TEST_CASE("spectrum with both engines writes two files and a comparison") {
    TempDir dir;
    const auto out = dir.path / "out";
    const auto cfg = write_config(dir, "run.cfg",
                                  "delta=3\ntau=0.2\nn_pulses=8\nengine=both\noutput_dir=" + out.string() + "\n");
    const Result r = run("spectrum", cfg);
    REQUIRE(r.code == 0);
    CHECK(fs::exists(out / "spectrum_numeric.csv"));
    CHECK(fs::exists(out / "spectrum_closed_form.csv"));
    const auto report = nlohmann::json::parse(slurp(out / "comparison.json"));
    CHECK(report["metrics"]["l2_rel"].get<double>() < 0.05);

    const std::string csv = slurp(out / "spectrum_closed_form.csv");
    CHECK(csv.rfind("# engine=closed_form\n", 0) == 0);
    CHECK(csv.find("# delta=3\n") != std::string::npos);
    CHECK(csv.find("# n_pulses=8\n") != std::string::npos);
    CHECK(csv.find("\nomega,P1,P2,Q\n") != std::string::npos);
    std::size_t rows = 0;
    std::istringstream lines(csv);
    for (std::string line; std::getline(lines, line);) rows += (!line.empty() && line[0] != '#');
    CHECK(rows == 1202);  // header + 1201 nodes
}

TEST_CASE("identical config gives byte-identical CSV") {
    TempDir dir;
    const auto cfg_a = write_config(dir, "a.cfg", "delta=3\ntau=0.2\nn_pulses=6\nengine=both\noutput_dir=" +
                                                      (dir.path / "a").string() + "\n");
    const auto cfg_b = write_config(dir, "b.cfg", "delta=3\ntau=0.2\nn_pulses=6\nengine=both\noutput_dir=" +
                                                      (dir.path / "b").string() + "\n");
    REQUIRE(run("spectrum", cfg_a).code == 0);
    REQUIRE(run("spectrum", cfg_b).code == 0);
    for (const char* f : {"spectrum_numeric.csv", "spectrum_closed_form.csv"})
        CHECK(slurp(dir.path / "a" / f) == slurp(dir.path / "b" / f));
}

TEST_CASE("JSON output mirrors the spectrum") {
    TempDir dir;
    const auto cfg = write_config(dir, "run.cfg", "delta=3\ntau=0.2\nn_pulses=4\nengine=numeric\nformat=both\n"
                                                  "omega_min=-5\nomega_max=5\nomega_step=0.5\n");
    const auto out = dir.path / "o";
    REQUIRE(run("spectrum", cfg, out).code == 0);
    CHECK(fs::exists(out / "spectrum_numeric.csv"));
    const auto j = nlohmann::json::parse(slurp(out / "spectrum_numeric.json"));
    CHECK(j["engine"] == "numeric");
    CHECK(j["params"]["n_pulses"] == 4);
    CHECK(j["time_grid"]["substeps"] == 20);
    CHECK(j["frequency_grid"]["n_omega"] == 21);
    CHECK(j["Q"].size() == 21);
    CHECK(j["raw"]["P1"][0].size() == 2);
}

TEST_CASE("no-pulse run gives a positive line") {
    TempDir dir;
    const auto cfg = write_config(dir, "run.cfg", "delta=3\ntau=0.2\nn_pulses=0\nfree_time=5\nengine=numeric\n"
                                                  "omega_min=-5\nomega_max=11\nomega_step=0.25\n");
    REQUIRE(run("spectrum", cfg, dir.path / "o").code == 0);
    const std::string csv = slurp(dir.path / "o" / "spectrum_numeric.csv");
    CHECK(csv.find("# free_time=5\n") != std::string::npos);
    std::istringstream lines(csv);
    std::size_t rows = 0;
    for (std::string line; std::getline(lines, line);) {
        if (line.empty() || line[0] == '#' || line[0] == 'o') continue;
        CHECK(std::stod(line.substr(line.rfind(',') + 1)) > 0.0);
        ++rows;
    }
    CHECK(rows == 65);
}

TEST_CASE("exit codes for bad input") {
    TempDir dir;
    auto odd = write_config(dir, "odd.cfg", "delta=3\ntau=0.2\nn_pulses=7\nengine=closed_form\n");
    Result r = run("spectrum", odd, dir.path / "o");
    CHECK(r.code == 3);
    CHECK(r.err.find("OddPulseCount") != std::string::npos);
    CHECK(count_files(dir.path / "o") == 0);

    auto bad_key = write_config(dir, "bad.cfg", "delta=3\ntau=0.2\nn_pulses=8\nspeed=1\n");
    CHECK(run("spectrum", bad_key).code == 2);
    auto missing = write_config(dir, "missing.cfg", "tau=0.2\nn_pulses=8\n");
    CHECK(run("spectrum", missing).code == 2);
    CHECK(run("spectrum", dir.path / "nope.cfg").code == 2);

    auto neg_tau = write_config(dir, "neg.cfg", "delta=3\ntau=-0.2\nn_pulses=8\n");
    CHECK(run("spectrum", neg_tau).code == 3);
    auto no_free = write_config(dir, "nofree.cfg", "delta=3\ntau=0.2\nn_pulses=0\n");
    CHECK(run("spectrum", no_free).code == 3);
    auto bad_grid = write_config(dir, "grid.cfg", "delta=3\ntau=0.2\nn_pulses=8\nomega_min=5\nomega_max=1\n");
    CHECK(run("spectrum", bad_grid).code == 3);
    auto no_lists = write_config(dir, "nolists.cfg", "delta=3\ntau=0.2\nn_pulses=8\n");
    CHECK(run("sweep", no_lists).code == 2);
}

TEST_CASE("sweep writes per-point files and a manifest") {
    TempDir dir;
    const auto out = dir.path / "sweep";
    const auto cfg = write_config(dir, "sweep.cfg", "delta=3\ntau=0.2\nengine=closed_form\n"
                                                    "n_pulses_list=8,12\ndelta_list=3,4\n");
    REQUIRE(run("sweep", cfg, out).code == 0);
    const auto m = nlohmann::json::parse(slurp(out / "manifest.json"));
    REQUIRE(m["points"].size() == 4);
    for (const auto& pt : m["points"]) {
        for (const auto& f : pt["files"]) CHECK(fs::exists(out / f.get<std::string>()));
        CHECK(pt["spectra"][0]["peaks"].size() > 0);
        CHECK(pt["spectra"][0]["positive_weight_fraction"].get<double>() > 0.0);
    }
    CHECK(m["points"][1]["params"]["delta"] == 4.0);
    CHECK(m["points"][2]["params"]["n_pulses"] == 12);
}

TEST_CASE("failed sweep leaves no outputs") {
    TempDir dir;
    const auto out = dir.path / "sweep";
    const auto cfg = write_config(dir, "sweep.cfg", "delta=3\ntau=0.2\nengine=closed_form\nn_pulses_list=8,7\n");
    const Result r = run("sweep", cfg, out);
    CHECK(r.code == 3);
    CHECK(count_files(out) == 0);
}

TEST_CASE("validate passes at N_p = 20 and flags an under-resolved run") {
    TempDir dir;
    const auto good = write_config(dir, "good.cfg", "delta=3\ntau=0.2\nn_pulses=20\n");
    Result r = run("validate", good, dir.path / "good");
    CHECK(r.code == 0);
    auto report = nlohmann::json::parse(slurp(dir.path / "good" / "validation_report.json"));
    CHECK(report["passed"] == true);
    CHECK(report["metrics"]["l2_rel"].get<double>() <= 0.05);
    CHECK(report["invariants"]["passed"] == true);
    CHECK(report["peaks"].size() > 0);

    const auto coarse = write_config(dir, "coarse.cfg", "delta=3\ntau=0.2\nn_pulses=20\nsubsteps=2\n");
    r = run("validate", coarse, dir.path / "coarse");
    CHECK(r.code == 1);
    report = nlohmann::json::parse(slurp(dir.path / "coarse" / "validation_report.json"));
    CHECK(report["passed"] == false);
    CHECK(report["hint"].get<std::string>().find("substeps") != std::string::npos);

    const auto self = write_config(dir, "self.cfg", "delta=3\ntau=0.2\nn_pulses=8\nengine=numeric\n");
    r = run("validate", self, dir.path / "self");
    CHECK(r.code == 0);
    report = nlohmann::json::parse(slurp(dir.path / "self" / "validation_report.json"));
    CHECK(report["metrics"]["l2_rel"] == 0.0);
    CHECK(report["metrics"]["linf_abs"] == 0.0);
    CHECK(report["metrics"]["peak_amp_rel_diff"] == 0.0);
}

TEST_CASE("binary exit codes") {
    TempDir dir;
    const auto good = write_config(dir, "good.cfg", "delta=3\ntau=0.2\nn_pulses=4\nengine=closed_form\n");
    const auto odd = write_config(dir, "odd.cfg", "delta=3\ntau=0.2\nn_pulses=7\nengine=closed_form\n");
    const auto bad = write_config(dir, "bad.cfg", "delta=3\ntau=0.2\nn_pulses=4\nfoo=1\n");
    const std::string out = " --output-dir " + (dir.path / "bin").string();
    CHECK(run_binary("spectrum --config " + good.string() + out) == 0);
    CHECK(fs::exists(dir.path / "bin" / "spectrum_closed_form.csv"));
    CHECK(run_binary("spectrum --config " + odd.string() + out) == 3);
    CHECK(run_binary("spectrum --config " + bad.string() + out) == 2);
    CHECK(run_binary("spectrum") == 2);
    CHECK(run_binary("") == 2);
    CHECK(run_binary("frobnicate --config x") == 2);
    CHECK(run_binary("--help") == 0);
}
