// pulsespec: spectra of a two-level emitter under periodic pi-pulses.
//
//   pulsespec spectrum --config run.cfg
//   pulsespec sweep    --config sweep.cfg --output-dir out/
//   pulsespec validate --config check.cfg

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "pulsespec/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Absorption spectra of a pulse-driven two-level system"};
    app.require_subcommand(1);

    std::string config;
    std::string output_dir;
    for (const auto& [name, about] : {std::pair{"spectrum", "Compute one spectrum"},
                                      std::pair{"sweep", "Compute spectra over parameter lists"},
                                      std::pair{"validate", "Compare numeric and closed-form engines"}}) {
        auto* sub = app.add_subcommand(name, about);
        sub->add_option("--config", config, "key=value configuration file")->required();
        sub->add_option("--output-dir", output_dir, "Overrides output_dir from the config");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : pulsespec::exit_code::kConfigError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    std::optional<std::filesystem::path> override_dir;
    if (!output_dir.empty()) override_dir = output_dir;
    return pulsespec::run_command(command, config, override_dir, std::cout, std::cerr);
}
