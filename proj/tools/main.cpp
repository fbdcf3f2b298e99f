#include <iostream>

#include <CLI11.hpp>

#include "dresslat/cli.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"dresslat: spin-dependent dressed lattices and blockade gates"};
    dresslat::cli::Options options;
    std::string config;
    std::string command;
    std::string preset;
    std::string out;
    std::string format;

    app.add_option("command", command, "potential_scan | blockade_scan | report (defaults to config.command)");
    app.add_option("--config", config, "JSON run configuration")->required();
    app.add_option("--preset", preset, "species preset JSON (defaults to built-in 87Sr)");
    app.add_option("--out", out, "output file (stdout when omitted)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", options.threads, "worker threads for sweeps")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : dresslat::cli::kExitConfig;
    }

    options.config_path = config;
    if (!command.empty()) options.command = command;
    if (!preset.empty()) options.preset = preset;
    if (!out.empty()) options.out = out;
    if (!format.empty()) options.format = format;
    return dresslat::cli::run(options, std::cout, std::cerr);
}
