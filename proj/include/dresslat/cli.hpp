#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "dresslat/species.hpp"

namespace dresslat::cli {

enum class Command { PotentialScan, BlockadeScan, Report };
enum class Format { Csv, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDomain = 3;

std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command c);
std::optional<Format> parse_format(const std::string& name);

/// Top-level run configuration. Unknown keys anywhere are rejected.
struct RunConfig {
    std::optional<Command> command;
    std::optional<std::filesystem::path> preset;
    std::optional<std::filesystem::path> output;
    std::optional<Format> format;
    nlohmann::json params = nlohmann::json::object();
};

RunConfig parse_run_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

// Each command turns a parameter block into the artifact text. Physical
// inputs are given in Hz and gauss and converted to angular units here.
std::string potential_scan_artifact(const nlohmann::json& params, const Species& species, Format format);
std::string blockade_scan_artifact(const nlohmann::json& params, Format format, int threads);
std::string report_artifact(const nlohmann::json& params, const Species& species);

/// Write via a temporary sibling and rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

struct Options {
    std::optional<std::string> command;
    std::filesystem::path config_path;
    std::optional<std::filesystem::path> preset;
    std::optional<std::filesystem::path> out;
    std::optional<std::string> format;
    int threads = 1;
};

/// Runs one command end to end. Returns the process exit code; diagnostics go to `err`.
int run(const Options& options, std::ostream& out, std::ostream& err);

}  // namespace dresslat::cli
