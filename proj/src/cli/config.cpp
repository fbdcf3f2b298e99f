#include <cmath>

#include "dresslat/cli.hpp"
#include "dresslat/errors.hpp"
#include "params.hpp"

namespace dresslat::cli {

Params::Params(const nlohmann::json& j, std::string context, std::initializer_list<const char*> allowed)
    : j_(j)
    , context_(std::move(context))
{
    if (!j_.is_object()) throw ConfigError(context_ + ": expected a JSON object");
    for (const auto& [key, _] : j_.items()) {
        bool known = false;
        for (const char* k : allowed) known = known || key == k;
        if (!known) throw ConfigError(context_ + ": unknown key '" + key + "'");
    }
}

std::string Params::where(const char* key) const { return context_ + "." + key; }

double Params::number(const char* key) const
{
    if (!j_.contains(key)) throw ConfigError(where(key) + " is required");
    const auto& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(where(key) + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(where(key) + " must be finite");
    return d;
}

double Params::number(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }

double Params::nonnegative(const char* key) const
{
    const double d = number(key);
    if (d < 0.0) throw ConfigError(where(key) + " must be >= 0");
    return d;
}

double Params::nonnegative(const char* key, double fallback) const
{
    return has(key) ? nonnegative(key) : fallback;
}

int Params::integer(const char* key, int fallback) const
{
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(where(key) + " must be an integer");
    return v.get<int>();
}

bool Params::flag(const char* key, bool fallback) const
{
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_boolean()) throw ConfigError(where(key) + " must be true or false");
    return v.get<bool>();
}

std::string Params::string(const char* key, const std::string& fallback) const
{
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(where(key) + " must be a string");
    return v.get<std::string>();
}

std::vector<double> Params::numbers(const char* key) const
{
    if (!has(key)) throw ConfigError(where(key) + " is required");
    const auto& v = j_.at(key);
    if (!v.is_array()) throw ConfigError(where(key) + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(where(key) + " must be an array of numbers");
        const double d = e.get<double>();
        if (!std::isfinite(d)) throw ConfigError(where(key) + " entries must be finite");
        out.push_back(d);
    }
    return out;
}

const nlohmann::json& Params::object(const char* key) const
{
    if (!has(key)) throw ConfigError(where(key) + " is required");
    const auto& v = j_.at(key);
    if (!v.is_object()) throw ConfigError(where(key) + " must be an object");
    return v;
}

std::optional<Command> parse_command(const std::string& name)
{
    if (name == "potential_scan" || name == "potential-scan") return Command::PotentialScan;
    if (name == "blockade_scan" || name == "blockade-scan") return Command::BlockadeScan;
    if (name == "report") return Command::Report;
    return std::nullopt;
}

std::string command_name(Command c)
{
    switch (c) {
    case Command::PotentialScan: return "potential_scan";
    case Command::BlockadeScan: return "blockade_scan";
    case Command::Report: return "report";
    }
    return "unknown";
}

std::optional<Format> parse_format(const std::string& name)
{
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    return std::nullopt;
}

RunConfig parse_run_config(const nlohmann::json& j, const std::filesystem::path& base_dir)
{
    const Params top(j, "config", {"command", "preset", "output", "format", "params"});
    RunConfig cfg;

    auto resolve = [&](const std::string& p) {
        std::filesystem::path path(p);
        return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
    };

    if (top.has("command")) {
        const std::string name = top.string("command", "");
        cfg.command = parse_command(name);
        if (!cfg.command) throw ConfigError("config.command: unknown command '" + name + "'");
    }
    if (top.has("preset")) cfg.preset = resolve(top.string("preset", ""));
    if (top.has("output")) cfg.output = resolve(top.string("output", ""));
    if (top.has("format")) {
        const std::string name = top.string("format", "");
        cfg.format = parse_format(name);
        if (!cfg.format) throw ConfigError("config.format must be 'csv' or 'json'");
    }
    if (top.has("params")) cfg.params = top.object("params");
    return cfg;
}

}  // namespace dresslat::cli
