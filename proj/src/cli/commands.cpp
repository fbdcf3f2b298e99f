#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <unistd.h>

#include "dresslat/budget.hpp"
#include "dresslat/cli.hpp"
#include "dresslat/errors.hpp"
#include "dresslat/format.hpp"
#include "dresslat/gate.hpp"
#include "dresslat/lattice.hpp"
#include "dresslat/open_system.hpp"
#include "dresslat/spin_register.hpp"
#include "dresslat/units.hpp"
#include "params.hpp"

namespace dresslat::cli {

namespace {

std::string csv_line(std::initializer_list<std::string> cells)
{
    std::string line;
    for (const auto& c : cells) {
        if (!line.empty()) line += ',';
        line += c;
    }
    return line + '\n';
}

std::string json_table(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows)
{
    nlohmann::json j = {{"columns", columns}, {"rows", rows}};
    return j.dump(2) + "\n";
}

BlockadeModel gate_model_from(const nlohmann::json& block)
{
    const Params p(block, "params.gate", {"model", "rabi_hz", "interaction_hz", "loss_rate_hz"});
    const std::string kind = p.string("model", "perfect");
    const double rabi = hz_to_angular(p.nonnegative("rabi_hz", 1e3));
    const double delta = hz_to_angular(p.number("interaction_hz", 0.0));
    const double gamma = hz_to_angular(p.nonnegative("loss_rate_hz", 0.0));
    if (rabi == 0.0) throw ConfigError("params.gate.rabi_hz must be > 0");
    if (kind == "perfect") return BlockadeModel::perfect(rabi);
    if (kind == "interaction") return BlockadeModel::with_interaction(rabi, delta);
    if (kind == "lossy") return BlockadeModel::lossy(rabi, gamma);
    if (kind == "combined") return BlockadeModel::combined(rabi, delta, gamma);
    throw ConfigError("params.gate.model must be perfect, interaction, lossy or combined");
}

nlohmann::json addressability_json(const nlohmann::json& block, const Species& species)
{
    const Params p(block, "params.addressability",
                   {"gradient_gauss_per_cm", "site_spacing_m", "trap_frequency_hz", "raman_rabi_hz", "band_factor"});
    GradientConfig grad;
    grad.gradient_gauss_per_cm = p.number("gradient_gauss_per_cm");
    if (p.has("site_spacing_m")) grad.site_spacing_m = p.number("site_spacing_m");
    const AddressabilityReport r =
        readout_addressability(grad, species, hz_to_angular(p.number("trap_frequency_hz")),
                               hz_to_angular(p.number("raman_rabi_hz")), p.number("band_factor", 10.0));
    return to_json(r);
}

nlohmann::json budget_json(const nlohmann::json& block, const Species& species)
{
    const Params p(block, "params.budget",
                   {"trap_frequency_hz", "noise_psd", "wavelength_epsilon", "depth_fluctuation", "lattice_depth_hz",
                    "detuning_noise_hz", "rabi_hz", "detuning_hz", "p0_admixture", "p0_pair_loss_rate_hz"});
    const Params psd(p.object("noise_psd"), "params.budget.noise_psd", {"frequency_hz", "psd_per_hz"});

    BudgetInput in;
    in.trap_omega = hz_to_angular(p.number("trap_frequency_hz"));
    in.noise.frequency_hz = psd.numbers("frequency_hz");
    in.noise.psd = psd.numbers("psd_per_hz");
    in.wavelength_epsilon = p.nonnegative("wavelength_epsilon", 0.0);
    in.depth_fluctuation = p.nonnegative("depth_fluctuation", 0.0);
    in.lattice_depth = hz_to_angular(p.nonnegative("lattice_depth_hz", 0.0));
    in.detuning_noise = hz_to_angular(p.nonnegative("detuning_noise_hz", 0.0));
    in.rabi = hz_to_angular(p.nonnegative("rabi_hz", 0.0));
    in.detuning = hz_to_angular(p.number("detuning_hz", 0.0));
    in.p0_admixture = p.nonnegative("p0_admixture", 0.0);
    in.p0_pair_loss_rate = hz_to_angular(p.nonnegative("p0_pair_loss_rate_hz", 0.0));
    return to_json(decoherence_budget(in, species));
}

nlohmann::json zeeman_json(const nlohmann::json& block, const Species& species)
{
    const Params p(block, "params.zeeman",
                   {"field_gauss", "qubit_0_twice_m_I", "qubit_1_twice_m_I", "rabi_hz", "threshold"});
    ZeemanConfig z;
    z.field_gauss = p.nonnegative("field_gauss");
    z.species = species;
    z.qubit_0 = HalfInteger::from_twice(p.integer("qubit_0_twice_m_I", -species.nuclear_spin.twice));
    z.qubit_1 = HalfInteger::from_twice(p.integer("qubit_1_twice_m_I", species.nuclear_spin.twice));
    const SelectivityReport s = selectivity_margin(z, hz_to_angular(p.number("rabi_hz")), p.number("threshold", 10.0));
    return {
        {"field_gauss", z.field_gauss},
        {"qubit_0_offset_hz", resonance_offset(z, z.qubit_0)},
        {"qubit_1_offset_hz", resonance_offset(z, z.qubit_1)},
        {"spacing_hz", s.spacing_hz},
        {"selectivity_ratio", s.ratio},
        {"threshold", s.threshold},
        {"selective", s.selective},
    };
}

nlohmann::json collisional_json(const nlohmann::json& block)
{
    const Params p(block, "params.collisional", {"onsite_interaction_hz", "hold_time_s", "trap_frequency_hz"});
    std::optional<double> trap;
    if (p.has("trap_frequency_hz")) trap = hz_to_angular(p.number("trap_frequency_hz"));
    const CollisionalPhase c =
        collisional_phase_gate(hz_to_angular(p.number("onsite_interaction_hz")), p.nonnegative("hold_time_s"), trap);
    nlohmann::json j = {{"phase_rad", c.phase}};
    if (c.single_band) j["single_band"] = *c.single_band;
    return j;
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

nlohmann::json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config " + path.string() + ": " + e.what());
    }
}

}  // namespace

std::string potential_scan_artifact(const nlohmann::json& params, const Species& species, Format format)
{
    const Params p(params, "params",
                   {"rabi_hz", "detuning_hz", "stark_g_hz", "stark_e_hz", "include_offresonant", "phases_rad",
                    "points_per_period", "periods"});
    std::vector<double> phases = p.numbers("phases_rad");
    if (phases.empty()) throw ConfigError("phases must be nonempty");
    const int points = p.integer("points_per_period", 256);
    const int periods = p.integer("periods", 1);
    if (points < 64) throw ConfigError("params.points_per_period must be >= 64");
    if (periods < 1) throw ConfigError("params.periods must be >= 1");
    std::sort(phases.begin(), phases.end());

    LatticeConfig config;
    config.species = species;
    const double k = species.clock_wavenumber();
    const double rabi = hz_to_angular(p.nonnegative("rabi_hz"));
    const double detuning = hz_to_angular(p.number("detuning_hz"));
    config.field_0 = {rabi, detuning, k, 0.0, Qubit::Zero};
    config.field_1 = {rabi, detuning, k, 0.0, Qubit::One};
    config.stark = {hz_to_angular(p.number("stark_g_hz", 0.0)), hz_to_angular(p.number("stark_e_hz", 0.0))};
    config.include_offresonant = p.flag("include_offresonant", true);

    const std::vector<double> grid = period_grid(config, points, periods);
    const std::vector<ScanRow> rows = potential_scan(config, phases, grid);

    const std::vector<std::string> columns = {"phi_rad", "x_m", "spin", "v_lower_hz", "v_upper_hz", "admixture_e"};
    if (format == Format::Json) {
        std::vector<std::vector<double>> table;
        table.reserve(rows.size());
        for (const auto& r : rows) {
            table.push_back({r.phase, r.sample.x, static_cast<double>(index(r.spin)),
                             angular_to_hz(r.sample.v_lower), angular_to_hz(r.sample.v_upper), r.sample.admixture_e});
        }
        return json_table(columns, table);
    }
    std::string out = "phi_rad,x_m,spin,v_lower_hz,v_upper_hz,admixture_e\n";
    for (const auto& r : rows) {
        out += csv_line({format_double(r.phase), format_double(r.sample.x), std::to_string(index(r.spin)),
                         format_double(angular_to_hz(r.sample.v_lower)), format_double(angular_to_hz(r.sample.v_upper)),
                         format_double(r.sample.admixture_e)});
    }
    return out;
}

std::string blockade_scan_artifact(const nlohmann::json& params, Format format, int threads)
{
    const Params p(params, "params", {"family", "ratios", "other_ratio", "rabi_hz"});
    const std::string family_name = p.string("family", "lossy");
    ScanFamily family;
    if (family_name == "lossy") {
        family = ScanFamily::Lossy;
    } else if (family_name == "interaction") {
        family = ScanFamily::Interaction;
    } else {
        throw ConfigError("params.family must be 'lossy' or 'interaction'");
    }
    const std::vector<double> ratios = p.numbers("ratios");
    if (ratios.empty()) throw ConfigError("ratios must be nonempty");
    const double other = p.number("other_ratio", 0.0);
    const double rabi = hz_to_angular(p.nonnegative("rabi_hz", 1e3));
    if (rabi == 0.0) throw ConfigError("params.rabi_hz must be > 0");

    const std::vector<ScanPoint> points = fidelity_scan(family, ratios, other, rabi, threads);

    const std::vector<std::string> columns = {"ratio", "loss_probability", "process_fidelity", "gamma_eff_prediction"};
    std::vector<std::vector<double>> table;
    for (const ScanPoint& pt : points) {
        const BlockadeModel m = scan_model(family, pt.ratio, other, rabi);
        const GammaEff g = gamma_eff(LossSystem{m.rabi, m.interaction, m.loss_rate});
        const double predicted_loss = -std::expm1(-g.rate * kTwoPi / m.rabi);
        table.push_back({pt.ratio, pt.loss_probability, pt.process_fidelity, predicted_loss});
    }
    if (format == Format::Json) return json_table(columns, table);

    std::string out = "ratio,loss_probability,process_fidelity,gamma_eff_prediction\n";
    for (const auto& row : table) {
        out += csv_line({format_double(row[0]), format_double(row[1]), format_double(row[2]), format_double(row[3])});
    }
    return out;
}

std::string report_artifact(const nlohmann::json& params, const Species& species)
{
    const Params p(params, "params", {"gate", "addressability", "budget", "zeeman", "collisional"});
    nlohmann::json out = {{"species", species_to_json(species)}};
    bool any = false;
    if (p.has("gate")) {
        out["gate"] = to_json(gate_truth_table(gate_model_from(p.object("gate"))));
        any = true;
    }
    if (p.has("addressability")) {
        out["addressability"] = addressability_json(p.object("addressability"), species);
        any = true;
    }
    if (p.has("budget")) {
        out["budget"] = budget_json(p.object("budget"), species);
        any = true;
    }
    if (p.has("zeeman")) {
        out["zeeman"] = zeeman_json(p.object("zeeman"), species);
        any = true;
    }
    if (p.has("collisional")) {
        out["collisional"] = collisional_json(p.object("collisional"));
        any = true;
    }
    if (!any) throw ConfigError("report needs at least one of gate, addressability, budget, zeeman, collisional");
    return out.dump(2) + "\n";
}

void write_atomic(const std::filesystem::path& path, const std::string& content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("cannot write output file: " + path.string());
        f << content;
        f.flush();
        if (!f) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw ConfigError("cannot write output file: " + path.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw ConfigError("cannot move output into place: " + path.string());
    }
}

int run(const Options& options, std::ostream& out, std::ostream& err)
{
    try {
        const nlohmann::json raw = read_json_file(options.config_path);
        const RunConfig cfg = parse_run_config(raw, options.config_path.parent_path());

        std::optional<Command> command = cfg.command;
        if (options.command) {
            command = parse_command(*options.command);
            if (!command) throw ConfigError("unknown command '" + *options.command + "'");
            if (cfg.command && *cfg.command != *command) {
                throw ConfigError("command '" + *options.command + "' does not match config.command");
            }
        }
        if (!command) throw ConfigError("no command given (config.command or positional argument)");

        std::optional<Format> format = cfg.format;
        if (options.format) {
            format = parse_format(*options.format);
            if (!format) throw ConfigError("--format must be 'csv' or 'json'");
        }
        if (options.threads < 1) throw ConfigError("--threads must be >= 1");

        std::optional<std::filesystem::path> preset = options.preset ? options.preset : cfg.preset;
        const Species species = preset ? load_species_preset(*preset) : strontium87();

        std::string content;
        switch (*command) {
        case Command::PotentialScan:
            content = potential_scan_artifact(cfg.params, species, format.value_or(Format::Csv));
            break;
        case Command::BlockadeScan:
            content = blockade_scan_artifact(cfg.params, format.value_or(Format::Csv), options.threads);
            break;
        case Command::Report:
            if (format == Format::Csv) throw ConfigError("report is emitted as JSON only");
            content = report_artifact(cfg.params, species);
            break;
        }

        const std::optional<std::filesystem::path> target = options.out ? options.out : cfg.output;
        if (!target) {
            out << content;
            return kExitOk;
        }
        write_atomic(*target, content);

        nlohmann::json meta = {
            {"tool", "dresslat"},
            {"command", command_name(*command)},
            {"config", options.config_path.string()},
            {"preset", preset ? preset->string() : std::string("builtin:87Sr")},
            {"threads", options.threads},
            {"generated_at", utc_timestamp()},
        };
        std::filesystem::path sidecar = *target;
        sidecar += ".meta.json";
        write_atomic(sidecar, meta.dump(2) + "\n");
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const nlohmann::json::exception& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace dresslat::cli
