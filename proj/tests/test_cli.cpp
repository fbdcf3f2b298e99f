#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dresslat/cli.hpp"
#include "dresslat/units.hpp"

using namespace dresslat;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir()
    {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("dresslat_cli_" + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    const fs::path& path() const { return path_; }

    fs::path write(const std::string& name, const nlohmann::json& j) const
    {
        const fs::path p = path_ / name;
        std::ofstream(p) << j.dump(2);
        return p;
    }

private:
    fs::path path_;
};

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(const fs::path& config, std::optional<fs::path> out = std::nullopt,
               std::optional<std::string> format = std::nullopt, int threads = 1)
{
    cli::Options o;
    o.config_path = config;
    o.out = out;
    o.format = format;
    o.threads = threads;
    std::ostringstream so, se;
    const int code = cli::run(o, so, se);
    return {code, so.str(), se.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

nlohmann::json scan_config()
{
    return {{"command", "potential_scan"},
            {"params",
             {{"rabi_hz", 120e3},
              {"detuning_hz", -90e3},
              {"stark_g_hz", 30e3},
              {"stark_e_hz", 90e3},
              {"phases_rad", {1.5707963267948966, 0.0}},
              {"points_per_period", 64}}}};
}

nlohmann::json blockade_config(std::vector<double> ratios)
{
    return {{"command", "blockade_scan"}, {"params", {{"family", "lossy"}, {"ratios", ratios}}}};
}

}  // namespace

TEST_SUITE("cli")
{
    TEST_CASE("command and format names")
    {
        CHECK(cli::parse_command("potential_scan") == cli::Command::PotentialScan);
        CHECK(cli::parse_command("blockade-scan") == cli::Command::BlockadeScan);
        CHECK(cli::parse_command("report") == cli::Command::Report);
        CHECK_FALSE(cli::parse_command("plot").has_value());
        CHECK(cli::command_name(cli::Command::BlockadeScan) == "blockade_scan");
        CHECK(cli::parse_format("json") == cli::Format::Json);
        CHECK_FALSE(cli::parse_format("xml").has_value());
    }

    TEST_CASE("potential scan csv")
    {
        TempDir dir;
        const Result r = run_cli(dir.write("scan.json", scan_config()));
        REQUIRE(r.code == cli::kExitOk);
        const auto rows = parse_csv(r.out);
        REQUIRE(rows.size() == 1 + 2 * 2 * 64);
        CHECK(rows[0] == std::vector<std::string>{"phi_rad", "x_m", "spin", "v_lower_hz", "v_upper_hz", "admixture_e"});
        // Phases come out sorted; spin 0 then spin 1 per phase.
        CHECK(std::stod(rows[1][0]) == 0.0);
        CHECK(rows[1][2] == "0");
        CHECK(rows[65][2] == "1");
        CHECK(std::stod(rows.back()[0]) == doctest::Approx(kPi / 2.0));
        for (int j = 0; j < 64; ++j) {
            REQUIRE(rows[1 + j][1] == rows[65 + j][1]);
            REQUIRE(rows[1 + j][3] == rows[65 + j][3]);
        }
        // Round-trip precision.
        const double x = std::stod(rows[2][1]);
        std::ostringstream os;
        os.precision(17);
        os << x;
        CHECK(os.str() == rows[2][1]);
    }

    TEST_CASE("potential scan json")
    {
        TempDir dir;
        const Result r = run_cli(dir.write("scan.json", scan_config()), std::nullopt, "json");
        REQUIRE(r.code == cli::kExitOk);
        const nlohmann::json j = nlohmann::json::parse(r.out);
        CHECK(j.at("columns").size() == 6);
        CHECK(j.at("rows").size() == 256);
    }

    TEST_CASE("schema violations exit with 2 and write nothing")
    {
        TempDir dir;
        const fs::path out = dir.path() / "out.csv";

        nlohmann::json empty = scan_config();
        empty["params"]["phases_rad"] = nlohmann::json::array();
        Result r = run_cli(dir.write("empty.json", empty), out);
        CHECK(r.code == cli::kExitConfig);
        CHECK(r.err.find("phases must be nonempty") != std::string::npos);
        CHECK_FALSE(fs::exists(out));

        nlohmann::json extra = scan_config();
        extra["params"]["colour"] = 1;
        r = run_cli(dir.write("extra.json", extra), out);
        CHECK(r.code == cli::kExitConfig);
        CHECK(r.err.find("colour") != std::string::npos);

        nlohmann::json top = scan_config();
        top["verbose"] = true;
        CHECK(run_cli(dir.write("top.json", top), out).code == cli::kExitConfig);

        nlohmann::json bad_type = scan_config();
        bad_type["params"]["rabi_hz"] = "fast";
        CHECK(run_cli(dir.write("type.json", bad_type), out).code == cli::kExitConfig);

        CHECK(run_cli(dir.path() / "missing.json", out).code == cli::kExitConfig);
        std::ofstream(dir.path() / "broken.json") << "{ not json";
        CHECK(run_cli(dir.path() / "broken.json", out).code == cli::kExitConfig);

        CHECK(run_cli(dir.write("fmt.json", scan_config()), out, "xml").code == cli::kExitConfig);
        CHECK(run_cli(dir.write("thr.json", scan_config()), out, std::nullopt, 0).code == cli::kExitConfig);

        nlohmann::json preset = scan_config();
        preset["preset"] = "nowhere.json";
        CHECK(run_cli(dir.write("preset.json", preset), out).code == cli::kExitConfig);

        CHECK_FALSE(fs::exists(out));
        for (const auto& entry : fs::directory_iterator(dir.path())) {
            CHECK(entry.path().filename().string().find(".tmp.") == std::string::npos);
        }
    }

    TEST_CASE("physics domain errors exit with 3")
    {
        TempDir dir;
        CHECK(run_cli(dir.write("neg.json", blockade_config({-1.0}))).code == cli::kExitDomain);

        // Spectrum does not reach twice the trap frequency.
        nlohmann::json budget;
        budget["trap_frequency_hz"] = 15e3;
        budget["noise_psd"]["frequency_hz"] = {1.0, 10.0};
        budget["noise_psd"]["psd_per_hz"] = {1.0, 1.0};
        nlohmann::json flat;
        flat["command"] = "report";
        flat["params"]["budget"] = budget;
        const Result r = run_cli(dir.write("budget.json", flat));
        CHECK(r.code == cli::kExitDomain);
        CHECK(r.err.find("domain error") != std::string::npos);
    }

    TEST_CASE("blockade scan columns and values")
    {
        TempDir dir;
        const Result r = run_cli(dir.write("b.json", blockade_config({2, 5, 10, 20, 50, 100})), std::nullopt,
                                 std::nullopt, 2);
        REQUIRE(r.code == cli::kExitOk);
        const auto rows = parse_csv(r.out);
        REQUIRE(rows.size() == 7);
        CHECK(rows[0] ==
              std::vector<std::string>{"ratio", "loss_probability", "process_fidelity", "gamma_eff_prediction"});
        for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][1]) < std::stod(rows[i - 1][1]));
        const double loss = std::stod(rows[6][1]);
        const double predicted = std::stod(rows[6][3]);
        CHECK(loss == doctest::Approx(0.061).epsilon(0.01));
        CHECK(std::abs(predicted - loss) / loss < 0.05);

        const Result zero = run_cli(dir.write("z.json", blockade_config({0.0})));
        REQUIRE(zero.code == cli::kExitOk);
        CHECK(std::abs(std::stod(parse_csv(zero.out)[1][1])) < 1e-12);
    }

    TEST_CASE("report contents")
    {
        TempDir dir;
        const nlohmann::json cfg = {
            {"command", "report"},
            {"params",
             {{"gate", {{"model", "perfect"}}},
              {"addressability",
               {{"gradient_gauss_per_cm", 100.0},
                {"site_spacing_m", 349e-9},
                {"trap_frequency_hz", 15e3},
                {"raman_rabi_hz", 1e3}}},
              {"budget",
               {{"trap_frequency_hz", 15e3},
                {"noise_psd", {{"frequency_hz", {1e3, 1e5}}, {"psd_per_hz", {1e-13, 1e-13}}}},
                {"wavelength_epsilon", 0.0}}},
              {"collisional", {{"onsite_interaction_hz", 1e3}, {"hold_time_s", 0.5e-3}}}}}};
        const Result r = run_cli(dir.write("r.json", cfg));
        REQUIRE(r.code == cli::kExitOk);
        const nlohmann::json j = nlohmann::json::parse(r.out);
        const nlohmann::json& table = j.at("gate").at("truth_table");
        CHECK(table.at(0).at("output").at("00").at(0).get<double>() == doctest::Approx(1.0));
        CHECK(table.at(1).at("output").at("01").at(0).get<double>() == doctest::Approx(-1.0));
        CHECK(table.at(2).at("output").at("10").at(0).get<double>() == doctest::Approx(1.0));
        CHECK(table.at(3).at("output").at("11").at(0).get<double>() == doctest::Approx(1.0));
        CHECK(j.at("addressability").at("site_splitting_hz").get<double>() == doctest::Approx(14309.0));
        CHECK(j.at("budget").at("delta_omega_exact_rad_s").get<double>() == 0.0);
        CHECK(j.at("collisional").at("phase_rad").get<double>() == doctest::Approx(kPi));
        CHECK(j.contains("species"));

        CHECK(run_cli(dir.write("csv.json", cfg), std::nullopt, "csv").code == cli::kExitConfig);
        CHECK(run_cli(dir.write("none.json", {{"command", "report"}, {"params", nlohmann::json::object()}})).code ==
              cli::kExitConfig);
    }

    TEST_CASE("file output is reproducible and metadata stays in the sidecar")
    {
        TempDir dir;
        const fs::path cfg = dir.write("b.json", blockade_config({2, 20}));
        const fs::path a = dir.path() / "a.csv";
        const fs::path b = dir.path() / "b.csv";
        REQUIRE(run_cli(cfg, a).code == cli::kExitOk);
        REQUIRE(run_cli(cfg, b, std::nullopt, 2).code == cli::kExitOk);
        CHECK(slurp(a) == slurp(b));
        const nlohmann::json meta = nlohmann::json::parse(slurp(dir.path() / "a.csv.meta.json"));
        CHECK(meta.at("command") == "blockade_scan");
        CHECK(meta.contains("generated_at"));
        CHECK(slurp(a).find("generated_at") == std::string::npos);
    }

    TEST_CASE("config paths resolve relative to the config file")
    {
        TempDir dir;
        fs::create_directories(dir.path() / "presets");
        std::ofstream(dir.path() / "presets" / "sr.json") << species_to_json(strontium87()).dump();
        nlohmann::json cfg = scan_config();
        cfg["preset"] = "presets/sr.json";
        cfg["output"] = "scan.csv";
        REQUIRE(run_cli(dir.write("c.json", cfg)).code == cli::kExitOk);
        CHECK(fs::exists(dir.path() / "scan.csv"));
    }

    TEST_CASE("command argument must agree with the config")
    {
        TempDir dir;
        cli::Options o;
        o.config_path = dir.write("s.json", scan_config());
        o.command = "report";
        std::ostringstream so, se;
        CHECK(cli::run(o, so, se) == cli::kExitConfig);
        o.command = "potential-scan";
        CHECK(cli::run(o, so, se) == cli::kExitOk);
    }
}
