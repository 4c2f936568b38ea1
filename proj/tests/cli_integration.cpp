// End-to-end checks of the command-line tool: exit codes, CSV shape, and
// manifest contents. argv[1] is the path to the CLI binary.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "opamech/params.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAILED", what.c_str());
    if (!ok) ++g_failures;
}

int run_command(const std::string& command) {
    const int status = std::system(command.c_str());
    if (status == -1) return -1;
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void spit(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) lines.push_back(current);
    return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(current);
    return fields;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::printf("usage: cli_integration <path-to-cli>\n");
        return 1;
    }
    const std::string cli = std::string("'") + argv[1] + "'";
    const fs::path dir = fs::temp_directory_path() /
                         ("opamech_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string quiet = " 2> '" + (dir / "err.txt").string() + "'";

    // Undriven point: exit 0, one exactly-zero E_N record, coherent manifest.
    {
        const fs::path cfg = dir / "undriven.json";
        spit(cfg, "{\"power_1_w\": 0.0, \"power_2_w\": 0.0, "
                  "\"opa_gain_in_kappa\": 0.0}\n");
        const fs::path out = dir / "point.csv";
        const int rc = run_command(cli + " point --config '" + cfg.string() +
                                   "' --out '" + out.string() + "'" + quiet);
        check(rc == 0, "point run exits 0 (got " + std::to_string(rc) + ")");
        const auto lines = lines_of(slurp(out));
        check(lines.size() == 2, "point CSV has a header plus one record");
        const auto fields = fields_of(lines.size() > 1 ? lines[1] : "");
        check(fields.size() == 7 && fields[1] == "true" && fields[2] == "0",
              "undriven point is stable with E_N printed as 0");

        json manifest = json::parse(slurp(out.string() + ".manifest.json"));
        const opamech::PhysicalParams defaults{};
        const double kappa = opamech::cavity_decay_rate(
            defaults.finesse, defaults.cavity_length);
        check(manifest["derived"]["kappa_rad_s"].get<double>() == kappa,
              "manifest decay rate round-trips the derived value exactly");
        check(manifest["amplitude_model"] == "paper" &&
                  manifest["command"] == "point" &&
                  manifest["records"] == 1 &&
                  manifest["stable_records"] == 1,
              "manifest records model, command, and record counts");
    }

    // Default phase sweep: header plus 201 rows, default filename honored.
    {
        const int rc = run_command("cd '" + dir.string() + "' && " + cli +
                                   " sweep-theta" + quiet);
        check(rc == 0, "sweep-theta run exits 0 (got " + std::to_string(rc) +
                           ")");
        const auto lines = lines_of(slurp(dir / "sweep_theta.csv"));
        check(lines.size() == 202,
              "default phase sweep yields 202 CSV lines (got " +
                  std::to_string(lines.size()) + ")");
        check(!lines.empty() &&
                  lines[0] == "sweep_value,stable,E_N,nu_minus_tilde,"
                              "ratio_mode1,ratio_mode2,spectral_abscissa",
              "sweep CSV header matches the documented schema");
    }

    // Default gain sweep: 141 rows, all stable at the reference point.
    {
        const fs::path out = dir / "gain.csv";
        const int rc = run_command(cli + " sweep-gain --out '" + out.string() +
                                   "'" + quiet);
        check(rc == 0, "sweep-gain run exits 0 (got " + std::to_string(rc) +
                           ")");
        const auto lines = lines_of(slurp(out));
        bool all_stable = lines.size() == 142;
        for (size_t i = 1; i < lines.size(); ++i) {
            all_stable = all_stable && fields_of(lines[i])[1] == "true";
        }
        check(all_stable, "all 141 default gain-sweep records are stable");
    }

    // Validation failures: exit code 1 and a pointed message.
    {
        const fs::path cfg = dir / "bad_finesse.json";
        spit(cfg, "{\"finesse\": -1.0}\n");
        const int rc = run_command(cli + " point --config '" + cfg.string() +
                                   "' --out '" + (dir / "x.csv").string() +
                                   "'" + quiet);
        const std::string err = slurp(dir / "err.txt");
        check(rc == 1, "negative finesse exits 1 (got " + std::to_string(rc) +
                           ")");
        check(err.find("finesse") != std::string::npos,
              "error message names the offending field");
    }
    {
        const fs::path cfg = dir / "unknown.json";
        spit(cfg, "{\"bogus_key\": 1.0}\n");
        const int rc = run_command(cli + " point --config '" + cfg.string() +
                                   "' --out '" + (dir / "x.csv").string() +
                                   "'" + quiet);
        const std::string err = slurp(dir / "err.txt");
        check(rc == 1 && err.find("bogus_key") != std::string::npos,
              "unknown config key is rejected with exit 1");
    }

    // Model selection is recorded in the manifest.
    {
        const fs::path out = dir / "exact.csv";
        const int rc = run_command(cli + " point --model exact --out '" +
                                   out.string() + "'" + quiet);
        json manifest = json::parse(slurp(out.string() + ".manifest.json"));
        check(rc == 0 && manifest["amplitude_model"] == "exact",
              "--model exact is honored and recorded");
    }

    // Ratio-focused sweep shares the gain-sweep machinery.
    {
        const fs::path out = dir / "ratios.csv";
        const int rc = run_command(cli + " sweep-ratios --out '" +
                                   out.string() + "'" + quiet);
        const auto lines = lines_of(slurp(out));
        check(rc == 0 && lines.size() == 142,
              "sweep-ratios writes the default 141-point grid");
    }

    // Gain optimization: one row, documented schema, interior maximum.
    {
        const fs::path cfg = dir / "narrow.json";
        spit(cfg, "{\"optimal_gain_lo_in_kappa\": 5.0, "
                  "\"optimal_gain_hi_in_kappa\": 6.0}\n");
        const fs::path out = dir / "opt.csv";
        const int rc = run_command(cli + " optimal-gain --config '" +
                                   cfg.string() + "' --out '" + out.string() +
                                   "'" + quiet);
        check(rc == 0, "optimal-gain run exits 0 (got " + std::to_string(rc) +
                           ")");
        const auto lines = lines_of(slurp(out));
        check(lines.size() == 2 &&
                  lines[0] == "temperature_k,gain_opt_in_kappa,E_N_opt,"
                              "baseline_E_N,enhancement_percent,"
                              "bracket_lo_in_kappa,bracket_hi_in_kappa,"
                              "boundary_maximum",
              "optimal-gain CSV has one record under the documented header");
        json manifest = json::parse(slurp(out.string() + ".manifest.json"));
        check(manifest["command"] == "optimal-gain" &&
                  manifest.contains("boundary_maximum") &&
                  manifest["boundary_maximum"] == false,
              "optimal-gain manifest flags the interior maximum");
    }

    // Temperature scan: one row per grid temperature.
    {
        const fs::path cfg = dir / "scan.json";
        spit(cfg, "{\"temp_min_k\": 0.01, \"temp_max_k\": 0.1, "
                  "\"temp_points\": 2, \"optimal_gain_lo_in_kappa\": 5.0, "
                  "\"optimal_gain_hi_in_kappa\": 6.0}\n");
        const fs::path out = dir / "scan.csv";
        const int rc = run_command(cli + " gain-vs-temperature --config '" +
                                   cfg.string() + "' --out '" + out.string() +
                                   "'" + quiet);
        check(rc == 0, "gain-vs-temperature run exits 0 (got " +
                           std::to_string(rc) + ")");
        const auto lines = lines_of(slurp(out));
        json manifest = json::parse(slurp(out.string() + ".manifest.json"));
        check(lines.size() == 3 && manifest["records"] == 2 &&
                  manifest.contains("gain_monotonicity_violations"),
              "temperature scan yields one row per temperature plus the "
              "monotonicity tally");
    }

    // Missing subcommand is a usage error.
    {
        const int rc = run_command(cli + quiet);
        check(rc != 0, "missing subcommand exits nonzero");
    }

    // Atomic writes leave no temporary droppings.
    {
        bool clean = true;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.path().extension() == ".tmp") clean = false;
        }
        check(clean, "no stray .tmp files remain after all runs");
    }

    fs::remove_all(dir);
    std::printf("%s: %d check(s) failed\n",
                g_failures == 0 ? "CLI INTEGRATION PASSED"
                                : "CLI INTEGRATION FAILED",
                g_failures);
    return g_failures;
}
