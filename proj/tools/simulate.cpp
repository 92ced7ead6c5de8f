#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "t2dex/scenario.hpp"

namespace {

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::string& config_path, const std::optional<std::string>& mode,
        const std::optional<std::string>& out_dir, bool seed_check)
{
    std::optional<std::filesystem::path> out;
    if (out_dir) {
        out = *out_dir;
    }
    t2dex::ScenarioConfig cfg = t2dex::load_config(config_path, mode, out);

    t2dex::ScenarioResult result = t2dex::run_scenario(cfg);
    t2dex::emit_outputs(result, cfg);
    std::printf("mode=%s duration=%g d samples=%zu decisions=%zu final_G=%.2f mg/dl\n",
                result.report.mode.c_str(), result.report.duration, result.report.n_samples,
                result.report.n_decisions, result.report.final_G);
    std::printf("outputs written to %s\n", cfg.out_dir.string().c_str());

    if (seed_check) {
        t2dex::ScenarioConfig check_cfg = cfg;
        check_cfg.out_dir = cfg.out_dir / "seed-check";
        t2dex::ScenarioResult rerun = t2dex::run_scenario(check_cfg);
        t2dex::emit_outputs(rerun, check_cfg);
        for (const char* name : {"trajectory.csv", "decisions.csv"}) {
            if (slurp(cfg.out_dir / name) != slurp(check_cfg.out_dir / name)) {
                std::fprintf(stderr, "seed-check: FAILED, %s differs between reruns\n", name);
                return 2;
            }
        }
        std::printf("seed-check: OK (reruns byte-identical)\n");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Type-2-diabetes progression simulator with an exercise-dose MPC"};
    app.name("simulate");

    std::string config_path;
    std::optional<std::string> mode;
    std::optional<std::string> out_dir;
    bool seed_check = false;

    app.add_option("--config", config_path, "Scenario config file")->required();
    app.add_option("--mode", mode, "Override run mode")
        ->check(CLI::IsMember({"open-loop", "mpc"}));
    app.add_option("--out", out_dir, "Output directory (overrides config)");
    app.add_flag("--seed-check", seed_check, "Rerun and verify byte-identical outputs");

    CLI11_PARSE(app, argc, argv);

    try {
        return run(config_path, mode, out_dir, seed_check);
    } catch (const t2dex::NumericalFault& e) {
        std::fprintf(stderr, "numerical fault at t=%g d: %s\n", e.t_days, e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
