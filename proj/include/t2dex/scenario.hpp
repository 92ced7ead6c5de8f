#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "t2dex/mpc.hpp"
#include "t2dex/params_io.hpp"
#include "t2dex/prescription.hpp"

namespace t2dex {

enum class RunMode { OpenLoop, Mpc };

/// A fully validated simulation scenario; every default is materialized.
struct ScenarioConfig {
    RunMode mode;
    StateVector initial_state;
    double duration;  ///< days
    double h;         ///< integration step [days]
    std::filesystem::path config_path;
    std::filesystem::path params_path;
    ParameterFile params;
    ControllerConfig controller; ///< meaningful in mpc mode only
    double program_u_bar;        ///< display intensity [percent]
    double program_T;            ///< display period [days]
    std::filesystem::path out_dir;
};

/// Summary written next to the CSVs; every number is recomputable from them.
struct RunReport {
    std::string mode;
    double duration;
    double final_G;
    double min_G;
    double max_G;
    size_t n_samples;
    size_t n_decisions;
    double total_prescribed_minutes;
    size_t clamped_prescriptions;
    std::string config_hash;
    std::string params_hash;
    std::string version;
};

struct ScenarioResult {
    Trajectory trajectory;
    std::vector<ControlDecision> decisions; ///< empty in open-loop mode
    RunReport report;
};

/// Loads and validates a scenario config file (same flat key-value format as
/// the parameter file). `mode_override` / `out_override` apply CLI flags.
ScenarioConfig load_config(const std::filesystem::path& path,
                           const std::optional<std::string>& mode_override = {},
                           const std::optional<std::filesystem::path>& out_override = {});

/// Runs the scenario: open-loop integrates with u_eq = 0; mpc delegates to
/// run_closed_loop.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// Writes trajectory.csv, decisions.csv, and report.json into cfg.out_dir.
/// Files appear atomically (temp file + rename).
void emit_outputs(const ScenarioResult& result, const ScenarioConfig& cfg);

/// FNV-1a hash of a file's bytes, hex-encoded. Used for report provenance.
std::string file_hash(const std::filesystem::path& path);

} // namespace t2dex
