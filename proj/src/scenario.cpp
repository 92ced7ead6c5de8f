#include "t2dex/scenario.hpp"

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace t2dex {

namespace {

constexpr const char* kVersion = "1.0.0";

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open file: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class KeyValueView {
public:
    KeyValueView(std::map<std::string, std::string> kv, std::string source)
        : kv_(std::move(kv)), source_(std::move(source)) {}

    std::string require(const std::string& key)
    {
        auto it = kv_.find(key);
        if (it == kv_.end()) {
            throw ValidationError(source_ + ": missing required field '" + key + "'");
        }
        std::string v = it->second;
        kv_.erase(it);
        return v;
    }

    std::optional<std::string> take(const std::string& key)
    {
        auto it = kv_.find(key);
        if (it == kv_.end()) {
            return std::nullopt;
        }
        std::string v = it->second;
        kv_.erase(it);
        return v;
    }

    double require_number(const std::string& key) { return to_number(key, require(key)); }

    double number_or(const std::string& key, double fallback)
    {
        auto v = take(key);
        return v ? to_number(key, *v) : fallback;
    }

    void reject_leftovers() const
    {
        if (!kv_.empty()) {
            throw ValidationError(source_ + ": unknown field '" + kv_.begin()->first + "'");
        }
    }

private:
    double to_number(const std::string& key, const std::string& value) const
    {
        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || *end != '\0') {
            throw ValidationError(source_ + ": field '" + key + "' is not a number: '" + value + "'");
        }
        return v;
    }

    std::map<std::string, std::string> kv_;
    std::string source_;
};

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_atomic(const std::filesystem::path& target, const std::string& content)
{
    const std::filesystem::path tmp = target.parent_path() / (".tmp." + target.filename().string());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ValidationError("cannot write file: " + tmp.string());
        }
        out << content;
        out.flush();
        if (!out) {
            throw ValidationError("write failed: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, target);
}

} // namespace

std::string file_hash(const std::filesystem::path& path)
{
    const std::string bytes = read_file(path);
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

ScenarioConfig load_config(const std::filesystem::path& path,
                           const std::optional<std::string>& mode_override,
                           const std::optional<std::filesystem::path>& out_override)
{
    const std::string source = path.string();
    KeyValueView kv(parse_key_values(read_file(path), source), source);

    ScenarioConfig cfg{};
    cfg.config_path = path;

    std::string mode = mode_override ? *mode_override : kv.require("mode");
    if (mode_override) {
        kv.take("mode");
    }
    if (mode == "open-loop") {
        cfg.mode = RunMode::OpenLoop;
    } else if (mode == "mpc") {
        cfg.mode = RunMode::Mpc;
    } else {
        throw ValidationError(source + ": mode must be 'open-loop' or 'mpc', got '" + mode + "'");
    }

    cfg.params_path = kv.require("params");
    if (cfg.params_path.is_relative()) {
        cfg.params_path = path.parent_path() / cfg.params_path;
    }
    cfg.params = load_params(cfg.params_path);

    cfg.duration = kv.require_number("duration_days");
    if (!(cfg.duration > 0.0)) {
        throw ValidationError(source + ": duration_days must be strictly positive");
    }
    cfg.h = kv.number_or("h_days", 0.01);
    if (!(cfg.h > 0.0)) {
        throw ValidationError(source + ": h_days must be strictly positive");
    }

    cfg.initial_state = {kv.require_number("G0"), kv.require_number("I0"),
                         kv.require_number("beta0"), kv.require_number("SI0"),
                         kv.require_number("Vl0")};
    if (!is_physiological(cfg.initial_state)) {
        throw ValidationError(source + ": initial state violates physiological bounds");
    }

    if (cfg.mode == RunMode::Mpc) {
        cfg.controller.N = static_cast<int>(kv.require_number("controller.N"));
        cfg.controller.T = kv.require_number("controller.T_days");
        cfg.controller.lambda = kv.require_number("controller.lambda");
        cfg.controller.u_eq_max = kv.require_number("controller.u_eq_max");
        cfg.controller.solver.grid_points =
            static_cast<int>(kv.number_or("controller.grid_points", 61));
        cfg.controller.solver.tol = kv.number_or("controller.tol", 1e-4);
        cfg.controller.solver.h = kv.number_or("controller.h_days", cfg.h);
        cfg.controller.validate();
        if (cfg.duration < cfg.controller.T) {
            throw ValidationError(source +
                                  ": duration_days cannot complete one control period");
        }
    } else {
        for (const char* key : {"controller.N", "controller.T_days", "controller.lambda",
                                "controller.u_eq_max", "controller.grid_points",
                                "controller.tol", "controller.h_days"}) {
            kv.take(key);
        }
    }

    cfg.program_u_bar = kv.number_or("program.u_bar", 50.0);
    cfg.program_T = kv.number_or("program.T_days", cfg.mode == RunMode::Mpc ? cfg.controller.T : 2.0);
    if (!(cfg.program_u_bar > 0.0 && cfg.program_u_bar <= 100.0)) {
        throw ValidationError(source + ": program.u_bar must lie in (0, 100]");
    }
    if (!(cfg.program_T > 0.0)) {
        throw ValidationError(source + ": program.T_days must be strictly positive");
    }

    const std::filesystem::path out_in_file = kv.take("out").value_or("out");
    cfg.out_dir = out_override ? *out_override : out_in_file;
    kv.reject_leftovers();
    return cfg;
}

namespace {

// Session minutes for one decision; infeasible requests are clamped to the
// period and counted, so a partial recommendation still reaches the report.
double decision_minutes(const ControlDecision& dec, const ScenarioConfig& cfg,
                        size_t* clamped)
{
    const PrescriptionMapper mapper(cfg.params.delta_calibration);
    try {
        return mapper.session_minutes(dec.u_eq_star, cfg.program_u_bar, cfg.program_T);
    } catch (const InfeasibleDuration& e) {
        if (clamped) {
            ++*clamped;
        }
        return e.clamped_minutes;
    }
}

} // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg)
{
    ScenarioResult result;
    if (cfg.mode == RunMode::OpenLoop) {
        TimeGrid grid{0.0, cfg.duration, cfg.h};
        result.trajectory =
            integrate(cfg.initial_state, InputSchedule::constant(0.0), grid, cfg.params.model);
    } else {
        ClosedLoopResult loop =
            run_closed_loop(cfg.initial_state, cfg.controller, cfg.params.model,
                            cfg.duration, cfg.h);
        result.trajectory = std::move(loop.trajectory);
        result.decisions = std::move(loop.decisions);
    }

    RunReport& rep = result.report;
    rep.mode = cfg.mode == RunMode::OpenLoop ? "open-loop" : "mpc";
    rep.duration = cfg.duration;
    rep.final_G = result.trajectory.back().x.G;
    rep.min_G = rep.max_G = result.trajectory.front().x.G;
    for (const auto& s : result.trajectory) {
        rep.min_G = std::min(rep.min_G, s.x.G);
        rep.max_G = std::max(rep.max_G, s.x.G);
    }
    rep.n_samples = result.trajectory.size();
    rep.n_decisions = result.decisions.size();
    rep.total_prescribed_minutes = 0.0;
    rep.clamped_prescriptions = 0;
    for (const auto& dec : result.decisions) {
        rep.total_prescribed_minutes += decision_minutes(dec, cfg, &rep.clamped_prescriptions);
    }
    rep.config_hash = cfg.config_path.empty() ? "" : file_hash(cfg.config_path);
    rep.params_hash = file_hash(cfg.params_path);
    rep.version = kVersion;
    return result;
}

void emit_outputs(const ScenarioResult& result, const ScenarioConfig& cfg)
{
    std::filesystem::create_directories(cfg.out_dir);

    std::string traj_csv = "t_days,G,I,beta,S_I,V_l,u_eq_applied\n";
    for (const auto& s : result.trajectory) {
        traj_csv += format_double(s.t) + ',' + format_double(s.x.G) + ',' +
                    format_double(s.x.I) + ',' + format_double(s.x.beta) + ',' +
                    format_double(s.x.S_I) + ',' + format_double(s.x.V_l) + ',' +
                    format_double(s.u) + '\n';
    }
    write_atomic(cfg.out_dir / "trajectory.csv", traj_csv);

    std::string dec_csv = "k,t_days,u_eq_star,cost_star,delta_min,weekly_dose_min\n";
    for (const auto& dec : result.decisions) {
        const double delta = decision_minutes(dec, cfg, nullptr);
        const double weekly = weekly_dose({cfg.program_u_bar, cfg.program_T, delta}).minutes_per_week;
        dec_csv += std::to_string(dec.k) + ',' + format_double(dec.t_apply) + ',' +
                   format_double(dec.u_eq_star) + ',' + format_double(dec.cost_star) + ',' +
                   format_double(delta) + ',' + format_double(weekly) + '\n';
    }
    write_atomic(cfg.out_dir / "decisions.csv", dec_csv);

    nlohmann::json rep;
    const RunReport& r = result.report;
    rep["mode"] = r.mode;
    rep["duration_days"] = r.duration;
    rep["final_G"] = r.final_G;
    rep["min_G"] = r.min_G;
    rep["max_G"] = r.max_G;
    rep["n_samples"] = r.n_samples;
    rep["n_decisions"] = r.n_decisions;
    rep["total_prescribed_minutes"] = r.total_prescribed_minutes;
    rep["clamped_prescriptions"] = r.clamped_prescriptions;
    rep["who_minimum_weekly_minutes"] = kWhoMinimumWeeklyMinutes;
    rep["provenance"]["config_hash"] = r.config_hash;
    rep["provenance"]["params_hash"] = r.params_hash;
    rep["provenance"]["version"] = r.version;
    write_atomic(cfg.out_dir / "report.json", rep.dump(2) + "\n");
}

} // namespace t2dex
