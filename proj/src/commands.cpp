#include "lwr/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lwr/artifacts.hpp"
#include "lwr/config.hpp"
#include "lwr/oracle.hpp"

namespace lwr {

namespace {

namespace fs = std::filesystem;

struct LoadedScenario {
    Scenario scenario;
    std::string digest;
};

// Loads, validates, applies overrides. Returns nullopt after writing the
// failure to the streams and stashing the exit code.
std::optional<LoadedScenario> load_or_report(const std::string& path, const CommandOverrides& ov,
                                             std::ostream& out, std::ostream& err, int& exit_code) {
    std::string bytes;
    try {
        bytes = read_file(path);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        exit_code = kExitRuntimeError;
        return std::nullopt;
    }
    ScenarioLoad load;
    try {
        load = parse_scenario(bytes);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        exit_code = kExitRuntimeError;
        return std::nullopt;
    }
    if (!load.scenario) {
        for (const auto& v : load.violations) out << v << "\n";
        exit_code = kExitValidationFailure;
        return std::nullopt;
    }
    LoadedScenario result{std::move(*load.scenario), hex64(fnv1a64(bytes))};
    if (ov.horizon) result.scenario.horizon = *ov.horizon;
    if (ov.seed) result.scenario.seed = *ov.seed;
    if (ov.seeds) result.scenario.seed_count = *ov.seeds;
    return result;
}

void write_text_file(const std::string& path, const std::string& text) {
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path);
    f << text;
}

SimConfig sim_config_of(const Scenario& sc) {
    SimConfig cfg;
    cfg.model = sc.model;
    cfg.net = sc.net;
    cfg.true_state = resolve_true_state(sc);
    cfg.horizon = sc.horizon;
    cfg.seed = sc.seed;
    return cfg;
}

}  // namespace

int cmd_validate(const std::string& config_path, std::ostream& out, std::ostream& err) {
    std::string bytes;
    try {
        bytes = read_file(config_path);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    ScenarioLoad load;
    try {
        load = parse_scenario(bytes);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    if (!load.violations.empty()) {
        for (const auto& v : load.violations) out << v << "\n";
        return kExitValidationFailure;
    }
    out << "OK\n";
    return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir, const CommandOverrides& ov,
                 std::ostream& out, std::ostream& err) {
    int exit_code = kExitOk;
    auto loaded = load_or_report(config_path, ov, out, err, exit_code);
    if (!loaded) return exit_code;
    try {
        const SimConfig cfg = sim_config_of(loaded->scenario);
        const Trajectory traj = simulate(cfg, ov.threads);

        std::ostringstream traj_csv, sig_csv;
        write_trajectory_csv(traj_csv, cfg.model, traj);
        write_signal_log_csv(sig_csv, cfg.model, traj.signal_log);
        write_text_file((fs::path(out_dir) / "trajectory.csv").string(), traj_csv.str());
        write_text_file((fs::path(out_dir) / "signals.csv").string(), sig_csv.str());

        const auto& true_label = cfg.model.states.labels[static_cast<std::size_t>(cfg.true_state)];
        out << "true state: " << true_label << "\n";
        for (int i = 0; i < cfg.model.agent_count(); ++i)
            out << "agent " << i << ": final belief(" << true_label << ") = "
                << format_double(std::exp(traj.log_mass(i, cfg.horizon, cfg.true_state))) << "\n";
        return kExitOk;
    } catch (const SimulationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}

int cmd_rates(const std::string& config_path, const std::string& out_path, const CommandOverrides& ov,
              std::ostream& out, std::ostream& err) {
    int exit_code = kExitOk;
    auto loaded = load_or_report(config_path, ov, out, err, exit_code);
    if (!loaded) return exit_code;
    try {
        const Scenario& sc = loaded->scenario;
        const SimConfig cfg = sim_config_of(sc);
        const RateReport report = rate_report(cfg, sc.seed_count, sc.analysis, ov.threads);
        write_text_file(out_path, rate_report_to_json(report, loaded->digest));
        for (const auto& a : report.agents) {
            out << "agent " << a.id << ": predicted " << format_double(a.predicted_rate) << " ("
                << rate_kind_name(a.rate_kind) << ")";
            if (a.converged && a.empirical_mean)
                out << ", empirical " << format_double(*a.empirical_mean) << " over " << a.seed_count
                    << " seeds";
            else
                out << ", not converged";
            out << "\n";
        }
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}

int cmd_verify(const std::string& config_path, const std::string& out_path, const CommandOverrides& ov,
               std::ostream& out, std::ostream& err) {
    int exit_code = kExitOk;
    auto loaded = load_or_report(config_path, ov, out, err, exit_code);
    if (!loaded) return exit_code;
    try {
        const SimConfig cfg = sim_config_of(loaded->scenario);
        const Trajectory traj = simulate(cfg, ov.threads);
        const VerifyReport report = verify_trajectory(cfg, traj);
        write_text_file(out_path, verify_report_to_json(report));
        out << (report.pass ? "PASS" : "FAIL") << " max deviation " << format_double(report.max_deviation)
            << " at (agent " << report.at_agent << ", t " << report.at_t << ")\n";
        return report.pass ? kExitOk : kExitVerifyFail;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}

int cmd_classify(const std::string& config_path, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
    int exit_code = kExitOk;
    auto loaded = load_or_report(config_path, CommandOverrides{}, out, err, exit_code);
    if (!loaded) return exit_code;
    try {
        const Network& net = loaded->scenario.net;
        const Shape shape = classify(net);
        write_text_file(out_path, classify_to_json(net, shape));
        out << shape.components.size() << " component(s)\n";
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}

}  // namespace lwr
