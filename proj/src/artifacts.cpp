#include "lwr/artifacts.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace lwr {

namespace {

using nlohmann::json;

// JSON has no inf/nan literals; non-finite values degrade to null.
json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    if (v == 0.0) return 0.0;  // fold -0.0
    return v;
}

json json_optional(const std::optional<double>& v) {
    return v ? json_number(*v) : json(nullptr);
}

const char* fit_status_name(RateFitStatus s) {
    switch (s) {
        case RateFitStatus::ok: return "ok";
        case RateFitStatus::window_too_short: return "window-too-short";
        case RateFitStatus::infinite: return "infinite";
    }
    return "?";
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_trajectory_csv(std::ostream& os, const Model& model, const Trajectory& traj) {
    os << "t,agent,state,belief\n";
    const int n = traj.agent_count();
    const int T = traj.horizon();
    for (int t = 0; t <= T; ++t) {
        for (int i = 0; i < n; ++i) {
            const Belief b = traj.belief(i, t);
            for (int s = 0; s < model.state_count(); ++s)
                os << t << ',' << i << ',' << model.states.labels[static_cast<std::size_t>(s)] << ','
                   << format_double(b[s]) << '\n';
        }
    }
}

void write_signal_log_csv(std::ostream& os, const Model& model, const SignalLog& log) {
    os << "t,agent,signal\n";
    const int n = static_cast<int>(log.signals.size());
    const int rounds = n > 0 ? static_cast<int>(log.signals.front().size()) : 0;
    for (int t = 0; t < rounds; ++t)
        for (int i = 0; i < n; ++i) {
            const int s = log.signals[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
            os << t << ',' << i << ','
               << model.structures[static_cast<std::size_t>(i)].signal_labels[static_cast<std::size_t>(s)]
               << '\n';
        }
}

std::string rate_report_to_json(const RateReport& report, std::string_view config_digest) {
    json agents = json::array();
    for (const auto& a : report.agents) {
        agents.push_back({
            {"id", a.id},
            {"theoretical_private_rate", json_number(a.theoretical_private_rate)},
            {"theoretical_bound", json_number(a.theoretical_bound)},
            {"predicted_rate", json_number(a.predicted_rate)},
            {"rate_kind", rate_kind_name(a.rate_kind)},
            {"empirical_mean", a.converged ? json_optional(a.empirical_mean) : json(nullptr)},
            {"empirical_std", a.converged ? json_optional(a.empirical_std) : json(nullptr)},
            {"r_squared", json_optional(a.mean_r_squared)},
            {"converged", a.converged},
        });
    }
    json seeds = json::array();
    for (const auto& run : report.seeds) {
        json per_agent = json::array();
        int id = 0;
        for (const auto& r : run.agents) {
            per_agent.push_back({
                {"id", id++},
                {"status", fit_status_name(r.fit.status)},
                {"rate", r.fit.status == RateFitStatus::ok ? json_number(r.fit.rate) : json(nullptr)},
                {"r_squared",
                 r.fit.status == RateFitStatus::ok ? json_number(r.fit.r_squared) : json(nullptr)},
                {"final_belief_true", json_number(r.final_true_belief)},
                {"converged", r.converged},
            });
        }
        seeds.push_back({{"seed", run.seed}, {"agents", std::move(per_agent)}});
    }
    json limits = json::array();
    for (const auto& row : report.limits) {
        json predicted = nullptr;
        if (row.predicted) predicted = *row.predicted;
        limits.push_back({
            {"agent", row.agent},
            {"tail_average", row.tail_average},
            {"predicted", std::move(predicted)},
            {"max_abs_dev", json_optional(row.max_abs_dev)},
            {"ratio_invariant_max_err", json_optional(row.ratio_invariant_max_err)},
        });
    }
    json doc = {
        {"agents", std::move(agents)},
        {"seeds", std::move(seeds)},
        {"limits", std::move(limits)},
        {"config_digest", std::string(config_digest)},
    };
    return doc.dump(2) + "\n";
}

std::string verify_report_to_json(const VerifyReport& report) {
    json doc = {
        {"pass", report.pass},
        {"max_deviation", json_number(report.max_deviation)},
        {"at", {{"agent", report.at_agent}, {"t", report.at_t}}},
        {"tolerance", report.tolerance},
    };
    return doc.dump(2) + "\n";
}

std::string classify_to_json(const Network& net, const Shape& shape) {
    json components = json::array();
    for (const auto& comp : shape.components) {
        components.push_back({
            {"kind", component_kind_name(comp.kind)},
            {"nodes", comp.nodes},
            {"circle", comp.circle_nodes},
        });
    }
    json ancestors = json::array();
    for (int i = 0; i < net.n; ++i) ancestors.push_back(reachable_ancestors(net, i));
    json doc = {
        {"n", net.n},
        {"components", std::move(components)},
        {"depth", shape.depth},
        {"ancestors", std::move(ancestors)},
    };
    return doc.dump(2) + "\n";
}

}  // namespace lwr
