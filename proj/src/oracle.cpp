#include "lwr/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lwr/logspace.hpp"

namespace lwr {

Provenance provenance(const Network& net, int agent, int t) {
    if (agent < 0 || agent >= net.n)
        throw std::out_of_range("agent index " + std::to_string(agent) + " out of range");
    if (t < 0) throw std::invalid_argument("provenance: negative time");

    Provenance prov;
    prov.entries.reserve(static_cast<std::size_t>(t) + 1);
    int cur = agent;
    int tau = t;
    prov.entries.emplace_back(cur, tau);
    while (tau > 0) {
        const auto& parent = net.parent[static_cast<std::size_t>(cur)];
        if (!parent) {
            // Parentless root: its belief at time tau folds in its whole
            // private history.
            for (int q = tau - 1; q >= 0; --q) prov.entries.emplace_back(cur, q);
            break;
        }
        cur = *parent;
        --tau;
        prov.entries.emplace_back(cur, tau);
    }
    return prov;
}

Belief posterior_from_provenance(const Model& model, const Provenance& prov, const SignalLog& log) {
    std::vector<double> logp = log_from_probs(model.prior.probs);
    for (const auto& [who, when] : prov.entries) {
        const auto& agent_log = log.signals.at(static_cast<std::size_t>(who));
        const int signal = agent_log.at(static_cast<std::size_t>(when));
        const auto& st = model.structures[static_cast<std::size_t>(who)];
        for (std::size_t s = 0; s < logp.size(); ++s)
            logp[s] += log_or_neg_inf(st.likelihood[s][static_cast<std::size_t>(signal)]);
    }
    if (!log_normalize(logp))
        throw SimulationError("posterior_from_provenance: zero normalizer", -1, -1);
    return Belief{probs_from_log(logp)};
}

VerifyReport verify_trajectory(const SimConfig& cfg, const Trajectory& traj) {
    VerifyReport report;
    report.tolerance = kVerifyTolerance;
    const int n = traj.agent_count();
    const int T = traj.horizon();
    for (int i = 0; i < n; ++i) {
        for (int t = 0; t <= T; ++t) {
            const Belief expected =
                posterior_from_provenance(cfg.model, provenance(cfg.net, i, t), traj.signal_log);
            const Belief got = traj.belief(i, t);
            for (int s = 0; s < expected.size(); ++s) {
                const double dev = std::abs(expected[s] - got[s]);
                if (dev > report.max_deviation) {
                    report.max_deviation = dev;
                    report.at_agent = i;
                    report.at_t = t;
                }
            }
        }
    }
    report.pass = report.max_deviation <= report.tolerance;
    return report;
}

}  // namespace lwr
