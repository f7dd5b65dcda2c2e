#include "lwr/dynamics.hpp"

#include <algorithm>
#include <cassert>
#include <thread>

#include "lwr/logspace.hpp"
#include "lwr/rng.hpp"

namespace lwr {

namespace {

void check_agent_signal(const Model& model, int agent, int signal) {
    if (agent < 0 || agent >= model.agent_count())
        throw std::out_of_range("agent index " + std::to_string(agent) + " out of range");
    const auto& st = model.structures[static_cast<std::size_t>(agent)];
    if (signal < 0 || signal >= st.signal_count())
        throw std::out_of_range("signal index " + std::to_string(signal) + " out of range for agent " +
                                std::to_string(agent));
}

// next[s] = base[s] + log l(signal | s), normalized. False when the posterior
// has zero total mass (signal impossible under every state with mass).
bool posterior_log(std::span<const double> base, const SignalStructure& st, int signal,
                   std::vector<double>& next) {
    const std::size_t m = base.size();
    next.resize(m);
    for (std::size_t s = 0; s < m; ++s)
        next[s] = base[s] + log_or_neg_inf(st.likelihood[s][static_cast<std::size_t>(signal)]);
    return log_normalize(next);
}

std::vector<double> log_of_belief(const Belief& b) {
    return log_from_probs(b.probs);
}

Belief belief_of_log(std::vector<double> logp) {
    return Belief{probs_from_log(logp)};
}

}  // namespace

SimulationError::SimulationError(const std::string& what, int agent, int t)
    : std::runtime_error(what), agent_(agent), t_(t) {}

Belief Trajectory::belief(int agent, int t) const {
    return belief_of_log(log_beliefs[static_cast<std::size_t>(agent)][static_cast<std::size_t>(t)]);
}

int sample_signal(const Model& model, int agent, int true_state, std::uint64_t seed, int t) {
    check_agent_signal(model, agent, 0);
    const auto& row = model.structures[static_cast<std::size_t>(agent)]
                          .likelihood[static_cast<std::size_t>(true_state)];
    const double u = keyed_uniform01(seed, static_cast<std::uint64_t>(agent), static_cast<std::uint64_t>(t));
    const int s = sample_categorical(row, u);
    assert(s >= 0);
    return s;
}

Belief bayes_init(const Model& model, int agent, int signal) {
    check_agent_signal(model, agent, signal);
    std::vector<double> next;
    if (!posterior_log(log_from_probs(model.prior.probs), model.structures[static_cast<std::size_t>(agent)],
                       signal, next))
        throw SimulationError("signal " + std::to_string(signal) + " impossible under every state for agent " +
                                  std::to_string(agent),
                              agent, 0);
    return belief_of_log(std::move(next));
}

Belief bayes_update(const Model& model, int agent, const Belief& prev, int signal) {
    check_agent_signal(model, agent, signal);
    std::vector<double> next;
    if (!posterior_log(log_of_belief(prev), model.structures[static_cast<std::size_t>(agent)], signal, next))
        throw SimulationError("zero posterior normalizer for agent " + std::to_string(agent) +
                                  " on signal " + std::to_string(signal),
                              agent, -1);
    return belief_of_log(std::move(next));
}

Belief lwr_update(const Model& model, int agent, const Belief& neighbor_prev, int signal) {
    // Identical formula; only where the previous belief comes from differs.
    return bayes_update(model, agent, neighbor_prev, signal);
}

std::vector<Belief> step(const Model& model, const Network& net, const std::vector<Belief>& prev,
                         const std::vector<int>& signals) {
    if (static_cast<int>(prev.size()) != net.n || static_cast<int>(signals.size()) != net.n)
        throw std::invalid_argument("step: need one belief and one signal per agent");
    std::vector<Belief> next(prev.size());
    for (int i = 0; i < net.n; ++i) {
        const auto& parent = net.parent[static_cast<std::size_t>(i)];
        const Belief& src = parent ? prev[static_cast<std::size_t>(*parent)] : prev[static_cast<std::size_t>(i)];
        next[static_cast<std::size_t>(i)] =
            parent ? lwr_update(model, i, src, signals[static_cast<std::size_t>(i)])
                   : bayes_update(model, i, src, signals[static_cast<std::size_t>(i)]);
    }
    return next;
}

Trajectory simulate(const SimConfig& cfg, int threads) {
    const int n = cfg.model.agent_count();
    const int m = cfg.model.state_count();
    const int T = cfg.horizon;
    if (cfg.net.n != n)
        throw std::invalid_argument("simulate: model has " + std::to_string(n) + " agents but network has " +
                                    std::to_string(cfg.net.n) + " nodes");
    if (cfg.true_state < 0 || cfg.true_state >= m)
        throw std::invalid_argument("simulate: true_state out of range");
    if (T < 0) throw std::invalid_argument("simulate: negative horizon");

    Trajectory traj;
    traj.signal_log.signals.assign(static_cast<std::size_t>(n), {});
    traj.log_beliefs.assign(static_cast<std::size_t>(n), {});
    for (int i = 0; i < n; ++i) {
        auto& sig = traj.signal_log.signals[static_cast<std::size_t>(i)];
        sig.resize(static_cast<std::size_t>(T) + 1);
        for (int t = 0; t <= T; ++t)
            sig[static_cast<std::size_t>(t)] = sample_signal(cfg.model, i, cfg.true_state, cfg.seed, t);
        traj.log_beliefs[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(T) + 1);
    }

    const auto log_prior = log_from_probs(cfg.model.prior.probs);
    for (int i = 0; i < n; ++i) {
        auto& slot = traj.log_beliefs[static_cast<std::size_t>(i)][0];
        if (!posterior_log(log_prior, cfg.model.structures[static_cast<std::size_t>(i)],
                           traj.signal_log.signals[static_cast<std::size_t>(i)][0], slot))
            throw SimulationError("signal impossible under every state (agent " + std::to_string(i) +
                                      ", t 0)",
                                  i, 0);
    }

    const int workers = std::max(1, std::min(threads, n));
    for (int t = 1; t <= T; ++t) {
        // Synchronous round: every output reads beliefs from t-1 only, so the
        // agent partition below cannot affect the result.
        std::vector<int> failed(static_cast<std::size_t>(workers), -1);
        auto run_range = [&](int lo, int hi, int worker) {
            for (int i = lo; i < hi; ++i) {
                const auto& parent = cfg.net.parent[static_cast<std::size_t>(i)];
                const int src = parent ? *parent : i;
                const auto& base =
                    traj.log_beliefs[static_cast<std::size_t>(src)][static_cast<std::size_t>(t) - 1];
                auto& slot = traj.log_beliefs[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
                if (!posterior_log(base, cfg.model.structures[static_cast<std::size_t>(i)],
                                   traj.signal_log.signals[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)],
                                   slot)) {
                    auto& first = failed[static_cast<std::size_t>(worker)];
                    if (first == -1) first = i;
                }
            }
        };
        if (workers == 1) {
            run_range(0, n, 0);
        } else {
            std::vector<std::thread> pool;
            const int chunk = (n + workers - 1) / workers;
            for (int w = 0; w < workers; ++w) {
                const int lo = w * chunk;
                const int hi = std::min(n, lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back(run_range, lo, hi, w);
            }
            for (auto& th : pool) th.join();
        }
        for (int w = 0; w < workers; ++w) {
            const int i = failed[static_cast<std::size_t>(w)];
            if (i != -1)
                throw SimulationError("signal impossible under every state with positive mass (agent " +
                                          std::to_string(i) + ", t " + std::to_string(t) + ")",
                                      i, t);
        }
    }
    return traj;
}

LogBelief to_log_belief(const Belief& b, int ref_state) {
    if (ref_state < 0 || ref_state >= b.size())
        throw std::out_of_range("ref_state out of range");
    const double ref_mass = b[ref_state];
    if (!(ref_mass > 0.0))
        throw std::domain_error("to_log_belief: zero mass on reference state " + std::to_string(ref_state));
    LogBelief lb;
    lb.ref_state = ref_state;
    lb.lambdas.reserve(static_cast<std::size_t>(b.size()) - 1);
    for (int s = 0; s < b.size(); ++s) {
        if (s == ref_state) continue;
        lb.lambdas.push_back(b[s] > 0.0 ? std::log(b[s] / ref_mass) : kNegInf);
    }
    return lb;
}

Belief belief_from_log_ratios(const LogBelief& lb) {
    const int m = static_cast<int>(lb.lambdas.size()) + 1;
    if (lb.ref_state < 0 || lb.ref_state >= m)
        throw std::out_of_range("ref_state out of range");
    std::vector<double> logp(static_cast<std::size_t>(m));
    std::size_t k = 0;
    for (int s = 0; s < m; ++s)
        logp[static_cast<std::size_t>(s)] = (s == lb.ref_state) ? 0.0 : lb.lambdas[k++];
    log_normalize(logp);  // reference entry is finite, so mass is never zero
    return belief_of_log(std::move(logp));
}

}  // namespace lwr
