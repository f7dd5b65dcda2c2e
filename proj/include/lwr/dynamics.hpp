#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lwr/graph.hpp"
#include "lwr/model.hpp"

namespace lwr {

struct SimConfig {
    Model model;
    Network net;
    int true_state = 0;
    int horizon = 0;  // T; the trajectory covers t = 0..T
    std::uint64_t seed = 0;
};

struct SignalLog {
    std::vector<std::vector<int>> signals;  // [agent][t]
};

// Belief paths stored as normalized log-masses (logsumexp of each slice is 0),
// so false-state decay stays resolvable far past double underflow of the raw
// probabilities.
struct Trajectory {
    std::vector<std::vector<std::vector<double>>> log_beliefs;  // [agent][t][state]
    SignalLog signal_log;

    int agent_count() const { return static_cast<int>(log_beliefs.size()); }
    int horizon() const {
        return log_beliefs.empty() ? -1 : static_cast<int>(log_beliefs.front().size()) - 1;
    }
    double log_mass(int agent, int t, int state) const {
        return log_beliefs[static_cast<std::size_t>(agent)][static_cast<std::size_t>(t)]
                          [static_cast<std::size_t>(state)];
    }
    Belief belief(int agent, int t) const;
};

// Raised when an observed signal has zero likelihood under every state that
// still carries belief mass. agent/t are -1 when unknown at the throw site.
class SimulationError : public std::runtime_error {
  public:
    SimulationError(const std::string& what, int agent, int t);
    int agent() const { return agent_; }
    int t() const { return t_; }

  private:
    int agent_;
    int t_;
};

// Draw from the agent's signal distribution under true_state. The draw for
// (seed, agent, t) is a pure function of that key.
int sample_signal(const Model& model, int agent, int true_state, std::uint64_t seed, int t);

// Posterior over states from the common prior and one private signal.
Belief bayes_init(const Model& model, int agent, int signal);

// One Bayes step from the agent's own previous belief.
Belief bayes_update(const Model& model, int agent, const Belief& prev, int signal);

// Same posterior arithmetic as bayes_update with the neighbor's previous
// belief substituted for the agent's own.
Belief lwr_update(const Model& model, int agent, const Belief& neighbor_prev, int signal);

// One synchronous round: parentless agents self-update, everyone else updates
// off their parent's previous belief. Reads only prev, never the outputs.
std::vector<Belief> step(const Model& model, const Network& net,
                         const std::vector<Belief>& prev, const std::vector<int>& signals);

// Full run: t = 0 applies bayes_init to every agent's first signal (parented
// agents included), t = 1..T applies synchronous rounds with fresh signals.
// Bitwise deterministic in (model, net, true_state, seed) for any `threads`.
Trajectory simulate(const SimConfig& cfg, int threads = 1);

// Belief <-> log-ratio bijection. to_log_belief throws std::domain_error on
// zero reference mass; belief_from_log_ratios evaluates with a max shift.
LogBelief to_log_belief(const Belief& b, int ref_state);
Belief belief_from_log_ratios(const LogBelief& lb);

}  // namespace lwr
