#pragma once

#include <span>
#include <string>
#include <vector>

namespace lwr {

// KL threshold under which two likelihood rows count as observationally
// equivalent. The mathematical definition is KL == 0 exactly; the tolerance
// absorbs rounding in row entries without changing which models qualify.
inline constexpr double kEquivalenceKlTolerance = 1e-12;

struct StateSpace {
    std::vector<std::string> labels;
    int size() const { return static_cast<int>(labels.size()); }
};

struct Prior {
    std::vector<double> probs;
};

// Conditional signal distribution of one agent: one row per state.
struct SignalStructure {
    int agent_id = 0;
    std::vector<std::string> signal_labels;
    std::vector<std::vector<double>> likelihood;  // [state][signal]
    int signal_count() const { return static_cast<int>(signal_labels.size()); }
};

struct Model {
    StateSpace states;
    Prior prior;
    std::vector<SignalStructure> structures;  // one per agent
    int state_count() const { return states.size(); }
    int agent_count() const { return static_cast<int>(structures.size()); }
};

// Probability vector over the state space.
struct Belief {
    std::vector<double> probs;
    int size() const { return static_cast<int>(probs.size()); }
    double operator[](int s) const { return probs[static_cast<std::size_t>(s)]; }
};

// Log-ratio form of a belief relative to a reference state: one lambda per
// non-reference state, in state order, lambda = log(mass / reference mass).
// -inf marks zero mass. Bijective with Belief while the reference state has
// positive mass.
struct LogBelief {
    int ref_state = 0;
    std::vector<double> lambdas;
};

// Every invariant violation in the model, each with its location.
// An empty list means the model is valid.
std::vector<std::string> validate_model(const Model& model);

// sum_s p(s) log(p(s)/q(s)) in nats, with 0 log(0/q) = 0.
// Returns +inf iff p puts mass on a point where q has none.
// Throws std::invalid_argument on length mismatch.
double kl_divergence(std::span<const double> p, std::span<const double> q);

// States other than `state` whose likelihood rows the agent cannot tell apart
// from `state`'s row (KL within kEquivalenceKlTolerance). Sorted ascending.
std::vector<int> equivalence_set(const Model& model, int agent, int state);

// Private learning rate: min over false states of the row-to-row KL.
// Zero iff the agent faces an identification problem at true_state.
double single_agent_rate(const Model& model, int agent, int true_state);

// Pooled rate of a set of agents. KL is additive over independent coordinates,
// so the product-space divergence reduces to a per-agent sum; the additivity
// is verified against explicit product-space enumeration in the tests.
double group_rate(const Model& model, std::span<const int> agents, int true_state);

}  // namespace lwr
