#pragma once

#include <utility>
#include <vector>

#include "lwr/dynamics.hpp"
#include "lwr/graph.hpp"
#include "lwr/model.hpp"

namespace lwr {

// The exact set of realized signals that determines one belief under the
// update rules, as (agent, time) pairs.
struct Provenance {
    std::vector<std::pair<int, int>> entries;
};

// Unrolls the recursion along the parent chain: one entry per time step going
// backward, plus the full private history of a parentless root when the chain
// ends at one. On a circle the chain keeps wrapping around.
Provenance provenance(const Network& net, int agent, int t);

// One-shot Bayes over the provenance set: prior times every cited likelihood,
// normalized in log space. Recomputes from raw signals only and shares nothing
// with the recursive updater.
Belief posterior_from_provenance(const Model& model, const Provenance& prov, const SignalLog& log);

inline constexpr double kVerifyTolerance = 1e-9;

struct VerifyReport {
    bool pass = false;
    double max_deviation = 0.0;
    int at_agent = -1;
    int at_t = -1;
    double tolerance = kVerifyTolerance;
};

// Compares every (agent, t) belief of the trajectory against the one-shot
// posterior over its provenance. Deviations are data, not failures.
VerifyReport verify_trajectory(const SimConfig& cfg, const Trajectory& traj);

}  // namespace lwr
