#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lwr/dynamics.hpp"
#include "lwr/graph.hpp"
#include "lwr/model.hpp"

namespace lwr {

struct AnalysisOptions {
    double burn_in_fraction = 0.2;   // head of the run dropped before rate fits
    double tail_fraction = 0.2;      // tail window for limit averaging
    double convergence_belief = 0.99;  // final true-state mass threshold
    double convergence_r2 = 0.9;       // fit quality threshold
};

enum class RateFitStatus {
    ok,
    window_too_short,  // fewer than 10 usable points after burn-in
    infinite,          // all false mass exactly zero across the window
};

// OLS fit of the worst false-to-true log-mass ratio against time.
struct RateFit {
    RateFitStatus status = RateFitStatus::window_too_short;
    double rate = 0.0;          // -slope, nats/step; valid when status == ok
    double r_squared = 0.0;
    double slope_stderr = 0.0;  // OLS standard error of the slope
    int points = 0;
};

// Regresses log(max false mass / true mass) on t over the post-burn-in window,
// working on stored log-masses so the fit survives raw-probability underflow.
RateFit empirical_rate(const Trajectory& traj, int agent, int true_state, double burn_in_fraction);

enum class RateKind {
    isolated_bayesian,   // parentless: private rate applies
    circle_member,       // pooled circle rate split by circle length
    circle_descendant,   // chain enters a circle: inherits the circle rate
    root_descendant,     // chain ends at a parentless root: inherits its rate
};
const char* rate_kind_name(RateKind k);

struct PredictedRate {
    double rate = 0.0;
    RateKind kind = RateKind::isolated_bayesian;
};

PredictedRate predicted_rate(const Model& model, const Network& net, const Shape& shape, int agent,
                             int true_state);

// Tail-averaged beliefs against the closed-form limit, where the theory pins
// one down (parentless agents always; networked agents only when the governing
// rate is positive, in which case the limit is the point mass at true_state).
struct LimitRow {
    int agent = -1;
    std::vector<double> tail_average;
    std::optional<std::vector<double>> predicted;
    std::optional<double> max_abs_dev;
    // Parentless agents with a nonempty equivalence set preserve prior ratios
    // on it at every step; this is the worst deviation from that identity.
    std::optional<double> ratio_invariant_max_err;
};

LimitRow check_limit(const Trajectory& traj, const Model& model, const Network& net, const Shape& shape,
                     int agent, int true_state, double tail_fraction);

// -------- multi-seed aggregation --------

struct SeedAgentResult {
    RateFit fit;
    double final_true_belief = 0.0;
    bool converged = false;
};

struct SeedRun {
    std::uint64_t seed = 0;
    std::vector<SeedAgentResult> agents;
};

struct AgentRateStats {
    int id = -1;
    double theoretical_private_rate = 0.0;
    double theoretical_bound = 0.0;  // pooled rate over the reachability set A(i)
    double predicted_rate = 0.0;
    RateKind rate_kind = RateKind::isolated_bayesian;
    std::optional<double> empirical_mean;  // across seeds with an ok fit
    std::optional<double> empirical_std;   // sample std across those seeds
    std::optional<double> mean_r_squared;
    std::optional<double> rate_stderr;  // std/sqrt(#fits); OLS stderr when only one
    int converged_seeds = 0;
    int seed_count = 0;
    bool converged = false;  // majority of seeds converged
};

struct RateReport {
    std::vector<AgentRateStats> agents;
    std::vector<SeedRun> seeds;        // ascending by seed value
    std::vector<LimitRow> limits;      // computed on the base seed's trajectory
};

// Runs seed_count simulations seeded base.seed, base.seed+1, ... and
// aggregates rates, convergence, and limit checks.
RateReport rate_report(const SimConfig& base, int seed_count, const AnalysisOptions& opt,
                       int threads = 1);

}  // namespace lwr
