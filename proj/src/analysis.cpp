#include "lwr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lwr/logspace.hpp"

namespace lwr {

namespace {

constexpr int kMinFitPoints = 10;

int chain_root(const Network& net, int i) {
    int cur = i;
    while (net.parent[static_cast<std::size_t>(cur)]) cur = *net.parent[static_cast<std::size_t>(cur)];
    return cur;
}

}  // namespace

const char* rate_kind_name(RateKind k) {
    switch (k) {
        case RateKind::isolated_bayesian: return "isolated-bayesian";
        case RateKind::circle_member: return "circle-member";
        case RateKind::circle_descendant: return "circle-descendant";
        case RateKind::root_descendant: return "root-descendant";
    }
    return "?";
}

RateFit empirical_rate(const Trajectory& traj, int agent, int true_state, double burn_in_fraction) {
    if (burn_in_fraction < 0.0 || burn_in_fraction >= 1.0)
        throw std::invalid_argument("burn_in_fraction must lie in [0, 1)");
    const int T = traj.horizon();
    const int m = static_cast<int>(traj.log_beliefs[static_cast<std::size_t>(agent)].front().size());
    const int t0 = static_cast<int>(std::ceil(burn_in_fraction * T));

    std::vector<double> xs, ys;
    int degenerate = 0;  // true state holds all the mass: ratio is -inf
    for (int t = t0; t <= T; ++t) {
        const double true_mass = traj.log_mass(agent, t, true_state);
        if (true_mass == kNegInf) continue;
        double worst_false = kNegInf;
        for (int s = 0; s < m; ++s) {
            if (s == true_state) continue;
            worst_false = std::max(worst_false, traj.log_mass(agent, t, s));
        }
        if (worst_false == kNegInf) {
            ++degenerate;
            continue;
        }
        xs.push_back(static_cast<double>(t));
        ys.push_back(worst_false - true_mass);
    }

    RateFit fit;
    fit.points = static_cast<int>(xs.size());
    if (fit.points < kMinFitPoints) {
        fit.status = (degenerate > 0 && fit.points == 0) ? RateFitStatus::infinite
                                                         : RateFitStatus::window_too_short;
        return fit;
    }

    const double k = static_cast<double>(fit.points);
    const double xm = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
    const double ym = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
    double sxx = 0.0, sxy = 0.0;
    for (int idx = 0; idx < fit.points; ++idx) {
        const double dx = xs[static_cast<std::size_t>(idx)] - xm;
        sxx += dx * dx;
        sxy += dx * (ys[static_cast<std::size_t>(idx)] - ym);
    }
    const double slope = sxy / sxx;
    const double intercept = ym - slope * xm;
    double ss_res = 0.0, ss_tot = 0.0;
    for (int idx = 0; idx < fit.points; ++idx) {
        const double y = ys[static_cast<std::size_t>(idx)];
        const double resid = y - (intercept + slope * xs[static_cast<std::size_t>(idx)]);
        ss_res += resid * resid;
        const double dy = y - ym;
        ss_tot += dy * dy;
    }
    fit.status = RateFitStatus::ok;
    fit.rate = -slope;
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
    fit.slope_stderr = fit.points > 2 ? std::sqrt(ss_res / (k - 2.0) / sxx) : 0.0;
    return fit;
}

PredictedRate predicted_rate(const Model& model, const Network& net, const Shape& shape, int agent,
                             int true_state) {
    PredictedRate out;
    const Component& comp = shape.component_of_node(agent);
    if (comp.kind == ComponentKind::single_circle) {
        const auto& circle = comp.circle_nodes;
        out.rate = group_rate(model, circle, true_state) / static_cast<double>(circle.size());
        out.kind = shape.on_circle(agent) ? RateKind::circle_member : RateKind::circle_descendant;
        return out;
    }
    const int root = chain_root(net, agent);
    out.rate = single_agent_rate(model, root, true_state);
    out.kind = (root == agent) ? RateKind::isolated_bayesian : RateKind::root_descendant;
    return out;
}

LimitRow check_limit(const Trajectory& traj, const Model& model, const Network& net, const Shape& shape,
                     int agent, int true_state, double tail_fraction) {
    if (tail_fraction <= 0.0 || tail_fraction > 1.0)
        throw std::invalid_argument("tail_fraction must lie in (0, 1]");
    const int T = traj.horizon();
    const int m = model.state_count();
    const int window = std::max(1, static_cast<int>(std::floor(tail_fraction * (T + 1))));
    const int t_start = T + 1 - window;

    LimitRow row;
    row.agent = agent;
    row.tail_average.assign(static_cast<std::size_t>(m), 0.0);
    for (int t = t_start; t <= T; ++t) {
        const Belief b = traj.belief(agent, t);
        for (int s = 0; s < m; ++s) row.tail_average[static_cast<std::size_t>(s)] += b[s];
    }
    for (double& v : row.tail_average) v /= static_cast<double>(window);

    const bool parentless = !net.parent[static_cast<std::size_t>(agent)].has_value();
    if (parentless) {
        // Limit is the prior renormalized over the true state and everything
        // the agent cannot tell apart from it.
        const auto equiv = equivalence_set(model, agent, true_state);
        std::vector<double> predicted(static_cast<std::size_t>(m), 0.0);
        double mass = model.prior.probs[static_cast<std::size_t>(true_state)];
        for (int s : equiv) mass += model.prior.probs[static_cast<std::size_t>(s)];
        predicted[static_cast<std::size_t>(true_state)] =
            model.prior.probs[static_cast<std::size_t>(true_state)] / mass;
        for (int s : equiv)
            predicted[static_cast<std::size_t>(s)] = model.prior.probs[static_cast<std::size_t>(s)] / mass;
        row.predicted = std::move(predicted);

        if (!equiv.empty()) {
            double worst = 0.0;
            for (int t = 0; t <= T; ++t) {
                const double log_true = traj.log_mass(agent, t, true_state);
                for (int s : equiv) {
                    const double ratio = std::exp(traj.log_mass(agent, t, s) - log_true);
                    const double prior_ratio = model.prior.probs[static_cast<std::size_t>(s)] /
                                               model.prior.probs[static_cast<std::size_t>(true_state)];
                    worst = std::max(worst, std::abs(ratio - prior_ratio));
                }
            }
            row.ratio_invariant_max_err = worst;
        }
    } else {
        const PredictedRate pr = predicted_rate(model, net, shape, agent, true_state);
        if (pr.rate > 0.0) {
            std::vector<double> predicted(static_cast<std::size_t>(m), 0.0);
            predicted[static_cast<std::size_t>(true_state)] = 1.0;
            row.predicted = std::move(predicted);
        }
        // Rate zero through a network: the limit is not pinned down here.
    }

    if (row.predicted) {
        double dev = 0.0;
        for (int s = 0; s < m; ++s)
            dev = std::max(dev, std::abs(row.tail_average[static_cast<std::size_t>(s)] -
                                         (*row.predicted)[static_cast<std::size_t>(s)]));
        row.max_abs_dev = dev;
    }
    return row;
}

RateReport rate_report(const SimConfig& base, int seed_count, const AnalysisOptions& opt, int threads) {
    if (seed_count < 1) throw std::invalid_argument("rate_report: need at least one seed");
    const int n = base.model.agent_count();
    const Shape shape = classify(base.net);

    RateReport report;
    report.seeds.reserve(static_cast<std::size_t>(seed_count));
    std::vector<std::vector<double>> rates(static_cast<std::size_t>(n));
    std::vector<std::vector<double>> r2s(static_cast<std::size_t>(n));
    std::vector<double> lone_stderr(static_cast<std::size_t>(n), 0.0);
    std::vector<int> converged_count(static_cast<std::size_t>(n), 0);

    for (int k = 0; k < seed_count; ++k) {
        SimConfig cfg = base;
        cfg.seed = base.seed + static_cast<std::uint64_t>(k);
        const Trajectory traj = simulate(cfg, threads);
        SeedRun run;
        run.seed = cfg.seed;
        run.agents.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            SeedAgentResult& res = run.agents[static_cast<std::size_t>(i)];
            res.fit = empirical_rate(traj, i, base.true_state, opt.burn_in_fraction);
            res.final_true_belief = std::exp(traj.log_mass(i, cfg.horizon, base.true_state));
            res.converged = res.final_true_belief > opt.convergence_belief &&
                            res.fit.status == RateFitStatus::ok && res.fit.r_squared > opt.convergence_r2;
            if (res.fit.status == RateFitStatus::ok) {
                rates[static_cast<std::size_t>(i)].push_back(res.fit.rate);
                r2s[static_cast<std::size_t>(i)].push_back(res.fit.r_squared);
                lone_stderr[static_cast<std::size_t>(i)] = res.fit.slope_stderr;
            }
            if (res.converged) ++converged_count[static_cast<std::size_t>(i)];
        }
        if (k == 0) {
            report.limits.reserve(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                report.limits.push_back(
                    check_limit(traj, base.model, base.net, shape, i, base.true_state, opt.tail_fraction));
        }
        report.seeds.push_back(std::move(run));
    }

    report.agents.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        AgentRateStats& st = report.agents[static_cast<std::size_t>(i)];
        st.id = i;
        st.theoretical_private_rate = single_agent_rate(base.model, i, base.true_state);
        const auto ancestors = reachable_ancestors(base.net, i);
        st.theoretical_bound = group_rate(base.model, ancestors, base.true_state);
        const PredictedRate pr = predicted_rate(base.model, base.net, shape, i, base.true_state);
        st.predicted_rate = pr.rate;
        st.rate_kind = pr.kind;
        st.seed_count = seed_count;
        st.converged_seeds = converged_count[static_cast<std::size_t>(i)];
        st.converged = 2 * st.converged_seeds > seed_count;

        const auto& rs = rates[static_cast<std::size_t>(i)];
        if (!rs.empty()) {
            const double mean = std::accumulate(rs.begin(), rs.end(), 0.0) / static_cast<double>(rs.size());
            st.empirical_mean = mean;
            double var = 0.0;
            for (double r : rs) var += (r - mean) * (r - mean);
            const double stddev = rs.size() > 1 ? std::sqrt(var / static_cast<double>(rs.size() - 1)) : 0.0;
            st.empirical_std = stddev;
            st.rate_stderr = rs.size() > 1 ? stddev / std::sqrt(static_cast<double>(rs.size()))
                                           : lone_stderr[static_cast<std::size_t>(i)];
            const auto& q = r2s[static_cast<std::size_t>(i)];
            st.mean_r_squared = std::accumulate(q.begin(), q.end(), 0.0) / static_cast<double>(q.size());
        }
    }
    return report;
}

}  // namespace lwr
