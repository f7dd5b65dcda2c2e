#pragma once

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "lwr/graph.hpp"
#include "lwr/model.hpp"

namespace lwr::test {

// ---- independent oracles (no production code paths) ----

// Straight-line summation of sum p log(p/q) with the 0 log 0 = 0 convention.
inline double kl_by_summation(const std::vector<double>& p, const std::vector<double>& q) {
    double sum = 0.0;
    for (std::size_t s = 0; s < p.size(); ++s) {
        if (p[s] == 0.0) continue;
        if (q[s] == 0.0) return std::numeric_limits<double>::infinity();
        sum += p[s] * std::log(p[s] / q[s]);
    }
    return sum;
}

// KL between the joint laws of two independent coordinates, enumerated over
// the full product signal space.
inline double product_space_kl(const SignalStructure& a, const SignalStructure& b, int state_p,
                               int state_q) {
    double sum = 0.0;
    for (int sa = 0; sa < a.signal_count(); ++sa) {
        for (int sb = 0; sb < b.signal_count(); ++sb) {
            const double p = a.likelihood[static_cast<std::size_t>(state_p)][static_cast<std::size_t>(sa)] *
                             b.likelihood[static_cast<std::size_t>(state_p)][static_cast<std::size_t>(sb)];
            const double q = a.likelihood[static_cast<std::size_t>(state_q)][static_cast<std::size_t>(sa)] *
                             b.likelihood[static_cast<std::size_t>(state_q)][static_cast<std::size_t>(sb)];
            if (p == 0.0) continue;
            if (q == 0.0) return std::numeric_limits<double>::infinity();
            sum += p * std::log(p / q);
        }
    }
    return sum;
}

// ---- builders ----

inline std::vector<std::string> index_labels(const char* prefix, int count) {
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

inline SignalStructure structure_of(int agent_id, std::vector<std::vector<double>> rows) {
    SignalStructure st;
    st.agent_id = agent_id;
    st.signal_labels = index_labels("s", static_cast<int>(rows.front().size()));
    st.likelihood = std::move(rows);
    return st;
}

inline Model make_model(std::vector<double> prior, std::vector<std::vector<std::vector<double>>> agents) {
    Model m;
    m.states.labels = index_labels("theta", static_cast<int>(prior.size()));
    m.prior.probs = std::move(prior);
    for (std::size_t i = 0; i < agents.size(); ++i)
        m.structures.push_back(structure_of(static_cast<int>(i), std::move(agents[i])));
    return m;
}

// The workhorse binary model: signal matches the state with probability 0.7.
inline Model binary_model(int agents = 1) {
    std::vector<std::vector<std::vector<double>>> structs(
        static_cast<std::size_t>(agents), {{0.7, 0.3}, {0.3, 0.7}});
    return make_model({0.5, 0.5}, std::move(structs));
}

inline Network net_of(std::vector<std::optional<int>> parents) {
    return Network::from_parents(std::move(parents));
}

// Random full-support distribution for property-style checks.
inline std::vector<double> random_distribution(std::mt19937& gen, int size) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> out(static_cast<std::size_t>(size));
    double sum = 0.0;
    for (double& v : out) sum += (v = u(gen));
    for (double& v : out) v /= sum;
    return out;
}

}  // namespace lwr::test
