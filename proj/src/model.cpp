#include "lwr/model.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lwr/logspace.hpp"

namespace lwr {

namespace {

constexpr double kSumTolerance = 1e-12;

void check_agent_state(const Model& model, int agent, int state) {
    if (agent < 0 || agent >= model.agent_count())
        throw std::out_of_range("agent index " + std::to_string(agent) + " out of range");
    if (state < 0 || state >= model.state_count())
        throw std::out_of_range("state index " + std::to_string(state) + " out of range");
}

}  // namespace

std::vector<std::string> validate_model(const Model& model) {
    std::vector<std::string> violations;
    auto add = [&violations](const std::string& msg) { violations.push_back(msg); };

    const int m = model.state_count();
    if (m < 2) add("states: need at least 2 states, got " + std::to_string(m));
    {
        std::set<std::string> seen;
        for (const auto& label : model.states.labels)
            if (!seen.insert(label).second) add("states: duplicate label '" + label + "'");
    }

    const auto& prior = model.prior.probs;
    if (static_cast<int>(prior.size()) != m) {
        add("prior: has " + std::to_string(prior.size()) + " entries, expected " + std::to_string(m));
    } else {
        double sum = 0.0;
        for (int s = 0; s < m; ++s) {
            if (!(prior[s] > 0.0))
                add("prior: entry " + std::to_string(s) + " is " + std::to_string(prior[s]) +
                    ", every state needs positive prior mass");
            sum += prior[s];
        }
        if (std::abs(sum - 1.0) > kSumTolerance) {
            std::ostringstream os;
            os << "prior: sums to " << sum << ", expected 1";
            add(os.str());
        }
    }

    if (model.structures.empty()) add("agents: need at least one agent");
    for (int i = 0; i < model.agent_count(); ++i) {
        const auto& st = model.structures[static_cast<std::size_t>(i)];
        const std::string who = "agent " + std::to_string(i);
        if (st.agent_id != i)
            add(who + ": agent_id is " + std::to_string(st.agent_id) + ", expected " + std::to_string(i));
        const int k = st.signal_count();
        if (k < 1) add(who + ": needs at least one signal");
        {
            std::set<std::string> seen;
            for (const auto& label : st.signal_labels)
                if (!seen.insert(label).second) add(who + ": duplicate signal label '" + label + "'");
        }
        if (static_cast<int>(st.likelihood.size()) != m) {
            add(who + ": likelihood has " + std::to_string(st.likelihood.size()) +
                " rows, expected one per state (" + std::to_string(m) + ")");
            continue;
        }
        for (int s = 0; s < m; ++s) {
            const auto& row = st.likelihood[static_cast<std::size_t>(s)];
            const std::string where = who + " likelihood row " + std::to_string(s);
            if (static_cast<int>(row.size()) != k) {
                add(where + ": has " + std::to_string(row.size()) + " entries, expected " + std::to_string(k));
                continue;
            }
            double sum = 0.0;
            bool in_range = true;
            for (double p : row) {
                if (p < 0.0 || p > 1.0) in_range = false;
                sum += p;
            }
            if (!in_range) add(where + ": entries outside [0, 1]");
            if (std::abs(sum - 1.0) > kSumTolerance) {
                std::ostringstream os;
                os << where << ": sums to " << sum << ", expected 1";
                add(os.str());
            }
        }
    }
    return violations;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size())
        throw std::invalid_argument("kl_divergence: length mismatch (" + std::to_string(p.size()) +
                                    " vs " + std::to_string(q.size()) + ")");
    double sum = 0.0;
    for (std::size_t s = 0; s < p.size(); ++s) {
        if (p[s] <= 0.0) continue;  // 0 log(0/q) = 0
        if (q[s] <= 0.0) return kPosInf;
        sum += p[s] * std::log(p[s] / q[s]);
    }
    return sum < 0.0 ? 0.0 : sum;  // clamp rounding residue; KL is nonnegative
}

std::vector<int> equivalence_set(const Model& model, int agent, int state) {
    check_agent_state(model, agent, state);
    const auto& rows = model.structures[static_cast<std::size_t>(agent)].likelihood;
    std::vector<int> out;
    for (int other = 0; other < model.state_count(); ++other) {
        if (other == state) continue;
        if (kl_divergence(rows[static_cast<std::size_t>(state)], rows[static_cast<std::size_t>(other)]) <=
            kEquivalenceKlTolerance)
            out.push_back(other);
    }
    return out;
}

double single_agent_rate(const Model& model, int agent, int true_state) {
    check_agent_state(model, agent, true_state);
    const auto& rows = model.structures[static_cast<std::size_t>(agent)].likelihood;
    double best = kPosInf;
    for (int other = 0; other < model.state_count(); ++other) {
        if (other == true_state) continue;
        best = std::min(best, kl_divergence(rows[static_cast<std::size_t>(true_state)],
                                            rows[static_cast<std::size_t>(other)]));
    }
    return best;
}

double group_rate(const Model& model, std::span<const int> agents, int true_state) {
    if (agents.empty()) throw std::invalid_argument("group_rate: empty agent set");
    for (int a : agents) check_agent_state(model, a, true_state);
    double best = kPosInf;
    for (int other = 0; other < model.state_count(); ++other) {
        if (other == true_state) continue;
        double sum = 0.0;
        for (int a : agents) {
            const auto& rows = model.structures[static_cast<std::size_t>(a)].likelihood;
            sum += kl_divergence(rows[static_cast<std::size_t>(true_state)],
                                 rows[static_cast<std::size_t>(other)]);
            if (sum == kPosInf) break;
        }
        best = std::min(best, sum);
    }
    return best;
}

}  // namespace lwr
