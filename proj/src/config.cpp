#include "lwr/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lwr/rng.hpp"

namespace lwr {

namespace {

using nlohmann::json;

bool csv_safe(const std::string& label) {
    return label.find_first_of(",\"\r\n") == std::string::npos;
}

// Pulls `parents` out of either the parent-array or edge-list form.
std::vector<std::optional<int>> parse_network(const json& net, int n,
                                              std::vector<std::string>& violations) {
    std::vector<std::optional<int>> parents(static_cast<std::size_t>(n));
    if (net.contains("parents")) {
        const auto& arr = net.at("parents");
        if (!arr.is_array() || static_cast<int>(arr.size()) != n) {
            violations.push_back("network.parents: expected an array with one entry per agent (" +
                                 std::to_string(n) + ")");
            return parents;
        }
        for (int i = 0; i < n; ++i) {
            const auto& v = arr[static_cast<std::size_t>(i)];
            if (v.is_null()) continue;
            if (!v.is_number_integer()) {
                violations.push_back("network.parents[" + std::to_string(i) + "]: expected an index or null");
                continue;
            }
            parents[static_cast<std::size_t>(i)] = v.get<int>();
        }
    } else if (net.contains("edges")) {
        const auto& arr = net.at("edges");
        if (!arr.is_array()) {
            violations.push_back("network.edges: expected an array of [from, to] pairs");
            return parents;
        }
        for (const auto& e : arr) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
                violations.push_back("network.edges: each edge must be an [from, to] index pair");
                continue;
            }
            const int from = e[0].get<int>();
            const int to = e[1].get<int>();
            if (to < 0 || to >= n) {
                violations.push_back("network.edges: head " + std::to_string(to) + " outside [0, " +
                                     std::to_string(n) + ")");
                continue;
            }
            if (parents[static_cast<std::size_t>(to)]) {
                violations.push_back("network.edges: node " + std::to_string(to) +
                                     " has more than one incoming edge");
                continue;
            }
            parents[static_cast<std::size_t>(to)] = from;
        }
    } else {
        violations.push_back("network: needs either 'parents' or 'edges'");
    }
    return parents;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ScenarioLoad parse_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    ScenarioLoad out;
    auto& violations = out.violations;
    auto need = [&](const char* key, const char* type) {
        if (!doc.contains(key)) {
            violations.push_back(std::string(key) + ": missing (" + type + ")");
            return false;
        }
        return true;
    };

    Scenario sc;
    Model& model = sc.model;

    if (need("states", "array of labels")) {
        for (const auto& v : doc["states"]) {
            if (!v.is_string()) {
                violations.push_back("states: every label must be a string");
                break;
            }
            model.states.labels.push_back(v.get<std::string>());
        }
        for (const auto& label : model.states.labels)
            if (!csv_safe(label))
                violations.push_back("states: label '" + label + "' contains CSV-breaking characters");
    }

    if (need("prior", "array of probabilities")) {
        for (const auto& v : doc["prior"]) {
            if (!v.is_number()) {
                violations.push_back("prior: every entry must be a number");
                break;
            }
            model.prior.probs.push_back(v.get<double>());
        }
    }

    if (need("agents", "array of signal structures")) {
        int idx = 0;
        for (const auto& a : doc["agents"]) {
            SignalStructure st;
            st.agent_id = idx;
            const std::string who = "agents[" + std::to_string(idx) + "]";
            if (!a.contains("signals") || !a["signals"].is_array()) {
                violations.push_back(who + ".signals: missing or not an array");
            } else {
                for (const auto& v : a["signals"]) {
                    if (!v.is_string()) {
                        violations.push_back(who + ".signals: every label must be a string");
                        break;
                    }
                    st.signal_labels.push_back(v.get<std::string>());
                }
                for (const auto& label : st.signal_labels)
                    if (!csv_safe(label))
                        violations.push_back(who + ".signals: label '" + label +
                                             "' contains CSV-breaking characters");
            }
            if (!a.contains("likelihood") || !a["likelihood"].is_array()) {
                violations.push_back(who + ".likelihood: missing or not a row-major matrix");
            } else {
                for (const auto& row : a["likelihood"]) {
                    std::vector<double> r;
                    if (!row.is_array()) {
                        violations.push_back(who + ".likelihood: every row must be an array");
                        break;
                    }
                    for (const auto& v : row) {
                        if (!v.is_number()) {
                            violations.push_back(who + ".likelihood: every entry must be a number");
                            break;
                        }
                        r.push_back(v.get<double>());
                    }
                    st.likelihood.push_back(std::move(r));
                }
            }
            model.structures.push_back(std::move(st));
            ++idx;
        }
    }
    const int n = model.agent_count();

    std::vector<std::optional<int>> parents(static_cast<std::size_t>(n));
    if (need("network", "object")) {
        if (!doc["network"].is_object())
            violations.push_back("network: expected an object");
        else
            parents = parse_network(doc["network"], n, violations);
    }
    for (auto& v : validate_parents(parents)) violations.push_back(std::move(v));

    if (need("true_state", "state label or \"sample\"")) {
        const auto& v = doc["true_state"];
        if (!v.is_string()) {
            violations.push_back("true_state: expected a state label or \"sample\"");
        } else if (v.get<std::string>() == "sample") {
            sc.sample_true_state = true;
        } else {
            const auto& labels = model.states.labels;
            const auto it = std::find(labels.begin(), labels.end(), v.get<std::string>());
            if (it == labels.end())
                violations.push_back("true_state: label '" + v.get<std::string>() + "' is not a state");
            else
                sc.true_state = static_cast<int>(it - labels.begin());
        }
    }

    if (need("horizon", "nonnegative integer")) {
        const auto& v = doc["horizon"];
        if (!v.is_number_integer() || v.get<long long>() < 0)
            violations.push_back("horizon: expected a nonnegative integer");
        else
            sc.horizon = v.get<int>();
    }
    if (need("seed", "unsigned integer")) {
        const auto& v = doc["seed"];
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
            violations.push_back("seed: expected a nonnegative integer");
        else
            sc.seed = v.get<std::uint64_t>();
    }
    if (doc.contains("seeds")) {
        const auto& v = doc["seeds"];
        if (!v.is_number_integer() || v.get<long long>() < 1)
            violations.push_back("seeds: expected a positive integer");
        else
            sc.seed_count = v.get<int>();
    }
    if (doc.contains("analysis")) {
        const auto& a = doc["analysis"];
        if (!a.is_object()) {
            violations.push_back("analysis: expected an object");
        } else {
            auto opt_number = [&](const char* key, double& slot) {
                if (!a.contains(key)) return;
                if (!a[key].is_number())
                    violations.push_back(std::string("analysis.") + key + ": expected a number");
                else
                    slot = a[key].get<double>();
            };
            opt_number("burn_in_fraction", sc.analysis.burn_in_fraction);
            opt_number("tail_fraction", sc.analysis.tail_fraction);
            if (a.contains("thresholds")) {
                const auto& th = a["thresholds"];
                if (!th.is_object()) {
                    violations.push_back("analysis.thresholds: expected an object");
                } else {
                    if (th.contains("belief")) sc.analysis.convergence_belief = th["belief"].get<double>();
                    if (th.contains("r_squared")) sc.analysis.convergence_r2 = th["r_squared"].get<double>();
                }
            }
            if (sc.analysis.burn_in_fraction < 0.0 || sc.analysis.burn_in_fraction >= 1.0)
                violations.push_back("analysis.burn_in_fraction: must lie in [0, 1)");
            if (sc.analysis.tail_fraction <= 0.0 || sc.analysis.tail_fraction > 1.0)
                violations.push_back("analysis.tail_fraction: must lie in (0, 1]");
        }
    }

    for (auto& v : validate_model(model)) violations.push_back(std::move(v));

    if (violations.empty()) {
        sc.net = Network::from_parents(std::move(parents));
        out.scenario = std::move(sc);
    }
    return out;
}

ScenarioLoad load_scenario_file(const std::string& path) {
    return parse_scenario(read_file(path));
}

int resolve_true_state(const Scenario& s) {
    if (!s.sample_true_state) return s.true_state;
    const double u = keyed_uniform01(s.seed, kTrueStateStream, 0);
    return sample_categorical(s.model.prior.probs, u);
}

}  // namespace lwr
