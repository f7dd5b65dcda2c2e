#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lwr/analysis.hpp"
#include "lwr/dynamics.hpp"

namespace lwr {

// I/O or JSON syntax failure; semantic problems are returned as violations.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Scenario {
    Model model;
    Network net;
    int true_state = -1;            // resolved label index; -1 when sampled
    bool sample_true_state = false;
    int horizon = 0;
    std::uint64_t seed = 0;
    int seed_count = 1;
    AnalysisOptions analysis;
};

struct ScenarioLoad {
    std::optional<Scenario> scenario;  // present iff violations is empty
    std::vector<std::string> violations;
};

// Throws ConfigError when the file cannot be read.
std::string read_file(const std::string& path);

// Throws ConfigError on malformed JSON; everything else comes back as
// violations naming the offending field.
ScenarioLoad parse_scenario(const std::string& json_text);

ScenarioLoad load_scenario_file(const std::string& path);

// True state for a run: the configured label, or a single draw from the prior
// on a stream reserved for this purpose (so trajectories stay reproducible).
int resolve_true_state(const Scenario& s);

}  // namespace lwr
