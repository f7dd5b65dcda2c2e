#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "lwr/analysis.hpp"
#include "lwr/dynamics.hpp"
#include "lwr/graph.hpp"
#include "lwr/model.hpp"
#include "lwr/oracle.hpp"

namespace lwr {

// Round-trip-safe decimal text: %.17g (scientific notation allowed).
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

// One row per (t, agent, state), sorted by (t, agent, state index).
// Header: t,agent,state,belief
void write_trajectory_csv(std::ostream& os, const Model& model, const Trajectory& traj);

// Header: t,agent,signal
void write_signal_log_csv(std::ostream& os, const Model& model, const SignalLog& log);

std::string rate_report_to_json(const RateReport& report, std::string_view config_digest);
std::string verify_report_to_json(const VerifyReport& report);
std::string classify_to_json(const Network& net, const Shape& shape);

}  // namespace lwr
