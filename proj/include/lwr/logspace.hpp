#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace lwr {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// log(sum_i exp(v[i])) with a max shift; -inf entries contribute nothing.
// Returns -inf when every entry is -inf.
inline double log_sum_exp(std::span<const double> v) {
    double max_arg = kNegInf;
    for (double x : v) max_arg = std::max(max_arg, x);
    if (max_arg == kNegInf) return kNegInf;
    double sum = 0.0;
    for (double x : v) sum += std::exp(x - max_arg);
    return max_arg + std::log(sum);
}

// Shifts entries in place so they exponentiate to a unit-sum vector.
// Returns false (vector untouched) when the total mass is zero.
inline bool log_normalize(std::span<double> v) {
    const double lse = log_sum_exp(v);
    if (lse == kNegInf) return false;
    for (double& x : v) x -= lse;
    return true;
}

inline double log_or_neg_inf(double p) {
    return p > 0.0 ? std::log(p) : kNegInf;
}

inline std::vector<double> log_from_probs(std::span<const double> probs) {
    std::vector<double> out(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) out[i] = log_or_neg_inf(probs[i]);
    return out;
}

inline std::vector<double> probs_from_log(std::span<const double> logp) {
    std::vector<double> out(logp.size());
    for (std::size_t i = 0; i < logp.size(); ++i) out[i] = std::exp(logp[i]);
    return out;
}

}  // namespace lwr
