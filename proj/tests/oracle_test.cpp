#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lwr/oracle.hpp"

#include "helpers.hpp"

using namespace lwr;
using namespace lwr::test;

namespace {

using Entry = std::pair<int, int>;

SimConfig config_of(Model model, Network net, int true_state, int horizon, std::uint64_t seed) {
    SimConfig cfg;
    cfg.model = std::move(model);
    cfg.net = std::move(net);
    cfg.true_state = true_state;
    cfg.horizon = horizon;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("provenance of an isolated agent is its own history") {
    const Network net = net_of({{}});
    const auto prov = provenance(net, 0, 4);
    CHECK(prov.entries == std::vector<Entry>{{0, 4}, {0, 3}, {0, 2}, {0, 1}, {0, 0}});
}

TEST_CASE("provenance wraps around a circle") {
    // Circle 0 -> 1 -> 2 -> 0; hand-unrolled from (2, 4).
    const Network net = net_of({{2}, {0}, {1}});
    const auto prov = provenance(net, 2, 4);
    CHECK(prov.entries == std::vector<Entry>{{2, 4}, {1, 3}, {0, 2}, {2, 1}, {1, 0}});
}

TEST_CASE("provenance of a path node ends with the root's history") {
    const Network net = net_of({{}, {0}, {1}});
    const auto prov = provenance(net, 2, 3);
    CHECK(prov.entries == std::vector<Entry>{{2, 3}, {1, 2}, {0, 1}, {0, 0}});
}

TEST_CASE("provenance stops on the chain when time runs out first") {
    const Network net = net_of({{}, {0}, {1}, {2}});
    const auto prov = provenance(net, 3, 2);  // depth 3, queried at t = 2
    CHECK(prov.entries == std::vector<Entry>{{3, 2}, {2, 1}, {1, 0}});
}

TEST_CASE("provenance size is t + 1 with distinct entries on every topology") {
    const std::vector<Network> nets{
        net_of({{}}),                        // isolated
        net_of({{2}, {0}, {1}}),             // 3-circle
        net_of({{}, {0}, {1}, {2}}),         // rooted path
        net_of({{1}, {2}, {0}, {0}, {3}}),   // circle with pendant path
    };
    for (const auto& net : nets) {
        for (int i = 0; i < net.n; ++i) {
            for (int t = 0; t <= 20; ++t) {
                const auto prov = provenance(net, i, t);
                CHECK(static_cast<int>(prov.entries.size()) == t + 1);
                auto sorted = prov.entries;
                std::sort(sorted.begin(), sorted.end());
                CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
            }
        }
    }
}

// The circle unrolling telescopes: going n_c steps deeper prepends exactly one
// fresh diagonal of n_c signals and shifts the rest by n_c in time.
TEST_CASE("circle provenance repeats with period equal to the circle length") {
    const Network net = net_of({{2}, {0}, {1}});
    const int n_c = 3;
    for (int i = 0; i < 3; ++i) {
        for (int t = n_c; t <= 15; ++t) {
            const auto now = provenance(net, i, t).entries;
            const auto before = provenance(net, i, t - n_c).entries;
            REQUIRE(now.size() == before.size() + static_cast<std::size_t>(n_c));
            for (std::size_t k = 0; k < before.size(); ++k) {
                CHECK(now[k + static_cast<std::size_t>(n_c)].first == before[k].first);
                CHECK(now[k + static_cast<std::size_t>(n_c)].second == before[k].second);
            }
        }
    }
}

TEST_CASE("posterior over a single t=0 entry equals bayes_init") {
    const Model m = binary_model();
    const auto traj = simulate(config_of(m, net_of({{}}), 0, 0, 5));
    Provenance prov;
    prov.entries = {{0, 0}};
    const Belief via_prov = posterior_from_provenance(m, prov, traj.signal_log);
    const Belief via_init = bayes_init(m, 0, traj.signal_log.signals[0][0]);
    for (int s = 0; s < 2; ++s) CHECK(via_prov[s] == doctest::Approx(via_init[s]).epsilon(1e-14));
}

TEST_CASE("posterior over an empty provenance is the prior") {
    const Model m = make_model({0.6, 0.4}, {{{0.7, 0.3}, {0.3, 0.7}}});
    const auto traj = simulate(config_of(m, net_of({{}}), 0, 3, 5));
    const Belief b = posterior_from_provenance(m, Provenance{}, traj.signal_log);
    CHECK(b[0] == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(b[1] == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("posterior with uninformative likelihoods is the prior") {
    const Model m = make_model({0.6, 0.4}, {{{0.5, 0.5}, {0.5, 0.5}}});
    const auto traj = simulate(config_of(m, net_of({{}}), 0, 10, 5));
    const auto prov = provenance(net_of({{}}), 0, 10);
    const Belief b = posterior_from_provenance(m, prov, traj.signal_log);
    CHECK(b[0] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(b[1] == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("verify_trajectory passes on an isolated agent") {
    const auto cfg = config_of(binary_model(), net_of({{}}), 0, 20, 1);
    const auto report = verify_trajectory(cfg, simulate(cfg));
    CHECK(report.pass);
    CHECK(report.max_deviation <= 1e-9);
}

TEST_CASE("verify_trajectory passes on a 3-circle") {
    const auto cfg = config_of(binary_model(3), net_of({{2}, {0}, {1}}), 0, 20, 2);
    const auto report = verify_trajectory(cfg, simulate(cfg));
    CHECK(report.pass);
}

TEST_CASE("verify_trajectory passes on a circle with a pendant path") {
    const auto cfg = config_of(binary_model(5), net_of({{1}, {2}, {0}, {0}, {3}}), 0, 20, 3);
    const auto report = verify_trajectory(cfg, simulate(cfg));
    CHECK(report.pass);
}

TEST_CASE("verify_trajectory passes across topology classes and seeds") {
    const std::vector<Network> nets{
        net_of({{}}),
        net_of({{2}, {0}, {1}}),
        net_of({{}, {0}, {1}, {2}}),
        net_of({{1}, {2}, {0}, {0}, {3}}),
    };
    for (const auto& net : nets) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto cfg = config_of(binary_model(net.n), net, 0, 20, seed);
            const auto report = verify_trajectory(cfg, simulate(cfg));
            CHECK(report.pass);
        }
    }
}

TEST_CASE("verify_trajectory localizes an injected deviation") {
    const auto cfg = config_of(binary_model(3), net_of({{2}, {0}, {1}}), 0, 10, 4);
    auto traj = simulate(cfg);
    traj.log_beliefs[1][7][0] += 1e-6;  // corrupt one cell
    const auto report = verify_trajectory(cfg, traj);
    CHECK(!report.pass);
    CHECK(report.at_agent == 1);
    CHECK(report.at_t == 7);
}
