#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lwr/commands.hpp"
#include "lwr/config.hpp"

using namespace lwr;
namespace fs = std::filesystem;

namespace {

const fs::path kTmp = LWR_TEST_TMPDIR;
const fs::path kScenarios = LWR_SCENARIO_DIR;

std::string write_config(const std::string& name, const std::string& text) {
    fs::create_directories(kTmp);
    const fs::path p = kTmp / name;
    std::ofstream(p) << text;
    return p.string();
}

const char* kTinyCircle = R"({
  "states": ["a", "b"],
  "prior": [0.5, 0.5],
  "agents": [
    { "signals": ["x", "y"], "likelihood": [[0.7, 0.3], [0.3, 0.7]] },
    { "signals": ["x", "y"], "likelihood": [[0.7, 0.3], [0.3, 0.7]] }
  ],
  "network": { "parents": [1, 0] },
  "true_state": "a",
  "horizon": 3,
  "seed": 5
})";

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

template <typename F>
Run run(F&& f) {
    std::ostringstream out, err;
    Run r;
    r.code = f(out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("cmd_validate accepts a circle config") {
    const auto path = write_config("valid_circle.json", kTinyCircle);
    const auto r = run([&](auto& out, auto& err) { return cmd_validate(path, out, err); });
    CHECK(r.code == kExitOk);
    CHECK(r.out == "OK\n");
}

TEST_CASE("cmd_validate reports violations and exits nonzero") {
    std::string bad = kTinyCircle;
    bad.replace(bad.find("[0.5, 0.5]"), 10, "[0.4, 0.5]");
    const auto path = write_config("bad_prior.json", bad);
    const auto r = run([&](auto& out, auto& err) { return cmd_validate(path, out, err); });
    CHECK(r.code == kExitValidationFailure);
    CHECK(r.out.find("prior") != std::string::npos);
}

TEST_CASE("cmd_validate distinguishes unreadable and unparseable input") {
    const auto r1 =
        run([&](auto& out, auto& err) { return cmd_validate("/nonexistent/x.json", out, err); });
    CHECK(r1.code == kExitRuntimeError);
    const auto path = write_config("broken.json", "{ nope");
    const auto r2 = run([&](auto& out, auto& err) { return cmd_validate(path, out, err); });
    CHECK(r2.code == kExitRuntimeError);
    CHECK(r2.err.find("JSON") != std::string::npos);
}

TEST_CASE("cmd_validate accepts a circle plus pendant") {
    std::string hybrid = kTinyCircle;
    hybrid.replace(hybrid.find(R"("parents": [1, 0])"), 17, R"("parents": [1, 0, 0])");
    hybrid.replace(hybrid.find("\"agents\": ["), 11,
                   "\"agents\": [\n    { \"signals\": [\"x\", \"y\"], \"likelihood\": [[0.7, 0.3], [0.3, 0.7]] },");
    const auto path = write_config("pendant.json", hybrid);
    const auto r = run([&](auto& out, auto& err) { return cmd_validate(path, out, err); });
    CHECK(r.code == kExitOk);
}

TEST_CASE("cmd_simulate writes trajectory and signal CSVs plus a summary") {
    const auto path = write_config("sim_circle.json", kTinyCircle);
    const auto dir = (kTmp / "sim_out").string();
    CommandOverrides ov;
    const auto r = run([&](auto& out, auto& err) { return cmd_simulate(path, dir, ov, out, err); });
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("agent 0") != std::string::npos);

    const std::string traj = read_file(dir + "/trajectory.csv");
    CHECK(traj.rfind("t,agent,state,belief\n", 0) == 0);
    // n * (T+1) * states rows after the header
    CHECK(count_lines(traj) == 1 + 2 * 4 * 2);
    const std::string sigs = read_file(dir + "/signals.csv");
    CHECK(sigs.rfind("t,agent,signal\n", 0) == 0);
    CHECK(count_lines(sigs) == 1 + 2 * 4);
}

TEST_CASE("cmd_simulate horizon zero emits only t=0 rows") {
    const auto path = write_config("sim_circle0.json", kTinyCircle);
    const auto dir = (kTmp / "sim_out0").string();
    CommandOverrides ov;
    ov.horizon = 0;
    const auto r = run([&](auto& out, auto& err) { return cmd_simulate(path, dir, ov, out, err); });
    REQUIRE(r.code == kExitOk);
    const std::string traj = read_file(dir + "/trajectory.csv");
    CHECK(count_lines(traj) == 1 + 2 * 1 * 2);
    CHECK(traj.find("\n1,") == std::string::npos);
}

TEST_CASE("cmd_simulate is byte-identical across reruns and thread counts") {
    const auto path = write_config("sim_det.json", kTinyCircle);
    CommandOverrides serial, threaded;
    threaded.threads = 4;
    const auto dir1 = (kTmp / "det1").string();
    const auto dir2 = (kTmp / "det2").string();
    REQUIRE(run([&](auto& out, auto& err) { return cmd_simulate(path, dir1, serial, out, err); }).code == 0);
    REQUIRE(run([&](auto& out, auto& err) { return cmd_simulate(path, dir2, threaded, out, err); }).code == 0);
    CHECK(read_file(dir1 + "/trajectory.csv") == read_file(dir2 + "/trajectory.csv"));
    CHECK(read_file(dir1 + "/signals.csv") == read_file(dir2 + "/signals.csv"));
}

TEST_CASE("cmd_simulate rows sum to one for each (t, agent)") {
    const auto path = (kScenarios / "circle3_iid.json").string();
    const auto dir = (kTmp / "sim100").string();
    CommandOverrides ov;
    ov.horizon = 100;
    const auto r = run([&](auto& out, auto& err) { return cmd_simulate(path, dir, ov, out, err); });
    REQUIRE(r.code == kExitOk);
    std::istringstream in(read_file(dir + "/trajectory.csv"));
    std::string line;
    std::getline(in, line);  // header
    int rows = 0;
    double sum = 0.0;
    int within = 0;
    while (std::getline(in, line)) {
        ++rows;
        sum += std::stod(line.substr(line.rfind(',') + 1));
        if (++within == 2) {  // two states per (t, agent)
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
            sum = 0.0;
            within = 0;
        }
    }
    CHECK(rows == 3 * 101 * 2);
}

TEST_CASE("cmd_rates writes the report schema") {
    const auto path = write_config("rates_circle.json", kTinyCircle);
    const auto out_path = (kTmp / "rates.json").string();
    CommandOverrides ov;
    ov.horizon = 400;
    ov.seeds = 3;
    const auto r = run([&](auto& out, auto& err) { return cmd_rates(path, out_path, ov, out, err); });
    REQUIRE(r.code == kExitOk);
    const auto doc = nlohmann::json::parse(read_file(out_path));
    REQUIRE(doc.contains("agents"));
    REQUIRE(doc.contains("seeds"));
    REQUIRE(doc.contains("config_digest"));
    CHECK(doc["agents"].size() == 2);
    CHECK(doc["seeds"].size() == 3);
    for (const auto& a : doc["agents"]) {
        CHECK(a.contains("id"));
        CHECK(a.contains("theoretical_private_rate"));
        CHECK(a.contains("theoretical_bound"));
        CHECK(a.contains("predicted_rate"));
        CHECK(a.contains("rate_kind"));
        CHECK(a.contains("empirical_mean"));
        CHECK(a.contains("empirical_std"));
        CHECK(a.contains("r_squared"));
        CHECK(a.contains("converged"));
    }
    CHECK(doc["config_digest"].get<std::string>().size() == 16);
}

TEST_CASE("cmd_rates reports theoretical zero and no convergence when uninformative") {
    const auto path = (kScenarios / "uninformative.json").string();
    const auto out_path = (kTmp / "rates_uninformative.json").string();
    const auto r = run([&](auto& out, auto& err) {
        return cmd_rates(path, out_path, CommandOverrides{}, out, err);
    });
    REQUIRE(r.code == kExitOk);
    const auto doc = nlohmann::json::parse(read_file(out_path));
    const auto& a = doc["agents"][0];
    CHECK(a["theoretical_private_rate"].get<double>() == 0.0);
    CHECK(a["theoretical_bound"].get<double>() == 0.0);
    CHECK(a["converged"].get<bool>() == false);
    CHECK(a["empirical_mean"].is_null());
}

TEST_CASE("cmd_rates on the isolated binary scenario reports the sharp rate") {
    const auto path = (kScenarios / "isolated_binary.json").string();
    const auto out_path = (kTmp / "rates_isolated.json").string();
    CommandOverrides ov;
    ov.seeds = 3;  // keep the unit run light; acceptance runs all 20
    const auto r = run([&](auto& out, auto& err) { return cmd_rates(path, out_path, ov, out, err); });
    REQUIRE(r.code == kExitOk);
    const auto doc = nlohmann::json::parse(read_file(out_path));
    const auto& a = doc["agents"][0];
    CHECK(a["theoretical_private_rate"].get<double>() == doctest::Approx(0.33891914415488146));
    CHECK(a["rate_kind"].get<std::string>() == "isolated-bayesian");
}

TEST_CASE("cmd_verify exit code matches the JSON verdict") {
    const auto path = write_config("verify_circle.json", kTinyCircle);
    const auto out_path = (kTmp / "verify.json").string();
    CommandOverrides ov;
    ov.horizon = 20;
    const auto r = run([&](auto& out, auto& err) { return cmd_verify(path, out_path, ov, out, err); });
    const auto doc = nlohmann::json::parse(read_file(out_path));
    CHECK(r.code == kExitOk);
    CHECK(doc["pass"].get<bool>());
    CHECK(doc["max_deviation"].get<double>() <= 1e-9);
    CHECK(doc["tolerance"].get<double>() == 1e-9);
    CHECK(doc["at"].contains("agent"));
    CHECK(doc["at"].contains("t"));
}

TEST_CASE("cmd_classify emits components, depths, and ancestor sets") {
    const auto path = (kScenarios / "hybrid_circle_pendant.json").string();
    const auto out_path = (kTmp / "classify.json").string();
    const auto r =
        run([&](auto& out, auto& err) { return cmd_classify(path, out_path, out, err); });
    REQUIRE(r.code == kExitOk);
    const auto doc = nlohmann::json::parse(read_file(out_path));
    CHECK(doc["n"].get<int>() == 5);
    REQUIRE(doc["components"].size() == 1);
    CHECK(doc["components"][0]["kind"].get<std::string>() == "single-circle");
    CHECK(doc["components"][0]["circle"].size() == 3);
    CHECK(doc["depth"] == nlohmann::json({0, 0, 0, 1, 2}));
    CHECK(doc["ancestors"][4].size() == 5);
}

TEST_CASE("cmd_classify on a forest config") {
    const auto path = (kScenarios / "path_depth3.json").string();
    const auto out_path = (kTmp / "classify_path.json").string();
    const auto r =
        run([&](auto& out, auto& err) { return cmd_classify(path, out_path, out, err); });
    REQUIRE(r.code == kExitOk);
    const auto doc = nlohmann::json::parse(read_file(out_path));
    CHECK(doc["components"][0]["kind"].get<std::string>() == "forest");
    CHECK(doc["depth"] == nlohmann::json({0, 1, 2, 3}));
}

TEST_CASE("cmd_rates output is byte-identical across reruns") {
    const auto path = write_config("rates_det.json", kTinyCircle);
    const auto p1 = (kTmp / "rates_det1.json").string();
    const auto p2 = (kTmp / "rates_det2.json").string();
    CommandOverrides ov;
    ov.horizon = 200;
    ov.seeds = 2;
    REQUIRE(run([&](auto& out, auto& err) { return cmd_rates(path, p1, ov, out, err); }).code == 0);
    CommandOverrides ov4 = ov;
    ov4.threads = 4;
    REQUIRE(run([&](auto& out, auto& err) { return cmd_rates(path, p2, ov4, out, err); }).code == 0);
    CHECK(read_file(p1) == read_file(p2));
}
