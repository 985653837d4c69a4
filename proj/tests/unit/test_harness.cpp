#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "saw/errors.hpp"
#include "saw/harness.hpp"

using namespace saw;
using namespace saw::harness;

namespace {

std::pair<int, std::string> run_capture(const RunConfig& cfg) {
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    return {code, out.str() + err.str()};
}

}  // namespace

TEST_CASE("defaults per subcommand") {
    RunConfig cfg;
    cfg.subcommand = "audit";
    CHECK(effective_horizon(cfg) == 10000);
    CHECK(effective_format(cfg) == "json");
    cfg.subcommand = "conjecture";
    CHECK(effective_horizon(cfg) == 200);
    CHECK(effective_format(cfg) == "csv");
}

TEST_CASE("validation messages") {
    RunConfig cfg;
    cfg.subcommand = "sample";
    cfg.variant = Variant::pivot_plus;
    cfg.walk_length = 1;
    auto [code, text] = run_capture(cfg);
    CHECK(code == 2);
    CHECK(text.find("pivot+") != std::string::npos);
    cfg.subcommand = "frobnicate";
    CHECK(run_capture(cfg).first == 2);
    cfg.subcommand = "enumerate";
    cfg.walk_length = 0;
    CHECK_THROWS_AS(validate(cfg), InvalidArgument);
}

TEST_CASE("enumerate output and reproducibility") {
    RunConfig cfg;
    cfg.subcommand = "enumerate";
    cfg.walk_length = 5;
    const auto [code, text] = run_capture(cfg);
    CHECK(code == 0);
    const auto j = nlohmann::json::parse(text);
    CHECK(j["c_N"] == 284);
    CHECK(j["a_N"] == 71);
    CHECK(j["meta"]["seed"] == 1);
    CHECK(run_capture(cfg).second == text);
}

TEST_CASE("audit passes for small cases") {
    RunConfig cfg;
    cfg.subcommand = "audit";
    cfg.walk_length = 3;
    const auto [code, text] = run_capture(cfg);
    CHECK(code == 0);
    CHECK(nlohmann::json::parse(text)["all_pass"] == true);
}

TEST_CASE("sample is seed reproducible and checks class constancy") {
    RunConfig cfg;
    cfg.subcommand = "sample";
    cfg.walk_length = 3;
    cfg.variant = Variant::pivot_plus;
    cfg.n_steps = 5;
    cfg.replicas = 2000;
    cfg.seed = 9;
    const auto a = run_capture(cfg);
    const auto b = run_capture(cfg);
    CHECK(a.first == 0);
    CHECK(a.second == b.second);
    CHECK(a.second.find("# class_violations: 0") != std::string::npos);
    cfg.seed = 10;
    CHECK(run_capture(cfg).second != a.second);
    cfg.observe = "end2end";
    const auto e = run_capture(cfg);
    CHECK(e.first == 0);
    CHECK(e.second.find("n,samples,mean_r2,var_r2") != std::string::npos);
}

TEST_CASE("conjecture writes the table and summary") {
    RunConfig cfg;
    cfg.subcommand = "conjecture";
    cfg.walk_length = 3;
    cfg.horizon = 30;
    cfg.out = "harness_conjecture_test.csv";
    std::ostringstream out, err;
    CHECK(run(cfg, out, err) == 0);
    std::ifstream summary(cfg.out + ".summary.json");
    REQUIRE(summary);
    const auto j = nlohmann::json::parse(summary);
    CHECK(j["horizon"] == 30);
    CHECK(j["matched_start"] == true);
    std::ifstream table(cfg.out);
    std::string line;
    int rows = 0;
    while (std::getline(table, line))
        if (!line.empty() && line[0] != '#') ++rows;
    CHECK(rows == 32);
    std::remove(cfg.out.c_str());
    std::remove((cfg.out + ".summary.json").c_str());
}

TEST_CASE("gmethod subcommand") {
    RunConfig cfg;
    cfg.subcommand = "gmethod";
    cfg.cases = 25;
    const auto [code, text] = run_capture(cfg);
    CHECK(code == 0);
    const auto j = nlohmann::json::parse(text);
    CHECK(j["all_pass"] == true);
    CHECK(j["fixture_product"]["verdict"] == "exact");
}
