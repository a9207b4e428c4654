#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"
#include "ngt/errors.hpp"
#include "ngt/scenario.hpp"

using namespace ngt;

TEST_CASE("controls stop at the hypothesis stage by design") {
    Scenario sc = builtin_scenario("control_t1");
    CHECK_FALSE(sc.expect_hypotheses_met);
    Verdict v = run_scenario(sc);
    CHECK(v.overall == Overall::HypothesisNotMet);
    CHECK(v.matches_design);
    CHECK_FALSE(v.hypothesis_checks.empty());
    CHECK(v.conclusion_checks.empty());
}

TEST_CASE("a satisfying scenario passes and is stable under quadrature refinement") {
    Scenario sc = builtin_scenario("t3");
    Verdict v = run_scenario(sc);
    CHECK(v.overall == Overall::Pass);
    CHECK(v.matches_design);
    for (const auto& c : v.conclusion_checks) CHECK_MESSAGE(c.pass, c.name);

    Scenario fine = sc;
    fine.quad.base_points *= 2;
    Verdict vf = run_scenario(fine);
    CHECK(vf.overall == v.overall);
    REQUIRE(vf.conclusion_checks.size() == v.conclusion_checks.size());
    for (std::size_t i = 0; i < v.conclusion_checks.size(); ++i)
        CHECK(vf.conclusion_checks[i].pass == v.conclusion_checks[i].pass);
}

TEST_CASE("verdict serialization carries the full evidence") {
    Verdict v = run_scenario(builtin_scenario("t4"));
    nlohmann::json j = nlohmann::json::parse(verdict_to_json(v));
    CHECK(j.at("schema_version") == 1);
    CHECK(j.at("id") == "t4");
    CHECK(j.at("overall") == "pass");
    CHECK(j.at("matches_design") == true);
    CHECK(j.at("measured").is_object());
    CHECK_FALSE(j.at("measured").empty());
    CHECK(j.at("hypothesis_checks").is_array());
    CHECK(j.at("conclusion_checks").is_array());
    for (const auto& c : j.at("conclusion_checks")) {
        CHECK(c.contains("name"));
        CHECK(c.contains("lhs"));
        CHECK(c.contains("rhs"));
        CHECK(c.contains("pass"));
    }
    std::string line = verdict_summary_line(v);
    CHECK(line.find("t4") != std::string::npos);
    CHECK(line.find("pass") != std::string::npos);
}

TEST_CASE("builtin scenario ids are unique and all run through validation") {
    std::vector<Scenario> all = builtin_scenarios();
    CHECK(all.size() == 12);
    for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK_FALSE(all[i].expected.empty());
        CHECK(long(all[i].coefficients.size()) == all[i].k);
        for (std::size_t j = i + 1; j < all.size(); ++j) CHECK(all[i].id != all[j].id);
    }
    CHECK_THROWS_AS(builtin_scenario("nope"), SchemaError);
}
