#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "heightlab/experiments.hpp"

using namespace heightlab;

namespace {

const double log2d = std::log(2.0);

std::string summary(const ScenarioResult& r, const std::string& key) {
    for (const auto& [k, v] : r.summary)
        if (k == key) return v;
    FAIL("missing summary key " << key);
    return {};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == '\n') {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    if (start < s.size()) out.push_back(s.substr(start));
    return out;
}

}  // namespace

TEST_CASE("quadratic family at 0 and 1") {
    ScenarioOptions opt;
    opt.maxN = 4;
    const ScenarioResult r = scenario_quadratic(0, 1, opt);
    CHECK(r.ok());
    REQUIRE(r.rows.size() == 3);
    // Q_2 = 2t + 1 up to sign, root -1/2
    CHECK(r.rows[0].N == "2");
    CHECK(r.rows[0].degree == 1);
    CHECK(std::stod(r.rows[0].max_root_height) == doctest::Approx(log2d));
    CHECK(r.rows[1].degree == 2);
    CHECK(r.rows[2].degree == 4);
    for (const auto& row : r.rows) CHECK(row.n_factors == 1);
}

TEST_CASE("quadratic family rejects and warns") {
    CHECK_THROWS_AS(scenario_quadratic(Rational(3, 2), Rational(3, 2)), std::invalid_argument);
    ScenarioOptions opt;
    opt.maxN = 3;
    const ScenarioResult r = scenario_quadratic(2, -2, opt);
    CHECK_FALSE(r.warnings.empty());
    CHECK(r.ok());
    for (const auto& row : r.rows) CHECK(row.verdict.find("undefined") != std::string::npos);
}

TEST_CASE("output is deterministic") {
    ScenarioOptions one;
    one.maxN = 6;
    ScenarioOptions two = one;
    two.jobs = 2;
    const ScenarioResult a = scenario_quadratic(2, Rational(1, 2), one);
    const ScenarioResult b = scenario_quadratic(2, Rational(1, 2), one);
    const ScenarioResult c = scenario_quadratic(2, Rational(1, 2), two);
    CHECK(to_csv(a) == to_csv(b));
    CHECK(to_json(a) == to_json(b));
    CHECK(to_csv(a) == to_csv(c));
    CHECK(to_json(a) == to_json(c));
}

TEST_CASE("csv layout") {
    ScenarioOptions opt;
    opt.maxN = 3;
    const auto ls = lines(to_csv(scenario_quadratic(0, 1, opt)));
    REQUIRE(ls.size() == 3);
    CHECK(ls[0] == csv_header);
    // the verdict contains a semicolon but no comma, so it stays unquoted
    CHECK(ls[1].rfind("quadratic,2,1,1,1,1,", 0) == 0);

    const auto ex = lines(to_csv(scenario_counterexample(3, 3)));
    for (std::size_t i = 1; i < ex.size(); ++i) CHECK(std::count(ex[i].begin(), ex[i].end(), ',') == 10);
}

TEST_CASE("json layout") {
    ScenarioOptions opt;
    opt.maxN = 2;
    const auto j = nlohmann::json::parse(to_json(scenario_prop52(opt)));
    CHECK(j["scenario"] == "prop52");
    CHECK(j["params"]["f"] == "3*z^2 + 5");
    REQUIRE(j["rows"].size() == 2);
    CHECK(j["rows"][0]["degree"] == 2);
    CHECK(j["rows"][0]["verdict"] == "Eisenstein at 5; irreducible");
    CHECK(j["checks"].is_array());
}

TEST_CASE("3z^2+5 against z^2 at n = 1") {
    ScenarioOptions opt;
    opt.maxN = 4;
    const ScenarioResult r = scenario_prop52(opt);
    CHECK(r.ok());
    // P_1 = 2t^2 + 5: hpol = log 5, Mahler measure 2 * (5/2) = 5
    CHECK(std::stod(r.rows[0].hpol) == doctest::Approx(std::log(5.0)));
    CHECK(std::stod(r.rows[0].max_root_height) == doctest::Approx(0.5 * std::log(5.0)));
    for (unsigned n = 1; n <= 4; ++n) CHECK(r.rows[n - 1].degree == 1L << n);
}

TEST_CASE("z^4+t and z^8+t example") {
    ScenarioOptions opt;
    opt.maxN = 5;
    const ScenarioResult r = scenario_example15(opt);
    CHECK(r.ok());
    for (const auto& c : r.checks) CHECK_MESSAGE(c.ok, c.name);
    CHECK(r.rows.front().N == "f^m(a) m=0");
    CHECK(r.rows.front().degree == 1);
}

TEST_CASE("power-map points") {
    const ScenarioResult r = scenario_counterexample(5, 5);
    REQUIRE(r.rows.size() == 25);
    // the largest |3^n / (2^m - 3^n)| for m, n <= 5 is 9 at m = 3, n = 2
    CHECK(r.rows.front().N == "m3n2");
    CHECK(std::stod(r.rows.front().max_root_height) == doctest::Approx(9 * log2d));
    CHECK(summary(r, "argmax") == "m=3 n=2");
    CHECK_FALSE(r.ok());
}
