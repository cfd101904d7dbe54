#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heightlab/exact_arith.hpp"
#include "heightlab/factor_roots.hpp"

namespace heightlab {

struct ScenarioOptions {
    unsigned maxN = 6;
    int digits = 30;
    int degree_cap = default_factor_degree_cap;
    unsigned jobs = 1;           // rows computed concurrently when > 1
    unsigned root_degree_limit = 32;  // prop52: root heights only up to this degree
};

struct ScenarioRow {
    std::string scenario;
    std::string N;
    std::optional<long> degree;
    std::optional<long> n_factors;
    std::optional<long> min_factor_deg;
    std::optional<long> max_factor_deg;
    std::string max_root_height;
    std::string height_err_bound;
    std::string hpol;
    std::string hpol_over_dN;
    std::string verdict;
};

struct ScenarioCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct ScenarioResult {
    std::string id;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<ScenarioRow> rows;
    std::vector<std::pair<std::string, std::string>> summary;
    std::vector<ScenarioCheck> checks;
    std::vector<std::string> warnings;

    bool ok() const;
};

inline const char* const csv_header =
    "scenario,N,degree,n_factors,min_factor_deg,max_factor_deg,max_root_height,height_err_bound,hpol,hpol_over_dN,"
    "verdict";

std::string to_csv(const ScenarioResult& r);
std::string to_json(const ScenarioResult& r);

/// f = z^2 + t. Rows N = 2..maxN for Q_N = (f^N(a) - f^N(b)) / (f^{N-1}(a) - f^{N-1}(b)).
ScenarioResult scenario_quadratic(const Rational& a, const Rational& b, const ScenarioOptions& opt = {});
/// P_n = f^n(t) - g^n(t), f = 3z^2 + 5, g = z^2, n = 1..maxN.
ScenarioResult scenario_prop52(const ScenarioOptions& opt = {});
/// f = z^4 + t, a = t + 2017, g = z^8 + t, b = t^3 + 2018.
ScenarioResult scenario_example15(const ScenarioOptions& opt = {});
/// Points 2^{3^n/(2^m - 3^n)} for 1 <= m <= maxM, 1 <= n <= maxN.
ScenarioResult scenario_counterexample(unsigned maxM, unsigned maxN, const ScenarioOptions& opt = {});

}  // namespace heightlab
