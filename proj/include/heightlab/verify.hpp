#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace heightlab {

struct VerifyConfig {
    bool perturb_b0 = false;  // add 1 to B_0 before the functional-equation check
    std::uint64_t seed = 0x6865696768;
    unsigned jobs = 1;
};

struct SuiteResult {
    int criterion = 0;
    std::string name;
    std::size_t passed = 0;
    std::size_t total = 0;
    std::vector<std::string> failures;  // first few only
    double seconds = 0;

    bool ok() const { return total > 0 && passed == total; }
    std::string str() const;
};

inline constexpr int suite_count = 12;

SuiteResult run_suite(int criterion, const VerifyConfig& cfg = {});

struct VerifyReport {
    std::vector<SuiteResult> suites;
    bool ok() const;
    std::string str() const;
};

/// Runs the listed suites (all when empty) in order.
VerifyReport verify_all(const VerifyConfig& cfg = {}, std::span<const int> only = {});

}  // namespace heightlab
