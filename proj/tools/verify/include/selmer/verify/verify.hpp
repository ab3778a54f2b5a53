#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace selmer::verify {

// Fixed before any run; never adjusted to make a check pass.
inline constexpr uint64_t kDefaultSeed = 1729;
inline constexpr uint64_t kDefaultSamples = 100'000;

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
    bool gating = true;  // informational lines do not affect the suite verdict
};

struct SuiteReport {
    std::string suite;
    int criterion = 0;
    std::vector<Check> checks;
    double seconds = 0;
    bool pass() const;
    std::string summary() const;  // e.g. "12/12 checks"
};

struct SuiteInfo {
    std::string name;
    int criterion;
    std::string description;
};

struct Options {
    uint64_t seed = kDefaultSeed;
    uint64_t samples = kDefaultSamples;
    bool verbose = false;
};

const std::vector<SuiteInfo>& suites();
const SuiteInfo* find_suite(const std::string& name_or_number);
// Throws std::invalid_argument for an unknown suite.
SuiteReport run_suite(const std::string& name, const Options& opt = {});

}  // namespace selmer::verify
