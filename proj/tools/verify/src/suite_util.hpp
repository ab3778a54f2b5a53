#pragma once

#include "selmer/numeric.hpp"
#include "selmer/verify/verify.hpp"

#include <chrono>
#include <sstream>
#include <string>

namespace selmer::verify::detail {

inline Check check(std::string name, bool pass, std::string detail = {}, bool gating = true) {
    return {std::move(name), pass, std::move(detail), gating};
}

inline double to_double(const Rational& r) { return static_cast<double>(r); }

class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

private:
    std::chrono::steady_clock::time_point t0_;
};

template <class... Args>
std::string cat(const Args&... args) {
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

// Suite bodies; each appends checks to the report.
void parity_law(SuiteReport& r, const Options& o);
void index_law(SuiteReport& r, const Options& o);
void coset_identities(SuiteReport& r, const Options& o);
void moments(SuiteReport& r, const Options& o);
void average_size(SuiteReport& r, const Options& o);
void torsor_counts(SuiteReport& r, const Options& o);
void burnside(SuiteReport& r, const Options& o);
void braid_invariance(SuiteReport& r, const Options& o);
void cells(SuiteReport& r, const Options& o);
void stability(SuiteReport& r, const Options& o);
void model_agreement(SuiteReport& r, const Options& o);

}  // namespace selmer::verify::detail
