// Runs acceptance criteria by name or number; no arguments runs all of them.
// Prints every check and then one PASS/FAIL line per criterion. Exit status is
// nonzero when any gating check fails.

#include "selmer/verify/verify.hpp"

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

using selmer::verify::Options;
using selmer::verify::SuiteReport;

int main(int argc, char** argv) {
    std::vector<std::string> wanted(argv + 1, argv + argc);
    if (wanted.empty())
        for (auto& s : selmer::verify::suites()) wanted.push_back(s.name);

    Options opt;  // fixed seed and sample size from verify.hpp
    std::vector<std::string> verdicts;
    bool all = true;
    for (auto& key : wanted) {
        const auto* info = selmer::verify::find_suite(key);
        if (!info) {
            std::fprintf(stderr, "unknown criterion '%s'\n", key.c_str());
            return 2;
        }
        char line[512];
        try {
            SuiteReport r = selmer::verify::run_suite(info->name, opt);
            for (auto& c : r.checks)
                std::printf("  [%s]%s %s  %s\n", c.pass ? "ok" : "FAILED", c.gating ? "" : " (info)", c.name.c_str(),
                            c.detail.c_str());
            std::snprintf(line, sizeof line, "%s criterion %02d %s (%s, %.1fs)", r.pass() ? "PASS" : "FAIL",
                          info->criterion, info->name.c_str(), r.summary().c_str(), r.seconds);
            all = all && r.pass();
        } catch (const std::exception& e) {
            std::snprintf(line, sizeof line, "FAIL criterion %02d %s (error: %s)", info->criterion, info->name.c_str(),
                          e.what());
            all = false;
        }
        std::puts(line);
        verdicts.push_back(line);
    }
    if (verdicts.size() > 1) {
        std::puts("");
        for (auto& v : verdicts) std::puts(v.c_str());
    }
    return all ? 0 : 1;
}
