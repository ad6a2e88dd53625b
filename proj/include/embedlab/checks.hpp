#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace embedlab {

struct PropertyResult {
    std::string name;
    int passed = 0;
    int total = 0;
    double worst = 0.0;  // largest residual observed across instances
    std::string detail;  // what the residual measures and its tolerance
    bool ok() const { return passed == total; }
};

struct SuiteReport {
    std::string suite;
    std::vector<PropertyResult> properties;
    bool ok() const {
        for (const auto& p : properties)
            if (!p.ok()) return false;
        return true;
    }
};

// Available suites: symmetry, markov, holevo, monotone, reduction.
std::vector<std::string> suite_names();

// Runs one randomized invariant suite. Every property draws from its own
// seed-derived stream, so results are reproducible for a given seed and
// independent of which other suites run.
SuiteReport run_suite(const std::string& name, std::uint64_t seed);

std::vector<SuiteReport> run_all_suites(std::uint64_t seed);

}  // namespace embedlab
