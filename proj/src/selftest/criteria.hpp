#pragma once

// Acceptance criteria, each an exact finite verification with a pinned
// runtime budget. Shared by the acceptance test binary and `ncm selftest`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ncm::selftest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool checks_passed = false;
    std::string detail;
    double seconds = 0.0;
    double budget_seconds = 0.0;

    bool passed() const { return checks_passed && seconds < budget_seconds; }
};

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    // Returns a failure description, or an empty string on success; `detail`
    // receives a one-line summary either way.
    std::function<std::string(std::string& detail)> check;
};

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024;

std::vector<Criterion> criteria(std::uint64_t seed = kDefaultSeed);

CriterionResult run(const Criterion& c);

/// "[PASS] 3 hilbert symbol suite (0.41 s < 10 s): ..." style line.
std::string format_line(const CriterionResult& r);

}  // namespace ncm::selftest
