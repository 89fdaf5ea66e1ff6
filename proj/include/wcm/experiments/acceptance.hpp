#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wcm::experiments {

inline constexpr int kCriteriaCount = 11;

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::vector<std::string> details;  // one line per individual check
};

struct AcceptanceOptions {
    std::uint64_t seed = 20261016;
    int workers = 1;
    std::string cli_path;  // used by the reproducibility criterion
};

CriterionResult run_criterion(int id, const AcceptanceOptions& opts);

// "PASS 6 eden-expected-length" followed by indented detail lines.
std::string format_result(const CriterionResult& r);

}  // namespace wcm::experiments
