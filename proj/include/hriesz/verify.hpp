#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace hriesz {

// Outcome of one acceptance check at n = 1.
struct CheckResult {
    std::string name;
    std::string criterion;
    bool pass = false;
    double measured = 0;   // headline quantity compared against `tolerance`
    double tolerance = 0;
    double seconds = 0;
    double budget = 0;     // wall-clock limit in seconds, 0 if none
    bool budget_per_evaluation = false;  // budget applies to each evaluation, checked by the check itself
    std::vector<std::pair<std::string, double>> values;
    std::vector<std::string> notes;
};

struct VerifyOptions {
    std::uint64_t seed = 7;
    // Directory for cached spectral analyses; empty disables caching.
    std::string cache_dir;
    std::function<void(const std::string&)> log;  // progress and warnings
};

const std::vector<std::string>& check_names();
bool is_check_name(const std::string& name);
CheckResult run_check(const std::string& name, const VerifyOptions& opt = {});

}  // namespace hriesz
