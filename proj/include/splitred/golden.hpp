#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace splitred {

// One reproducible numeric claim; run() throws golden_failure on mismatch.
struct golden_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct golden_case {
    std::string id;
    std::string description;
    std::function<void()> run;
};

const std::vector<golden_case>& golden_cases();

} // namespace splitred
