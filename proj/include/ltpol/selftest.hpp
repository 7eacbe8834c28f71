#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <ltpol/padic.hpp>

namespace ltpol
{

struct selftest_config {
    long p = 2;
    int n_max = 24;
    // Capped precision for the capped-backend checks; 0 selects the default.
    val_t precision = 0;
    std::uint64_t seed = 1;
    int threads = 1;
};

struct check_result {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs the property suite. Each check reports independently; a
// precision_error from a capped check propagates to the caller.
std::vector<check_result> run_selftest(const selftest_config &,
                                       const std::function<void(const check_result &)> &on_check = {});

} // namespace ltpol
