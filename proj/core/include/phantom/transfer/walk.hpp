#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "phantom/transfer/params.hpp"

namespace phantom {

struct WalkEstimate {
    std::vector<double> r1;        ///< r1[t], t = 0..t_max
    std::vector<double> std_error; ///< binomial standard error per t
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo estimate of the probability that a walker started on the
/// first of m bulk sites has been absorbed by the left bath by time t.
/// Trial k uses the stream derive_seed(seed, k), so results do not depend on
/// `workers`.
WalkEstimate simulate_walk(std::size_t m, const Rates<double>& rates, std::size_t t_max, std::uint64_t trials,
                           std::uint64_t seed, unsigned workers = 1);

} // namespace phantom
