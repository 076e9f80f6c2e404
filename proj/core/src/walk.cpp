#include "phantom/transfer/walk.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "phantom/errors.hpp"
#include "phantom/numerics/rng.hpp"

namespace phantom {

namespace {

void run_trials(std::size_t m, const Rates<double>& r, std::size_t t_max, std::uint64_t first, std::uint64_t last,
                std::uint64_t seed, std::vector<std::uint64_t>& hits)
{
    const double left = r.tau;
    const double right = r.tau + r.sigma;
    for (std::uint64_t k = first; k < last; ++k) {
        SplitMix64 g(derive_seed(seed, k));
        std::size_t pos = 1;
        for (std::size_t step = 1; step <= t_max; ++step) {
            double u = uniform01(g);
            if (u < left) {
                if (pos == 1) {
                    ++hits[step];
                    break;
                }
                --pos;
            } else if (u < right) {
                if (pos == m)
                    break;
                ++pos;
            }
        }
    }
}

} // namespace

WalkEstimate simulate_walk(std::size_t m, const Rates<double>& rates, std::size_t t_max, std::uint64_t trials,
                           std::uint64_t seed, unsigned workers)
{
    if (m < 1)
        throw DomainError("simulate_walk: need at least one bulk site");
    if (trials < 1)
        throw DomainError("simulate_walk: trials must be >= 1");
    if (rates.delta < 0 || rates.tau < 0 || rates.sigma < 0 ||
        std::abs(rates.delta + rates.tau + rates.sigma - 1.0) > 1e-12)
        throw DomainError("simulate_walk: rates must be non-negative and sum to 1");

    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(trials, 256))));
    std::vector<std::vector<std::uint64_t>> hits(workers, std::vector<std::uint64_t>(t_max + 1, 0));
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    if (workers == 1) {
        run_trials(m, rates, t_max, 0, trials, seed, hits[0]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            std::uint64_t first = std::min(trials, w * chunk);
            std::uint64_t last = std::min(trials, first + chunk);
            pool.emplace_back(run_trials, m, std::cref(rates), t_max, first, last, seed, std::ref(hits[w]));
        }
        for (auto& th : pool)
            th.join();
    }

    WalkEstimate out;
    out.trials = trials;
    out.seed = seed;
    out.r1.assign(t_max + 1, 0.0);
    out.std_error.assign(t_max + 1, 0.0);
    std::uint64_t cumulative = 0;
    const double n = static_cast<double>(trials);
    for (std::size_t t = 0; t <= t_max; ++t) {
        for (const auto& h : hits)
            cumulative += h[t];
        double r = static_cast<double>(cumulative) / n;
        out.r1[t] = r;
        out.std_error[t] = std::sqrt(r * (1.0 - r) / n);
    }
    return out;
}

} // namespace phantom
