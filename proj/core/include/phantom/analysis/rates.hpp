#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "phantom/errors.hpp"
#include "phantom/transfer/series.hpp"

namespace phantom {

struct RatePoint {
    std::size_t t = 0;
    double rate = 0.0;
};

struct PlateauEstimate {
    double rate = 0.0;       ///< geometric mean over the window
    std::size_t t_begin = 0; ///< first t in the window
    std::size_t t_end = 0;   ///< last t in the window
    double flatness = 0.0;   ///< max - min of log rate inside the window
};

struct References {
    std::optional<double> lambda2;
    std::optional<double> lambda_ps;
    std::optional<double> lambda_mu;
};

/// lambda_eff(t) = (O(t+1) - O(inf)) / (O(t) - O(inf)). Entries whose
/// numerator or denominator falls below the floor are omitted and listed.
struct RateProfile {
    std::vector<RatePoint> rates;
    std::vector<std::size_t> omitted;
    std::optional<PlateauEstimate> plateau;
    std::optional<double> t_c;
    References references;

    std::optional<double> at(std::size_t t) const;
};

inline constexpr double default_rate_floor = 1e-60;

template <class S>
RateProfile effective_rate(const DecaySeries<S>& series, double floor = default_rate_floor)
{
    using std::abs;
    if (!series.deflated && !series.o_infinity)
        throw DomainError("effective_rate: series needs deflation or a known asymptote");
    const S lim = from_rational<S>(Rational(floor));
    RateProfile out;
    if (series.values.size() < 2)
        return out;
    S prev = series.excess(0);
    for (std::size_t t = 0; t + 1 < series.values.size(); ++t) {
        S next = series.excess(t + 1);
        if (abs(prev) > lim && abs(next) > lim) {
            S ratio = next / prev;
            out.rates.push_back({t, to_double(ratio)});
        } else {
            out.omitted.push_back(t);
        }
        prev = std::move(next);
    }
    return out;
}

/// Exact variant returning the ratios in the series' own field.
template <class S>
std::vector<std::optional<S>> effective_rate_exact(const DecaySeries<S>& series)
{
    std::vector<std::optional<S>> out;
    for (std::size_t t = 0; t + 1 < series.values.size(); ++t) {
        S a = series.excess(t);
        if (a == S(0))
            out.emplace_back();
        else
            out.emplace_back(S(series.excess(t + 1) / a));
    }
    return out;
}

struct PlateauOptions {
    std::size_t window = 10;
    /// Window starts are restricted to [window, n - window] when n is set and
    /// no explicit range is given.
    std::optional<std::size_t> n;
    /// Inclusive t range that the whole window must lie in.
    std::optional<std::size_t> t_lo, t_hi;
};

/// Geometric-mean rate over the flattest admissible stretch of `window`
/// consecutive entries, flatness being max - min of log rate.
PlateauEstimate plateau_rate(const RateProfile& profile, const PlateauOptions& opt);

/// First downward crossing of `threshold`, interpolated linearly between the
/// two bracketing integer steps. Rises from below (the initial transient) are
/// skipped.
std::optional<double> transition_time(const RateProfile& profile, double threshold);

/// Geometric mean of the last `count` available rates.
std::optional<double> late_rate(const RateProfile& profile, std::size_t count = 10);

/// Pearson correlation of two equally long samples.
double correlation(const std::vector<double>& x, const std::vector<double>& y);

} // namespace phantom
