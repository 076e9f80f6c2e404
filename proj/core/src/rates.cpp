#include "phantom/analysis/rates.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace phantom {

std::optional<double> RateProfile::at(std::size_t t) const
{
    auto it = std::lower_bound(rates.begin(), rates.end(), t,
                               [](const RatePoint& p, std::size_t v) { return p.t < v; });
    if (it == rates.end() || it->t != t)
        return std::nullopt;
    return it->rate;
}

PlateauEstimate plateau_rate(const RateProfile& profile, const PlateauOptions& opt)
{
    const std::size_t w = opt.window;
    if (w < 5)
        throw DomainError("plateau_rate: window must be >= 5");

    std::size_t start_lo = 0;
    std::size_t start_hi = std::numeric_limits<std::size_t>::max();
    std::size_t end_hi = std::numeric_limits<std::size_t>::max();
    if (opt.t_lo || opt.t_hi) {
        start_lo = opt.t_lo.value_or(0);
        if (opt.t_hi)
            end_hi = *opt.t_hi;
    } else if (opt.n) {
        const std::size_t n = *opt.n;
        std::size_t early = static_cast<std::size_t>(
            std::count_if(profile.rates.begin(), profile.rates.end(), [&](const RatePoint& p) { return 2 * p.t < n; }));
        if (early < w)
            throw EstimationError("plateau_rate: fewer than `window` rates before t = n/2");
        start_lo = w;
        start_hi = n >= w ? n - w : 0;
    }

    const auto& r = profile.rates;
    std::optional<PlateauEstimate> best;
    for (std::size_t i = 0; i + w <= r.size(); ++i) {
        const std::size_t t0 = r[i].t, t1 = r[i + w - 1].t;
        if (t1 - t0 != w - 1)
            continue;
        if (t0 < start_lo || t0 > start_hi || t1 > end_hi)
            continue;
        double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
        bool positive = true;
        for (std::size_t k = i; k < i + w; ++k) {
            if (!(r[k].rate > 0.0)) {
                positive = false;
                break;
            }
            double l = std::log(r[k].rate);
            lo = std::min(lo, l);
            hi = std::max(hi, l);
            sum += l;
        }
        if (!positive)
            continue;
        double flat = hi - lo;
        if (!best || flat < best->flatness)
            best = PlateauEstimate{std::exp(sum / static_cast<double>(w)), t0, t1, flat};
    }
    if (!best)
        throw EstimationError("plateau_rate: no admissible window");
    return *best;
}

std::optional<double> transition_time(const RateProfile& profile, double threshold)
{
    const auto& r = profile.rates;
    for (std::size_t i = 1; i < r.size(); ++i) {
        if (r[i].t != r[i - 1].t + 1)
            continue;
        if (r[i - 1].rate >= threshold && r[i].rate < threshold) {
            double frac = (r[i - 1].rate - threshold) / (r[i - 1].rate - r[i].rate);
            return static_cast<double>(r[i - 1].t) + frac;
        }
    }
    return std::nullopt;
}

std::optional<double> late_rate(const RateProfile& profile, std::size_t count)
{
    const auto& r = profile.rates;
    if (count == 0 || r.size() < count)
        return std::nullopt;
    double sum = 0.0;
    for (std::size_t i = r.size() - count; i < r.size(); ++i) {
        if (!(r[i].rate > 0.0))
            return std::nullopt;
        sum += std::log(r[i].rate);
    }
    return std::exp(sum / static_cast<double>(count));
}

double correlation(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw DomainError("correlation: need two samples of equal length >= 2");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0 || syy == 0)
        throw DomainError("correlation: constant sample");
    return sxy / std::sqrt(sxx * syy);
}

} // namespace phantom
