#include "phantom/analysis/experiment.hpp"

#include <boost/math/constants/constants.hpp>

#include "phantom/closedform/closedform.hpp"
#include "phantom/spectral/eigen.hpp"
#include "phantom/spectral/pseudospectrum.hpp"
#include "phantom/transfer/series.hpp"

namespace phantom {

std::string_view pair_kind_name(PairKind k)
{
    switch (k) {
    case PairKind::otoc: return "otoc";
    case PairKind::random_stochastic: return "random";
    case PairKind::exp_localized: return "exp";
    }
    return "unknown";
}

PairKind parse_pair_kind(std::string_view name)
{
    if (name == "otoc") return PairKind::otoc;
    if (name == "random") return PairKind::random_stochastic;
    if (name == "exp") return PairKind::exp_localized;
    throw DomainError("unknown vector pair '" + std::string(name) + "'");
}

std::string_view ordering_name(Ordering o)
{
    switch (o) {
    case Ordering::equal_low: return "equal-low";
    case Ordering::equal_high: return "equal-high";
    case Ordering::strict: return "strict";
    case Ordering::violated: return "violated";
    }
    return "unknown";
}

namespace {

int need_q(const ModelParams& p)
{
    if (!p.q)
        throw DomainError("the physical vector pair needs an integer q");
    return *p.q;
}

Rational need_mu(const ModelParams& p)
{
    if (!p.mu)
        throw DomainError("the exponential vector pair needs mu");
    return *p.mu;
}

} // namespace

Experiment make_experiment(const ModelParams& params, PairKind kind, std::uint64_t seed, PbcSinkRule rule)
{
    params.validate();
    const int j = params.j.value_or(1);
    const std::size_t n = static_cast<std::size_t>(params.n);

    switch (params.boundary) {
    case Boundary::obc: {
        auto a = build_obc(params);
        VectorPair<Rational> pair;
        if (kind == PairKind::otoc) {
            pair = otoc_vectors_obc(params.n, need_q(params), j);
        } else if (kind == PairKind::random_stochastic) {
            std::vector<Rational> p(n, Rational(1));
            p[n - 1] = 0;
            pair = with_random_v(std::move(p), seed);
        } else {
            pair = exp_localized_vectors(n, need_mu(params));
        }
        return {params, kind, seed, std::move(a), std::move(pair)};
    }
    case Boundary::pbc: {
        auto a = build_pbc(params, rule);
        VectorPair<Rational> pair;
        if (kind == PairKind::otoc) {
            pair = otoc_vectors_pbc(params.n, need_q(params), j);
        } else if (kind == PairKind::random_stochastic) {
            auto base = otoc_vectors_pbc(params.n, need_q(params), j, true);
            pair = with_random_v(std::move(base.p), seed);
        } else {
            throw DomainError("exponential vectors are not defined for the PBC model");
        }
        return {params, kind, seed, std::move(a), std::move(pair)};
    }
    case Boundary::markov_walk: {
        auto a = build_markov_walk(n, params.rates());
        VectorPair<Rational> pair;
        if (kind == PairKind::otoc) {
            Rational weight = 1;
            if (params.q) {
                Rational q4 = Rational(*params.q) * *params.q * *params.q * *params.q;
                weight = q4 / (q4 - 1);
            }
            pair = markov_vectors(n, weight);
        } else if (kind == PairKind::random_stochastic) {
            auto base = markov_vectors(n);
            base.p.back() = 0;
            pair = with_random_v(std::move(base.p), seed);
        } else {
            throw DomainError("exponential vectors are not defined for the Markov walk");
        }
        return {params, kind, seed, std::move(a), std::move(pair)};
    }
    case Boundary::jordan: {
        Rates<Rational> r = params.rates();
        auto a = build_jordan(n, r.delta, r.sigma);
        VectorPair<Rational> pair;
        if (kind == PairKind::otoc)
            pair = profile_vectors(ConvolutionProfile::constant_one(), n);
        else if (kind == PairKind::random_stochastic)
            pair = with_random_v(std::vector<Rational>(n, Rational(1)), seed);
        else
            pair = profile_vectors(ConvolutionProfile::exponential(need_mu(params)), n);
        return {params, kind, seed, std::move(a), std::move(pair)};
    }
    case Boundary::custom:
        break;
    }
    throw DomainError("custom models cannot be built from parameters");
}

References reference_rates(const ModelParams& params, PairKind kind)
{
    const Rates<Rational> r = params.rates();
    const double d = to_double(r.delta), t = to_double(r.tau), s = to_double(r.sigma);
    const double pi = boost::math::constants::pi<double>();
    const std::optional<double> mu = params.mu ? std::optional<double>(to_double(*params.mu)) : std::nullopt;
    References ref;
    switch (params.boundary) {
    case Boundary::obc:
        ref.lambda2 = lambda2_obc(params.n, r);
        ref.lambda_ps = d + t + s;
        if (kind == PairKind::exp_localized && mu)
            ref.lambda_mu = lambda_mu(r, *mu);
        break;
    case Boundary::pbc: {
        const double c = 1.0 + std::cos(pi / params.n);
        ref.lambda2 = d * d * c * c;
        ref.lambda_ps = (d + t + s) * (d + t + s);
        break;
    }
    case Boundary::markov_walk:
        ref.lambda2 = d + 2.0 * std::sqrt(s * t) * std::cos(pi / (params.n + 1));
        ref.lambda_ps = d + t + s;
        break;
    case Boundary::jordan:
        ref.lambda2 = d;
        ref.lambda_ps = d + s;
        if (kind == PairKind::exp_localized && mu)
            ref.lambda_mu = d + s / *mu;
        break;
    case Boundary::custom:
        throw DomainError("no reference rates for custom models");
    }
    return ref;
}

Ordering classify(double lambda_ph, double lambda2, double lambda_ps, double tol)
{
    if (std::abs(lambda_ph - lambda2) <= tol)
        return Ordering::equal_low;
    if (std::abs(lambda_ph - lambda_ps) <= tol)
        return Ordering::equal_high;
    if (lambda_ph > lambda2 + tol && lambda_ph < lambda_ps - tol)
        return Ordering::strict;
    return Ordering::violated;
}

CompareReport compare_report(const ModelParams& params, PairKind kind, const ReportOptions& opt)
{
    Experiment e = make_experiment(params, kind, opt.seed);
    const std::size_t n = static_cast<std::size_t>(params.n);
    const std::size_t t_max = opt.t_max.value_or(params.boundary == Boundary::pbc ? 6 * n : 3 * n);

    PrecisionScope scope(opt.precision_bits);
    auto a = e.matrix.convert<BigFloat>();
    auto pair = e.pair.convert<BigFloat>();
    auto series = iterate_series(a, pair, t_max, true);

    CompareReport rep;
    rep.references = reference_rates(params, kind);
    rep.profile = effective_rate(series);
    PlateauOptions po;
    po.window = opt.window;
    if (opt.t_lo || opt.t_hi) {
        po.t_lo = opt.t_lo;
        po.t_hi = opt.t_hi;
    } else {
        po.n = n;
    }
    rep.plateau = plateau_rate(rep.profile, po);
    rep.profile.plateau = rep.plateau;
    rep.profile.references = rep.references;
    if (opt.threshold) {
        rep.t_c = transition_time(rep.profile, *opt.threshold);
        rep.profile.t_c = rep.t_c;
    }
    rep.late_rate = late_rate(rep.profile);
    const double upper = rep.references.lambda_mu.value_or(*rep.references.lambda_ps);
    rep.ordering = classify(rep.plateau.rate, *rep.references.lambda2, upper, opt.tolerance);
    rep.t_max = t_max;
    rep.precision_bits = scope.effective_bits();
    return rep;
}

} // namespace phantom
