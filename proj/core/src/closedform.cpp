#include "phantom/closedform/closedform.hpp"

#include <boost/math/constants/constants.hpp>

#include "phantom/errors.hpp"

namespace phantom {

ConvolutionProfile ConvolutionProfile::constant_one(const Rational& c)
{
    ConvolutionProfile p;
    p.kind = ProfileKind::constant;
    p.constant = c;
    return p;
}

ConvolutionProfile ConvolutionProfile::exponential(const Rational& mu)
{
    if (mu <= 0)
        throw DomainError("ConvolutionProfile: mu must be positive");
    ConvolutionProfile p;
    p.kind = ProfileKind::exponential;
    p.mu = mu;
    return p;
}

ConvolutionProfile ConvolutionProfile::tabulated(std::vector<Rational> values)
{
    ConvolutionProfile p;
    p.kind = ProfileKind::tabulated;
    p.table = std::move(values);
    return p;
}

Rational ConvolutionProfile::at(std::size_t r) const
{
    switch (kind) {
    case ProfileKind::constant:
        return constant;
    case ProfileKind::exponential:
        return Rational(1) / Rational(ipow(mu, static_cast<unsigned>(r)));
    case ProfileKind::tabulated:
        if (r >= table.size())
            throw DomainError("ConvolutionProfile: r beyond tabulated range");
        return table[r];
    }
    return 0;
}

VectorPair<Rational> profile_vectors(const ConvolutionProfile& c, std::size_t dim)
{
    if (dim < 1)
        throw DomainError("profile_vectors: dim must be >= 1");
    VectorPair<Rational> out;
    if (c.kind == ProfileKind::exponential)
        out.provenance = ExpLocalized{c.mu};
    out.p.reserve(dim);
    for (std::size_t k = 0; k < dim; ++k)
        out.p.push_back(c.at(k));
    out.v.assign(dim, Rational(0));
    out.v[0] = 1;
    return out;
}

Rational r1_catalan(std::size_t t, const Rates<Rational>& rates)
{
    const Rational ts = rates.tau * rates.sigma;
    Rational total = 0;
    for (std::size_t T = 0; T < t; ++T) {
        Rational returns = 0;
        for (std::size_t k = 0; 2 * k <= T; ++k) {
            Rational term{catalan(static_cast<unsigned>(k)) * binomial(static_cast<unsigned>(T), static_cast<unsigned>(2 * k))};
            term *= ipow(ts, static_cast<unsigned>(k));
            term *= ipow(rates.delta, static_cast<unsigned>(T - 2 * k));
            returns += term;
        }
        total += returns;
    }
    return Rational(rates.tau * total);
}

namespace {

const BigFloat& z_q2()
{
    thread_local BigFloat z;
    thread_local unsigned bits = 0;
    if (bits != current_precision_bits()) {
        z = BigFloat(Rational(16, 25));
        bits = current_precision_bits();
    }
    return z;
}

BigFloat half(int twice) { return BigFloat(twice) / 2; }

} // namespace

BigFloat otoc_closed_q2(std::size_t t)
{
    const BigFloat z = z_q2();
    const BigFloat tt(static_cast<double>(t));
    BigFloat f = hyp2f1<BigFloat>(BigFloat(1), BigFloat(half(3) + tt), BigFloat(3 + tt), z);
    BigFloat pref = BigFloat(64) / (375 * sqrt(boost::math::constants::pi<BigFloat>()));
    return BigFloat(1 + pref * pow(z, static_cast<unsigned>(t)) * gamma_ratio_3half_3(static_cast<unsigned>(t)) * f);
}

BigFloat hyp_ratio_q2(std::size_t t)
{
    const BigFloat z = z_q2();
    const BigFloat tt(static_cast<double>(t));
    BigFloat num = hyp2f1<BigFloat>(BigFloat(1), BigFloat(half(5) + tt), BigFloat(4 + tt), z);
    BigFloat den = hyp2f1<BigFloat>(BigFloat(1), BigFloat(half(3) + tt), BigFloat(3 + tt), z);
    return BigFloat(num / den);
}

BigFloat rate_closed_q2(std::size_t t)
{
    const BigFloat tt(static_cast<double>(t));
    return BigFloat(z_q2() * (half(3) + tt) / (3 + tt) * hyp_ratio_q2(t));
}

BigFloat inner_sum(int n, int h, const Rates<BigFloat>& rates, InnerSum mode)
{
    if (n < 2)
        throw DomainError("inner_sum: n must be >= 2");
    const BigFloat pi = boost::math::constants::pi<BigFloat>();
    const BigFloat ratio = rates.sigma / rates.tau;
    const BigFloat root = sqrt(ratio);
    if (mode == InnerSum::direct) {
        BigFloat acc = 0, w = 1;
        for (int k = 1; k <= n - 1; ++k) {
            w *= root;
            acc += w * sin(pi * h * k / n);
        }
        return acc;
    }
    const BigFloat sign = (h % 2 == 0) ? BigFloat(1) : BigFloat(-1);
    BigFloat s = sin(pi * h / n);
    BigFloat num = root * (1 - sign * pow(root, static_cast<unsigned>(n))) * s;
    BigFloat den = 1 + ratio - 2 * root * cos(pi * h / n);
    return BigFloat(num / den);
}

BigFloat spectral_sum_obc(std::size_t t, int n, const Rates<BigFloat>& rates, InnerSum mode)
{
    if (n < 2)
        throw DomainError("spectral_sum_obc: n must be >= 2");
    if (!(rates.sigma * rates.tau > 0))
        throw DomainError("spectral_sum_obc: sigma*tau must be positive");
    const BigFloat pi = boost::math::constants::pi<BigFloat>();
    const BigFloat root_st = sqrt(BigFloat(rates.sigma * rates.tau));
    const BigFloat pref = sqrt(BigFloat(rates.tau / rates.sigma));
    BigFloat acc = 0;
    for (int h = 1; h <= n - 1; ++h) {
        BigFloat lam = rates.delta + 2 * root_st * cos(pi * h / n);
        acc += pow(lam, static_cast<unsigned>(t)) * pref * sin(pi * h / n) * inner_sum(n, h, rates, mode);
    }
    return BigFloat(2 * acc / n);
}

LeadingTermProbe leading_term_checks(int n, const Rates<BigFloat>& rates, std::size_t t)
{
    if (n < 2)
        throw DomainError("leading_term_checks: n must be >= 2");
    if (!(rates.sigma > rates.tau))
        throw DomainError("leading_term_checks: requires sigma > tau");
    const BigFloat pi = boost::math::constants::pi<BigFloat>();
    const BigFloat root_st = sqrt(BigFloat(rates.sigma * rates.tau));
    const BigFloat lps = rates.delta + rates.sigma + rates.tau;
    const BigFloat ratio = rates.sigma / rates.tau;
    // 2 tau (sigma/tau)^{n/2} / n
    const BigFloat pref = 2 * rates.tau * pow(sqrt(ratio), static_cast<unsigned>(n)) / n;

    BigFloat leading = 0, interior = 0;
    for (int h = 1; h <= n - 1; ++h) {
        BigFloat lam = rates.delta + 2 * root_st * cos(pi * h / n);
        BigFloat s = sin(pi * h / n);
        BigFloat s2 = s * s;
        BigFloat sign = (h % 2 == 0) ? BigFloat(1) : BigFloat(-1);
        leading -= sign * pow(lam, static_cast<unsigned>(t)) * s2 / (lps - lam);
        interior += sign * s2 * pow(BigFloat(lam / lps), static_cast<unsigned>(t));
    }
    leading *= pref;
    leading *= rates.sigma / (rates.sigma - rates.tau);
    return {leading, interior};
}

} // namespace phantom
