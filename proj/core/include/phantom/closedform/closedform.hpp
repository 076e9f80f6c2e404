#pragma once

#include <cstddef>
#include <vector>

#include "phantom/numerics/scalar.hpp"
#include "phantom/numerics/special.hpp"
#include "phantom/transfer/params.hpp"
#include "phantom/transfer/vectors.hpp"

namespace phantom {

enum class ProfileKind { constant, exponential, tabulated };

/// C(r) = sum_j p_{j+r} v_j for the vector pairs driving a two-diagonal matrix.
struct ConvolutionProfile {
    ProfileKind kind = ProfileKind::constant;
    Rational constant{1};
    Rational mu{1};
    std::vector<Rational> table;

    static ConvolutionProfile constant_one(const Rational& c = 1);
    static ConvolutionProfile exponential(const Rational& mu);
    static ConvolutionProfile tabulated(std::vector<Rational> values);

    /// C(r); Exponential gives mu^{-r} exactly. Tabulated throws past its end.
    Rational at(std::size_t r) const;
};

/// p_k = C(k-1), v = e_1 on a matrix of dimension `dim`.
VectorPair<Rational> profile_vectors(const ConvolutionProfile& c, std::size_t dim);

/// sum_{r=0}^{min(t, n-1)} binom(t, r) delta^{t-r} sigma^r C(r).
template <class S>
S jordan_closed(std::size_t t, std::size_t n, const S& delta, const S& sigma, const ConvolutionProfile& c)
{
    if (n < 1)
        throw DomainError("jordan_closed: n must be >= 1");
    const std::size_t rmax = std::min(t, n - 1);
    S total(0);
    for (std::size_t r = 0; r <= rmax; ++r) {
        S term = from_rational<S>(Rational(binomial(static_cast<unsigned>(t), static_cast<unsigned>(r))));
        term *= ipow(delta, static_cast<unsigned>(t - r));
        term *= ipow(sigma, static_cast<unsigned>(r));
        term *= from_rational<S>(c.at(r));
        total += term;
    }
    return total;
}

/// Left-bath absorption probability by time t for a walker started next to
/// the left bath on a semi-infinite chain, via Catalan-weighted paths.
Rational r1_catalan(std::size_t t, const Rates<Rational>& rates);

/// 1 + (64/(375 sqrt(pi))) (16/25)^t G(t) 2F1(1, 3/2+t; 3+t; 16/25).
BigFloat otoc_closed_q2(std::size_t t);

/// (16/25) ((3/2+t)/(3+t)) 2F1(1, 5/2+t; 4+t; z) / 2F1(1, 3/2+t; 3+t; z).
BigFloat rate_closed_q2(std::size_t t);

/// 2F1(1, 5/2+t; 4+t; 16/25) / 2F1(1, 3/2+t; 3+t; 16/25).
BigFloat hyp_ratio_q2(std::size_t t);

enum class InnerSum { direct, identity };

/// sum_{k=1}^{n-1} (sigma/tau)^{k/2} sin(h k pi / n).
BigFloat inner_sum(int n, int h, const Rates<BigFloat>& rates, InnerSum mode);

/// <1| T^t |e_1> for the (n-1)-dim bulk, through its eigen-expansion:
/// (2/n) sum_h lambda_h^t sqrt(tau/sigma) sin(h pi/n) inner_sum(h).
BigFloat spectral_sum_obc(std::size_t t, int n, const Rates<BigFloat>& rates, InnerSum mode = InnerSum::identity);

struct LeadingTermProbe {
    BigFloat leading_normalized; ///< alternating-sign part of the expansion, scaled to 1
    BigFloat interior_sum;       ///< sum_h (-1)^h sin^2(h pi/n) (lambda_h / lambda_ps)^k at k = t
};

LeadingTermProbe leading_term_checks(int n, const Rates<BigFloat>& rates, std::size_t t);

} // namespace phantom
