#pragma once

#include <cstddef>
#include <string>

#include "phantom/errors.hpp"
#include "phantom/numerics/scalar.hpp"

namespace phantom {

BigInt binomial(unsigned n, unsigned k);
BigInt catalan(unsigned k);

struct Hyp2f1Options {
    std::size_t max_terms = 10000;
};

/// Gauss series for 2F1(a, b; c; z) with |z| < 1. Stops once the running term
/// drops below epsilon times the partial sum, or a factor (a)_k or (b)_k
/// vanishes and the series terminates.
template <class S>
S hyp2f1(const S& a, const S& b, const S& c, const S& z, const Hyp2f1Options& opt = {})
{
    using std::abs;
    using std::floor;
    if (!(abs(z) < S(1)))
        throw DomainError("hyp2f1 requires |z| < 1");
    if (c <= S(0) && floor(c) == c)
        throw DomainError("hyp2f1: c is a non-positive integer");

    const S eps = machine_epsilon<S>();
    S term(1);
    S sum(1);
    for (std::size_t k = 0; k < opt.max_terms; ++k) {
        S kk(static_cast<double>(k));
        term *= (a + kk) * (b + kk) / ((c + kk) * (kk + S(1))) * z;
        if (term == S(0))
            return sum;
        sum += term;
        if (abs(term) <= eps * abs(sum))
            return sum;
    }
    throw ConvergenceError("hyp2f1 did not converge within " + std::to_string(opt.max_terms) + " terms",
                           to_double(sum));
}

/// Gamma(3/2 + t) / Gamma(3 + t) by upward recurrence from sqrt(pi)/4.
BigFloat gamma_ratio_3half_3(unsigned t);

} // namespace phantom
