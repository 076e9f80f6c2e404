#include "phantom/numerics/special.hpp"

#include <boost/math/constants/constants.hpp>

namespace phantom {

BigInt binomial(unsigned n, unsigned k)
{
    if (k > n)
        throw DomainError("binomial: k > n");
    k = std::min(k, n - k);
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

BigInt catalan(unsigned k)
{
    BigInt b = binomial(2 * k, k);
    return BigInt(b / (k + 1));
}

BigFloat gamma_ratio_3half_3(unsigned t)
{
    BigFloat g = sqrt(boost::math::constants::pi<BigFloat>()) / 4;
    for (unsigned s = 0; s < t; ++s)
        g *= (BigFloat(3) / 2 + s) / BigFloat(3 + s);
    return g;
}

} // namespace phantom
