#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace phantom {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using BigFloat = boost::multiprecision::mpfr_float;

enum class Backend { rational, bigfloat, float64 };

std::string_view backend_name(Backend b);

inline constexpr unsigned default_precision_bits = 256;

/// Sets the process-wide default BigFloat precision while alive.
/// The effective precision is the smallest value Boost can represent that is
/// at least the requested number of bits.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

    unsigned effective_bits() const noexcept { return effective_; }

private:
    unsigned saved_digits10_;
    unsigned effective_;
};

/// Binary precision actually in use for newly created BigFloat values.
unsigned current_precision_bits();

/// Bits that a PrecisionScope(bits) would deliver.
unsigned effective_bits(unsigned requested_bits);

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

template <class S>
S from_rational(const Rational& q)
{
    if constexpr (std::is_same_v<S, Rational>)
        return q;
    else if constexpr (std::is_same_v<S, BigFloat>)
        return BigFloat(q);
    else
        return q.template convert_to<S>();
}

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline double to_double(const BigFloat& x) { return x.convert_to<double>(); }

/// Parses "a/b", integers, and decimals with an optional exponent into an
/// exact rational. Throws DomainError on malformed input.
Rational parse_rational(std::string_view text);

/// Scientific-notation rendering with `digits` significant digits.
std::string format_decimal(const BigFloat& x, int digits);
std::string format_decimal(const Rational& x, int digits);
std::string format_decimal(double x, int digits);

/// x^e by repeated squaring; exact for Rational.
template <class S>
S ipow(const S& x, unsigned e)
{
    S result(1);
    S base(x);
    while (e) {
        if (e & 1u)
            result *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return result;
}

/// 2^(1-bits) at the current precision, or DBL_EPSILON for double.
template <class S>
S machine_epsilon()
{
    if constexpr (std::is_same_v<S, BigFloat>)
        return ldexp(BigFloat(1), 1 - static_cast<int>(current_precision_bits()));
    else
        return std::numeric_limits<S>::epsilon();
}

} // namespace phantom
