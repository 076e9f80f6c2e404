#include "phantom/numerics/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include <boost/multiprecision/detail/digits.hpp>

#include "phantom/errors.hpp"

namespace phantom {

namespace {

unsigned digits10_for_bits(unsigned bits)
{
    unsigned d = 1;
    while (boost::multiprecision::detail::digits10_2_2(d) < bits)
        ++d;
    return d;
}

} // namespace

std::string_view backend_name(Backend b)
{
    switch (b) {
    case Backend::rational: return "rational";
    case Backend::bigfloat: return "bigfloat";
    case Backend::float64: return "float64";
    }
    return "unknown";
}

unsigned effective_bits(unsigned requested_bits)
{
    if (requested_bits < 53)
        throw DomainError("precision must be at least 53 bits");
    return static_cast<unsigned>(
        boost::multiprecision::detail::digits10_2_2(digits10_for_bits(requested_bits)));
}

unsigned current_precision_bits()
{
    return static_cast<unsigned>(
        boost::multiprecision::detail::digits10_2_2(BigFloat::default_precision()));
}

PrecisionScope::PrecisionScope(unsigned bits)
    : saved_digits10_(BigFloat::default_precision()), effective_(phantom::effective_bits(bits))
{
    BigFloat::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { BigFloat::default_precision(saved_digits10_); }

Rational parse_rational(std::string_view text)
{
    auto fail = [&] { return DomainError("not a rational number: '" + std::string(text) + "'"); };
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start])))
        ++start;
    s = s.substr(start);
    if (s.empty())
        throw fail();

    if (auto slash = s.find('/'); slash != std::string::npos) {
        Rational num = parse_rational(s.substr(0, slash));
        Rational den = parse_rational(s.substr(slash + 1));
        if (den == 0)
            throw DomainError("zero denominator in '" + s + "'");
        return num / den;
    }

    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
        negative = s[i] == '-';
        ++i;
    }
    std::string digits;
    int scale = 0;
    bool seen_point = false;
    bool seen_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point)
                --scale;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit)
        throw fail();
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E')
            throw fail();
        ++i;
        std::size_t used = 0;
        int exponent = 0;
        try {
            exponent = std::stoi(s.substr(i), &used);
        } catch (const std::exception&) {
            throw fail();
        }
        if (used != s.size() - i)
            throw fail();
        scale += exponent;
    }
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    Rational value{BigInt(digits)};
    BigInt ten_power = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::abs(scale)));
    if (scale >= 0)
        value *= ten_power;
    else
        value /= ten_power;
    return negative ? Rational(-value) : value;
}

std::string format_decimal(const BigFloat& x, int digits)
{
    std::ostringstream os;
    os << std::scientific << std::setprecision(digits - 1) << x;
    return os.str();
}

std::string format_decimal(const Rational& x, int digits)
{
    BigFloat f(x);
    return format_decimal(f, digits);
}

std::string format_decimal(double x, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
    return buf;
}

} // namespace phantom
