#pragma once

#include <cmath>
#include <complex>

#include "phantom/numerics/complex.hpp"
#include "phantom/numerics/scalar.hpp"

namespace phantom {

/// Per-field helpers used by the generic linear algebra: conjugation, a
/// magnitude suitable for pivot comparisons, and exactness.
template <class T>
struct FieldTraits;

template <>
struct FieldTraits<double> {
    static constexpr bool exact = false;
    static double conj(double x) { return x; }
    static double magnitude(double x) { return std::abs(x); }
};

template <>
struct FieldTraits<std::complex<double>> {
    static constexpr bool exact = false;
    static std::complex<double> conj(const std::complex<double>& x) { return std::conj(x); }
    static double magnitude(const std::complex<double>& x) { return std::abs(x); }
};

template <>
struct FieldTraits<Rational> {
    static constexpr bool exact = true;
    static Rational conj(const Rational& x) { return x; }
    static Rational magnitude(const Rational& x) { return abs(x); }
};

template <>
struct FieldTraits<BigFloat> {
    static constexpr bool exact = false;
    static BigFloat conj(const BigFloat& x) { return x; }
    static BigFloat magnitude(const BigFloat& x) { return abs(x); }
};

template <>
struct FieldTraits<ComplexScalar> {
    static constexpr bool exact = false;
    static ComplexScalar conj(const ComplexScalar& x) { return phantom::conj(x); }
    static BigFloat magnitude(const ComplexScalar& x) { return phantom::abs(x); }
};

} // namespace phantom
