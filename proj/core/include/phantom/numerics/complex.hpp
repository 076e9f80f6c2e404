#pragma once

#include <cmath>
#include <complex>

#include "phantom/numerics/scalar.hpp"

namespace phantom {

/// Minimal complex type over an arbitrary real field. std::complex is only
/// specified for the builtin floating types.
template <class R>
struct Complex {
    R re{0};
    R im{0};

    Complex() = default;
    Complex(const R& r) : re(r), im(0) {}
    Complex(const R& r, const R& i) : re(r), im(i) {}

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o)
    {
        R r = re * o.re - im * o.im;
        R i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    Complex& operator/=(const Complex& o)
    {
        R d = o.re * o.re + o.im * o.im;
        R r = (re * o.re + im * o.im) / d;
        R i = (im * o.re - re * o.im) / d;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    Complex operator-() const { return Complex(R(-re), R(-im)); }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

using ComplexScalar = Complex<BigFloat>;

template <class R>
Complex<R> conj(const Complex<R>& z) { return Complex<R>(z.re, R(-z.im)); }

template <class R>
R norm(const Complex<R>& z) { return R(z.re * z.re + z.im * z.im); }

template <class R>
R abs(const Complex<R>& z)
{
    using std::sqrt;
    return R(sqrt(norm(z)));
}

/// e^{i phi}
template <class R>
Complex<R> expi(const R& phi)
{
    using std::cos;
    using std::sin;
    return Complex<R>(R(cos(phi)), R(sin(phi)));
}

template <class R>
std::complex<double> to_std(const Complex<R>& z)
{
    return {to_double(z.re), to_double(z.im)};
}

} // namespace phantom
