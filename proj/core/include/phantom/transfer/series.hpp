#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "phantom/errors.hpp"
#include "phantom/numerics/banded.hpp"
#include "phantom/transfer/matrix.hpp"
#include "phantom/transfer/vectors.hpp"

namespace phantom {

template <class S>
constexpr Backend backend_of()
{
    if constexpr (std::is_same_v<S, Rational>)
        return Backend::rational;
    else if constexpr (std::is_same_v<S, BigFloat>)
        return Backend::bigfloat;
    else
        return Backend::float64;
}

template <class S>
unsigned precision_of()
{
    if constexpr (std::is_same_v<S, Rational>)
        return 0;
    else if constexpr (std::is_same_v<S, BigFloat>)
        return current_precision_bits();
    else
        return 53;
}

/// O(t) for t = 0..t_max. When `deflated`, values hold O(t) - O(inf).
template <class S>
struct DecaySeries {
    std::vector<S> values;
    std::optional<S> o_infinity;
    bool deflated = false;
    Backend backend = backend_of<S>();
    unsigned precision_bits = precision_of<S>();

    std::size_t t_max() const noexcept { return values.empty() ? 0 : values.size() - 1; }

    /// O(t) - O(inf), subtracting only when the series is not deflated.
    S excess(std::size_t t) const
    {
        if (deflated)
            return values.at(t);
        if (!o_infinity)
            throw DomainError("DecaySeries: asymptote unknown");
        return S(values.at(t) - *o_infinity);
    }

    /// O(t) itself.
    S value(std::size_t t) const
    {
        if (!deflated)
            return values.at(t);
        return S(values.at(t) + *o_infinity);
    }
};

/// An absorbing state `index` and the left eigenvector (eigenvalue 1) that is
/// 1 there and 0 on the other absorbing states.
template <class S>
struct FixedPoint {
    std::size_t index = 0;
    std::vector<S> left;
};

namespace detail {

template <class S>
std::vector<S> solve_bulk(const BandedMatrix<S>& m, const std::vector<S>& rhs)
{
    BandedLU<S> lu(m);
    if (lu.singular())
        throw NumericalError("stationary vector: restricted system is singular", lu.pivot_ratio());
    return lu.solve(std::span<const S>(rhs));
}

/// I - T^T for a tridiagonal Toeplitz T of dimension m.
template <class S>
BandedMatrix<S> one_minus_transpose(std::size_t m, const S& diag, const S& super, const S& sub)
{
    BandedMatrix<S> a(m, 1, 1);
    for (std::size_t i = 0; i < m; ++i) {
        a.at(i, i) = S(1) - diag;
        if (i + 1 < m) {
            a.at(i, i + 1) = -sub;
            a.at(i + 1, i) = -super;
        }
    }
    return a;
}

template <class S>
double spectral_radius_bound(const TridiagToeplitz<S>& t)
{
    double st = to_double(S(t.sub * t.super));
    return std::abs(to_double(t.diag)) + 2.0 * std::sqrt(std::abs(st));
}

template <class S>
double spectral_radius_bound(const TwoDiagonal<S>& t)
{
    return std::abs(to_double(t.diag));
}

} // namespace detail

/// Absorbing fixed points of ObcFull, PbcBlockCirculant (one each) and
/// MarkovWalk (left and right bath). Empty for the transient variants.
template <class S>
std::vector<FixedPoint<S>> absorbing_fixed_points(const TransferMatrix<S>& a)
{
    const std::size_t d = a.dim();
    std::vector<FixedPoint<S>> out;
    if (const auto* o = a.template as<ObcFull<S>>()) {
        const std::size_t m = o->inner.dim;
        std::vector<S> rhs(m, S(0));
        rhs[m - 1] = o->sink;
        auto x = detail::solve_bulk(detail::one_minus_transpose(m, o->inner.diag, o->inner.super, o->inner.sub), rhs);
        x.push_back(S(1));
        out.push_back({d - 1, std::move(x)});
    } else if (const auto* p = a.template as<PbcBlockCirculant<S>>()) {
        const std::size_t m = p->width();
        BandedMatrix<S> sm(m, 2, 2);
        for (std::size_t w = 0; w < m; ++w) {
            S cd = (w == 0 || w == m - 1) ? p->c_corner : p->c_diag;
            sm.at(w, w) = S(1) - cd - p->u_diag - p->d_diag;
            if (w + 1 < m) {
                sm.at(w, w + 1) = -(p->c_sub + p->u_sub);
                sm.at(w + 1, w) = -(p->c_super + p->d_super);
            }
            if (w + 2 < m) {
                sm.at(w, w + 2) = -p->u_subsub;
                sm.at(w + 2, w) = -p->d_supsup;
            }
        }
        std::vector<S> rhs(m, S(0));
        rhs[m - 2] += p->sink_edge;
        rhs[m - 1] += p->sink_last;
        auto x = detail::solve_bulk(sm, rhs);
        std::vector<S> l;
        l.reserve(d);
        for (std::size_t i = 0; i < p->n; ++i)
            l.insert(l.end(), x.begin(), x.end());
        l.push_back(S(1));
        out.push_back({d - 1, std::move(l)});
    } else if (const auto* w = a.template as<MarkovWalk<S>>()) {
        const std::size_t m = w->bulk;
        auto band = detail::one_minus_transpose(m, w->rates.delta, w->rates.tau, w->rates.sigma);
        BandedLU<S> lu(band);
        if (lu.singular())
            throw NumericalError("stationary vector: restricted system is singular", lu.pivot_ratio());
        std::vector<S> rl(m, S(0)), rr(m, S(0));
        rl[0] = w->rates.tau;
        rr[m - 1] = w->rates.sigma;
        auto xl = lu.solve(std::span<const S>(rl));
        auto xr = lu.solve(std::span<const S>(rr));
        std::vector<S> left(d, S(0)), right(d, S(0));
        left[0] = S(1);
        right[d - 1] = S(1);
        for (std::size_t i = 0; i < m; ++i) {
            left[i + 1] = xl[i];
            right[i + 1] = xr[i];
        }
        out.push_back({0, std::move(left)});
        out.push_back({d - 1, std::move(right)});
    }
    return out;
}

/// Left vector l with l A = l and l e_last = 1 (for MarkovWalk: the right
/// bath). Throws DomainError for variants without an absorbing state.
template <class S>
std::vector<S> stationary_left_vector(const TransferMatrix<S>& a)
{
    auto fps = absorbing_fixed_points(a);
    if (fps.empty())
        throw DomainError("stationary_left_vector: matrix has no absorbing state");
    return std::move(fps.back().left);
}

template <class S>
S dot(const std::vector<S>& a, const std::vector<S>& b)
{
    S acc(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == S(0)) && !(b[i] == S(0)))
            acc += a[i] * b[i];
    return acc;
}

/// O(inf) for absorbing variants; 0 for transient ones whose spectral radius
/// is provably below 1; empty otherwise.
template <class S>
std::optional<S> asymptote(const TransferMatrix<S>& a, const VectorPair<S>& pair)
{
    auto fps = absorbing_fixed_points(a);
    if (!fps.empty()) {
        S total(0);
        for (const auto& f : fps)
            total += pair.p[f.index] * dot(f.left, pair.v);
        return total;
    }
    const TransferMatrix<S>* base = &a;
    if (const auto* r = a.template as<Rescaled<S>>())
        base = r->base.get();
    double bound = 2.0;
    if (const auto* t = base->template as<TridiagToeplitz<S>>())
        bound = detail::spectral_radius_bound(*t);
    else if (const auto* t2 = base->template as<TwoDiagonal<S>>())
        bound = detail::spectral_radius_bound(*t2);
    if (bound < 1.0)
        return S(0);
    return std::nullopt;
}

/// O(t) = p A^t v for t = 0..t_max by repeated matvec. With `deflate`, p is
/// replaced by p - sum_f p_f l_f so that the stored values are O(t) - O(inf)
/// without cancellation.
template <class S>
DecaySeries<S> iterate_series(const TransferMatrix<S>& a, const VectorPair<S>& pair, std::size_t t_max, bool deflate)
{
    const std::size_t d = a.dim();
    if (pair.p.size() != d || pair.v.size() != d)
        throw DomainError("iterate_series: vector dimensions do not match the matrix");

    DecaySeries<S> out;
    out.deflated = deflate;
    out.o_infinity = asymptote(a, pair);
    if (deflate && !out.o_infinity)
        throw DomainError("iterate_series: cannot deflate without a known asymptote");

    std::vector<S> p = pair.p;
    if (deflate) {
        for (const auto& f : absorbing_fixed_points(a)) {
            const S pf = pair.p[f.index];
            if (pf == S(0))
                continue;
            for (std::size_t k = 0; k < d; ++k)
                if (!(f.left[k] == S(0)))
                    p[k] -= pf * f.left[k];
        }
    }

    std::vector<S> x = pair.v;
    std::vector<S> y(d, S(0));
    out.values.reserve(t_max + 1);
    for (std::size_t t = 0; t <= t_max; ++t) {
        out.values.push_back(dot(p, x));
        if (t == t_max)
            break;
        a.apply(std::span<const S>(x), std::span<S>(y));
        std::swap(x, y);
    }
    return out;
}

} // namespace phantom
