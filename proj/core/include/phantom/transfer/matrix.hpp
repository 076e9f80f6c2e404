#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "phantom/errors.hpp"
#include "phantom/numerics/dense.hpp"
#include "phantom/numerics/scalar.hpp"
#include "phantom/transfer/params.hpp"

namespace phantom {

inline constexpr std::size_t max_dense_dim = 64;

template <class S>
struct TridiagToeplitz {
    std::size_t dim = 0;
    S diag{0}, super{0}, sub{0};
};

/// Tridiagonal bulk of dimension n-1 plus an absorbing sink fed by the last
/// bulk site with weight `sink`.
template <class S>
struct ObcFull {
    TridiagToeplitz<S> inner;
    S sink{0};
};

/// n x n circulant arrangement of (n-1) x (n-1) blocks: C on the diagonal,
/// U one block to the right, D one block to the left (cyclically), and an
/// absorbing last state collecting sink_edge / sink_last from the last two
/// widths of every block.
template <class S>
struct PbcBlockCirculant {
    std::size_t n = 0;
    S c_diag{0}, c_corner{0}, c_super{0}, c_sub{0};
    S u_diag{0}, u_sub{0}, u_subsub{0};
    S d_diag{0}, d_super{0}, d_supsup{0};
    S sink_edge{0}, sink_last{0};

    std::size_t width() const noexcept { return n - 1; }
    std::size_t dim() const noexcept { return n * (n - 1) + 1; }
};

/// Bulk sites 1..m between a left bath (index 0) and a right bath (m+1).
template <class S>
struct MarkovWalk {
    std::size_t bulk = 0;
    Rates<S> rates;
};

template <class S>
struct TwoDiagonal {
    std::size_t dim = 0;
    S diag{0}, sub{0};
};

template <class S>
class TransferMatrix;

/// D^{-1} base D with D = diag(mu^k). `effective` holds the collapsed band.
template <class S>
struct Rescaled {
    std::shared_ptr<const TransferMatrix<S>> base;
    S mu{1};
    std::variant<TridiagToeplitz<S>, TwoDiagonal<S>> effective;
};

template <class S>
struct CustomDense {
    DenseMatrix<S> m;
};

enum class MatrixKind { tridiag_toeplitz, obc_full, pbc_block_circulant, markov_walk, two_diagonal, rescaled, custom };

std::string_view matrix_kind_name(MatrixKind k);

namespace detail {

template <class S, class F>
void tridiag_entries(const TridiagToeplitz<S>& t, F&& f)
{
    for (std::size_t i = 0; i < t.dim; ++i) {
        if (i > 0)
            f(i, i - 1, t.sub);
        f(i, i, t.diag);
        if (i + 1 < t.dim)
            f(i, i + 1, t.super);
    }
}

template <class S, class F>
void twodiag_entries(const TwoDiagonal<S>& t, F&& f)
{
    for (std::size_t i = 0; i < t.dim; ++i) {
        if (i > 0)
            f(i, i - 1, t.sub);
        f(i, i, t.diag);
    }
}

template <class S>
void tridiag_apply(const TridiagToeplitz<S>& t, std::span<const S> x, std::span<S> y)
{
    const std::size_t m = t.dim;
    for (std::size_t i = 0; i < m; ++i) {
        S acc = t.diag * x[i];
        if (i + 1 < m)
            acc += t.super * x[i + 1];
        if (i > 0)
            acc += t.sub * x[i - 1];
        y[i] = std::move(acc);
    }
}

template <class S>
void twodiag_apply(const TwoDiagonal<S>& t, std::span<const S> x, std::span<S> y)
{
    for (std::size_t i = t.dim; i-- > 0;) {
        S acc = t.diag * x[i];
        if (i > 0)
            acc += t.sub * x[i - 1];
        y[i] = std::move(acc);
    }
}

} // namespace detail

/// Structured transfer matrix. Immutable; never stored densely except for the
/// Custom variant (dim <= 64).
template <class S>
class TransferMatrix {
public:
    using Variant = std::variant<TridiagToeplitz<S>, ObcFull<S>, PbcBlockCirculant<S>, MarkovWalk<S>,
                                 TwoDiagonal<S>, Rescaled<S>, CustomDense<S>>;

    TransferMatrix(Variant v) : rep_(std::move(v)) {}

    const Variant& rep() const noexcept { return rep_; }
    MatrixKind kind() const noexcept { return static_cast<MatrixKind>(rep_.index()); }

    template <class V>
    const V* as() const noexcept { return std::get_if<V>(&rep_); }

    std::size_t dim() const
    {
        return std::visit(
            [](const auto& m) -> std::size_t {
                using M = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<M, TridiagToeplitz<S>> || std::is_same_v<M, TwoDiagonal<S>>)
                    return m.dim;
                else if constexpr (std::is_same_v<M, ObcFull<S>>)
                    return m.inner.dim + 1;
                else if constexpr (std::is_same_v<M, PbcBlockCirculant<S>>)
                    return m.dim();
                else if constexpr (std::is_same_v<M, MarkovWalk<S>>)
                    return m.bulk + 2;
                else if constexpr (std::is_same_v<M, Rescaled<S>>)
                    return m.base->dim();
                else
                    return m.m.rows();
            },
            rep_);
    }

    /// Calls f(row, col, value) for every structural nonzero. Positions may
    /// repeat only for variants whose blocks overlap; callers should add.
    template <class F>
    void for_each_entry(F&& f) const
    {
        std::visit([&](const auto& m) { entries(m, f); }, rep_);
    }

    /// y = A x. x and y must not alias.
    void apply(std::span<const S> x, std::span<S> y) const
    {
        const std::size_t d = dim();
        if (x.size() != d || y.size() != d)
            throw DomainError("TransferMatrix::apply: dimension mismatch");
        std::visit([&](const auto& m) { apply_impl(m, x, y); }, rep_);
    }

    std::vector<S> apply(std::span<const S> x) const
    {
        std::vector<S> y(dim(), S(0));
        apply(x, std::span<S>(y));
        return y;
    }

    DenseMatrix<S> materialize() const
    {
        const std::size_t d = dim();
        if (d > max_dense_dim)
            throw DomainError("materialize: dimension above dense limit");
        DenseMatrix<S> out(d, d);
        for_each_entry([&](std::size_t r, std::size_t c, const S& v) { out(r, c) += v; });
        return out;
    }

    template <class T>
    TransferMatrix<T> convert() const
    {
        auto cv = [](const S& s) -> T {
            if constexpr (std::is_same_v<S, Rational>)
                return from_rational<T>(s);
            else
                return T(s);
        };
        return std::visit(
            [&](const auto& m) -> TransferMatrix<T> {
                using M = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<M, TridiagToeplitz<S>>)
                    return TransferMatrix<T>(TridiagToeplitz<T>{m.dim, cv(m.diag), cv(m.super), cv(m.sub)});
                else if constexpr (std::is_same_v<M, TwoDiagonal<S>>)
                    return TransferMatrix<T>(TwoDiagonal<T>{m.dim, cv(m.diag), cv(m.sub)});
                else if constexpr (std::is_same_v<M, ObcFull<S>>)
                    return TransferMatrix<T>(ObcFull<T>{
                        TridiagToeplitz<T>{m.inner.dim, cv(m.inner.diag), cv(m.inner.super), cv(m.inner.sub)},
                        cv(m.sink)});
                else if constexpr (std::is_same_v<M, PbcBlockCirculant<S>>)
                    return TransferMatrix<T>(PbcBlockCirculant<T>{
                        m.n, cv(m.c_diag), cv(m.c_corner), cv(m.c_super), cv(m.c_sub), cv(m.u_diag), cv(m.u_sub),
                        cv(m.u_subsub), cv(m.d_diag), cv(m.d_super), cv(m.d_supsup), cv(m.sink_edge),
                        cv(m.sink_last)});
                else if constexpr (std::is_same_v<M, MarkovWalk<S>>)
                    return TransferMatrix<T>(
                        MarkovWalk<T>{m.bulk, Rates<T>{cv(m.rates.delta), cv(m.rates.tau), cv(m.rates.sigma)}});
                else if constexpr (std::is_same_v<M, Rescaled<S>>) {
                    auto base = std::make_shared<const TransferMatrix<T>>(m.base->template convert<T>());
                    auto eff = std::visit(
                        [&](const auto& e) -> std::variant<TridiagToeplitz<T>, TwoDiagonal<T>> {
                            using E = std::decay_t<decltype(e)>;
                            if constexpr (std::is_same_v<E, TridiagToeplitz<S>>)
                                return TridiagToeplitz<T>{e.dim, cv(e.diag), cv(e.super), cv(e.sub)};
                            else
                                return TwoDiagonal<T>{e.dim, cv(e.diag), cv(e.sub)};
                        },
                        m.effective);
                    return TransferMatrix<T>(Rescaled<T>{base, cv(m.mu), eff});
                } else {
                    DenseMatrix<T> d(m.m.rows(), m.m.cols());
                    for (std::size_t r = 0; r < d.rows(); ++r)
                        for (std::size_t c = 0; c < d.cols(); ++c)
                            d(r, c) = cv(m.m(r, c));
                    return TransferMatrix<T>(CustomDense<T>{std::move(d)});
                }
            },
            rep_);
    }

private:
    template <class F>
    static void entries(const TridiagToeplitz<S>& t, F& f) { detail::tridiag_entries(t, f); }

    template <class F>
    static void entries(const TwoDiagonal<S>& t, F& f) { detail::twodiag_entries(t, f); }

    template <class F>
    static void entries(const ObcFull<S>& o, F& f)
    {
        detail::tridiag_entries(o.inner, f);
        const std::size_t m = o.inner.dim;
        f(m, m - 1, o.sink);
        f(m, m, S(1));
    }

    template <class F>
    static void entries(const PbcBlockCirculant<S>& p, F& f)
    {
        const std::size_t n = p.n, m = p.width();
        for (std::size_t r = 0; r < n; ++r) {
            const std::size_t b = r * m, bp = ((r + 1) % n) * m, bm = ((r + n - 1) % n) * m;
            for (std::size_t w = 0; w < m; ++w) {
                f(b + w, b + w, (w == 0 || w == m - 1) ? p.c_corner : p.c_diag);
                if (w + 1 < m) {
                    f(b + w, b + w + 1, p.c_super);
                    f(b + w, bm + w + 1, p.d_super);
                }
                if (w >= 1) {
                    f(b + w, b + w - 1, p.c_sub);
                    f(b + w, bp + w - 1, p.u_sub);
                }
                f(b + w, bp + w, p.u_diag);
                f(b + w, bm + w, p.d_diag);
                if (w >= 2)
                    f(b + w, bp + w - 2, p.u_subsub);
                if (w + 2 < m)
                    f(b + w, bm + w + 2, p.d_supsup);
            }
        }
        const std::size_t last = n * m;
        for (std::size_t i = 0; i < n; ++i) {
            f(last, i * m + m - 2, p.sink_edge);
            f(last, i * m + m - 1, p.sink_last);
        }
        f(last, last, S(1));
    }

    template <class F>
    static void entries(const MarkovWalk<S>& w, F& f)
    {
        const std::size_t m = w.bulk;
        f(0, 0, S(1));
        for (std::size_t c = 1; c <= m; ++c) {
            f(c - 1, c, w.rates.tau);
            f(c, c, w.rates.delta);
            f(c + 1, c, w.rates.sigma);
        }
        f(m + 1, m + 1, S(1));
    }

    template <class F>
    static void entries(const Rescaled<S>& r, F& f)
    {
        std::visit(
            [&](const auto& e) {
                using E = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<E, TridiagToeplitz<S>>)
                    detail::tridiag_entries(e, f);
                else
                    detail::twodiag_entries(e, f);
            },
            r.effective);
    }

    template <class F>
    static void entries(const CustomDense<S>& c, F& f)
    {
        for (std::size_t r = 0; r < c.m.rows(); ++r)
            for (std::size_t k = 0; k < c.m.cols(); ++k)
                if (!(c.m(r, k) == S(0)))
                    f(r, k, c.m(r, k));
    }

    static void apply_impl(const TridiagToeplitz<S>& t, std::span<const S> x, std::span<S> y)
    {
        detail::tridiag_apply(t, x, y);
    }

    static void apply_impl(const TwoDiagonal<S>& t, std::span<const S> x, std::span<S> y)
    {
        detail::twodiag_apply(t, x, y);
    }

    static void apply_impl(const ObcFull<S>& o, std::span<const S> x, std::span<S> y)
    {
        const std::size_t m = o.inner.dim;
        detail::tridiag_apply(o.inner, x.first(m), y.first(m));
        y[m] = o.sink * x[m - 1] + x[m];
    }

    static void apply_impl(const PbcBlockCirculant<S>& p, std::span<const S> x, std::span<S> y)
    {
        const std::size_t n = p.n, m = p.width();
        for (std::size_t r = 0; r < n; ++r) {
            const std::size_t b = r * m, bp = ((r + 1) % n) * m, bm = ((r + n - 1) % n) * m;
            for (std::size_t w = 0; w < m; ++w) {
                S acc = ((w == 0 || w == m - 1) ? p.c_corner : p.c_diag) * x[b + w];
                acc += p.u_diag * x[bp + w];
                acc += p.d_diag * x[bm + w];
                if (w + 1 < m) {
                    acc += p.c_super * x[b + w + 1];
                    acc += p.d_super * x[bm + w + 1];
                }
                if (w >= 1) {
                    acc += p.c_sub * x[b + w - 1];
                    acc += p.u_sub * x[bp + w - 1];
                }
                if (w >= 2)
                    acc += p.u_subsub * x[bp + w - 2];
                if (w + 2 < m)
                    acc += p.d_supsup * x[bm + w + 2];
                y[b + w] = std::move(acc);
            }
        }
        const std::size_t last = n * m;
        S acc = x[last];
        for (std::size_t i = 0; i < n; ++i) {
            acc += p.sink_edge * x[i * m + m - 2];
            acc += p.sink_last * x[i * m + m - 1];
        }
        y[last] = std::move(acc);
    }

    static void apply_impl(const MarkovWalk<S>& w, std::span<const S> x, std::span<S> y)
    {
        const std::size_t m = w.bulk;
        y[0] = x[0] + w.rates.tau * x[1];
        for (std::size_t c = 1; c <= m; ++c) {
            S acc = w.rates.delta * x[c];
            if (c < m)
                acc += w.rates.tau * x[c + 1];
            if (c > 1)
                acc += w.rates.sigma * x[c - 1];
            y[c] = std::move(acc);
        }
        y[m + 1] = x[m + 1] + w.rates.sigma * x[m];
    }

    static void apply_impl(const Rescaled<S>& r, std::span<const S> x, std::span<S> y)
    {
        std::visit([&](const auto& e) { apply_impl(e, x, y); }, r.effective);
    }

    static void apply_impl(const CustomDense<S>& c, std::span<const S> x, std::span<S> y)
    {
        auto out = c.m.multiply(x);
        std::move(out.begin(), out.end(), y.begin());
    }

    Variant rep_;
};

enum class PbcSinkRule {
    column_stochastic, ///< last-width weight delta*sigma + sigma
    literal_q2,        ///< last-width weight delta*sigma + q^2*sigma
};

TransferMatrix<Rational> build_toeplitz(std::size_t dim, const Rates<Rational>& rates);
TransferMatrix<Rational> build_obc(const ModelParams& params);
TransferMatrix<Rational> build_pbc(const ModelParams& params, PbcSinkRule rule = PbcSinkRule::column_stochastic);
TransferMatrix<Rational> build_markov_walk(std::size_t m, const Rates<Rational>& rates);
TransferMatrix<Rational> build_jordan(std::size_t dim, const Rational& delta, const Rational& sigma);
TransferMatrix<Rational> build_custom(DenseMatrix<Rational> m);

/// D^{-1} T D with D_kk = mu^k. Only TridiagToeplitz and TwoDiagonal bases.
template <class S>
TransferMatrix<S> rescale(const TransferMatrix<S>& t, const S& mu)
{
    if (!(mu > S(0)))
        throw DomainError("rescale: mu must be positive");
    auto base = std::make_shared<const TransferMatrix<S>>(t);
    if (const auto* tt = t.template as<TridiagToeplitz<S>>())
        return TransferMatrix<S>(Rescaled<S>{base, mu, TridiagToeplitz<S>{tt->dim, tt->diag, S(tt->super * mu), S(tt->sub / mu)}});
    if (const auto* td = t.template as<TwoDiagonal<S>>())
        return TransferMatrix<S>(Rescaled<S>{base, mu, TwoDiagonal<S>{td->dim, td->diag, S(td->sub / mu)}});
    throw DomainError("rescale: base must be tridiagonal Toeplitz or two-diagonal");
}

} // namespace phantom
