#include "phantom/spectral/eigen.hpp"

#include <boost/math/constants/constants.hpp>

#include "phantom/errors.hpp"
#include "phantom/transfer/series.hpp"

namespace phantom {

namespace {

BigFloat pi() { return boost::math::constants::pi<BigFloat>(); }

BigFloat norm_inf(const std::vector<ComplexScalar>& v)
{
    BigFloat m = 0;
    for (const auto& x : v) {
        BigFloat a = abs(x);
        if (a > m)
            m = a;
    }
    return m;
}

template <bool Transposed>
double residual(const TransferMatrix<Rational>& a, const ComplexScalar& lambda, const std::vector<ComplexScalar>& x)
{
    const std::size_t d = a.dim();
    if (x.size() != d)
        throw DomainError("residual: dimension mismatch");
    std::vector<ComplexScalar> y(d);
    a.for_each_entry([&](std::size_t r, std::size_t c, const Rational& v) {
        BigFloat w(v);
        if constexpr (Transposed) {
            y[c].re += w * x[r].re;
            y[c].im += w * x[r].im;
        } else {
            y[r].re += w * x[c].re;
            y[r].im += w * x[c].im;
        }
    });
    for (std::size_t i = 0; i < d; ++i)
        y[i] -= lambda * x[i];
    BigFloat den = norm_inf(x);
    if (den == 0)
        throw DomainError("residual: zero vector");
    return BigFloat(norm_inf(y) / den).convert_to<double>();
}

} // namespace

ComplexScalar bilinear(const std::vector<ComplexScalar>& l, const std::vector<ComplexScalar>& r)
{
    if (l.size() != r.size())
        throw DomainError("bilinear: dimension mismatch");
    ComplexScalar acc;
    for (std::size_t i = 0; i < l.size(); ++i)
        acc += l[i] * r[i];
    return acc;
}

double right_residual(const TransferMatrix<Rational>& a, const ComplexScalar& lambda,
                      const std::vector<ComplexScalar>& r)
{
    return residual<false>(a, lambda, r);
}

double left_residual(const TransferMatrix<Rational>& a, const ComplexScalar& lambda,
                     const std::vector<ComplexScalar>& l)
{
    return residual<true>(a, lambda, l);
}

EigenSystem obc_eigensystem(int n, const Rates<Rational>& rates, bool with_vectors)
{
    if (n < 2)
        throw DomainError("obc_eigensystem: n must be >= 2");
    if (rates.sigma * rates.tau == 0)
        throw DomainError("obc_eigensystem: sigma*tau = 0 is defective; use the two-diagonal (Jordan) path");
    if (rates.sigma * rates.tau < 0)
        throw DomainError("obc_eigensystem: sigma*tau must be positive");

    const BigFloat delta(rates.delta), ratio(Rational(rates.sigma / rates.tau));
    const BigFloat root = sqrt(BigFloat(Rational(rates.sigma * rates.tau)));
    const BigFloat sr = sqrt(ratio);
    const BigFloat p = pi();
    const int m = n - 1;

    EigenSystem out;
    out.source = EigenSource::analytic_obc;
    for (int k = 1; k <= m; ++k) {
        BigFloat theta = p * k / n;
        out.eigenvalues.emplace_back(BigFloat(delta + 2 * root * cos(theta)));
        out.labels.emplace_back(k, 0);
        if (!with_vectors)
            continue;
        std::vector<ComplexScalar> r(m), l(m);
        BigFloat up = 1, down = 1;
        for (int j = 1; j <= m; ++j) {
            up *= sr;
            down /= sr;
            BigFloat s = sin(theta * j);
            r[j - 1] = ComplexScalar(BigFloat(up * s));
            l[j - 1] = ComplexScalar(BigFloat(2 * down * s / n));
        }
        out.right.push_back(std::move(r));
        out.left.push_back(std::move(l));
    }
    return out;
}

EigenSystem extend_to_a(const EigenSystem& eig, const TransferMatrix<Rational>& a)
{
    if (a.kind() != MatrixKind::obc_full && a.kind() != MatrixKind::pbc_block_circulant)
        throw DomainError("extend_to_a: matrix must be OBC or PBC with a sink");
    if (!eig.has_vectors())
        throw DomainError("extend_to_a: eigenvectors required");
    const std::size_t d = a.dim();
    std::vector<std::pair<std::size_t, BigFloat>> sink_row;
    a.for_each_entry([&](std::size_t r, std::size_t c, const Rational& v) {
        if (r == d - 1 && c != d - 1)
            sink_row.emplace_back(c, BigFloat(v));
    });

    EigenSystem out;
    out.source = EigenSource::extended;
    for (std::size_t i = 0; i < eig.size(); ++i) {
        const auto& lam = eig.eigenvalues[i];
        if (eig.right[i].size() != d - 1)
            throw DomainError("extend_to_a: eigenvector dimension mismatch");
        ComplexScalar gap = lam - ComplexScalar(BigFloat(1));
        if (gap.re == 0 && gap.im == 0)
            throw DomainError("extend_to_a: eigenvalue 1 cannot be extended");
        ComplexScalar acc;
        for (const auto& [c, w] : sink_row) {
            acc.re += w * eig.right[i][c].re;
            acc.im += w * eig.right[i][c].im;
        }
        auto r = eig.right[i];
        r.push_back(acc / gap);
        auto l = eig.left[i];
        l.emplace_back();
        out.eigenvalues.push_back(lam);
        out.labels.push_back(eig.labels[i]);
        out.right.push_back(std::move(r));
        out.left.push_back(std::move(l));
    }

    std::vector<ComplexScalar> fixed_right(d), fixed_left;
    fixed_right[d - 1] = ComplexScalar(BigFloat(1));
    for (const auto& x : stationary_left_vector(a))
        fixed_left.emplace_back(BigFloat(x));
    out.eigenvalues.emplace_back(BigFloat(1));
    out.labels.emplace_back(0, 0);
    out.right.push_back(std::move(fixed_right));
    out.left.push_back(std::move(fixed_left));
    return out;
}

EigenSystem pbc_eigensystem(int n, int q, bool with_vectors)
{
    if (n < 3)
        throw DomainError("pbc_eigensystem: n must be >= 3");
    const Rates<Rational> rates = rates_from_q(q);
    const BigFloat delta(rates.delta);
    const BigFloat p = pi();
    const int m = n - 1;
    const std::size_t dim = static_cast<std::size_t>(n) * m;

    EigenSystem out;
    out.source = EigenSource::analytic_pbc;
    for (int j = 1; j <= m; ++j) {
        for (int k = 1; k <= n; ++k) {
            BigFloat c = cos(p * j / n) + cos(p * k / n);
            out.eigenvalues.emplace_back(BigFloat(delta * delta * c * c));
            out.labels.emplace_back(j, k);
            if (!with_vectors)
                continue;
            std::vector<ComplexScalar> r(dim), l(dim);
            const BigFloat scale = sqrt(BigFloat(2)) / n;
            const BigFloat q2 = BigFloat(q) * q;
            for (int b = 1; b <= n; ++b) {
                BigFloat up = 1;
                for (int w = 1; w <= m; ++w) {
                    up *= q2;
                    BigFloat phase = 2 * p * k * b / n + p * k * w / n;
                    BigFloat s = sin(p * j * w / n);
                    BigFloat amp_r = scale * up * s;
                    BigFloat amp_l = scale * s / up;
                    BigFloat cs = cos(phase), sn = sin(phase);
                    std::size_t idx = static_cast<std::size_t>(m) * (b - 1) + (w - 1);
                    r[idx] = ComplexScalar(BigFloat(amp_r * cs), BigFloat(amp_r * sn));
                    l[idx] = ComplexScalar(BigFloat(amp_l * cs), BigFloat(-amp_l * sn));
                }
            }
            out.right.push_back(std::move(r));
            out.left.push_back(std::move(l));
        }
    }
    return out;
}

DenseMatrix<std::complex<double>> pbc_fourier_block(int n, int q, int k)
{
    if (n < 3)
        throw DomainError("pbc_fourier_block: n must be >= 3");
    if (k < 1 || k > n)
        throw DomainError("pbc_fourier_block: k must lie in [1, n]");
    ModelParams params;
    params.boundary = Boundary::pbc;
    params.n = n;
    params.q = q;
    const auto a = build_pbc(params).convert<double>();
    const auto& p = *a.as<PbcBlockCirculant<double>>();
    const std::size_t m = p.width();
    const double theta = 2.0 * boost::math::constants::pi<double>() * k / n;
    const std::complex<double> e(std::cos(theta), std::sin(theta));
    const std::complex<double> ec = std::conj(e);

    DenseMatrix<std::complex<double>> out(m, m);
    for (std::size_t w = 0; w < m; ++w) {
        out(w, w) = ((w == 0 || w == m - 1) ? p.c_corner : p.c_diag) + e * p.u_diag + ec * p.d_diag;
        if (w + 1 < m) {
            out(w, w + 1) = p.c_super + ec * p.d_super;
            out(w + 1, w) = p.c_sub + e * p.u_sub;
        }
        if (w + 2 < m) {
            out(w, w + 2) = ec * p.d_supsup;
            out(w + 2, w) = e * p.u_subsub;
        }
    }
    return out;
}

std::pair<DenseMatrix<std::complex<double>>, DenseMatrix<std::complex<double>>> pbc_block_factors(int n, int q,
                                                                                                  int k)
{
    if (n < 3)
        throw DomainError("pbc_block_factors: n must be >= 3");
    if (k < 1 || k > n)
        throw DomainError("pbc_block_factors: k must lie in [1, n]");
    const std::size_t m = static_cast<std::size_t>(n - 1);
    const double theta = 2.0 * boost::math::constants::pi<double>() * k / n;
    const std::complex<double> e(std::cos(theta), std::sin(theta));
    const std::complex<double> ec = std::conj(e);
    const double q2 = static_cast<double>(q) * q;

    DenseMatrix<std::complex<double>> first(m, m), second(m, m);
    for (std::size_t w = 0; w < m; ++w) {
        first(w, w) = q2 * (1.0 + e);
        second(w, w) = (1.0 + ec) / q2;
        if (w + 1 < m) {
            first(w + 1, w) = q2 * q2 * e;
            first(w, w + 1) = 1.0;
            second(w + 1, w) = 1.0;
            second(w, w + 1) = ec / (q2 * q2);
        }
    }
    return {first, second};
}

double lambda2_obc(int n, const Rates<Rational>& rates)
{
    const double root = std::sqrt(to_double(Rational(rates.sigma * rates.tau)));
    return to_double(rates.delta) + 2.0 * root * std::cos(boost::math::constants::pi<double>() / n);
}

double lambda2_pbc(int n, int q)
{
    const double d = to_double(rates_from_q(q).delta);
    const double c = 1.0 + std::cos(boost::math::constants::pi<double>() / n);
    return d * d * c * c;
}

} // namespace phantom
