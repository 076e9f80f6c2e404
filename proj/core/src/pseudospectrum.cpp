#include "phantom/spectral/pseudospectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <Eigen/SVD>
#include <boost/math/constants/constants.hpp>

#include "phantom/errors.hpp"
#include "phantom/spectral/eigen.hpp"

namespace phantom {

namespace {

constexpr double two_pi = 2.0 * boost::math::constants::pi<double>();

double norm2(const std::vector<cplx>& v)
{
    double s = 0.0;
    for (const auto& x : v)
        s += std::norm(x);
    return std::sqrt(s);
}

bool finite(const std::vector<cplx>& v)
{
    return std::all_of(v.begin(), v.end(), [](const cplx& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

double segment_distance(cplx z, cplx a, cplx b)
{
    cplx ab = b - a;
    double len2 = std::norm(ab);
    double t = len2 > 0 ? std::clamp(((z - a) * std::conj(ab)).real() / len2, 0.0, 1.0) : 0.0;
    return std::abs(z - (a + t * ab));
}

/// Crossing-number winding of a closed polyline around z.
int winding(const std::vector<cplx>& poly, cplx z)
{
    int w = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        cplx a = poly[i], b = poly[(i + 1) % n];
        double cross = (b.real() - a.real()) * (z.imag() - a.imag()) - (z.real() - a.real()) * (b.imag() - a.imag());
        if (a.imag() <= z.imag()) {
            if (b.imag() > z.imag() && cross > 0)
                ++w;
        } else if (b.imag() <= z.imag() && cross < 0) {
            --w;
        }
    }
    return w;
}

double sigma_min_dense(const BandedMatrix<cplx>& m)
{
    const std::size_t n = m.size();
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t c0 = r > m.lower() ? r - m.lower() : 0;
        std::size_t c1 = std::min(n - 1, r + m.upper());
        for (std::size_t c = c0; c <= c1; ++c)
            d(r, c) = m.at(r, c);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(d);
    return svd.singularValues()(n - 1);
}

} // namespace

SigmaMinResult sigma_min_detailed(const BandedMatrix<cplx>& a, cplx z, const SigmaMinOptions& opt)
{
    const std::size_t n = a.size();
    BandedMatrix<cplx> m(n, a.lower(), a.upper());
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t c0 = r > a.lower() ? r - a.lower() : 0;
        std::size_t c1 = std::min(n - 1, r + a.upper());
        for (std::size_t c = c0; c <= c1; ++c)
            m.at(r, c) = -a.at(r, c);
        m.at(r, r) += z;
    }
    BandedLU<cplx> lu(m);
    if (lu.singular())
        return {0.0, 0, true};

    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = cplx(1.0 + 0.5 * std::sin(1.0 + 0.7 * static_cast<double>(i)), 0.25 * std::cos(0.3 * static_cast<double>(i)));
    double nx = norm2(x);
    for (auto& v : x)
        v /= nx;

    double prev = std::numeric_limits<double>::infinity();
    double prev_step = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= opt.max_iterations; ++it) {
        auto y = lu.solve_adjoint(std::span<const cplx>(x));
        double ny = norm2(y);
        if (!std::isfinite(ny) || !finite(y))
            return {0.0, it, true};
        double est = 1.0 / ny;
        double step = std::abs(prev - est);
        // remaining error of a geometric tail is step * rho / (1 - rho)
        double rho = std::isfinite(prev_step) && prev_step > 0 ? std::min(step / prev_step, 0.999999) : 0.0;
        if (step * (1.0 + rho / (1.0 - rho)) <= opt.rel_tol * est)
            return {est, it, true};
        prev = est;
        prev_step = step;
        auto w = lu.solve(std::span<const cplx>(y));
        double nw = norm2(w);
        if (!std::isfinite(nw) || !finite(w) || nw == 0.0)
            return {0.0, it, true};
        for (std::size_t i = 0; i < n; ++i)
            x[i] = w[i] / nw;
    }
    if (opt.dense_fallback && n <= opt.dense_limit)
        return {sigma_min_dense(m), opt.max_iterations, true};
    return {prev, opt.max_iterations, false};
}

double sigma_min(const BandedMatrix<cplx>& a, cplx z, const SigmaMinOptions& opt)
{
    auto r = sigma_min_detailed(a, z, opt);
    if (!r.converged)
        throw NumericalError("sigma_min: inverse iteration did not converge", r.value);
    return r.value;
}

BandedMatrix<cplx> to_banded(const TransferMatrix<Rational>& a, bool drop_sink)
{
    const std::size_t d = a.dim() - (drop_sink ? 1 : 0);
    if (d == 0)
        throw DomainError("to_banded: empty matrix");
    std::size_t kl = 0, ku = 0;
    a.for_each_entry([&](std::size_t r, std::size_t c, const Rational&) {
        if (r >= d || c >= d)
            return;
        if (r > c)
            kl = std::max(kl, r - c);
        else
            ku = std::max(ku, c - r);
    });
    BandedMatrix<cplx> out(d, kl, ku);
    a.for_each_entry([&](std::size_t r, std::size_t c, const Rational& v) {
        if (r < d && c < d)
            out.at(r, c) += cplx(to_double(v), 0.0);
    });
    return out;
}

namespace {

double band_norm1(const BandedMatrix<cplx>& a)
{
    std::vector<double> col(a.size(), 0.0);
    for (std::size_t r = 0; r < a.size(); ++r) {
        std::size_t c0 = r > a.lower() ? r - a.lower() : 0;
        std::size_t c1 = std::min(a.size() - 1, r + a.upper());
        for (std::size_t c = c0; c <= c1; ++c)
            col[c] += std::abs(a.at(r, c));
    }
    return *std::max_element(col.begin(), col.end());
}

} // namespace

PseudoOperator pseudo_operator(const TransferMatrix<Rational>& a, bool drop_sink)
{
    PseudoOperator op;
    op.blocks.push_back(to_banded(a, drop_sink));
    op.norm1 = band_norm1(op.blocks.front());
    return op;
}

PseudoOperator pbc_fourier_operator(int n, int q)
{
    PseudoOperator op;
    for (int k = 1; k <= n; ++k) {
        auto dense = pbc_fourier_block(n, q, k);
        const std::size_t m = dense.rows();
        const std::size_t band = std::min<std::size_t>(2, m - 1);
        BandedMatrix<cplx> b(m, band, band);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c)
                if (dense(r, c) != cplx(0.0))
                    b.at(r, c) = dense(r, c);
        op.norm1 = std::max(op.norm1, band_norm1(b));
        op.blocks.push_back(std::move(b));
    }
    return op;
}

double sigma_min(const PseudoOperator& op, cplx z, const SigmaMinOptions& opt)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : op.blocks)
        best = std::min(best, sigma_min(b, z, opt));
    return best;
}

std::optional<double> PseudospectrumField::rightmost() const
{
    std::optional<double> out;
    for (const auto& p : points)
        if (p.in_set && (!out || p.re > *out))
            out = p.re;
    return out;
}

PseudospectrumField pseudospectrum_grid(const PseudoOperator& op, double eps, const GridSpec& grid, unsigned workers)
{
    if (grid.re_points < 2 || grid.im_points < 2)
        throw DomainError("pseudospectrum_grid: need at least 2 points per axis");
    if (!(eps > 0))
        throw DomainError("pseudospectrum_grid: epsilon must be positive");
    if (op.blocks.empty())
        throw DomainError("pseudospectrum_grid: empty operator");

    PseudospectrumField field;
    field.grid = grid;
    field.epsilon = eps;
    field.points.resize(grid.re_points * grid.im_points);

    auto work = [&](std::size_t first, std::size_t last) {
        for (std::size_t idx = first; idx < last; ++idx) {
            GridPoint& p = field.points[idx];
            p.im = grid.im_at(idx / grid.re_points);
            p.re = grid.re_at(idx % grid.re_points);
            double best = std::numeric_limits<double>::infinity();
            bool ok = true;
            for (const auto& b : op.blocks) {
                auto r = sigma_min_detailed(b, cplx(p.re, p.im));
                ok = ok && r.converged;
                best = std::min(best, r.value);
            }
            p.sigma_min = std::max(0.0, best);
            p.converged = ok;
            p.in_set = p.sigma_min <= eps;
        }
    };

    const std::size_t total = field.points.size();
    workers = std::max(1u, workers);
    if (workers == 1) {
        work(0, total);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (total + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::size_t first = std::min(total, w * chunk);
            std::size_t last = std::min(total, first + chunk);
            pool.emplace_back(work, first, last);
        }
        for (auto& t : pool)
            t.join();
    }
    field.failures = static_cast<std::size_t>(
        std::count_if(field.points.begin(), field.points.end(), [](const GridPoint& p) { return !p.converged; }));
    return field;
}

double lambda_mu(const Rates<Rational>& rates, double mu)
{
    if (!(mu > 0))
        throw DomainError("lambda_mu: mu must be positive");
    return to_double(rates.delta) + to_double(rates.sigma) / mu + to_double(rates.tau) * mu;
}

CurveSamples obc_pseudo_curve(const Rates<Rational>& rates, std::optional<double> mu, std::size_t samples)
{
    if (mu && !(*mu > 0))
        throw DomainError("obc_pseudo_curve: mu must be positive");
    if (samples < 2)
        throw DomainError("obc_pseudo_curve: need at least 2 samples");
    const double m = mu.value_or(1.0);
    const double d = to_double(rates.delta), t = to_double(rates.tau) * m, s = to_double(rates.sigma) / m;
    CurveSamples out;
    for (std::size_t i = 0; i < samples; ++i) {
        double phi = two_pi * static_cast<double>(i) / static_cast<double>(samples - 1);
        if (i == samples - 1)
            phi = two_pi;
        cplx e(std::cos(phi), std::sin(phi));
        out.phi.push_back(phi);
        out.z.push_back(d + t * e + s * std::conj(e));
    }
    out.max_real = lambda_mu(rates, m);
    return out;
}

template <class R>
Complex<R> pbc_pseudo_conjecture(int q, const R& k_over_n, const R& phi)
{
    using std::cos;
    using std::sin;
    if (q < 2)
        throw DomainError("pbc_pseudo_conjecture: q must be >= 2");
    if (k_over_n < R(0) || k_over_n > R(1))
        throw DomainError("pbc_pseudo_conjecture: k/n must lie in [0, 1]");
    R pi_r;
    if constexpr (std::is_same_v<R, BigFloat>)
        pi_r = boost::math::constants::pi<BigFloat>();
    else
        pi_r = boost::math::constants::pi<R>();
    if (phi < R(0) || phi > R(2) * pi_r)
        throw DomainError("pbc_pseudo_conjecture: phi must lie in [0, 2 pi]");

    const R q2 = R(q) * R(q);
    const R q4 = q2 * q2;
    const R theta = R(2) * pi_r * k_over_n;
    const Complex<R> e = expi<R>(theta);
    const Complex<R> ec = conj(e);
    const Complex<R> ep = expi<R>(phi);
    const Complex<R> em = conj(ep);
    const Complex<R> one(R(1));

    Complex<R> first = Complex<R>(q4) * e * ep + Complex<R>(q2) * (one + e) + em;
    Complex<R> second = ep + Complex<R>(R(1) / q2) * (one + ec) + Complex<R>(R(1) / q4) * ec * em;
    const R denom = (R(1) + q2) * (R(1) + q2);
    const R st = q4 / (denom * denom);
    return Complex<R>(st) * first * second;
}

template Complex<double> pbc_pseudo_conjecture<double>(int, const double&, const double&);
template Complex<BigFloat> pbc_pseudo_conjecture<BigFloat>(int, const BigFloat&, const BigFloat&);

CurveSamples pbc_conjecture_samples(int q, std::size_t kappa_samples, std::size_t phi_samples)
{
    if (kappa_samples < 2 || phi_samples < 2)
        throw DomainError("pbc_conjecture_samples: need at least 2 samples per axis");
    CurveSamples out;
    out.max_real = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < kappa_samples; ++a) {
        double kappa = static_cast<double>(a) / static_cast<double>(kappa_samples - 1);
        for (std::size_t b = 0; b < phi_samples; ++b) {
            double phi = b == phi_samples - 1 ? two_pi : two_pi * static_cast<double>(b) / static_cast<double>(phi_samples - 1);
            cplx z = to_std(pbc_pseudo_conjecture<double>(q, kappa, phi));
            out.k_over_n.push_back(kappa);
            out.phi.push_back(phi);
            out.z.push_back(z);
            out.max_real = std::max(out.max_real, z.real());
        }
    }
    return out;
}

ConjecturedRegion::ConjecturedRegion(int q, std::size_t kappa_samples, std::size_t phi_samples)
{
    if (kappa_samples < 2 || phi_samples < 3)
        throw DomainError("ConjecturedRegion: too few samples");
    max_real_ = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < kappa_samples; ++a) {
        double kappa = static_cast<double>(a) / static_cast<double>(kappa_samples - 1);
        std::vector<cplx> curve;
        curve.reserve(phi_samples);
        for (std::size_t b = 0; b < phi_samples; ++b) {
            double phi = two_pi * static_cast<double>(b) / static_cast<double>(phi_samples);
            cplx z = to_std(pbc_pseudo_conjecture<double>(q, kappa, phi));
            max_real_ = std::max(max_real_, z.real());
            curve.push_back(z);
        }
        curves_.push_back(std::move(curve));
    }
}

bool ConjecturedRegion::contains(cplx z, double dilation) const
{
    for (const auto& c : curves_)
        if (winding(c, z) != 0)
            return true;
    if (dilation <= 0)
        return false;
    for (const auto& c : curves_)
        for (std::size_t i = 0; i < c.size(); ++i)
            if (segment_distance(z, c[i], c[(i + 1) % c.size()]) <= dilation)
                return true;
    return false;
}

bool in_obc_ellipse(const Rates<Rational>& rates, cplx z, double dilation, std::optional<double> mu)
{
    const double m = mu.value_or(1.0);
    const double d = to_double(rates.delta), t = to_double(rates.tau) * m, s = to_double(rates.sigma) / m;
    const double a = t + s, b = std::abs(s - t);
    const double x = z.real() - d, y = z.imag();
    if (b == 0.0) {
        if (std::abs(y) <= dilation && std::abs(x) <= a + dilation)
            return true;
    } else if ((x / a) * (x / a) + (y / b) * (y / b) <= 1.0) {
        return true;
    }
    if (dilation <= 0)
        return false;
    const std::size_t samples = 4096;
    for (std::size_t i = 0; i < samples; ++i) {
        double phi = two_pi * static_cast<double>(i) / samples;
        double phi2 = two_pi * static_cast<double>(i + 1) / samples;
        cplx p(d + a * std::cos(phi), (t - s) * std::sin(phi));
        cplx p2(d + a * std::cos(phi2), (t - s) * std::sin(phi2));
        if (segment_distance(z, p, p2) <= dilation)
            return true;
    }
    return false;
}

} // namespace phantom
