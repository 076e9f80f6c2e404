#pragma once

// Dense reference computations used as independent oracles by the tests.

#include <algorithm>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "phantom/numerics/dense.hpp"
#include "phantom/numerics/scalar.hpp"
#include "phantom/transfer/matrix.hpp"

namespace oracle {

inline Eigen::MatrixXd to_eigen(const phantom::DenseMatrix<phantom::Rational>& m)
{
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out(r, c) = phantom::to_double(m(r, c));
    return out;
}

inline Eigen::MatrixXcd to_eigen(const phantom::DenseMatrix<std::complex<double>>& m)
{
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out(r, c) = m(r, c);
    return out;
}

/// Dense matrix built from a transfer matrix by applying it to unit vectors,
/// independently of for_each_entry.
inline phantom::DenseMatrix<phantom::Rational> columns_by_matvec(const phantom::TransferMatrix<phantom::Rational>& a)
{
    const std::size_t d = a.dim();
    phantom::DenseMatrix<phantom::Rational> out(d, d);
    for (std::size_t c = 0; c < d; ++c) {
        std::vector<phantom::Rational> e(d, phantom::Rational(0));
        e[c] = 1;
        auto col = a.apply(e);
        for (std::size_t r = 0; r < d; ++r)
            out(r, c) = col[r];
    }
    return out;
}

/// Parlett-Reinsch diagonal balancing; a similarity, so eigenvalues are kept.
inline Eigen::MatrixXcd balanced(Eigen::MatrixXcd a)
{
    const Eigen::Index n = a.rows();
    bool done = false;
    while (!done) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0, r = 0;
            for (Eigen::Index k = 0; k < n; ++k)
                if (k != i) {
                    c += std::abs(a(k, i));
                    r += std::abs(a(i, k));
                }
            if (c == 0 || r == 0)
                continue;
            const double s = c + r;
            double f = 1;
            while (c < r / 2) {
                c *= 2;
                r /= 2;
                f *= 2;
            }
            while (c >= r * 2) {
                c /= 2;
                r *= 2;
                f /= 2;
            }
            if (c + r < 0.95 * s) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
    return a;
}

inline std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXcd& m)
{
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    std::vector<std::complex<double>> out(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
    return out;
}

inline std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& m)
{
    return eigenvalues(Eigen::MatrixXcd(m.cast<std::complex<double>>()));
}

/// Sorts by (real, imag) after rounding tiny imaginary parts.
inline std::vector<std::complex<double>> sorted(std::vector<std::complex<double>> v)
{
    std::sort(v.begin(), v.end(), [](auto a, auto b) {
        if (std::abs(a.real() - b.real()) > 1e-9)
            return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return v;
}

/// Max over a of min over b of |a - b|.
inline double max_min_distance(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b)
{
    double worst = 0.0;
    for (auto x : a) {
        double best = 1e300;
        for (auto y : b)
            best = std::min(best, std::abs(x - y));
        worst = std::max(worst, best);
    }
    return worst;
}

inline double sigma_min_dense(const Eigen::MatrixXcd& a, std::complex<double> z)
{
    Eigen::MatrixXcd m = z * Eigen::MatrixXcd::Identity(a.rows(), a.cols()) - a;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

} // namespace oracle
