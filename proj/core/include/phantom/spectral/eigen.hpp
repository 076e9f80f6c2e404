#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "phantom/numerics/complex.hpp"
#include "phantom/numerics/dense.hpp"
#include "phantom/transfer/matrix.hpp"

namespace phantom {

enum class EigenSource { analytic_obc, analytic_pbc, extended };

/// Eigenvalues with optional biorthonormal right/left vectors (l_i r_j = delta_ij,
/// no conjugation). Labels are (k, 0) for OBC, (j, k) for PBC and (0, 0) for
/// the appended fixed point.
struct EigenSystem {
    std::vector<ComplexScalar> eigenvalues;
    std::vector<std::vector<ComplexScalar>> right;
    std::vector<std::vector<ComplexScalar>> left;
    std::vector<std::pair<int, int>> labels;
    EigenSource source = EigenSource::analytic_obc;

    bool has_vectors() const noexcept { return !right.empty(); }
    std::size_t size() const noexcept { return eigenvalues.size(); }
};

/// Eigenpairs of the (n-1)-dim tridiagonal Toeplitz bulk:
/// lambda_k = delta + 2 sqrt(sigma tau) cos(k pi / n).
EigenSystem obc_eigensystem(int n, const Rates<Rational>& rates, bool with_vectors = true);

/// Lifts bulk eigenpairs to the full matrix `a` (ObcFull or PbcBlockCirculant)
/// by appending (sink row . r) / (lambda - 1), and adds the fixed point.
EigenSystem extend_to_a(const EigenSystem& eig, const TransferMatrix<Rational>& a);

/// lambda_{j,k} = delta^2 (cos(pi j/n) + cos(pi k/n))^2, j = 1..n-1, k = 1..n.
EigenSystem pbc_eigensystem(int n, int q, bool with_vectors = true);

/// C + e^{i theta} U + e^{-i theta} D with theta = 2 pi k / n.
DenseMatrix<std::complex<double>> pbc_fourier_block(int n, int q, int k);

/// Commuting factors with T_k = sigma tau * first * second.
std::pair<DenseMatrix<std::complex<double>>, DenseMatrix<std::complex<double>>> pbc_block_factors(int n, int q, int k);

/// Largest non-unit eigenvalue magnitude.
double lambda2_obc(int n, const Rates<Rational>& rates);
double lambda2_pbc(int n, int q);

/// max_i |(A r - lambda r)_i| / max_i |r_i| in BigFloat.
double right_residual(const TransferMatrix<Rational>& a, const ComplexScalar& lambda,
                      const std::vector<ComplexScalar>& r);
/// Same for a left vector: |l A - lambda l| / |l|.
double left_residual(const TransferMatrix<Rational>& a, const ComplexScalar& lambda,
                     const std::vector<ComplexScalar>& l);

ComplexScalar bilinear(const std::vector<ComplexScalar>& l, const std::vector<ComplexScalar>& r);

} // namespace phantom
