#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "phantom/numerics/banded.hpp"
#include "phantom/numerics/complex.hpp"
#include "phantom/transfer/matrix.hpp"

namespace phantom {

using cplx = std::complex<double>;

struct SigmaMinOptions {
    double rel_tol = 1e-11; ///< stop when successive estimates agree to this
    int max_iterations = 400;
    /// on a stall, fall back to a dense SVD when the size is at most dense_limit
    bool dense_fallback = true;
    std::size_t dense_limit = 400;
};

struct SigmaMinResult {
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Smallest singular value of z I - A by inverse iteration on
/// (zI - A)^H (zI - A), reusing one banded LU, with a dense SVD fallback
/// when the iteration stalls. Never throws on stalls.
SigmaMinResult sigma_min_detailed(const BandedMatrix<cplx>& a, cplx z, const SigmaMinOptions& opt = {});

/// As sigma_min_detailed, but a stalled iteration throws NumericalError
/// carrying the best estimate.
double sigma_min(const BandedMatrix<cplx>& a, cplx z, const SigmaMinOptions& opt = {});

/// Band copy of a transfer matrix; `drop_sink` removes the last row and
/// column (the absorbing state of OBC/PBC/Markov matrices).
BandedMatrix<cplx> to_banded(const TransferMatrix<Rational>& a, bool drop_sink = false);

/// The operator whose sigma_min is scanned: one or several banded blocks,
/// sigma_min being the minimum over blocks.
struct PseudoOperator {
    std::vector<BandedMatrix<cplx>> blocks;
    double norm1 = 0.0;
};

PseudoOperator pseudo_operator(const TransferMatrix<Rational>& a, bool drop_sink = false);

/// Block-Fourier reduction of the PBC bulk: T_k for k = 1..n.
PseudoOperator pbc_fourier_operator(int n, int q);

double sigma_min(const PseudoOperator& op, cplx z, const SigmaMinOptions& opt = {});

struct GridSpec {
    double re_min = -0.2, re_max = 1.2;
    double im_min = -0.8, im_max = 0.8;
    std::size_t re_points = 201, im_points = 201;

    double re_at(std::size_t i) const { return re_min + (re_max - re_min) * i / (re_points - 1); }
    double im_at(std::size_t j) const { return im_min + (im_max - im_min) * j / (im_points - 1); }
};

struct GridPoint {
    double re = 0.0, im = 0.0, sigma_min = 0.0;
    bool in_set = false;
    bool converged = true;
};

struct PseudospectrumField {
    GridSpec grid;
    double epsilon = 0.0;
    std::vector<GridPoint> points; ///< row-major over (im, re)
    std::size_t failures = 0;      ///< points whose iteration stalled

    /// Largest real part among flagged points, if any.
    std::optional<double> rightmost() const;
};

/// sigma_min on every grid point; membership sigma_min <= eps. Per-point
/// stalls are recorded, not thrown. Results do not depend on `workers`.
PseudospectrumField pseudospectrum_grid(const PseudoOperator& op, double eps, const GridSpec& grid,
                                        unsigned workers = 1);

struct CurveSamples {
    std::vector<double> phi;
    std::vector<double> k_over_n; ///< empty for OBC curves
    std::vector<cplx> z;
    double max_real = 0.0;
};

/// delta + tau' e^{i phi} + sigma' e^{-i phi} with tau' = tau mu, sigma' = sigma/mu.
CurveSamples obc_pseudo_curve(const Rates<Rational>& rates, std::optional<double> mu = std::nullopt,
                              std::size_t samples = 721);

/// Analytic maximum delta + sigma/mu + tau mu.
double lambda_mu(const Rates<Rational>& rates, double mu);

/// Product of the two factor symbols of the PBC momentum block, times sigma tau.
template <class R>
Complex<R> pbc_pseudo_conjecture(int q, const R& k_over_n, const R& phi);

/// Samples the conjectured PBC curve family on a (k/n, phi) lattice.
CurveSamples pbc_conjecture_samples(int q, std::size_t kappa_samples = 101, std::size_t phi_samples = 181);

/// Union over k/n of the regions enclosed (nonzero winding number) by the
/// conjectured curves phi -> pbc_pseudo_conjecture(q, k/n, phi).
class ConjecturedRegion {
public:
    explicit ConjecturedRegion(int q, std::size_t kappa_samples = 401, std::size_t phi_samples = 721);

    /// Membership, with points within `dilation` of any curve also accepted.
    bool contains(cplx z, double dilation = 0.0) const;
    double max_real() const noexcept { return max_real_; }

private:
    std::vector<std::vector<cplx>> curves_;
    double max_real_ = 0.0;
};

/// Whether z lies in the filled OBC ellipse dilated by `dilation`.
bool in_obc_ellipse(const Rates<Rational>& rates, cplx z, double dilation = 0.0, std::optional<double> mu = std::nullopt);

} // namespace phantom
