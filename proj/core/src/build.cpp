#include "phantom/transfer/matrix.hpp"

namespace phantom {

std::string_view matrix_kind_name(MatrixKind k)
{
    switch (k) {
    case MatrixKind::tridiag_toeplitz: return "tridiag_toeplitz";
    case MatrixKind::obc_full: return "obc_full";
    case MatrixKind::pbc_block_circulant: return "pbc_block_circulant";
    case MatrixKind::markov_walk: return "markov_walk";
    case MatrixKind::two_diagonal: return "two_diagonal";
    case MatrixKind::rescaled: return "rescaled";
    case MatrixKind::custom: return "custom";
    }
    return "unknown";
}

namespace {

void check_rates(const Rates<Rational>& r)
{
    if (r.delta < 0 || r.tau < 0 || r.sigma < 0)
        throw DomainError("rates must be non-negative");
}

} // namespace

TransferMatrix<Rational> build_toeplitz(std::size_t dim, const Rates<Rational>& rates)
{
    if (dim < 1)
        throw DomainError("build_toeplitz: dim must be >= 1");
    check_rates(rates);
    return TransferMatrix<Rational>(TridiagToeplitz<Rational>{dim, rates.delta, rates.tau, rates.sigma});
}

TransferMatrix<Rational> build_obc(const ModelParams& params)
{
    if (params.boundary != Boundary::obc)
        throw DomainError("build_obc: boundary must be OBC");
    if (params.n < 2)
        throw DomainError("build_obc: n must be >= 2");
    Rates<Rational> r = params.rates();
    check_rates(r);
    TridiagToeplitz<Rational> inner{static_cast<std::size_t>(params.n - 1), r.delta, r.tau, r.sigma};
    return TransferMatrix<Rational>(ObcFull<Rational>{inner, r.sigma});
}

TransferMatrix<Rational> build_pbc(const ModelParams& params, PbcSinkRule rule)
{
    if (params.boundary != Boundary::pbc)
        throw DomainError("build_pbc: boundary must be PBC");
    if (params.n < 3)
        throw DomainError("build_pbc: n must be >= 3");
    Rates<Rational> r = params.rates();
    check_rates(r);
    const Rational &d = r.delta, &t = r.tau, &s = r.sigma;
    const Rational ts = t * s;

    PbcBlockCirculant<Rational> p;
    p.n = static_cast<std::size_t>(params.n);
    p.c_diag = 4 * ts;
    p.c_corner = 3 * ts;
    p.c_super = d * t;
    p.c_sub = d * s;
    p.u_diag = ts;
    p.u_sub = d * s;
    p.u_subsub = s * s;
    p.d_diag = ts;
    p.d_super = d * t;
    p.d_supsup = t * t;
    p.sink_edge = s * s;
    if (rule == PbcSinkRule::column_stochastic) {
        p.sink_last = d * s + s;
    } else {
        if (!params.q)
            throw DomainError("build_pbc: literal sink rule needs an integer q");
        p.sink_last = d * s + Rational(*params.q) * *params.q * s;
    }
    return TransferMatrix<Rational>(std::move(p));
}

TransferMatrix<Rational> build_markov_walk(std::size_t m, const Rates<Rational>& rates)
{
    if (m < 1)
        throw DomainError("build_markov_walk: need at least one bulk site");
    check_rates(rates);
    if (rates.delta + rates.tau + rates.sigma != 1)
        throw DomainError("build_markov_walk: rates must sum to 1");
    return TransferMatrix<Rational>(MarkovWalk<Rational>{m, rates});
}

TransferMatrix<Rational> build_jordan(std::size_t dim, const Rational& delta, const Rational& sigma)
{
    if (dim < 1)
        throw DomainError("build_jordan: dim must be >= 1");
    return TransferMatrix<Rational>(TwoDiagonal<Rational>{dim, delta, sigma});
}

TransferMatrix<Rational> build_custom(DenseMatrix<Rational> m)
{
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DomainError("build_custom: matrix must be square and non-empty");
    if (m.rows() > max_dense_dim)
        throw DomainError("build_custom: dimension above dense limit");
    return TransferMatrix<Rational>(CustomDense<Rational>{std::move(m)});
}

} // namespace phantom
