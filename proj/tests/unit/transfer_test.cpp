#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "phantom/closedform/closedform.hpp"
#include "phantom/numerics/rng.hpp"
#include "phantom/transfer/matrix.hpp"
#include "phantom/transfer/series.hpp"
#include "phantom/transfer/vectors.hpp"
#include "phantom/transfer/walk.hpp"

using namespace phantom;

namespace {

ModelParams obc(int n, int q = 2)
{
    ModelParams p;
    p.boundary = Boundary::obc;
    p.n = n;
    p.q = q;
    return p;
}

ModelParams pbc(int n, int q = 2)
{
    ModelParams p;
    p.boundary = Boundary::pbc;
    p.n = n;
    p.q = q;
    return p;
}

DenseMatrix<Rational> dense_from(std::initializer_list<std::initializer_list<Rational>> rows)
{
    DenseMatrix<Rational> m(rows.size(), rows.begin()->size());
    std::size_t r = 0;
    for (auto row : rows) {
        std::size_t c = 0;
        for (const auto& x : row)
            m(r, c++) = x;
        ++r;
    }
    return m;
}

/// The periodic matrix assembled block by block from the written-out rules.
DenseMatrix<Rational> pbc_by_hand(int n, const Rates<Rational>& r)
{
    const std::size_t m = n - 1, d = n * m + 1;
    const Rational ts = r.tau * r.sigma;
    DenseMatrix<Rational> a(d, d);
    for (std::size_t b = 0; b < std::size_t(n); ++b) {
        std::size_t up = (b + 1) % n, down = (b + n - 1) % n;
        for (std::size_t w = 0; w < m; ++w) {
            std::size_t row = b * m + w;
            a(row, b * m + w) = (w == 0 || w == m - 1) ? 3 * ts : 4 * ts;
            if (w + 1 < m)
                a(row, b * m + w + 1) = r.delta * r.tau;
            if (w >= 1)
                a(row, b * m + w - 1) = r.delta * r.sigma;
            a(row, up * m + w) += ts;
            if (w >= 1)
                a(row, up * m + w - 1) += r.delta * r.sigma;
            if (w >= 2)
                a(row, up * m + w - 2) += r.sigma * r.sigma;
            a(row, down * m + w) += ts;
            if (w + 1 < m)
                a(row, down * m + w + 1) += r.delta * r.tau;
            if (w + 2 < m)
                a(row, down * m + w + 2) += r.tau * r.tau;
        }
        if (m >= 2)
            a(d - 1, b * m + m - 2) = r.sigma * r.sigma;
        a(d - 1, b * m + m - 1) = r.delta * r.sigma + r.sigma;
    }
    a(d - 1, d - 1) = 1;
    return a;
}

std::vector<Rational> series_values(const TransferMatrix<Rational>& a, const VectorPair<Rational>& pair, std::size_t t_max)
{
    return iterate_series(a, pair, t_max, false).values;
}

} // namespace

TEST(BuildObc, SmallMaterialisations)
{
    auto a3 = build_obc(obc(3)).materialize();
    EXPECT_EQ(a3, dense_from({{Rational(8, 25), Rational(1, 25), 0},
                              {Rational(16, 25), Rational(8, 25), 0},
                              {0, Rational(16, 25), 1}}));
    auto a2 = build_obc(obc(2)).materialize();
    EXPECT_EQ(a2, dense_from({{Rational(8, 25), 0}, {Rational(16, 25), 1}}));
    EXPECT_THROW(build_obc(obc(1)), DomainError);
}

TEST(BuildObc, FirstColumnLeaks)
{
    for (int n : {2, 5, 9}) {
        auto a = build_obc(obc(n)).materialize();
        Rational s = 0;
        for (std::size_t r = 0; r < a.rows(); ++r)
            s += a(r, 0);
        EXPECT_EQ(s, n == 2 ? Rational(8, 25) + Rational(16, 25) : Rational(24, 25));
    }
}

TEST(BuildPbc, DimensionAndCentralBlock)
{
    auto a = build_pbc(pbc(3));
    EXPECT_EQ(a.dim(), 7u);
    auto m = a.materialize();
    const Rational ts(16, 625), dt(8, 625), ds(128, 625);
    EXPECT_EQ(m(0, 0), 3 * ts);
    EXPECT_EQ(m(0, 1), dt);
    EXPECT_EQ(m(1, 0), ds);
    EXPECT_EQ(m(1, 1), 3 * ts);
    EXPECT_THROW(build_pbc(pbc(2)), DomainError);
}

TEST(BuildPbc, MatchesBlockAssembly)
{
    for (int n = 3; n <= 8; ++n) {
        auto a = build_pbc(pbc(n));
        auto hand = pbc_by_hand(n, rates_from_q(2));
        EXPECT_EQ(a.materialize(), hand) << n;
        EXPECT_EQ(oracle::columns_by_matvec(a), hand) << n;
    }
}

TEST(BuildPbc, SinkRowRules)
{
    auto r = rates_from_q(2);
    for (int n : {3, 5}) {
        auto stoch = build_pbc(pbc(n)).materialize();
        auto literal = build_pbc(pbc(n), PbcSinkRule::literal_q2).materialize();
        const std::size_t last = stoch.rows() - 1;
        EXPECT_EQ(stoch(last, n - 2), r.delta * r.sigma + r.sigma);
        EXPECT_EQ(literal(last, n - 2), r.delta * r.sigma + 4 * r.sigma);
        // only the two narrowest widths leak out of the chain
        const Rational ts = r.tau * r.sigma, dt = r.delta * r.tau, tt = r.tau * r.tau;
        for (std::size_t c = 0; c < stoch.cols(); ++c) {
            Rational s = 0;
            for (std::size_t k = 0; k < stoch.rows(); ++k)
                s += stoch(k, c);
            const std::size_t w = c % (n - 1);
            Rational expected = 1;
            if (c + 1 < stoch.cols() && w == 0)
                expected -= ts + 2 * dt + tt;
            else if (c + 1 < stoch.cols() && w == 1)
                expected -= tt;
            EXPECT_EQ(s, expected) << "column " << c;
        }
    }
}

TEST(BuildMarkov, SingleSiteAndStochasticity)
{
    auto r = rates_from_q(2);
    auto a1 = build_markov_walk(1, r).materialize();
    EXPECT_EQ(a1, dense_from({{1, Rational(1, 25), 0}, {0, Rational(8, 25), 0}, {0, Rational(16, 25), 1}}));

    auto a4 = build_markov_walk(4, r).materialize();
    for (std::size_t c = 0; c < a4.cols(); ++c) {
        Rational s = 0;
        for (std::size_t k = 0; k < a4.rows(); ++k)
            s += a4(k, c);
        EXPECT_EQ(s, 1);
    }
    // hop left with tau, stay with delta, hop right with sigma
    for (std::size_t site = 1; site <= 4; ++site) {
        EXPECT_EQ(a4(site - 1, site), r.tau);
        EXPECT_EQ(a4(site, site), r.delta);
        EXPECT_EQ(a4(site + 1, site), r.sigma);
    }
    EXPECT_THROW(build_markov_walk(3, Rates<Rational>{Rational(1, 2), Rational(1, 2), Rational(1, 2)}), DomainError);
}

TEST(BuildJordan, ShiftAndNilpotency)
{
    auto j = build_jordan(3, 0, 1);
    auto m = j.materialize();
    EXPECT_EQ(m, dense_from({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}));
    EXPECT_EQ(m * m * m, DenseMatrix<Rational>(3, 3));
    EXPECT_EQ(build_jordan(2, Rational(1, 2), Rational(1, 2)).materialize(),
              dense_from({{Rational(1, 2), 0}, {Rational(1, 2), Rational(1, 2)}}));
}

TEST(Rescale, CollapsedBandAndIdentity)
{
    auto t = build_toeplitz(6, rates_from_q(2));
    auto same = rescale(t, Rational(1));
    EXPECT_EQ(same.materialize(), t.materialize());

    auto r = rescale(t, Rational(27, 20));
    auto m = r.materialize();
    EXPECT_EQ(m(0, 1), Rational(1, 25) * Rational(27, 20));
    EXPECT_NEAR(to_double(m(0, 1)), 0.054, 1e-15);
    EXPECT_NEAR(to_double(m(1, 0)), 0.474074, 1e-6);

    // D^{-1} T D computed densely
    auto base = t.materialize();
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t k = 0; k < 6; ++k) {
            Rational expect = base(i, k) * ipow(Rational(27, 20), k) / ipow(Rational(27, 20), i);
            EXPECT_EQ(m(i, k), expect);
        }
    EXPECT_EQ(oracle::columns_by_matvec(r), m);
    EXPECT_THROW(rescale(t, Rational(0)), DomainError);
    EXPECT_THROW(rescale(build_obc(obc(4)), Rational(2)), DomainError);
}

TEST(Rescale, PreservesSpectrum)
{
    auto t = build_toeplitz(7, rates_from_q(2));
    auto ev = oracle::sorted(oracle::eigenvalues(oracle::to_eigen(t.materialize())));
    for (Rational mu : {Rational(1, 2), Rational(27, 20), Rational(3)}) {
        auto er = oracle::sorted(oracle::eigenvalues(oracle::to_eigen(rescale(t, mu).materialize())));
        EXPECT_LT(oracle::max_min_distance(ev, er), 1e-9);
    }
}

TEST(Matvec, AllVariantsMatchMaterialisation)
{
    auto r = rates_from_q(3);
    std::vector<TransferMatrix<Rational>> mats{
        build_toeplitz(9, r),
        build_obc(obc(12, 3)),
        build_pbc(pbc(4, 3)),
        build_markov_walk(10, r),
        build_jordan(12, Rational(3, 10), Rational(1, 2)),
        rescale(build_toeplitz(8, r), Rational(5, 4)),
        rescale(build_jordan(11, Rational(3, 10), Rational(1, 2)), Rational(2)),
    };
    for (const auto& a : mats) {
        auto dense = a.materialize();
        std::vector<Rational> x(a.dim());
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = Rational(static_cast<long>(i * i % 7) - 3, static_cast<long>(i + 1));
        EXPECT_EQ(a.apply(x), dense.multiply(x)) << matrix_kind_name(a.kind());
    }
}

TEST(FixedPoint, LastUnitVectorIsFixed)
{
    for (auto a : {build_obc(obc(7)), build_pbc(pbc(5)), build_obc(obc(4, 5))}) {
        std::vector<Rational> e(a.dim(), Rational(0));
        e.back() = 1;
        EXPECT_EQ(a.apply(e), e);
    }
}

TEST(Stationary, MarkovSplitAndFixedPointProperty)
{
    auto r = rates_from_q(2);
    auto a = build_markov_walk(1, r);
    auto fps = absorbing_fixed_points(a);
    ASSERT_EQ(fps.size(), 2u);
    EXPECT_EQ(fps[0].index, 0u);
    EXPECT_EQ(fps[0].left[1], Rational(1, 17));
    EXPECT_EQ(fps[1].left[1], Rational(16, 17));
    EXPECT_EQ(stationary_left_vector(a), fps[1].left);

    SplitMix64 g(5);
    for (auto m : {build_obc(obc(9)), build_pbc(pbc(5)), build_markov_walk(6, r)}) {
        auto l = stationary_left_vector(m);
        EXPECT_EQ(l.back(), 1);
        std::vector<Rational> x(m.dim());
        for (auto& xi : x)
            xi = Rational(static_cast<long>(g() % 100), 7);
        EXPECT_EQ(dot(l, m.apply(x)), dot(l, x)) << matrix_kind_name(m.kind());
    }
}

TEST(OtocVectors, ObcPairs)
{
    auto v2 = otoc_vectors_obc(4, 2, 2);
    EXPECT_EQ(v2.v, (std::vector<Rational>{Rational(16, 15), 0, 0, 0}));
    EXPECT_EQ(v2.p, (std::vector<Rational>{1, 1, 1, 1}));
    EXPECT_EQ(dot(v2.p, v2.v), Rational(16, 15));
    EXPECT_EQ(otoc_vectors_obc(4, 2, 8).p, (std::vector<Rational>{0, 0, 0, 1}));
    // odd j rounds the threshold up
    EXPECT_EQ(otoc_vectors_obc(4, 2, 5).p, (std::vector<Rational>{0, 0, 1, 1}));
    EXPECT_THROW(otoc_vectors_obc(4, 2, 0), DomainError);
    EXPECT_THROW(otoc_vectors_obc(4, 2, 9), DomainError);
}

TEST(OtocVectors, PbcPattern)
{
    auto pr = otoc_vectors_pbc(3, 2, 1);
    ASSERT_EQ(pr.v.size(), 7u);
    std::vector<Rational> v(7, Rational(0));
    v[0] = 4;
    v[3] = 16;
    v[4] = 4;
    EXPECT_EQ(pr.v, v);
    EXPECT_EQ(pr.p.back(), 1);
    EXPECT_EQ(otoc_vectors_pbc(3, 2, 1, true).p.back(), 0);

    // block i: k from ((j - i + 1) mod (n-1)) to n-1, residue 0 read as n-1
    const int n = 6, m = 5, j = 1;
    auto p = otoc_vectors_pbc(n, 2, j).p;
    for (int i = 1; i <= n; ++i) {
        int ks = ((j - i + 1) % m + m) % m;
        if (ks == 0)
            ks = m;
        for (int k = 1; k <= m; ++k)
            EXPECT_EQ(p[(i - 1) * m + k - 1], k >= ks ? 1 : 0) << i << "," << k;
    }
    EXPECT_THROW(otoc_vectors_pbc(6, 2, 7), DomainError);
}

TEST(RandomVectors, ExactlyStochasticAndReproducible)
{
    for (std::size_t d : {1u, 7u, 1601u}) {
        auto v = random_stochastic_vector(d, 1);
        Rational s = 0;
        for (const auto& x : v) {
            EXPECT_GT(x, 0);
            s += x;
        }
        EXPECT_EQ(s, 1);
    }
    EXPECT_EQ(random_stochastic_vector(20, 9), random_stochastic_vector(20, 9));
    EXPECT_NE(random_stochastic_vector(20, 9), random_stochastic_vector(20, 10));
}

TEST(Iterate, ObcHandValues)
{
    auto a = build_obc(obc(4));
    auto vals = series_values(a, otoc_vectors_obc(4, 2, 1), 1);
    EXPECT_EQ(vals[0], Rational(16, 15));
    EXPECT_EQ(vals[1], Rational(16, 15) * Rational(24, 25));
}

TEST(Iterate, ShiftRegisterEmpties)
{
    auto j = build_jordan(3, 0, 1);
    VectorPair<Rational> pr{{1, 1, 1}, {1, 0, 0}};
    auto vals = series_values(j, pr, 4);
    EXPECT_EQ(vals, (std::vector<Rational>{1, 1, 1, 0, 0}));
    auto s = iterate_series(j, pr, 4, true);
    EXPECT_EQ(*s.o_infinity, 0);
    EXPECT_THROW(iterate_series(j, VectorPair<Rational>{{1, 1}, {1, 0}}, 3, false), DomainError);
}

TEST(Iterate, DeflatedPlusAsymptoteIsExact)
{
    auto r = rates_from_q(2);
    struct Case {
        TransferMatrix<Rational> a;
        VectorPair<Rational> pair;
    };
    std::vector<Case> cases{
        {build_obc(obc(8)), otoc_vectors_obc(8, 2, 1)},
        {build_pbc(pbc(5)), otoc_vectors_pbc(5, 2, 1)},
        {build_markov_walk(6, r), markov_vectors(6, Rational(16, 15))},
        {build_pbc(pbc(4)), with_random_v(otoc_vectors_pbc(4, 2, 1, true).p, 3)},
    };
    for (const auto& c : cases) {
        auto raw = iterate_series(c.a, c.pair, 30, false);
        auto def = iterate_series(c.a, c.pair, 30, true);
        ASSERT_TRUE(def.o_infinity);
        EXPECT_EQ(*raw.o_infinity, *def.o_infinity);
        for (std::size_t t = 0; t <= 30; ++t)
            ASSERT_EQ(raw.values[t], def.values[t] + *def.o_infinity) << t;
    }
}

TEST(Iterate, MarkovMassConserved)
{
    auto a = build_markov_walk(5, rates_from_q(3));
    auto x = random_stochastic_vector(7, 4);
    for (int t = 0; t < 25; ++t) {
        Rational s = 0;
        for (const auto& xi : x)
            s += xi;
        ASSERT_EQ(s, 1);
        x = a.apply(x);
    }
}

TEST(Iterate, ObcMatchesBulkBeforeTheSink)
{
    const int n = 12;
    auto a = build_obc(obc(n));
    auto t = build_toeplitz(n - 1, rates_from_q(2));
    VectorPair<Rational> full{std::vector<Rational>(n, Rational(1)), std::vector<Rational>(n, Rational(0))};
    full.p.back() = 0;
    full.v[0] = 3;
    full.v[1] = Rational(1, 2);
    VectorPair<Rational> bulk{std::vector<Rational>(n - 1, Rational(1)), std::vector<Rational>(n - 1, Rational(0))};
    bulk.v[0] = 3;
    bulk.v[1] = Rational(1, 2);
    auto s_full = series_values(a, full, n - 2);
    auto s_bulk = series_values(t, bulk, n - 2);
    EXPECT_EQ(s_full, s_bulk);
}

TEST(Iterate, MarkovMatchesObcWithoutLeftBath)
{
    const int n = 10;
    auto obc_series = series_values(build_obc(obc(n)), otoc_vectors_obc(n, 2, 1), 40);
    auto walk_series = series_values(build_markov_walk(n - 1, rates_from_q(2)), markov_vectors(n - 1, Rational(16, 15)), 40);
    EXPECT_EQ(obc_series, walk_series);
}

TEST(Walk, LeftBathMassMatchesCatalanPaths)
{
    auto r = rates_from_q(2);
    auto a = build_markov_walk(45, r);
    std::vector<Rational> x(47, Rational(0));
    x[1] = 1;
    for (std::size_t t = 0; t <= 40; ++t) {
        ASSERT_EQ(x[0], r1_catalan(t, r)) << t;
        x = a.apply(x);
    }
}

TEST(Walk, MonteCarloSmallTimes)
{
    auto r = rates_from_q(2).convert<double>();
    const std::uint64_t trials = 200000;
    auto est = simulate_walk(30, r, 3, trials, 1);
    ASSERT_EQ(est.r1.size(), 4u);
    EXPECT_EQ(est.r1[0], 0.0);
    EXPECT_NEAR(est.r1[1], 0.04, 4.0 / std::sqrt(double(trials)));
    EXPECT_NEAR(est.r1[2], 0.0528, 4 * est.std_error[2] + 1e-12);
    auto none = simulate_walk(10, Rates<double>{0.6, 0.0, 0.4}, 20, 1000, 1);
    for (double v : none.r1)
        EXPECT_EQ(v, 0.0);
}

TEST(Walk, IndependentOfWorkerCount)
{
    auto r = rates_from_q(2).convert<double>();
    auto a = simulate_walk(12, r, 15, 20000, 77, 1);
    auto b = simulate_walk(12, r, 15, 20000, 77, 3);
    EXPECT_EQ(a.r1, b.r1);
    auto c = simulate_walk(12, r, 15, 20000, 78, 1);
    EXPECT_NE(a.r1, c.r1);
}
