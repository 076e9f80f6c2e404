#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "phantom/closedform/closedform.hpp"
#include "phantom/transfer/matrix.hpp"
#include "phantom/transfer/series.hpp"

using namespace phantom;

namespace {

ModelParams obc(int n)
{
    ModelParams p;
    p.boundary = Boundary::obc;
    p.n = n;
    p.q = 2;
    return p;
}

BigFloat rel(const BigFloat& a, const BigFloat& b) { return BigFloat(abs(a - b) / abs(b)); }

/// Left-bath absorption by explicit path enumeration over {left, stay, right}.
Rational r1_by_paths(int pos, int steps, const Rates<Rational>& r)
{
    if (pos == 0)
        return 1;
    if (steps == 0)
        return 0;
    return r.tau * r1_by_paths(pos - 1, steps - 1, r) + r.delta * r1_by_paths(pos, steps - 1, r) +
           r.sigma * r1_by_paths(pos + 1, steps - 1, r);
}

} // namespace

TEST(Jordan, ClosedFormExamples)
{
    const Rational h(1, 2);
    EXPECT_EQ(jordan_closed<Rational>(3, 10, h, h, ConvolutionProfile::constant_one()), 1);
    const Rational d(3, 10), s(1, 2);
    for (std::size_t t = 0; t < 12; ++t) {
        EXPECT_EQ(jordan_closed<Rational>(t, 12, d, s, ConvolutionProfile::constant_one()), ipow(Rational(d + s), t));
        for (Rational mu : {Rational(1), Rational(5, 4), Rational(2)})
            EXPECT_EQ(jordan_closed<Rational>(t, 12, d, s, ConvolutionProfile::exponential(mu)),
                      ipow(Rational(d + s / mu), t));
    }
    EXPECT_THROW(ConvolutionProfile::exponential(0), DomainError);
    EXPECT_EQ(ConvolutionProfile::exponential(Rational(3, 2)).at(3), Rational(8, 27));
}

TEST(Jordan, ClosedFormMatchesIteration)
{
    const std::size_t n = 15;
    const Rational d(3, 10), s(1, 2);
    auto a = build_jordan(n, d, s);
    std::vector<ConvolutionProfile> profiles{
        ConvolutionProfile::constant_one(),
        ConvolutionProfile::constant_one(Rational(7, 3)),
        ConvolutionProfile::exponential(Rational(5, 4)),
        ConvolutionProfile::tabulated({1, 0, 3, Rational(-1, 2), 2, 2, 0, 1, 1, 5, 0, 0, 1, 4, Rational(9, 7)}),
    };
    for (const auto& c : profiles) {
        auto series = iterate_series(a, profile_vectors(c, n), 2 * n, false);
        for (std::size_t t = 0; t <= 2 * n; ++t)
            ASSERT_EQ(series.values[t], jordan_closed<Rational>(t, n, d, s, c)) << t;
    }
}

TEST(Catalan, FirstPassageValues)
{
    auto r = rates_from_q(2);
    EXPECT_EQ(r1_catalan(0, r), 0);
    EXPECT_EQ(r1_catalan(1, r), Rational(1, 25));
    EXPECT_EQ(r1_catalan(2, r), Rational(33, 625));
    EXPECT_EQ(r1_catalan(3, r), r.tau * (1 + r.delta + r.delta * r.delta + r.tau * r.sigma));
    for (int t = 1; t <= 9; ++t)
        EXPECT_EQ(r1_catalan(t, r), r1_by_paths(1, t, r)) << t;
    auto r3 = rates_from_q(3);
    for (int t = 1; t <= 7; ++t)
        EXPECT_EQ(r1_catalan(t, r3), r1_by_paths(1, t, r3)) << t;
}

TEST(Catalan, ObcSeriesIsScaledSurvival)
{
    auto r = rates_from_q(2);
    const int n = 25;
    auto series = iterate_series(build_obc(obc(n)), otoc_vectors_obc(n, 2, 1), n - 1, false);
    for (int t = 0; t < n; ++t)
        ASSERT_EQ(series.values[t], Rational(16, 15) * (1 - r1_catalan(t, r))) << t;
}

TEST(OtocClosed, InitialValueAndLimit)
{
    PrecisionScope prec(256);
    EXPECT_LT(rel(otoc_closed_q2(0), BigFloat(16) / 15), BigFloat(1e-70));
    EXPECT_LT(abs(otoc_closed_q2(400) - 1), BigFloat(1e-70));
}

TEST(OtocClosed, MatchesExactSurvival)
{
    PrecisionScope prec(256);
    auto r = rates_from_q(2);
    for (std::size_t t = 0; t <= 60; ++t) {
        BigFloat exact(Rational(Rational(16, 15) * (1 - r1_catalan(t, r))));
        ASSERT_LT(rel(otoc_closed_q2(t), exact), BigFloat(1e-60)) << t;
    }
}

TEST(OtocClosed, ExcessPositiveDecreasingLogConvex)
{
    PrecisionScope prec(256);
    std::vector<BigFloat> e;
    for (std::size_t t = 2; t <= 60; ++t)
        e.push_back(BigFloat(otoc_closed_q2(t) - 1));
    for (std::size_t i = 0; i < e.size(); ++i) {
        ASSERT_GT(e[i], 0);
        if (i > 0)
            ASSERT_LT(e[i], e[i - 1]);
        if (i > 1)
            ASSERT_GE(e[i] * e[i - 2], e[i - 1] * e[i - 1]);
    }
}

TEST(RateClosed, DefiningIdentityAndLimit)
{
    PrecisionScope prec(256);
    for (std::size_t t : {0u, 1u, 5u, 20u, 50u}) {
        BigFloat ratio = (otoc_closed_q2(t + 1) - 1) / (otoc_closed_q2(t) - 1);
        EXPECT_LT(rel(rate_closed_q2(t), ratio), BigFloat(1e-15)) << t;
    }
    EXPECT_NEAR(to_double(rate_closed_q2(5000)), 0.64, 1e-3);
    EXPECT_LT(to_double(rate_closed_q2(5000)), 0.64);
}

TEST(RateClosed, HypergeometricRatioTendsToOne)
{
    PrecisionScope prec(256);
    // reference value from an independent arbitrary-precision evaluation
    EXPECT_NEAR(to_double(hyp_ratio_q2(20)), 1.0039480882523195, 1e-14);
    EXPECT_NEAR(to_double(hyp_ratio_q2(100)), 1.0002354053157711, 1e-14);
    BigFloat prev = hyp_ratio_q2(0);
    for (std::size_t t = 1; t <= 80; ++t) {
        BigFloat h = hyp_ratio_q2(t);
        ASSERT_GT(h, 1);
        ASSERT_LT(h, prev);
        prev = h;
    }
}

TEST(SpectralSum, InnerIdentityMatchesDirectSum)
{
    PrecisionScope prec(256);
    for (int q : {2, 3}) {
        auto r = rates_from_q(q).convert<BigFloat>();
        for (int h = 1; h <= 11; ++h) {
            BigFloat direct = inner_sum(12, h, r, InnerSum::direct);
            BigFloat ident = inner_sum(12, h, r, InnerSum::identity);
            EXPECT_LT(rel(ident, direct), BigFloat(1e-60)) << h;
        }
    }
}

TEST(SpectralSum, ReproducesBulkIteration)
{
    PrecisionScope prec(256);
    for (int q : {2, 3}) {
        auto rq = rates_from_q(q);
        auto rb = rq.convert<BigFloat>();
        for (int n : {2, 3, 10, 20}) {
            auto t = build_toeplitz(n - 1, rq);
            VectorPair<Rational> pr{std::vector<Rational>(n - 1, Rational(1)), std::vector<Rational>(n - 1, Rational(0))};
            pr.v[0] = 1;
            auto series = iterate_series(t, pr, 30, false);
            for (std::size_t step = 0; step <= 30; ++step) {
                BigFloat exact(series.values[step]);
                ASSERT_LT(rel(spectral_sum_obc(step, n, rb), exact), BigFloat(1e-20)) << n << "," << step;
                ASSERT_LT(rel(spectral_sum_obc(step, n, rb, InnerSum::direct), exact), BigFloat(1e-20));
            }
            EXPECT_LT(abs(spectral_sum_obc(0, n, rb) - 1), BigFloat(1e-60));
        }
    }
}

TEST(LeadingTerm, ProbesAwayFromTheBoundary)
{
    PrecisionScope prec(256);
    auto r = rates_from_q(2).convert<BigFloat>();
    auto p5 = leading_term_checks(16, r, 5);
    EXPECT_LT(abs(p5.leading_normalized - 1), BigFloat(1e-10));
    EXPECT_LT(abs(leading_term_checks(16, r, 8).interior_sum), BigFloat(1e-10));
    EXPECT_GT(abs(leading_term_checks(16, r, 18).interior_sum), BigFloat(1e-10));
    const BigFloat exact = 1 / (1 - pow(BigFloat(r.tau / r.sigma), 16));
    for (std::size_t t = 0; t + 2 < 16; ++t)
        EXPECT_LT(abs(leading_term_checks(16, r, t).leading_normalized - exact), BigFloat(1e-60)) << t;
    EXPECT_THROW(leading_term_checks(16, Rates<BigFloat>{BigFloat("0.5"), BigFloat("0.3"), BigFloat("0.2")}, 3),
                 DomainError);
}
