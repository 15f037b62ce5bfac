#include "mzv/closed_forms.hpp"
#include "mzv/integrals.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

namespace mzv {
namespace {

const PrecisionContext k192(192);

TEST(Integrand, EndpointValues)
{
    const IntegrandSpec fh{SeriesKind::H, 1, 1};
    EXPECT_TRUE(fh(ldexp(pi(k192), -1), k192).is_zero() ||
                abs(fh(ldexp(pi(k192), -1), k192)) <= pow2(-180, k192));
    EXPECT_TRUE(fh(BigFloat(0L, k192), k192).is_zero());
    const IntegrandSpec ft{SeriesKind::T, 0, 2};
    EXPECT_EQ(ft(BigFloat(0L, k192), k192).to_fixed(30), BigFloat(1L, k192).to_fixed(30));
}

TEST(Integral, OriginMatchesZetaThree)
{
    const BigFloat z3 = testing::mpfr_zeta(3, k192);
    const EvalResult h = llo_integral_H({0, 0}, k192);
    const EvalResult t = llo_integral_T({0, 0}, k192);
    EXPECT_TRUE(h.heuristic);
    EXPECT_LE(abs(h.value - z3), BigFloat::parse("1e-40", k192));
    EXPECT_LE(abs(t.value - z3 * 7L / 8L), BigFloat::parse("1e-40", k192));
}

TEST(Integral, OffOriginMatchesLupu)
{
    const EvalResult ih = llo_integral_H({1, 2}, k192);
    const EvalResult lh = lupu_H({1, 2}, k192);
    EXPECT_LE(abs(ih.value - lh.value), BigFloat::parse("1e-40", k192));
    const EvalResult it = llo_integral_T({2, 0}, k192);
    const EvalResult lt = lupu_T({2, 0}, k192);
    EXPECT_LE(abs(it.value - lt.value), BigFloat::parse("1e-40", k192));
}

TEST(BetaMoment, SmallestCases)
{
    const BigFloat p = pi(k192);
    // int_0^{pi/2} x (1 - 2x/pi) dx = pi^2/24
    EXPECT_TRUE(testing::within_pow2(beta_moment_H(0, 0, 0, k192), pow(p, 2) / 24L, -185, k192));
    // int_0^{pi/2} (1 - 2x/pi) dx = pi/4
    EXPECT_TRUE(testing::within_pow2(beta_moment_T(0, 0, 0, k192), p / 4L, -185, k192));
}

TEST(BetaMomentProperty, MatchesQuadrature)
{
    const BigFloat lo(0L, k192);
    const BigFloat hi = ldexp(pi(k192), -1);
    const BigFloat target = pow2(-170, k192);
    for (unsigned n = 0; n <= 2; ++n) {
        for (unsigned a = 0; a <= 2; ++a) {
            for (unsigned b = 0; b <= 2; ++b) {
                auto poly = [&](unsigned p) {
                    return [&, p](const BigFloat& x) {
                        return pow(x, p) * pow(BigFloat(1L, k192) - ldexp(x, 1) / pi(k192), 2UL * b + 1);
                    };
                };
                const EvalResult qh = integrate(poly(2 * n + 2 * a + 1), lo, hi, target, k192);
                EXPECT_TRUE(testing::within_pow2(qh.value, beta_moment_H(n, a, b, k192), -150, k192))
                    << n << "," << a << "," << b;
                const EvalResult qt = integrate(poly(2 * n + 2 * a), lo, hi, target, k192);
                EXPECT_TRUE(testing::within_pow2(qt.value, beta_moment_T(n, a, b, k192), -150, k192))
                    << n << "," << a << "," << b;
            }
        }
    }
}

TEST(BetaMomentProperty, ScalesAsPowerOfHalfPi)
{
    // moment / (pi/2)^{p} is the rational Beta value.
    for (unsigned n = 0; n <= 3; ++n) {
        const BigFloat scale = pow(ldexp(pi(k192), -1), 2UL * n + 4);
        const BigFloat rational(beta_pos_int(2 * n + 4, 4), k192);
        EXPECT_TRUE(testing::within_pow2(beta_moment_H(n, 1, 1, k192) / scale, rational, -180, k192)) << n;
    }
}

TEST(QuadratureProperty, ErrorDropsQuicklyWithNodes)
{
    // Analytic integrand: the Gauss-Legendre error falls by well over a factor 4 per doubling.
    const IntegrandSpec f{SeriesKind::H, 1, 1};
    const BigFloat lo(0L, k192);
    const BigFloat hi = ldexp(pi(k192), -1);
    const BigFloat reference = gauss_legendre_sum([&](const BigFloat& x) { return f(x, k192); }, lo, hi, 512, k192).first;
    BigFloat previous = abs(gauss_legendre_sum([&](const BigFloat& x) { return f(x, k192); }, lo, hi, 4, k192).first -
                            reference);
    for (std::size_t m : {8, 16, 32}) {
        const BigFloat err =
            abs(gauss_legendre_sum([&](const BigFloat& x) { return f(x, k192); }, lo, hi, m, k192).first - reference);
        EXPECT_LE(err * 4L, previous) << "m=" << m;
        previous = err;
    }
}

TEST(QuadratureProperty, RawAndRegularizedIntegrandsAgree)
{
    const BigFloat u = unit_roundoff(k192);
    for (const char* xs : {"0.001", "0.1", "0.7", "1.2", "1.5"}) {
        const BigFloat x = BigFloat::parse(xs, k192);
        for (unsigned a = 0; a <= 3; ++a) {
            for (unsigned b = 0; b <= 3; ++b) {
                for (SeriesKind kind : {SeriesKind::H, SeriesKind::T}) {
                    const IntegrandSpec f{kind, a, b};
                    const BigFloat reg = f(x, k192, IntegrandForm::Regularized);
                    const BigFloat raw = f(x, k192, IntegrandForm::Raw);
                    EXPECT_LE(abs(reg - raw), abs(reg) * u * 4L) << xs << " " << a << "," << b;
                }
            }
        }
    }
}

TEST(Quadrature, NodesAndWeights)
{
    const auto rule = gauss_legendre_rule(16, k192);
    BigFloat total(0L, k192);
    for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
        total += rule->nodes[i].is_zero() ? rule->weights[i] : rule->weights[i] * 2L;
    }
    EXPECT_TRUE(testing::within_pow2(total, BigFloat(2L, k192), -180, k192));
}

TEST(Quadrature, RaisesWhenNodeBudgetIsTooSmall)
{
    QuadratureOptions options;
    options.max_points = 32;
    EXPECT_THROW(llo_integral_H({2, 2}, k192, options), QuadratureNoConvergence);
}

} // namespace
} // namespace mzv
