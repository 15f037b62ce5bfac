#include "mzv/closed_forms.hpp"
#include "mzv/direct.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

namespace mzv {
namespace {

Rational q(long num, unsigned long den) { return Rational(Integer(num), Integer(den)); }

const PrecisionContext k256(256);

BigFloat zeta3(const PrecisionContext& ctx) { return testing::mpfr_zeta(3, ctx); }

TEST(Coefficients, SmallValues)
{
    EXPECT_EQ(zagier_coefficient(1, 0, 0), q(-1, 2));
    EXPECT_EQ(murakami_coefficient(1, 0, 0), q(7, 2));
    // k = 2, a = 1, b = 0: C(4,4) - (15/16) C(4,1)
    EXPECT_EQ(zagier_coefficient(2, 1, 0), q(-11, 4));
    // k = 2, a = 0, b = 1: C(4,1) + C(4,3) (15/16)
    EXPECT_EQ(murakami_coefficient(2, 0, 1), q(31, 4));
    EXPECT_EQ(zagier_coefficient(1, 3, 0), q(-3, 2));
}

TEST(Normalization, ParsesAndPrints)
{
    EXPECT_EQ(parse_normalization("as-printed"), Normalization::AsPrinted);
    EXPECT_EQ(parse_normalization("corrected"), Normalization::Corrected);
    EXPECT_EQ(to_string(Normalization::AsPrinted), "as-printed");
    EXPECT_THROW(parse_normalization("fixed"), std::invalid_argument);
}

TEST(Zagier, OriginIsZetaThree)
{
    const EvalResult r = zagier_H({0, 0}, k256);
    EXPECT_LE(abs(r.value - zeta3(k256)), r.error_bound + pow2(-250, k256));
    EXPECT_LE(r.error_bound, pow2(-200, k256));
}

TEST(Zagier, ZeroOneMatchesDirectSum)
{
    const PrecisionContext ctx(64);
    const EvalResult z = zagier_H({0, 1}, ctx);
    const EvalResult d = mzv_direct(MultiIndex{3, 2}, 100'000, ctx);
    EXPECT_LE(abs(z.value - d.value), z.error_bound + d.error_bound);
}

TEST(Murakami, NormalizationResolvesToOne)
{
    const MurakamiNormalization& n = resolve_murakami_normalization();
    EXPECT_TRUE(n.validated);
    EXPECT_EQ(n.exponent, 1);
    EXPECT_EQ(n.t_exponent(), -1);
    ASSERT_EQ(n.checks.size(), 3U);
    for (const NormalizationCheck& c : n.checks) {
        EXPECT_TRUE(c.passed) << c.index.a << "," << c.index.b;
    }
}

TEST(Murakami, KAtOrigin)
{
    const BigFloat z3 = zeta3(k256);
    const EvalResult printed = murakami_K({0, 0}, k256, Normalization::AsPrinted);
    const EvalResult corrected = murakami_K({0, 0}, k256, Normalization::Corrected);
    EXPECT_LE(abs(printed.value - z3 * 7L / 2L), printed.error_bound + pow2(-245, k256));
    EXPECT_LE(abs(corrected.value - z3 * 7L), corrected.error_bound + pow2(-245, k256));
}

TEST(Murakami, TAtOrigin)
{
    const BigFloat z3 = zeta3(k256);
    const EvalResult printed = murakami_T({0, 0}, k256, Normalization::AsPrinted);
    const EvalResult corrected = murakami_T({0, 0}, k256, Normalization::Corrected);
    EXPECT_LE(abs(printed.value - z3 * 7L / 4L), printed.error_bound + pow2(-245, k256));
    EXPECT_LE(abs(corrected.value - z3 * 7L / 8L), corrected.error_bound + pow2(-245, k256));
}

TEST(Murakami, TOneZeroMatchesLupu)
{
    const EvalResult m = murakami_T({1, 0}, k256, Normalization::Corrected);
    const EvalResult l = lupu_T({1, 0}, k256);
    EXPECT_LE(abs(m.value - l.value), m.error_bound + l.error_bound);
}

TEST(Lupu, OriginValues)
{
    const BigFloat z3 = zeta3(k256);
    const EvalResult h = lupu_H({0, 0}, k256);
    const EvalResult t = lupu_T({0, 0}, k256);
    EXPECT_LE(abs(h.value - z3), h.error_bound + pow2(-250, k256));
    EXPECT_LE(abs(t.value - z3 * 7L / 8L), t.error_bound + pow2(-250, k256));
    EXPECT_LE(h.error_bound, pow2(-250, k256));
}

TEST(Lupu, ZeroTermFormula)
{
    // n = 0: zeta(0) / ((2a+2)...(2a+2b+3)) = -1/2 * (2a+1)! / (2a+2b+3)!
    for (unsigned a = 0; a <= 4; ++a) {
        for (unsigned b = 0; b <= 4; ++b) {
            const Rational expected = Rational(Integer(-1), Integer(2)) * Rational(factorial(2 * a + 1)) /
                                      Rational(factorial(2 * a + 2 * b + 3));
            const BigFloat got = lupu_H_term(0, {a, b}, k256).value;
            EXPECT_TRUE(testing::within_pow2(got, BigFloat(expected, k256), -240, k256)) << a << "," << b;
        }
    }
}

TEST(LupuProperty, TermsShrinkFourfold)
{
    for (unsigned a = 0; a <= 4; ++a) {
        for (unsigned b = 0; b <= 4; ++b) {
            for (std::uint64_t n = 1; n <= 40; ++n) {
                const BigFloat h0 = abs(lupu_H_term(n, {a, b}, k256).value);
                const BigFloat h1 = abs(lupu_H_term(n + 1, {a, b}, k256).value);
                ASSERT_LE(h1 * 4L, h0) << a << "," << b << " n=" << n;
                const BigFloat t0 = abs(lupu_T_term(n, {a, b}, k256).value);
                const BigFloat t1 = abs(lupu_T_term(n + 1, {a, b}, k256).value);
                ASSERT_LE(t1 * 4L, t0) << a << "," << b << " n=" << n;
            }
        }
    }
}

TEST(ClosedFormProperty, GridAgreementAndPositivity)
{
    for (unsigned a = 0; a <= 4; ++a) {
        for (unsigned b = 0; b <= 4; ++b) {
            const HoffmanIndex h{a, b};
            const EvalResult lh = lupu_H(h, k256);
            const EvalResult lt = lupu_T(h, k256);
            const EvalResult zh = zagier_H(h, k256);
            const EvalResult mt = murakami_T(h, k256, Normalization::Corrected);
            EXPECT_GT(lh.value.sign(), 0);
            EXPECT_GT(lt.value.sign(), 0);
            EXPECT_LE(lh.value, zeta3(k256) + pow2(-200, k256));
            EXPECT_LE(abs(zh.value - lh.value), zh.error_bound + lh.error_bound) << a << "," << b;
            EXPECT_LE(abs(mt.value - lt.value), mt.error_bound + lt.error_bound) << a << "," << b;
            EXPECT_LE(lh.error_bound, pow2(-160, k256));
            EXPECT_LE(zh.error_bound, pow2(-160, k256));
        }
    }
}

TEST(ClosedFormProperty, PrintedToCorrectedRatioIsConstant)
{
    for (unsigned a = 0; a <= 3; ++a) {
        for (unsigned b = 0; b <= 3; ++b) {
            const HoffmanIndex h{a, b};
            const BigFloat ratio = murakami_T(h, k256, Normalization::AsPrinted).value /
                                   murakami_T(h, k256, Normalization::Corrected).value;
            EXPECT_TRUE(testing::within_pow2(ratio, BigFloat(2L, k256), -200, k256)) << a << "," << b;
        }
    }
}

TEST(ClosedFormProperty, ReversalChangesTheValue)
{
    // zeta(2,3) and zeta(3,2) differ.
    const EvalResult x = lupu_H({1, 0}, k256);
    const EvalResult y = lupu_H({0, 1}, k256);
    EXPECT_GT(abs(x.value - y.value), pow2(-20, k256));
}

} // namespace
} // namespace mzv
