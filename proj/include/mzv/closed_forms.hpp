#pragma once

// H(a,b) = zeta({2}^a, 3, {2}^b) and T(a,b) = t({2}^a, 3, {2}^b) through
// finite closed forms in odd zeta values (Zagier for H, Murakami for T) and
// through the rapidly convergent even-zeta series (Lupu).

#include "mzv/bigfloat.hpp"
#include "mzv/direct.hpp"
#include "mzv/exact.hpp"
#include "mzv/numerics.hpp"

#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mzv {

/// How to normalize the Murakami formulas.
///
/// AsPrinted evaluates the formulas with the constants exactly as they are
/// usually quoted; Corrected rescales by the power of two that the
/// definitional oracle demands (see resolve_murakami_normalization).
enum class Normalization { AsPrinted, Corrected };

inline std::string to_string(Normalization n) { return n == Normalization::AsPrinted ? "as-printed" : "corrected"; }

inline Normalization parse_normalization(const std::string& text)
{
    if (text == "as-printed") {
        return Normalization::AsPrinted;
    }
    if (text == "corrected") {
        return Normalization::Corrected;
    }
    throw std::invalid_argument("unknown normalization '" + text + "'");
}

/// C(2k, 2a+2) - (1 - 2^{-2k}) C(2k, 2b+1).
inline Rational zagier_coefficient(unsigned k, unsigned a, unsigned b)
{
    const Rational damp = Rational(1) - pow2_rational(-2 * static_cast<std::int64_t>(k));
    Rational out = Rational(binomial(2 * k, 2 * a + 2)) - damp * Rational(binomial(2 * k, 2 * b + 1));
    out.canonicalize();
    return out;
}

/// C(2k, 2a+1) + C(2k, 2b+1) (1 - 2^{-2k}).
inline Rational murakami_coefficient(unsigned k, unsigned a, unsigned b)
{
    const Rational damp = Rational(1) - pow2_rational(-2 * static_cast<std::int64_t>(k));
    Rational out = Rational(binomial(2 * k, 2 * a + 1)) + Rational(binomial(2 * k, 2 * b + 1)) * damp;
    out.canonicalize();
    return out;
}

namespace detail {

// factor * r with factor carrying `factor_ulps` units of relative error.
inline EvalResult scale_result(EvalResult r, const BigFloat& factor, long factor_ulps, const PrecisionContext& ctx)
{
    BigFloat value = r.value * factor;
    BigFloat bound = abs(factor) * r.error_bound +
                     abs(value) * unit_roundoff(ctx) * (factor_ulps + 1);
    return {std::move(value), std::move(bound), r.precision_bits, r.heuristic};
}

// sum_k coeff(k) * zeta(2k+1) * other(k) for k = 1..a+b+1, where `other`
// returns a value with relative error of at most other_ulps(k) roundoffs.
template <typename Coeff, typename Other, typename OtherUlps>
EvalResult odd_zeta_combination(unsigned terms, Coeff&& coeff, Other&& other, OtherUlps&& other_ulps,
                                const PrecisionContext& ctx)
{
    const BigFloat u = unit_roundoff(ctx);
    BigFloat sum(0L, ctx);
    BigFloat bound(0L, ctx);
    for (unsigned k = 1; k <= terms; ++k) {
        const Rational c = coeff(k);
        const EvalResult z = zeta_odd(k, ctx);
        const BigFloat w = other(k);
        // c has a power-of-two denominator and a small numerator: exact.
        BigFloat term = w * z.value;
        term *= c;
        const BigFloat abs_c = abs(BigFloat(c, ctx));
        bound += abs_c * abs(w) * z.error_bound;
        bound += abs(term) * u * (other_ulps(k) + 3);
        sum += term;
        bound += abs(sum) * u;
    }
    return {std::move(sum), std::move(bound), ctx.precision_bits(), false};
}

} // namespace detail

/// H(a,b) = 2 sum_{k=1}^{a+b+1} (-1)^k c_k zeta(2k+1) zeta({2}^{a+b+1-k}).
inline EvalResult zagier_H(HoffmanIndex h, const PrecisionContext& ctx)
{
    const unsigned m = h.a + h.b + 1;
    return detail::odd_zeta_combination(
        m,
        [&](unsigned k) {
            Rational c = zagier_coefficient(k, h.a, h.b) * 2;
            return k % 2 == 1 ? Rational(-c) : c;
        },
        [&](unsigned k) { return pow2_zeta(m - k, ctx); },
        [&](unsigned k) { return static_cast<long>(2 * (m - k) + 3); }, ctx);
}

namespace detail {

// Printed forms:
//   K(a,b) = sum (-1)^{k-1} d_k K(a+b-k+1) zeta(2k+1),  K(n) = pi^{2n} / (2n)!
//   T(a,b) = 2 sum (-1)^{k-1} d_k 2^{-2k} zeta(2k+1) t({2}^{a+b-k+1})
inline EvalResult murakami_K_printed(HoffmanIndex h, const PrecisionContext& ctx)
{
    const unsigned m = h.a + h.b + 1;
    return odd_zeta_combination(
        m,
        [&](unsigned k) {
            Rational d = murakami_coefficient(k, h.a, h.b);
            return k % 2 == 0 ? Rational(-d) : d;
        },
        [&](unsigned k) { return pow(pi(ctx), 2UL * (m - k)) / factorial(2UL * (m - k)); },
        [&](unsigned k) { return static_cast<long>(2 * (m - k) + 3); }, ctx);
}

inline EvalResult murakami_T_printed(HoffmanIndex h, const PrecisionContext& ctx)
{
    const unsigned m = h.a + h.b + 1;
    return odd_zeta_combination(
        m,
        [&](unsigned k) {
            Rational d = murakami_coefficient(k, h.a, h.b) * pow2_rational(1 - 2 * static_cast<std::int64_t>(k));
            d.canonicalize();
            return k % 2 == 0 ? Rational(-d) : d;
        },
        [&](unsigned k) { return pow2_t(m - k, ctx); },
        [&](unsigned k) { return static_cast<long>(2 * (m - k) + 3); }, ctx);
}

} // namespace detail

/// One oracle comparison made while fixing the Murakami normalization.
struct NormalizationCheck {
    HoffmanIndex index;
    double oracle = 0;     // 2^{weight} * mtv_direct
    double oracle_bound = 0;
    double corrected = 0;  // 2^e * printed K
    bool passed = false;
};

struct MurakamiNormalization {
    int exponent = 0;  // Corrected K = 2^exponent * printed K
    std::vector<NormalizationCheck> checks;
    bool validated = false;

    /// Corrected T = 2^{exponent - 2} * printed T, since the printed T form
    /// carries a factor 4 relative to the printed K form.
    int t_exponent() const { return exponent - 2; }
};

/// Fixes the power of two relating the printed Murakami K formula to the
/// definition K(a,b) = 2^{weight} t({2}^a, 3, {2}^b): the unique e in [-4, 4]
/// matching the direct t-sum at (0,0) to 1e-6, then confirmed at (1,0) and
/// (0,1). Computed once per process.
inline const MurakamiNormalization& resolve_murakami_normalization()
{
    static const MurakamiNormalization resolved = [] {
        const PrecisionContext ctx(64);
        constexpr std::uint64_t kTerms = 100'000;
        MurakamiNormalization out;

        auto oracle = [&](HoffmanIndex h) {
            EvalResult t = mtv_direct(h.expand(), kTerms, ctx);
            return EvalResult{ldexp(t.value, h.weight()), ldexp(t.error_bound, h.weight()), t.precision_bits, false};
        };

        const HoffmanIndex origin{0, 0};
        const EvalResult anchor = oracle(origin);
        const EvalResult printed = detail::murakami_K_printed(origin, ctx);
        std::optional<int> found;
        int matches = 0;
        for (int e = -4; e <= 4; ++e) {
            if (abs(ldexp(printed.value, e) - anchor.value) <= BigFloat::parse("1e-6", ctx)) {
                found = e;
                ++matches;
            }
        }
        if (!found || matches != 1) {
            return out;
        }
        out.exponent = *found;

        out.validated = true;
        for (HoffmanIndex h : {origin, HoffmanIndex{1, 0}, HoffmanIndex{0, 1}}) {
            const EvalResult ref = oracle(h);
            const EvalResult raw = detail::murakami_K_printed(h, ctx);
            const BigFloat corrected = ldexp(raw.value, out.exponent);
            const BigFloat allowed = ref.error_bound + ldexp(raw.error_bound, out.exponent) +
                                     abs(ref.value) * BigFloat::parse("1e-6", ctx);
            NormalizationCheck check{h, ref.value.to_double(), ref.error_bound.to_double(), corrected.to_double(),
                                     abs(corrected - ref.value) <= allowed};
            out.validated = out.validated && check.passed;
            out.checks.push_back(check);
        }
        return out;
    }();
    return resolved;
}

namespace detail {

inline int murakami_shift(Normalization normalization, bool t_form)
{
    if (normalization == Normalization::AsPrinted) {
        return 0;
    }
    const MurakamiNormalization& n = resolve_murakami_normalization();
    if (!n.validated) {
        throw std::logic_error("Murakami normalization could not be validated against the direct sums");
    }
    return t_form ? n.t_exponent() : n.exponent;
}

inline EvalResult shift_result(EvalResult r, int e)
{
    return {ldexp(std::move(r.value), e), ldexp(std::move(r.error_bound), e), r.precision_bits, r.heuristic};
}

} // namespace detail

/// K(a,b) = 2^{weight} T(a,b) from the Murakami odd-zeta expansion.
inline EvalResult murakami_K(HoffmanIndex h, const PrecisionContext& ctx, Normalization normalization)
{
    return detail::shift_result(detail::murakami_K_printed(h, ctx), detail::murakami_shift(normalization, false));
}

/// T(a,b) from the Murakami odd-zeta expansion (summed to k = a+b+1).
inline EvalResult murakami_T(HoffmanIndex h, const PrecisionContext& ctx, Normalization normalization)
{
    return detail::shift_result(detail::murakami_T_printed(h, ctx), detail::murakami_shift(normalization, true));
}

/// n-th term zeta(2n) / ((2n+2a+2)(2n+2a+3)...(2n+2a+2b+3) 4^n) of the H series.
inline SeriesTerm lupu_H_term(std::uint64_t n, HoffmanIndex h, const PrecisionContext& ctx)
{
    const Integer denom = rising_product(2 * n + 2 * h.a + 2, 2 * n + 2 * h.a + 2 * h.b + 3);
    BigFloat value = ldexp(zeta_even(n, ctx) / denom, -2 * static_cast<long>(n));
    return {std::move(value), static_cast<long>(2 * n + 5)};
}

/// n-th term zeta(2n) / ((2n+2a+1)(2n+2a+2)...(2n+2a+2b+2) 4^n) of the T series.
inline SeriesTerm lupu_T_term(std::uint64_t n, HoffmanIndex h, const PrecisionContext& ctx)
{
    const Integer denom = rising_product(2 * n + 2 * h.a + 1, 2 * n + 2 * h.a + 2 * h.b + 2);
    BigFloat value = ldexp(zeta_even(n, ctx) / denom, -2 * static_cast<long>(n));
    return {std::move(value), static_cast<long>(2 * n + 5)};
}

/// -4 pi^{2a+2b+2} / (2a+2)!
inline BigFloat lupu_H_prefactor(HoffmanIndex h, const PrecisionContext& ctx)
{
    return pow(pi(ctx), 2UL * (h.a + h.b + 1)) / factorial(2UL * h.a + 2) * -4L;
}

/// -2 (pi/2)^{2a+2b+2} / (2a+1)!
inline BigFloat lupu_T_prefactor(HoffmanIndex h, const PrecisionContext& ctx)
{
    const long e = 2L * (h.a + h.b + 1);
    return ldexp(pow(pi(ctx), static_cast<unsigned long>(e)) / factorial(2UL * h.a + 1), 1 - e) * -1L;
}

namespace detail {

// For n >= 1 successive terms shrink by at least 4 (zeta(2n) decreasing,
// denominators increasing), so the tail from N >= 1 is <= (4/3)|term_N|.
template <typename TermFn>
EvalResult lupu_series(TermFn&& term_fn, const BigFloat& prefactor, long prefactor_ulps, const PrecisionContext& ctx)
{
    std::vector<SeriesTerm> memo;
    auto term = [&](std::size_t n) -> const SeriesTerm& {
        while (memo.size() <= n) {
            memo.push_back(term_fn(memo.size()));
        }
        return memo[n];
    };
    auto tail = [&](std::size_t n) {
        BigFloat t = abs(term(std::max<std::size_t>(n, 1)).value) * 4L / 3L;
        return n == 0 ? t + abs(term(0).value) : t;
    };
    const BigFloat target = ldexp(BigFloat(1L, ctx), -(ctx.precision_bits() + 2)) / abs(prefactor);
    EvalResult series = sum_with_tail([&](std::size_t n) { return term(n); }, tail, target, ctx);
    return scale_result(std::move(series), prefactor, prefactor_ulps, ctx);
}

} // namespace detail

/// H(a,b) = -4 pi^{2a+2b+2} / (2a+2)! * sum_{n>=0} zeta(2n) / ((2n+2a+2)...(2n+2a+2b+3) 4^n).
inline EvalResult lupu_H(HoffmanIndex h, const PrecisionContext& ctx)
{
    return detail::lupu_series([&](std::size_t n) { return lupu_H_term(n, h, ctx); }, lupu_H_prefactor(h, ctx),
                               static_cast<long>(2 * (h.a + h.b + 1) + 3), ctx);
}

/// T(a,b) = -2 / (2a+1)! (pi/2)^{2a+2b+2} * sum_{n>=0} zeta(2n) / ((2n+2a+1)...(2n+2a+2b+2) 4^n).
inline EvalResult lupu_T(HoffmanIndex h, const PrecisionContext& ctx)
{
    return detail::lupu_series([&](std::size_t n) { return lupu_T_term(n, h, ctx); }, lupu_T_prefactor(h, ctx),
                               static_cast<long>(2 * (h.a + h.b + 1) + 3), ctx);
}

} // namespace mzv
