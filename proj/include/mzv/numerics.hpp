#pragma once

// Constants and single zeta values at integer arguments, plus a generic
// series summation driver that carries a proven error bound.

#include "mzv/bigfloat.hpp"
#include "mzv/exact.hpp"

#include <cstddef>
#include <map>
#include <mutex>
#include <type_traits>
#include <vector>

namespace mzv {

/// pi rounded to the working precision of `ctx`.
inline BigFloat pi(const PrecisionContext& ctx)
{
    BigFloat out(0L, ctx);
    mpfr_const_pi(out.get(), MPFR_RNDN);
    return out;
}

/// zeta(2n) = even_zeta_coeff(n) * pi^{2n}; zeta(0) = -1/2.
/// Relative error at most (2n + 3) units of roundoff.
inline BigFloat zeta_even(std::uint64_t n, const PrecisionContext& ctx)
{
    BigFloat out(even_zeta_coeff(n), ctx);
    if (n > 0) {
        out *= pow(pi(ctx), 2 * n);
    }
    return out;
}

namespace detail {

// Borwein's weights (d_n - d_k) / d_n for the accelerated eta series, k < n.
inline std::vector<Rational> borwein_weights(std::size_t n)
{
    static std::mutex mutex;
    static std::map<std::size_t, std::vector<Rational>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) {
        return it->second;
    }

    // d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    std::vector<Rational> d(n + 1);
    Rational acc = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        Integer four_i = 1;
        four_i <<= static_cast<mp_bitcnt_t>(2 * i);
        Rational term(factorial(n + i - 1) * four_i, factorial(n - i) * factorial(2 * i));
        term.canonicalize();
        acc += term;
        d[i] = acc * Rational(static_cast<unsigned long>(n));
    }
    std::vector<Rational> weights(n);
    for (std::size_t k = 0; k < n; ++k) {
        weights[k] = (d[n] - d[k]) / d[n];
        weights[k].canonicalize();
    }
    return cache.emplace(n, std::move(weights)).first->second;
}

} // namespace detail

/// zeta(2k + 1), k >= 1, by the Borwein-accelerated alternating series
///
///   zeta(s) = 1 / (1 - 2^{1-s}) * sum_{j<n} (-1)^j w_j / (j+1)^s + g_n,
///   |g_n| <= 3 / ((3 + sqrt 8)^n (1 - 2^{1-s})).
///
/// The returned bound is below 2^{-precision_bits}.
inline EvalResult zeta_odd(std::uint64_t k, const PrecisionContext& ctx)
{
    if (k < 1) {
        throw DomainError("zeta_odd: k must be >= 1");
    }
    const unsigned long s = 2 * k + 1;
    // log2(3 + sqrt 8) = 2.5431...; 2.54 errs on the side of more terms.
    const auto n = static_cast<std::size_t>(std::ceil((ctx.precision_bits() + 4) / 2.54)) + 1;
    const auto weights = detail::borwein_weights(n);

    BigFloat sum(0L, ctx);
    BigFloat power(0L, ctx);
    for (std::size_t j = 0; j < n; ++j) {
        mpfr_ui_pow_ui(power.get(), j + 1, s, MPFR_RNDN);
        BigFloat term = BigFloat(weights[j], ctx) / power;
        if (j % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    // 1 - 2^{1-s} is exact at the working precision.
    const BigFloat eta_factor = BigFloat(1L, ctx) - pow2(1 - static_cast<long>(s), ctx);
    BigFloat value = sum / eta_factor;

    const BigFloat u = unit_roundoff(ctx);
    // |partial sums| <= zeta(3) < 1.21, 4 roundings per term, one division.
    BigFloat rounding = u * static_cast<long>(8 * (n + 1));
    BigFloat truncation = BigFloat(3L, ctx) / (pow(BigFloat::from_double(5.828, ctx), n) * eta_factor);
    return {std::move(value), truncation + rounding, ctx.precision_bits(), false};
}

/// A series term with its own relative error, in units of roundoff.
struct SeriesTerm {
    BigFloat value;
    long rel_error_ulps = 0;
};

struct SeriesOptions {
    std::size_t max_terms = 10'000'000;
};

/// Sums term(0) + term(1) + ... until tail_bound_after(N), an upper bound on
/// sum_{n >= N} |term(n)|, drops to `target`. The bound returned is that tail
/// plus the accumulated rounding (additions and per-term errors).
///
/// `term` returns a BigFloat or a SeriesTerm.
template <typename Term, typename TailBound>
EvalResult sum_with_tail(Term&& term, TailBound&& tail_bound_after, const BigFloat& target,
                         const PrecisionContext& ctx, SeriesOptions options = {})
{
    const BigFloat u = unit_roundoff(ctx);
    BigFloat sum(0L, ctx);
    BigFloat rounding(0L, ctx);
    std::size_t count = 0;
    BigFloat tail = tail_bound_after(count);
    while (tail > target) {
        if (count >= options.max_terms) {
            throw NonConvergence("sum_with_tail: tail bound still above target after " +
                                 std::to_string(count) + " terms");
        }
        using Result = std::decay_t<decltype(term(count))>;
        if constexpr (std::is_same_v<Result, SeriesTerm>) {
            SeriesTerm t = term(count);
            if (t.rel_error_ulps != 0) {
                rounding += abs(t.value) * u * t.rel_error_ulps;
            }
            sum += t.value;
        } else {
            sum += term(count);
        }
        rounding += abs(sum) * u;
        ++count;
        tail = tail_bound_after(count);
    }
    return {std::move(sum), tail + rounding, ctx.precision_bits(), false};
}

/// Truncation of x cot x = -2 sum_{n>=0} zeta(2n) (x/pi)^{2n} = -2 sum_{n>=0} r_n x^{2n}
/// after n = N.
inline BigFloat xcot_series(const BigFloat& x, std::size_t terms, const PrecisionContext& ctx)
{
    if (x.sign() < 0 || x >= pi(ctx)) {
        throw DomainError("cot series: requires 0 <= x < pi");
    }
    const BigFloat x_sq = pow(x, 2);
    BigFloat power(1L, ctx);
    BigFloat acc(0L, ctx);
    for (std::size_t n = 0; n <= terms; ++n) {
        acc += power * even_zeta_coeff(n);
        power *= x_sq;
    }
    return acc * -2L;
}

/// cot(x) from the truncated series, for 0 < x < pi; at x = 0 returns the
/// limit of x cot x, which is 1.
inline BigFloat cot_series_eval(const BigFloat& x, std::size_t terms, const PrecisionContext& ctx)
{
    BigFloat xcot = xcot_series(x, terms, ctx);
    if (x.is_zero()) {
        return xcot;
    }
    return xcot / x;
}

} // namespace mzv
