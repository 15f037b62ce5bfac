#pragma once

// Multiple zeta and multiple t-values summed straight from their defining
// nested series, plus the closed forms for the all-twos indices.

#include "mzv/bigfloat.hpp"
#include "mzv/exact.hpp"
#include "mzv/numerics.hpp"

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace mzv {

class InadmissibleIndex : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A composition (s_1, ..., s_r) of positive integers.
class MultiIndex {
public:
    MultiIndex() = default;

    explicit MultiIndex(std::vector<unsigned> entries) : entries_(std::move(entries))
    {
        for (unsigned s : entries_) {
            if (s == 0) {
                throw std::invalid_argument("MultiIndex: entries must be positive");
            }
        }
    }

    MultiIndex(std::initializer_list<unsigned> entries) : MultiIndex(std::vector<unsigned>(entries)) { }

    const std::vector<unsigned>& entries() const { return entries_; }
    std::size_t depth() const { return entries_.size(); }
    unsigned weight() const { return std::accumulate(entries_.begin(), entries_.end(), 0U); }
    bool empty() const { return entries_.empty(); }

    /// Last entry > 1, which makes the zeta series converge.
    bool zeta_admissible() const { return !entries_.empty() && entries_.back() > 1; }

    std::string to_string() const
    {
        std::string out = "(";
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            out += (i ? "," : "") + std::to_string(entries_[i]);
        }
        return out + ")";
    }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
    std::vector<unsigned> entries_;
};

/// ({2}^a, 3, {2}^b).
struct HoffmanIndex {
    unsigned a = 0;
    unsigned b = 0;

    unsigned weight() const { return 2 * a + 2 * b + 3; }
    unsigned depth() const { return a + b + 1; }

    MultiIndex expand() const
    {
        std::vector<unsigned> entries(a, 2U);
        entries.push_back(3U);
        entries.insert(entries.end(), b, 2U);
        return MultiIndex(std::move(entries));
    }

    friend bool operator==(const HoffmanIndex&, const HoffmanIndex&) = default;
    friend auto operator<=>(const HoffmanIndex&, const HoffmanIndex&) = default;
};

/// The all-twos index {2}^d.
inline MultiIndex twos(unsigned d) { return MultiIndex(std::vector<unsigned>(d, 2U)); }

namespace detail {

// Upper bound on sum_{K > N} (1 + ln K)^u K^{-s}, s >= 2, via the integral
//   N^{1-s} u! / (s-1)^{u+1} * sum_{j<=u} ((s-1)(1 + ln N))^j / j!,
// valid once the summand is decreasing past N, i.e. 1 + ln N >= u / s.
inline BigFloat log_power_tail(unsigned unit_entries, unsigned s, std::uint64_t n_max, const PrecisionContext& ctx)
{
    const auto N = static_cast<long>(n_max);
    const long sm1 = static_cast<long>(s) - 1;
    BigFloat lead = BigFloat(1L, ctx) / pow(BigFloat(N, ctx), s - 1) / sm1;
    if (unit_entries == 0) {
        return lead;
    }
    const BigFloat y = (log(BigFloat(N, ctx)) + 1L) * sm1;
    if (y < BigFloat(static_cast<long>(unit_entries) * sm1, ctx) / static_cast<long>(s)) {
        throw std::invalid_argument("direct sum: N too small for the unit-entry tail bound");
    }
    BigFloat series(0L, ctx);
    BigFloat power(1L, ctx);
    for (unsigned j = 0; j <= unit_entries; ++j) {
        series += power / factorial(j);
        power *= y;
    }
    BigFloat out = lead * series * BigFloat(factorial(unit_entries), ctx);
    for (unsigned j = 0; j < unit_entries; ++j) {
        out /= sm1;
    }
    return out;
}

// Bound on an inner depth-one sum sum_{k < K} f(k)^{-s} with f(k) >= k.
// Unit entries are handled by log_power_tail; entries >= 2 by zeta(s) <= 1 + 1/(s-1),
// tightened to 1.645 > zeta(2) for s = 2.
inline BigFloat inner_sum_bound(unsigned s, const PrecisionContext& ctx)
{
    if (s == 2) {
        return BigFloat::parse("1.645", ctx);
    }
    return BigFloat(1L, ctx) + BigFloat(1L, ctx) / static_cast<long>(s - 1);
}

// Shared driver: sum over 1 <= k_1 < ... < k_r <= N of prod f(k_i)^{-s_i} with
// f(k) = stride*k - offset, by prefix sums over the depth.
inline EvalResult nested_sum(const MultiIndex& index, std::uint64_t n_max, unsigned long stride, long offset,
                             const PrecisionContext& ctx)
{
    const auto& s = index.entries();
    const std::size_t r = s.size();
    if (n_max < r) {
        throw std::invalid_argument("direct sum: N must be >= depth");
    }

    // prefix[j] = sum over k_1 < ... < k_j <= k of the first j factors.
    std::vector<BigFloat> prefix(r + 1, BigFloat(0L, ctx));
    prefix[0] = BigFloat(1L, ctx);
    BigFloat power(0L, ctx);
    for (std::uint64_t k = 1; k <= n_max; ++k) {
        const unsigned long base = stride * k - static_cast<unsigned long>(offset);
        // Walk depths downwards so prefix[j-1] still refers to k-1.
        for (std::size_t j = std::min<std::size_t>(r, k); j >= 1; --j) {
            mpfr_ui_pow_ui(power.get(), base, s[j - 1], MPFR_RNDN);
            prefix[j] += prefix[j - 1] / power;
        }
    }

    // Truncation: only terms with k_r > N are omitted.
    unsigned unit_entries = 0;
    BigFloat inner(1L, ctx);
    for (std::size_t i = 0; i + 1 < r; ++i) {
        if (s[i] == 1) {
            ++unit_entries;
        } else {
            inner *= inner_sum_bound(s[i], ctx);
        }
    }
    BigFloat truncation = inner * log_power_tail(unit_entries, s.back(), n_max, ctx);

    // Rounding: every partial sum is bounded by M = prod of inner bounds
    // (with 1 + ln N for unit entries); each depth adds (N + 4) u M on top of
    // the propagated error of the depth below, amplified by at most M.
    BigFloat magnitude(1L, ctx);
    for (unsigned e : s) {
        magnitude *= e == 1 ? log(BigFloat(static_cast<long>(n_max), ctx)) + 1L : inner_sum_bound(e, ctx);
    }
    BigFloat rounding = unit_roundoff(ctx) * magnitude * magnitude *
                        static_cast<long>(r * (n_max + 4));

    return {prefix[r], truncation + rounding, ctx.precision_bits(), false};
}

} // namespace detail

/// zeta(s_1, ..., s_r) truncated at k_r <= N, with a proven bound.
inline EvalResult mzv_direct(const MultiIndex& index, std::uint64_t n_max, const PrecisionContext& ctx)
{
    if (!index.zeta_admissible()) {
        throw InadmissibleIndex("mzv_direct: last entry must exceed 1 in " + index.to_string());
    }
    return detail::nested_sum(index, n_max, 1, 0, ctx);
}

/// t(s_1, ..., s_r) truncated at k_r <= N, with a proven bound; t() = 1.
inline EvalResult mtv_direct(const MultiIndex& index, std::uint64_t n_max, const PrecisionContext& ctx)
{
    if (index.empty()) {
        return {BigFloat(1L, ctx), BigFloat(0L, ctx), ctx.precision_bits(), false};
    }
    if (!index.zeta_admissible()) {
        throw InadmissibleIndex("mtv_direct: last entry must exceed 1 in " + index.to_string());
    }
    // 2k - 1 >= k, so the zeta-style bounds apply verbatim.
    return detail::nested_sum(index, n_max, 2, 1, ctx);
}

/// zeta({2}^d) = pi^{2d} / (2d+1)!.
inline BigFloat pow2_zeta(unsigned d, const PrecisionContext& ctx)
{
    return pow(pi(ctx), 2UL * d) / factorial(2UL * d + 1);
}

/// t({2}^n) = pi^{2n} / (4^n (2n)!).
inline BigFloat pow2_t(unsigned n, const PrecisionContext& ctx)
{
    return ldexp(pow(pi(ctx), 2UL * n) / factorial(2UL * n), -2L * n);
}

} // namespace mzv
