#pragma once

// Exact integer and rational arithmetic at integer arguments: factorials,
// binomials, Bernoulli numbers, zeta(2n)/pi^{2n} and the Beta function.
//
// Integers and rationals are GMP's mpz_class / mpq_class. Every value
// returned here is canonical (gcd(num, den) = 1, den > 0).

#include <gmpxx.h>

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace mzv {

using Integer = mpz_class;
using Rational = mpq_class;

namespace detail {

// Append-only memo table guarded by a mutex. Entries are never mutated once
// pushed, so handing out copies under the lock is sufficient.
template <typename T>
class MemoTable {
public:
    template <typename Fill>
    T get(std::size_t index, Fill&& fill)
    {
        std::lock_guard<std::mutex> lock(mutex_);
        while (values_.size() <= index) {
            values_.push_back(fill(values_, values_.size()));
        }
        return values_[index];
    }

private:
    std::mutex mutex_;
    std::vector<T> values_;
};

inline Rational canonical(Rational q)
{
    q.canonicalize();
    return q;
}

} // namespace detail

/// n! for n >= 0.
inline Integer factorial(std::uint64_t n)
{
    static detail::MemoTable<Integer> table;
    return table.get(n, [](const std::vector<Integer>& done, std::size_t i) {
        return i == 0 ? Integer(1) : Integer(done[i - 1] * static_cast<unsigned long>(i));
    });
}

/// C(n, k); zero outside 0 <= k <= n.
inline Integer binomial(std::int64_t n, std::int64_t k)
{
    if (n < 0) {
        throw std::domain_error("binomial: n must be nonnegative");
    }
    if (k < 0 || k > n) {
        return 0;
    }
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

/// Bernoulli number B_m with B_1 = -1/2, from
/// sum_{j=0}^{m} C(m+1, j) B_j = 0 (m >= 1). Cached.
inline Rational bernoulli(std::uint64_t m)
{
    static detail::MemoTable<Rational> table;
    return table.get(m, [](const std::vector<Rational>& done, std::size_t i) {
        if (i == 0) {
            return Rational(1);
        }
        if (i > 1 && i % 2 == 1) {
            return Rational(0);
        }
        Rational acc = 0;
        for (std::size_t j = 0; j < i; ++j) {
            if (sgn(done[j]) != 0) {
                acc += Rational(binomial(static_cast<std::int64_t>(i + 1), static_cast<std::int64_t>(j))) * done[j];
            }
        }
        return detail::canonical(-acc / Rational(static_cast<unsigned long>(i + 1)));
    });
}

/// r_n with zeta(2n) = r_n * pi^{2n}. r_0 = -1/2, so that the constant term
/// of x*cot(x) = -2 sum_n r_n x^{2n} is 1.
inline Rational even_zeta_coeff(std::uint64_t n)
{
    if (n == 0) {
        return Rational(Integer(-1), Integer(2));
    }
    // (-1)^{n+1} B_{2n} 2^{2n-1} / (2n)!
    Rational num = bernoulli(2 * n);
    Integer pow2 = 1;
    pow2 <<= static_cast<mp_bitcnt_t>(2 * n - 1);
    Rational out = num * Rational(pow2) / Rational(factorial(2 * n));
    if (n % 2 == 0) {
        out = -out;
    }
    return detail::canonical(out);
}

/// B(r, s) = (r-1)! (s-1)! / (r+s-1)! for positive integers r, s.
inline Rational beta_pos_int(std::int64_t r, std::int64_t s)
{
    if (r <= 0 || s <= 0) {
        throw std::domain_error("beta_pos_int: arguments must be positive integers");
    }
    const auto ur = static_cast<std::uint64_t>(r);
    const auto us = static_cast<std::uint64_t>(s);
    return detail::canonical(Rational(factorial(ur - 1) * factorial(us - 1), factorial(ur + us - 1)));
}

/// Product of the consecutive integers lo, lo+1, ..., hi (empty product = 1).
inline Integer rising_product(std::uint64_t lo, std::uint64_t hi)
{
    Integer out = 1;
    for (std::uint64_t j = lo; j <= hi; ++j) {
        out *= static_cast<unsigned long>(j);
    }
    return out;
}

/// 2^e as an exact rational, e of either sign.
inline Rational pow2_rational(std::int64_t e)
{
    Integer p = 1;
    p <<= static_cast<mp_bitcnt_t>(e < 0 ? -e : e);
    return e < 0 ? Rational(Integer(1), p) : Rational(p);
}

} // namespace mzv
