#pragma once

// Arbitrary-precision binary floating point on top of MPFR.
//
// A PrecisionContext fixes the reporting precision and the guard bits; every
// BigFloat built under it carries precision_bits + guard_bits of mantissa and
// every operation rounds to nearest at that width.

#include "mzv/exact.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

namespace mzv {

class PrecisionContext {
public:
    static constexpr long kDefaultGuardBits = 32;

    explicit PrecisionContext(long precision_bits, long guard_bits = kDefaultGuardBits)
        : precision_bits_(precision_bits), guard_bits_(guard_bits)
    {
        if (precision_bits < 64) {
            throw std::invalid_argument("PrecisionContext: precision_bits must be >= 64");
        }
        if (guard_bits < 16) {
            throw std::invalid_argument("PrecisionContext: guard_bits must be >= 16");
        }
    }

    long precision_bits() const { return precision_bits_; }
    long guard_bits() const { return guard_bits_; }
    long working_bits() const { return precision_bits_ + guard_bits_; }

    /// Same guard bits, different precision.
    PrecisionContext with_precision(long bits) const { return PrecisionContext(bits, guard_bits_); }

    friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

private:
    long precision_bits_;
    long guard_bits_;
};

class BigFloat {
public:
    BigFloat() : BigFloat(0L, MPFR_PREC_MIN) { }

    BigFloat(long v, mpfr_prec_t prec)
    {
        mpfr_init2(value_, prec);
        mpfr_set_si(value_, v, MPFR_RNDN);
    }

    BigFloat(long v, const PrecisionContext& ctx) : BigFloat(v, ctx.working_bits()) { }

    BigFloat(const Rational& q, const PrecisionContext& ctx)
    {
        mpfr_init2(value_, ctx.working_bits());
        mpfr_set_q(value_, q.get_mpq_t(), MPFR_RNDN);
    }

    BigFloat(const Integer& z, const PrecisionContext& ctx)
    {
        mpfr_init2(value_, ctx.working_bits());
        mpfr_set_z(value_, z.get_mpz_t(), MPFR_RNDN);
    }

    /// Parses a decimal string, e.g. "1.25e-3".
    static BigFloat parse(const std::string& text, const PrecisionContext& ctx)
    {
        BigFloat out(0L, ctx);
        if (mpfr_set_str(out.value_, text.c_str(), 10, MPFR_RNDN) != 0) {
            throw std::invalid_argument("BigFloat: cannot parse '" + text + "'");
        }
        return out;
    }

    static BigFloat from_double(double v, const PrecisionContext& ctx)
    {
        BigFloat out(0L, ctx);
        mpfr_set_d(out.value_, v, MPFR_RNDN);
        return out;
    }

    BigFloat(const BigFloat& other)
    {
        mpfr_init2(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }

    BigFloat(BigFloat&& other) noexcept
    {
        mpfr_init2(value_, MPFR_PREC_MIN);
        mpfr_swap(value_, other.value_);
    }

    BigFloat& operator=(const BigFloat& other)
    {
        if (this != &other) {
            mpfr_set_prec(value_, mpfr_get_prec(other.value_));
            mpfr_set(value_, other.value_, MPFR_RNDN);
        }
        return *this;
    }

    BigFloat& operator=(BigFloat&& other) noexcept
    {
        mpfr_swap(value_, other.value_);
        return *this;
    }

    ~BigFloat() { mpfr_clear(value_); }

    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
    mpfr_srcptr get() const { return value_; }
    mpfr_ptr get() { return value_; }

    int sign() const { return mpfr_sgn(value_); }
    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    bool is_finite() const { return mpfr_number_p(value_) != 0; }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

    /// Binary exponent e with 0.5 <= |x| / 2^e < 1; undefined for zero.
    long exponent() const { return mpfr_get_exp(value_); }

    /// Fixed-point decimal with exactly `digits` fractional digits,
    /// correctly rounded.
    std::string to_fixed(int digits) const
    {
        char* raw = nullptr;
        if (mpfr_asprintf(&raw, "%.*RNf", digits, value_) < 0) {
            throw std::runtime_error("BigFloat: formatting failed");
        }
        std::unique_ptr<char, void (*)(char*)> guard(raw, mpfr_free_str);
        return std::string(raw);
    }

    /// Scientific notation with `digits` significant digits.
    std::string to_scientific(int digits) const
    {
        char* raw = nullptr;
        if (mpfr_asprintf(&raw, "%.*RNe", std::max(digits - 1, 0), value_) < 0) {
            throw std::runtime_error("BigFloat: formatting failed");
        }
        std::unique_ptr<char, void (*)(char*)> guard(raw, mpfr_free_str);
        return std::string(raw);
    }

    BigFloat operator-() const
    {
        BigFloat out(*this);
        mpfr_neg(out.value_, out.value_, MPFR_RNDN);
        return out;
    }

    BigFloat& operator+=(const BigFloat& rhs) { return apply(rhs, mpfr_add); }
    BigFloat& operator-=(const BigFloat& rhs) { return apply(rhs, mpfr_sub); }
    BigFloat& operator*=(const BigFloat& rhs) { return apply(rhs, mpfr_mul); }
    BigFloat& operator/=(const BigFloat& rhs) { return apply(rhs, mpfr_div); }

    BigFloat& operator*=(long rhs)
    {
        mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator/=(long rhs)
    {
        mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator+=(long rhs)
    {
        mpfr_add_si(value_, value_, rhs, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator-=(long rhs)
    {
        mpfr_sub_si(value_, value_, rhs, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator*=(const Rational& rhs)
    {
        mpfr_mul_q(value_, value_, rhs.get_mpq_t(), MPFR_RNDN);
        return *this;
    }
    BigFloat& operator/=(const Integer& rhs)
    {
        mpfr_div_z(value_, value_, rhs.get_mpz_t(), MPFR_RNDN);
        return *this;
    }

    friend BigFloat operator+(BigFloat lhs, const BigFloat& rhs) { return lhs += rhs; }
    friend BigFloat operator-(BigFloat lhs, const BigFloat& rhs) { return lhs -= rhs; }
    friend BigFloat operator*(BigFloat lhs, const BigFloat& rhs) { return lhs *= rhs; }
    friend BigFloat operator/(BigFloat lhs, const BigFloat& rhs) { return lhs /= rhs; }
    friend BigFloat operator*(BigFloat lhs, long rhs) { return lhs *= rhs; }
    friend BigFloat operator/(BigFloat lhs, long rhs) { return lhs /= rhs; }
    friend BigFloat operator+(BigFloat lhs, long rhs) { return lhs += rhs; }
    friend BigFloat operator-(BigFloat lhs, long rhs) { return lhs -= rhs; }
    friend BigFloat operator*(BigFloat lhs, const Rational& rhs) { return lhs *= rhs; }
    friend BigFloat operator/(BigFloat lhs, const Integer& rhs) { return lhs /= rhs; }

    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return b <= a; }

    friend BigFloat abs(BigFloat x)
    {
        mpfr_abs(x.value_, x.value_, MPFR_RNDN);
        return x;
    }

    friend BigFloat pow(BigFloat x, unsigned long n)
    {
        mpfr_pow_ui(x.value_, x.value_, n, MPFR_RNDN);
        return x;
    }

    /// x * 2^e, exact.
    friend BigFloat ldexp(BigFloat x, long e)
    {
        mpfr_mul_2si(x.value_, x.value_, e, MPFR_RNDN);
        return x;
    }

    friend BigFloat sqrt(BigFloat x)
    {
        mpfr_sqrt(x.value_, x.value_, MPFR_RNDN);
        return x;
    }

    friend BigFloat sin(BigFloat x)
    {
        mpfr_sin(x.value_, x.value_, MPFR_RNDN);
        return x;
    }

    friend BigFloat cos(BigFloat x)
    {
        mpfr_cos(x.value_, x.value_, MPFR_RNDN);
        return x;
    }

    friend BigFloat cot(BigFloat x)
    {
        mpfr_cot(x.value_, x.value_, MPFR_RNDN);
        return x;
    }

    friend BigFloat log(BigFloat x)
    {
        mpfr_log(x.value_, x.value_, MPFR_RNDN);
        return x;
    }

    friend BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

private:
    template <typename Op>
    BigFloat& apply(const BigFloat& rhs, Op op)
    {
        if (mpfr_get_prec(rhs.value_) > mpfr_get_prec(value_)) {
            mpfr_prec_round(value_, mpfr_get_prec(rhs.value_), MPFR_RNDN);
        }
        op(value_, value_, rhs.value_, MPFR_RNDN);
        return *this;
    }

    mpfr_t value_;
};

/// 2^e as a BigFloat (exact).
inline BigFloat pow2(long e, const PrecisionContext& ctx) { return ldexp(BigFloat(1L, ctx), e); }

/// Relative rounding unit at the working precision: 2^{1 - working_bits}.
inline BigFloat unit_roundoff(const PrecisionContext& ctx) { return pow2(1 - ctx.working_bits(), ctx); }

/// A value together with an upper bound on |value - true value|.
///
/// `heuristic` marks bounds that are empirical estimates (quadrature) rather
/// than proven.
struct EvalResult {
    BigFloat value;
    BigFloat error_bound;
    long precision_bits = 0;
    bool heuristic = false;
};

class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace mzv
