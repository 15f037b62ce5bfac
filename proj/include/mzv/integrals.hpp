#pragma once

// Integral representations of H(a,b) and T(a,b) over [0, pi/2] and the
// Beta-moment closed forms that reduce them to the even-zeta series.

#include "mzv/bigfloat.hpp"
#include "mzv/direct.hpp"
#include "mzv/exact.hpp"
#include "mzv/numerics.hpp"
#include "mzv/quadrature.hpp"

#include <cstdint>
#include <string>

namespace mzv {

enum class SeriesKind { H, T };

inline std::string to_string(SeriesKind kind) { return kind == SeriesKind::H ? "H" : "T"; }

/// How cot(x) enters the integrand: as x^{p+1} cot(x) (Raw) or as
/// x^p (x cot x) with x cot x -> 1 at the origin (Regularized).
enum class IntegrandForm { Regularized, Raw };

/// f_H(x) = x^{2a+1} (1 - 2x/pi)^{2b+1} (x cot x)
/// f_T(x) = x^{2a}   (1 - 2x/pi)^{2b+1} (x cot x)
struct IntegrandSpec {
    SeriesKind kind = SeriesKind::H;
    unsigned a = 0;
    unsigned b = 0;

    unsigned x_power() const { return kind == SeriesKind::H ? 2 * a + 1 : 2 * a; }

    BigFloat operator()(const BigFloat& x, const PrecisionContext& ctx,
                        IntegrandForm form = IntegrandForm::Regularized) const
    {
        const BigFloat pi_value = pi(ctx);
        const BigFloat damp = pow(BigFloat(1L, ctx) - ldexp(x, 1) / pi_value, 2UL * b + 1);
        if (form == IntegrandForm::Raw) {
            return pow(x, x_power() + 1) * cot(x) * damp;
        }
        BigFloat xcot = x.is_zero() ? BigFloat(1L, ctx) : x * cot(x);
        return pow(x, x_power()) * xcot * damp;
    }
};

namespace detail {

inline EvalResult integrate_representation(const IntegrandSpec& spec, const BigFloat& prefactor,
                                           const PrecisionContext& ctx, QuadratureOptions options)
{
    const BigFloat lo(0L, ctx);
    const BigFloat hi = ldexp(pi(ctx), -1);
    const BigFloat target = pow2(-ctx.precision_bits(), ctx) / abs(prefactor);
    EvalResult integral = integrate([&](const BigFloat& x) { return spec(x, ctx); }, lo, hi, target, ctx, options);
    BigFloat value = integral.value * prefactor;
    // prefactor carries at most weight + 4 roundings.
    BigFloat bound = abs(prefactor) * integral.error_bound +
                     abs(value) * unit_roundoff(ctx) * static_cast<long>(2 * (spec.a + spec.b) + 8);
    return {std::move(value), std::move(bound), ctx.precision_bits(), true};
}

} // namespace detail

/// H(a,b) = pi^{2b} 2^{2a+3} / ((2a+2)! (2b+1)!) * int_0^{pi/2} x^{2a+2} (1 - 2x/pi)^{2b+1} cot x dx.
inline EvalResult llo_integral_H(HoffmanIndex h, const PrecisionContext& ctx, QuadratureOptions options = {})
{
    const BigFloat prefactor =
        ldexp(pow(pi(ctx), 2UL * h.b), 2L * h.a + 3) / (factorial(2UL * h.a + 2) * factorial(2UL * h.b + 1));
    return detail::integrate_representation({SeriesKind::H, h.a, h.b}, prefactor, ctx, options);
}

/// T(a,b) = pi^{2b+1} / (2^{2b+1} (2a+1)! (2b+1)!) * int_0^{pi/2} x^{2a+1} (1 - 2x/pi)^{2b+1} cot x dx.
inline EvalResult llo_integral_T(HoffmanIndex h, const PrecisionContext& ctx, QuadratureOptions options = {})
{
    const BigFloat prefactor =
        ldexp(pow(pi(ctx), 2UL * h.b + 1), -(2L * h.b + 1)) / (factorial(2UL * h.a + 1) * factorial(2UL * h.b + 1));
    return detail::integrate_representation({SeriesKind::T, h.a, h.b}, prefactor, ctx, options);
}

/// int_0^{pi/2} x^{2n+2a+1} (1 - 2x/pi)^{2b+1} dx
///   = (pi/2)^{2n+2a+2} B(2n+2a+2, 2b+2).
inline BigFloat beta_moment_H(std::uint64_t n, std::uint64_t a, std::uint64_t b, const PrecisionContext& ctx)
{
    const auto p = static_cast<std::int64_t>(2 * n + 2 * a + 2);
    const BigFloat scale = pow(ldexp(pi(ctx), -1), static_cast<unsigned long>(p));
    return scale * beta_pos_int(p, static_cast<std::int64_t>(2 * b + 2));
}

/// int_0^{pi/2} x^{2n+2a} (1 - 2x/pi)^{2b+1} dx
///   = (pi/2)^{2n+2a+1} B(2n+2a+1, 2b+2).
inline BigFloat beta_moment_T(std::uint64_t n, std::uint64_t a, std::uint64_t b, const PrecisionContext& ctx)
{
    const auto p = static_cast<std::int64_t>(2 * n + 2 * a + 1);
    const BigFloat scale = pow(ldexp(pi(ctx), -1), static_cast<unsigned long>(p));
    return scale * beta_pos_int(p, static_cast<std::int64_t>(2 * b + 2));
}

} // namespace mzv
