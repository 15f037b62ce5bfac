#pragma once

// Uniform entry point over the independent evaluation routes.

#include "mzv/closed_forms.hpp"
#include "mzv/direct.hpp"
#include "mzv/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mzv {

enum class Route { Direct, Zagier, Murakami, Lupu, Integral };

/// A route plus, for Murakami, the normalization it runs under.
struct RouteSpec {
    Route route = Route::Lupu;
    Normalization normalization = Normalization::Corrected;

    /// "direct", "zagier", "lupu", "integral", "murakami:corrected", "murakami:as-printed".
    std::string name() const
    {
        switch (route) {
        case Route::Direct:
            return "direct";
        case Route::Zagier:
            return "zagier";
        case Route::Murakami:
            return "murakami:" + to_string(normalization);
        case Route::Lupu:
            return "lupu";
        case Route::Integral:
            return "integral";
        }
        return "?";
    }

    /// Zagier only evaluates H; Murakami only T.
    bool supports(SeriesKind kind) const
    {
        if (route == Route::Zagier) {
            return kind == SeriesKind::H;
        }
        if (route == Route::Murakami) {
            return kind == SeriesKind::T;
        }
        return true;
    }

    friend bool operator==(const RouteSpec&, const RouteSpec&) = default;
};

/// Accepts the names produced by RouteSpec::name(); bare "murakami" means
/// `fallback` normalization.
inline RouteSpec parse_route(const std::string& text, Normalization fallback = Normalization::Corrected)
{
    if (text == "direct") {
        return {Route::Direct, fallback};
    }
    if (text == "zagier") {
        return {Route::Zagier, fallback};
    }
    if (text == "lupu") {
        return {Route::Lupu, fallback};
    }
    if (text == "integral") {
        return {Route::Integral, fallback};
    }
    if (text == "murakami") {
        return {Route::Murakami, fallback};
    }
    if (text.rfind("murakami:", 0) == 0) {
        return {Route::Murakami, parse_normalization(text.substr(9))};
    }
    throw std::invalid_argument("unknown route '" + text + "'");
}

inline SeriesKind parse_kind(const std::string& text)
{
    if (text == "h" || text == "H") {
        return SeriesKind::H;
    }
    if (text == "t" || text == "T") {
        return SeriesKind::T;
    }
    throw std::invalid_argument("unknown kind '" + text + "'");
}

struct RouteOptions {
    std::uint64_t direct_terms = 100'000;
    /// Precision used by the direct route; its truncation bound dominates
    /// long before 64 bits run out.
    long direct_precision_bits = 64;
    QuadratureOptions quadrature;
};

/// H(a,b) or T(a,b) by the chosen route.
inline EvalResult evaluate(RouteSpec spec, SeriesKind kind, HoffmanIndex h, const PrecisionContext& ctx,
                           const RouteOptions& options = {})
{
    if (!spec.supports(kind)) {
        throw std::invalid_argument("route " + spec.name() + " does not evaluate " + to_string(kind));
    }
    switch (spec.route) {
    case Route::Direct: {
        const PrecisionContext low = ctx.with_precision(options.direct_precision_bits);
        return kind == SeriesKind::H ? mzv_direct(h.expand(), options.direct_terms, low)
                                     : mtv_direct(h.expand(), options.direct_terms, low);
    }
    case Route::Zagier:
        return zagier_H(h, ctx);
    case Route::Murakami:
        return murakami_T(h, ctx, spec.normalization);
    case Route::Lupu:
        return kind == SeriesKind::H ? lupu_H(h, ctx) : lupu_T(h, ctx);
    case Route::Integral:
        return kind == SeriesKind::H ? llo_integral_H(h, ctx, options.quadrature)
                                     : llo_integral_T(h, ctx, options.quadrature);
    }
    throw std::logic_error("unreachable route");
}

/// Number of fractional decimal digits an absolute error bound justifies,
/// capped by the precision itself.
inline int justified_digits(const EvalResult& r)
{
    const int cap = static_cast<int>(std::floor(static_cast<double>(r.precision_bits) * 0.30102999566398120));
    if (r.error_bound.is_zero()) {
        return cap;
    }
    // log10 in MPFR: bounds can sit far below the double range.
    mpfr_t lg;
    mpfr_init2(lg, 64);
    mpfr_log10(lg, r.error_bound.get(), MPFR_RNDU);
    const double l = mpfr_get_d(lg, MPFR_RNDU);
    mpfr_clear(lg);
    const int digits = static_cast<int>(std::floor(-l));
    return std::clamp(digits, 0, cap);
}

/// Value rendered with exactly the justified number of fractional digits.
inline std::string format_value(const EvalResult& r) { return r.value.to_fixed(justified_digits(r)); }

/// Error bound rendered with three significant digits, rounded upwards.
inline std::string format_bound(const BigFloat& bound)
{
    char* raw = nullptr;
    if (mpfr_asprintf(&raw, "%.2RUe", bound.get()) < 0) {
        throw std::runtime_error("format_bound: formatting failed");
    }
    std::string out(raw);
    mpfr_free_str(raw);
    return out;
}

} // namespace mzv
