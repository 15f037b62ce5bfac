#pragma once

// Gauss-Legendre quadrature at arbitrary precision with node doubling.

#include "mzv/bigfloat.hpp"
#include "mzv/numerics.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <shared_mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mzv {

class QuadratureNoConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Nodes and weights of the m-point rule on [-1, 1]. Only the nonnegative
/// half is stored; the rule is symmetric. For odd m the first node is 0.
struct GaussLegendreRule {
    std::size_t points = 0;
    std::vector<BigFloat> nodes;
    std::vector<BigFloat> weights;
};

namespace detail {

// P_m(x) and P_{m-1}(x) by the three-term recurrence.
inline std::pair<BigFloat, BigFloat> legendre_pair(std::size_t m, const BigFloat& x, const PrecisionContext& ctx)
{
    BigFloat p_prev(1L, ctx);
    BigFloat p = x;
    for (std::size_t j = 2; j <= m; ++j) {
        BigFloat next = (x * p * static_cast<long>(2 * j - 1) - p_prev * static_cast<long>(j - 1)) / static_cast<long>(j);
        p_prev = std::move(p);
        p = std::move(next);
    }
    return {std::move(p), std::move(p_prev)};
}

inline GaussLegendreRule compute_rule(std::size_t m, const PrecisionContext& ctx)
{
    GaussLegendreRule rule;
    rule.points = m;
    const long bits = ctx.working_bits();
    const BigFloat tolerance = pow2(8 - bits, ctx);
    const BigFloat one(1L, ctx);

    // Roots in descending order, largest first; keep the x >= 0 half.
    for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
        // Classic initial guess, then Newton on P_m.
        double guess = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(m) + 0.5));
        if (m % 2 == 1 && i == m / 2) {
            guess = 0.0;
        }
        BigFloat x = BigFloat::from_double(guess, ctx);
        BigFloat derivative(0L, ctx);
        bool converged = false;
        for (int iter = 0; iter < 200; ++iter) {
            auto [p, p_prev] = legendre_pair(m, x, ctx);
            derivative = (x * p - p_prev) * static_cast<long>(m) / (x * x - one);
            BigFloat step = p / derivative;
            x -= step;
            if (abs(step) <= tolerance) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw QuadratureNoConvergence("Gauss-Legendre: Newton iteration failed for a node");
        }
        auto [p, p_prev] = legendre_pair(m, x, ctx);
        derivative = (x * p - p_prev) * static_cast<long>(m) / (x * x - one);
        BigFloat weight = BigFloat(2L, ctx) / ((one - x * x) * derivative * derivative);
        rule.nodes.push_back(abs(x));
        rule.weights.push_back(std::move(weight));
    }
    return rule;
}

} // namespace detail

/// Cached m-point rule at the working precision of `ctx`. Safe to call from
/// several threads.
inline std::shared_ptr<const GaussLegendreRule> gauss_legendre_rule(std::size_t m, const PrecisionContext& ctx)
{
    using Key = std::pair<std::size_t, long>;
    static std::shared_mutex mutex;
    static std::map<Key, std::shared_ptr<const GaussLegendreRule>> cache;

    const Key key{m, ctx.working_bits()};
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
    }
    auto rule = std::make_shared<const GaussLegendreRule>(detail::compute_rule(m, ctx));
    std::unique_lock lock(mutex);
    return cache.try_emplace(key, std::move(rule)).first->second;
}

/// Sum of w_i f(x_i) for the m-point rule mapped to [lo, hi], together with
/// sum of |w_i f(x_i)| (used for the rounding estimate).
template <typename F>
std::pair<BigFloat, BigFloat> gauss_legendre_sum(F&& f, const BigFloat& lo, const BigFloat& hi, std::size_t m,
                                                 const PrecisionContext& ctx)
{
    const auto rule = gauss_legendre_rule(m, ctx);
    const BigFloat center = ldexp(lo + hi, -1);
    const BigFloat half = ldexp(hi - lo, -1);
    BigFloat sum(0L, ctx);
    BigFloat magnitude(0L, ctx);
    for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
        const BigFloat offset = half * rule->nodes[i];
        BigFloat contribution = f(center + offset);
        if (!rule->nodes[i].is_zero()) {
            contribution += f(center - offset);
        }
        contribution *= rule->weights[i];
        magnitude += abs(contribution);
        sum += contribution;
    }
    return {sum * half, magnitude * half};
}

struct QuadratureOptions {
    std::size_t initial_points = 16;
    std::size_t max_points = std::size_t{1} << 13;
};

/// Integral of f over [lo, hi] by Gauss-Legendre with m = 16, 32, 64, ...
/// The error estimate is |E_{2m} - E_m| (plus a rounding allowance) and is
/// accepted after two consecutive differences fall below `target`. The
/// estimate is empirical, so the result is flagged heuristic.
template <typename F>
EvalResult integrate(F&& f, const BigFloat& lo, const BigFloat& hi, const BigFloat& target,
                     const PrecisionContext& ctx, QuadratureOptions options = {})
{
    const BigFloat u = unit_roundoff(ctx);
    std::size_t m = options.initial_points;
    auto [previous, previous_mag] = gauss_legendre_sum(f, lo, hi, m, ctx);
    int agreements = 0;
    while (m < options.max_points) {
        m *= 2;
        auto [current, current_mag] = gauss_legendre_sum(f, lo, hi, m, ctx);
        BigFloat diff = abs(current - previous);
        agreements = diff <= target ? agreements + 1 : 0;
        if (agreements >= 2) {
            BigFloat rounding = current_mag * u * static_cast<long>(m + 16);
            return {std::move(current), diff + rounding, ctx.precision_bits(), true};
        }
        previous = std::move(current);
    }
    throw QuadratureNoConvergence("integrate: no convergence with " + std::to_string(m) + " nodes");
}

} // namespace mzv
