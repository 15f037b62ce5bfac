#pragma once

// Exact termwise replay of the reduction
//
//   integral representation  --(x cot x series)-->  sum_n zeta(2n) * Beta moment
//                            --(x = (pi/2) t)---->  sum_n zeta(2n) * factorial ratio
//
// for H(a,b) and T(a,b). For each n both sides are written as
// coeff * pi^{2a+2b+2} * zeta(2n) * 4^{-n}; the identity holds iff the two
// rational coefficients are equal. No floating point is involved.

#include "mzv/exact.hpp"
#include "mzv/integrals.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace mzv {

/// Which right-hand side to compare against.
///
/// TFinalDisplay uses the denominator (2n+2a+1)...(2n+2a+2b+3), which is one
/// factor longer than the T-series coefficient; it exists to show that this
/// variant is not an identity.
enum class KernelContext { H, T, TFinalDisplay };

inline std::string to_string(KernelContext c)
{
    switch (c) {
    case KernelContext::H:
        return "H";
    case KernelContext::T:
        return "T";
    case KernelContext::TFinalDisplay:
        return "T-final-display";
    }
    return "?";
}

inline KernelContext parse_kernel_context(const std::string& text)
{
    if (text == "H" || text == "h") {
        return KernelContext::H;
    }
    if (text == "T" || text == "t") {
        return KernelContext::T;
    }
    if (text == "T-final-display" || text == "t-final-display") {
        return KernelContext::TFinalDisplay;
    }
    throw std::invalid_argument("unknown kernel context '" + text + "'");
}

struct TermIdentity {
    KernelContext context = KernelContext::H;
    std::uint64_t n = 0;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    Rational lhs;  // from the integral representation
    Rational rhs;  // from the series statement

    bool holds() const { return lhs == rhs; }
};

/// H(a,b), n-th term.
///   lhs = 2^{2a+3} / ((2a+2)! (2b+1)!)  [integral prefactor, pi^{2b} factored]
///       * (-2)                          [x cot x = -2 sum r_n x^{2n}]
///       * 2^{-(2a+2)}                   [(pi/2)^{2n+2a+2}, pi and 4^{-n} factored]
///       * B(2n+2a+2, 2b+2)
///   rhs = -4 / ((2a+2)! (2n+2a+2)(2n+2a+3)...(2n+2a+2b+3))
inline TermIdentity term_H(std::uint64_t n, std::uint64_t a, std::uint64_t b)
{
    const auto sa = static_cast<std::int64_t>(a);
    const auto sb = static_cast<std::int64_t>(b);
    const auto sn = static_cast<std::int64_t>(n);

    Rational lhs = pow2_rational(2 * sa + 3) / Rational(factorial(2 * a + 2) * factorial(2 * b + 1));
    lhs *= -2;
    lhs *= pow2_rational(-(2 * sa + 2));
    lhs *= beta_pos_int(2 * sn + 2 * sa + 2, 2 * sb + 2);
    lhs.canonicalize();

    const Integer run = rising_product(2 * n + 2 * a + 2, 2 * n + 2 * a + 2 * b + 3);
    Rational rhs(Integer(-4), factorial(2 * a + 2) * run);
    rhs.canonicalize();
    return {KernelContext::H, n, a, b, std::move(lhs), std::move(rhs)};
}

/// T(a,b), n-th term.
///   lhs = 1 / (2^{2b+1} (2a+1)! (2b+1)!)  [pi^{2b+1} factored]
///       * (-2)
///       * 2^{-(2a+1)}                     [(pi/2)^{2n+2a+1}, pi and 4^{-n} factored]
///       * B(2n+2a+1, 2b+2)
///   rhs = -2 / (2a+1)! * 2^{-(2a+2b+2)} / ((2n+2a+1)(2n+2a+2)...(2n+2a+2b+2))
inline TermIdentity term_T(std::uint64_t n, std::uint64_t a, std::uint64_t b,
                           KernelContext context = KernelContext::T)
{
    const auto sa = static_cast<std::int64_t>(a);
    const auto sb = static_cast<std::int64_t>(b);
    const auto sn = static_cast<std::int64_t>(n);

    Rational lhs = pow2_rational(-(2 * sb + 1)) / Rational(factorial(2 * a + 1) * factorial(2 * b + 1));
    lhs *= -2;
    lhs *= pow2_rational(-(2 * sa + 1));
    lhs *= beta_pos_int(2 * sn + 2 * sa + 1, 2 * sb + 2);
    lhs.canonicalize();

    const std::uint64_t last = 2 * n + 2 * a + 2 * b + (context == KernelContext::TFinalDisplay ? 3 : 2);
    const Integer run = rising_product(2 * n + 2 * a + 1, last);
    Rational rhs = Rational(Integer(-2), factorial(2 * a + 1) * run) * pow2_rational(-(2 * sa + 2 * sb + 2));
    rhs.canonicalize();
    return {context, n, a, b, std::move(lhs), std::move(rhs)};
}

inline TermIdentity term_identity(KernelContext context, std::uint64_t n, std::uint64_t a, std::uint64_t b)
{
    return context == KernelContext::H ? term_H(n, a, b) : term_T(n, a, b, context);
}

struct Certificate {
    KernelContext context = KernelContext::H;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t n_max = 0;
    bool passed = true;
    std::optional<TermIdentity> counterexample;  // first failing n
};

/// Checks the identity for n = 0..n_max and reports the first failure.
inline Certificate certify(KernelContext context, std::uint64_t a, std::uint64_t b, std::uint64_t n_max)
{
    Certificate cert{context, a, b, n_max, true, std::nullopt};
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        TermIdentity id = term_identity(context, n, a, b);
        if (!id.holds()) {
            cert.passed = false;
            cert.counterexample = std::move(id);
            break;
        }
    }
    return cert;
}

class IdentityViolation : public std::runtime_error {
public:
    explicit IdentityViolation(TermIdentity identity)
        : std::runtime_error("identity violated for " + to_string(identity.context) + "(" +
                             std::to_string(identity.a) + "," + std::to_string(identity.b) +
                             ") at n=" + std::to_string(identity.n) + ": lhs=" + identity.lhs.get_str() +
                             " rhs=" + identity.rhs.get_str()),
          identity_(std::move(identity))
    {
    }

    const TermIdentity& identity() const { return identity_; }

private:
    TermIdentity identity_;
};

/// As certify, but a failure raises IdentityViolation.
inline Certificate replay(KernelContext context, std::uint64_t a, std::uint64_t b, std::uint64_t n_max)
{
    Certificate cert = certify(context, a, b, n_max);
    if (!cert.passed) {
        throw IdentityViolation(*cert.counterexample);
    }
    return cert;
}

} // namespace mzv
