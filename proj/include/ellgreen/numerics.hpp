/**
 * @brief Tail-bounded series and product summation, and the bit-agreement
 * measure used by every cross-check.
 *
 * Truncation is never a fixed term count: a series is summed until its
 * remaining tail, bounded through a geometric decay certificate, drops below
 * 2^-(bits+guard) relative to the partial sum.
 */
#pragma once

#include "ellgreen/complex.hpp"
#include "ellgreen/errors.hpp"
#include "ellgreen/mp_real.hpp"
#include "ellgreen/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ellgreen {

using BigReal = mp::Real;
using BigComplex = Complex<mp::Real>;

/// Non-fatal diagnostics attached to results.
enum class Warning : std::uint8_t {
    none = 0,
    slow_convergence = 1,
    precision_loss = 2,
};

inline Warning operator|(Warning a, Warning b) {
    return static_cast<Warning>(static_cast<std::uint8_t>(a) | static_cast<std::uint8_t>(b));
}
inline Warning& operator|=(Warning& a, Warning b) { return a = a | b; }
inline bool has(Warning set, Warning w) {
    return (static_cast<std::uint8_t>(set) & static_cast<std::uint8_t>(w)) != 0;
}

inline std::vector<std::string> warning_names(Warning w) {
    std::vector<std::string> out;
    if (has(w, Warning::slow_convergence)) out.emplace_back("slow_convergence");
    if (has(w, Warning::precision_loss)) out.emplace_back("precision_loss");
    return out;
}

/// |t_{k+1}| <= ratio * |t_k| (or the same for a majorant) for every k >= from.
struct DecayCertificate {
    double ratio;
    long from = 0;
};

template <class T>
struct SeriesResult {
    T value;
    long terms = 0;
    Warning warnings = Warning::none;
};

inline double magnitude(double x) { return std::abs(x); }
inline mp::Real magnitude(const mp::Real& x) { return mp::abs(x); }
template <class R>
R magnitude(const Complex<R>& z) {
    return abs(z);
}

namespace detail {

inline constexpr long kMaxTerms = 10'000'000;

inline void check_certificate(const DecayCertificate& cert) {
    if (!(cert.ratio < 1.0) || cert.ratio < 0.0)
        throw NonConvergent("decay certificate ratio must lie in [0, 1), got " + std::to_string(cert.ratio));
}

template <class T>
T unit_like(const T& sample) {
    if constexpr (requires { sample.re; })
        return T(sample.re * 0 + 1, sample.im * 0);
    else
        return sample * 0 + 1;
}

}  // namespace detail

/**
 * Sums term(first) + term(first+1) + ... using a majorant m(k) >= |term(k)|
 * that decays geometrically from `cert.from` onward. Stops once
 * m(k) * r / (1 - r) <= 2^-(bits+guard) * |partial sum|.
 */
template <class TermFn, class MajorantFn>
auto sum_tail_bounded(TermFn&& term, MajorantFn&& majorant, DecayCertificate cert, const PrecisionContext& ctx,
                      long first = 0) {
    using T = std::decay_t<decltype(term(first))>;
    using R = std::decay_t<decltype(magnitude(std::declval<T>()))>;
    detail::check_certificate(cert);
    const long target = scalar_traits<R>::precision(ctx);
    const double tail_factor = cert.ratio / (1.0 - cert.ratio);

    SeriesResult<T> out{term(first), 1, Warning::none};
    R largest = magnitude(out.value);
    for (long k = first;; ++k) {
        if (k > first) {
            T t = term(k);
            R mt = magnitude(t);
            if (mt > largest) largest = mt;
            out.value += t;
            ++out.terms;
        }
        if (k >= cert.from) {
            R tail = majorant(k) * tail_factor;
            R scale = magnitude(out.value);
            if (tail <= math::ldexp(scale, -target) || (tail <= 0 * tail && scale <= 0 * scale)) break;
        }
        if (out.terms > detail::kMaxTerms) throw NonConvergent("series did not settle within the term cap");
    }
    // Cancellation beyond the guard bits eats into the requested precision.
    R scale = magnitude(out.value);
    if (!(largest <= math::ldexp(scale, ctx.guard()))) out.warnings |= Warning::precision_loss;
    return out;
}

/// The certificate applies to the terms themselves.
template <class TermFn>
auto sum_tail_bounded(TermFn&& term, DecayCertificate cert, const PrecisionContext& ctx, long first = 0) {
    return sum_tail_bounded(
        term, [&](long k) { return magnitude(term(k)); }, cert, ctx, first);
}

/**
 * Product of (1 + e_k) for k >= first, where m(k) >= |e_k| decays
 * geometrically. The relative truncation error of the product is at most
 * exp(sum of the tail majorants) - 1, which the loop keeps below
 * 2^-(bits+guard+1).
 */
template <class DeviationFn, class MajorantFn>
auto product_tail_bounded(DeviationFn&& deviation, MajorantFn&& majorant, DecayCertificate cert,
                          const PrecisionContext& ctx, long first = 1) {
    using T = std::decay_t<decltype(deviation(first))>;
    using R = std::decay_t<decltype(magnitude(std::declval<T>()))>;
    detail::check_certificate(cert);
    const long target = scalar_traits<R>::precision(ctx) + 1;
    const double tail_factor = cert.ratio / (1.0 - cert.ratio);

    T e = deviation(first);
    T one = detail::unit_like(e);
    SeriesResult<T> out{one + e, 1, Warning::none};
    for (long k = first;; ++k) {
        if (k > first) {
            out.value *= one + deviation(k);
            ++out.terms;
        }
        if (k >= cert.from) {
            R tail = majorant(k) * tail_factor;
            if (tail <= math::ldexp(make_scalar<R>(1, ctx), -target)) break;
        }
        if (out.terms > detail::kMaxTerms) throw NonConvergent("product did not settle within the term cap");
    }
    return out;
}

/**
 * Number of leading binary digits on which x and y agree, in
 * [0, bits+guard]; identical values give bits+guard.
 */
inline int agree_bits(const mp::Real& x, const mp::Real& y, const PrecisionContext& ctx) {
    const int cap = ctx.working_bits();
    if (x == y) return cap;
    mp::Real diff = mp::abs(x - y);
    mp::Real scale = mp::abs(x) > mp::abs(y) ? mp::abs(x) : mp::abs(y);
    mp::Real ratio = mp::log2(scale / diff);
    if (ratio <= 0) return 0;
    long bits = ratio.floor_to_integer().get_si();
    return static_cast<int>(std::min<long>(bits, cap));
}

}  // namespace ellgreen
