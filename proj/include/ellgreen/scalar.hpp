/**
 * @brief Precision context and the scalar abstraction shared by the
 * templated evaluators.
 *
 * Evaluators are written once against a scalar type `R` and instantiated for
 * `mp::Real` (the production path, precision from the context) and for
 * `double` (used where millions of low-accuracy samples are needed, e.g.
 * torus quadrature).
 */
#pragma once

#include "ellgreen/errors.hpp"
#include "ellgreen/mp_real.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ellgreen {

/// Working precision: `bits` of requested accuracy plus `guard` bits carried internally.
class PrecisionContext {
public:
    static constexpr int kDefaultBits = 256;
    static constexpr int kDefaultGuard = 32;
    static constexpr int kMinBits = 64;

    explicit PrecisionContext(int bits = kDefaultBits, int guard = kDefaultGuard) : bits_(bits), guard_(guard) {
        if (bits < kMinBits) throw std::invalid_argument("precision must be at least 64 bits");
        if (guard < 0) throw std::invalid_argument("guard bits must be non-negative");
    }

    int bits() const { return bits_; }
    int guard() const { return guard_; }

    /// Precision every internal value is computed at.
    int working_bits() const { return bits_ + guard_; }

    /// Same guard, different target precision.
    PrecisionContext with_bits(int bits) const { return PrecisionContext(bits, guard_); }

    friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

private:
    int bits_;
    int guard_;
};

/// Overload set spanning `double` and `mp::Real`.
namespace math {
inline double abs(double x) { return std::abs(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double exp(double x) { return std::exp(x); }
inline double log(double x) { return std::log(x); }
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double sinh(double x) { return std::sinh(x); }
inline double cosh(double x) { return std::cosh(x); }
inline double atan2(double y, double x) { return std::atan2(y, x); }
inline double hypot(double x, double y) { return std::hypot(x, y); }
inline double floor(double x) { return std::floor(x); }
inline double ldexp(double x, long e) { return std::ldexp(x, static_cast<int>(e)); }
inline double to_double(double x) { return x; }

using mp::abs;
using mp::atan2;
using mp::cos;
using mp::cosh;
using mp::exp;
using mp::floor;
using mp::hypot;
using mp::ldexp;
using mp::log;
using mp::sin;
using mp::sinh;
using mp::sqrt;
inline double to_double(const mp::Real& x) { return x.to_double(); }
}  // namespace math

template <class R>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static int precision(const PrecisionContext&) { return 52; }
    static double make(long x, const PrecisionContext&) { return static_cast<double>(x); }
    static double make(double x, const PrecisionContext&) { return x; }
    static double make(const mpq_class& q, const PrecisionContext&) { return q.get_d(); }
    static double pi(const PrecisionContext&) { return std::numbers::pi; }
};

template <>
struct scalar_traits<mp::Real> {
    static int precision(const PrecisionContext& ctx) { return ctx.working_bits(); }
    static mp::Real make(long x, const PrecisionContext& ctx) { return mp::Real(x, ctx.working_bits()); }
    static mp::Real make(double x, const PrecisionContext& ctx) { return mp::Real(x, ctx.working_bits()); }
    static mp::Real make(const mpq_class& q, const PrecisionContext& ctx) { return mp::Real(q, ctx.working_bits()); }
    static mp::Real pi(const PrecisionContext& ctx) { return mp::const_pi(ctx.working_bits()); }
};

template <class R>
R make_scalar(long x, const PrecisionContext& ctx) {
    return scalar_traits<R>::make(x, ctx);
}

template <class R>
R make_scalar(const mpq_class& q, const PrecisionContext& ctx) {
    return scalar_traits<R>::make(q, ctx);
}

template <class R>
R pi_of(const PrecisionContext& ctx) {
    return scalar_traits<R>::pi(ctx);
}

/// Environment variable consulted for the default precision by the CLI.
inline constexpr const char* kPrecisionEnv = "ELLGREEN_PREC";

}  // namespace ellgreen
