/**
 * @brief RAII wrapper over an MPFR floating-point value with an explicit
 * binary precision.
 *
 * Every value carries its own precision. Binary operations produce a result
 * at the larger of the operand precisions, so a computation seeded from
 * values built at one working precision stays at that precision throughout.
 * All operations round to nearest, which makes results bit-reproducible.
 */
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

namespace ellgreen::mp {

using prec_t = mpfr_prec_t;

class Real {
public:
    explicit Real(prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }

    template <class T>
        requires std::is_arithmetic_v<T>
    Real(T x, prec_t prec) {
        mpfr_init2(v_, prec);
        if constexpr (std::is_floating_point_v<T>)
            mpfr_set_d(v_, static_cast<double>(x), MPFR_RNDN);
        else if constexpr (std::is_signed_v<T>)
            mpfr_set_si(v_, static_cast<long>(x), MPFR_RNDN);
        else
            mpfr_set_ui(v_, static_cast<unsigned long>(x), MPFR_RNDN);
    }

    Real(const mpz_class& z, prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
    }

    Real(const mpq_class& q, prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }

    /// Parses a decimal (or "@inf@"-style MPFR) literal.
    static Real parse(const std::string& s, prec_t prec) {
        Real r(prec);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("not a number: " + s);
        return r;
    }

    /// Same value rounded to a new precision.
    Real(const Real& other, prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }

    Real(const Real& other) {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }

    Real(Real&& other) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, other.v_);
    }

    Real& operator=(const Real& other) {
        if (this != &other) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }

    Real& operator=(Real&& other) noexcept {
        mpfr_swap(v_, other.v_);
        return *this;
    }

    ~Real() { mpfr_clear(v_); }

    prec_t precision() const { return mpfr_get_prec(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    /// Binary exponent e with 0.5 <= |x|/2^e < 1; meaningless for zero.
    long exponent() const { return mpfr_get_exp(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    mpz_class round_to_integer() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
        return z;
    }

    mpz_class floor_to_integer() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
        return z;
    }

    /// Decimal string with `digits` significant digits, scientific notation.
    std::string to_string(int digits) const {
        if (mpfr_nan_p(v_)) return "nan";
        if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
        if (is_zero()) return "0";
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    /// Enough decimal digits to round-trip the binary value.
    std::string to_string() const {
        return to_string(static_cast<int>(mpfr_get_str_ndigits(10, precision())));
    }

    Real operator-() const {
        Real r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    Real& operator+=(const Real& o) { return assign_binary(o, mpfr_add); }
    Real& operator-=(const Real& o) { return assign_binary(o, mpfr_sub); }
    Real& operator*=(const Real& o) { return assign_binary(o, mpfr_mul); }
    Real& operator/=(const Real& o) { return assign_binary(o, mpfr_div); }

    template <class T>
        requires std::is_arithmetic_v<T>
    Real& operator+=(T x) {
        return *this += Real(x, precision());
    }
    template <class T>
        requires std::is_arithmetic_v<T>
    Real& operator-=(T x) {
        return *this -= Real(x, precision());
    }
    template <class T>
        requires std::is_arithmetic_v<T>
    Real& operator*=(T x) {
        return *this *= Real(x, precision());
    }
    template <class T>
        requires std::is_arithmetic_v<T>
    Real& operator/=(T x) {
        return *this /= Real(x, precision());
    }

private:
    using binop = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

    Real& assign_binary(const Real& o, binop f) {
        if (o.precision() > precision()) {
            Real r(std::max(precision(), o.precision()));
            f(r.v_, v_, o.v_, MPFR_RNDN);
            *this = std::move(r);
        } else {
            f(v_, v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    mpfr_t v_;
};

inline Real operator+(Real a, const Real& b) { return a += b; }
inline Real operator-(Real a, const Real& b) { return a -= b; }
inline Real operator*(Real a, const Real& b) { return a *= b; }
inline Real operator/(Real a, const Real& b) { return a /= b; }

template <class T>
    requires std::is_arithmetic_v<T>
Real operator+(Real a, T b) {
    return a += b;
}
template <class T>
    requires std::is_arithmetic_v<T>
Real operator-(Real a, T b) {
    return a -= b;
}
template <class T>
    requires std::is_arithmetic_v<T>
Real operator*(Real a, T b) {
    return a *= b;
}
template <class T>
    requires std::is_arithmetic_v<T>
Real operator/(Real a, T b) {
    return a /= b;
}
template <class T>
    requires std::is_arithmetic_v<T>
Real operator+(T a, const Real& b) {
    return Real(a, b.precision()) + b;
}
template <class T>
    requires std::is_arithmetic_v<T>
Real operator-(T a, const Real& b) {
    return Real(a, b.precision()) - b;
}
template <class T>
    requires std::is_arithmetic_v<T>
Real operator*(T a, const Real& b) {
    return Real(a, b.precision()) * b;
}
template <class T>
    requires std::is_arithmetic_v<T>
Real operator/(T a, const Real& b) {
    return Real(a, b.precision()) / b;
}

inline int compare(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()); }
inline bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }
inline bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
inline bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
inline bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }
inline bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.get(), b.get()) != 0; }

template <class T>
    requires std::is_arithmetic_v<T>
bool operator<(const Real& a, T b) {
    return a < Real(b, a.precision());
}
template <class T>
    requires std::is_arithmetic_v<T>
bool operator>(const Real& a, T b) {
    return a > Real(b, a.precision());
}
template <class T>
    requires std::is_arithmetic_v<T>
bool operator<=(const Real& a, T b) {
    return a <= Real(b, a.precision());
}
template <class T>
    requires std::is_arithmetic_v<T>
bool operator>=(const Real& a, T b) {
    return a >= Real(b, a.precision());
}

inline std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.to_string(); }

namespace detail {
using unop = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
inline Real apply(const Real& x, unop f) {
    Real r(x.precision());
    f(r.get(), x.get(), MPFR_RNDN);
    return r;
}
}  // namespace detail

inline Real abs(const Real& x) { return detail::apply(x, mpfr_abs); }
inline Real sqrt(const Real& x) { return detail::apply(x, mpfr_sqrt); }
inline Real exp(const Real& x) { return detail::apply(x, mpfr_exp); }
inline Real log(const Real& x) { return detail::apply(x, mpfr_log); }
inline Real log2(const Real& x) { return detail::apply(x, mpfr_log2); }
inline Real sin(const Real& x) { return detail::apply(x, mpfr_sin); }
inline Real cos(const Real& x) { return detail::apply(x, mpfr_cos); }
inline Real atan(const Real& x) { return detail::apply(x, mpfr_atan); }
inline Real sinh(const Real& x) { return detail::apply(x, mpfr_sinh); }
inline Real cosh(const Real& x) { return detail::apply(x, mpfr_cosh); }
inline Real tgamma(const Real& x) { return detail::apply(x, mpfr_gamma); }

inline Real floor(const Real& x) {
    Real r(x.precision());
    mpfr_floor(r.get(), x.get());
    return r;
}

inline Real atan2(const Real& y, const Real& x) {
    Real r(std::max(y.precision(), x.precision()));
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}

inline Real hypot(const Real& x, const Real& y) {
    Real r(std::max(y.precision(), x.precision()));
    mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

inline Real pow(const Real& x, const Real& y) {
    Real r(std::max(y.precision(), x.precision()));
    mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

inline Real pow(const Real& x, long n) {
    Real r(x.precision());
    mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
    return r;
}

/// x * 2^e, exact.
inline Real ldexp(const Real& x, long e) {
    Real r(x.precision());
    mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
    return r;
}

/// E1(x) = integral_x^inf e^{-t}/t dt for x > 0.
inline Real expint_e1(const Real& x) {
    if (x <= 0) throw std::domain_error("expint_e1 requires x > 0");
    // MPFR's eint at a negative argument returns -E1(-arg).
    Real r(x.precision());
    mpfr_eint(r.get(), (-x).get(), MPFR_RNDN);
    return -r;
}

inline Real const_pi(prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

inline Real const_log2(prec_t prec) {
    Real r(prec);
    mpfr_const_log2(r.get(), MPFR_RNDN);
    return r;
}

}  // namespace ellgreen::mp
