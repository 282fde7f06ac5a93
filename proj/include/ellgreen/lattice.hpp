/**
 * @brief Geometry of the lattice Z + Z tau: fundamental-domain reduction,
 * torsion points, and the quasi-period map.
 *
 * tau is held exactly as Re(tau) in Q together with Im(tau)^2 in Q, which
 * covers every decimal input and the imaginary-quadratic presets such as
 * (1 + i sqrt 3)/2. Modular transformations keep this form, so reduction to
 * the fundamental domain is exact and precision-independent.
 */
#pragma once

#include "ellgreen/complex.hpp"
#include "ellgreen/numerics.hpp"
#include "ellgreen/rational.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ellgreen {

/// [[a, b], [c, d]] with ad - bc = 1, acting by tau -> (a tau + b)/(c tau + d).
struct UnimodularMatrix {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    static UnimodularMatrix identity() { return {}; }
    /// tau -> tau + 1
    static UnimodularMatrix T() { return {1, 1, 0, 1}; }
    /// tau -> -1/tau
    static UnimodularMatrix S() { return {0, -1, 1, 0}; }

    std::int64_t det() const { return a * d - b * c; }
    bool valid() const { return det() == 1; }

    UnimodularMatrix inverse() const { return {d, -b, -c, a}; }

    friend UnimodularMatrix operator*(const UnimodularMatrix& x, const UnimodularMatrix& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const UnimodularMatrix&, const UnimodularMatrix&) = default;
};

/// A point of the upper half-plane, exact: Re(tau) and Im(tau)^2 rational.
class Tau {
public:
    Tau(mpq_class re, mpq_class im_sq) : re_(std::move(re)), im_sq_(std::move(im_sq)) {
        re_.canonicalize();
        im_sq_.canonicalize();
        if (im_sq_ <= 0) throw std::invalid_argument("tau must lie in the upper half-plane");
    }

    static Tau from_parts(const mpq_class& re, const mpq_class& im) {
        if (im <= 0) throw std::invalid_argument("tau must lie in the upper half-plane");
        return Tau(re, im * im);
    }

    static Tau i() { return Tau(0, 1); }
    /// (1 + i sqrt 3)/2
    static Tau rho() { return Tau(mpq_class(1, 2), mpq_class(3, 4)); }

    /// "i", "2i", "rho", or a decimal/rational pair "re,im".
    static Tau parse(const std::string& text) {
        if (text == "i") return i();
        if (text == "2i") return from_parts(0, 2);
        if (text == "rho") return rho();
        auto comma = text.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("tau must be 're,im' or a preset: " + text);
        return from_parts(parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)));
    }

    const mpq_class& re() const { return re_; }
    const mpq_class& im_sq() const { return im_sq_; }

    /// |tau|^2
    mpq_class abs_sq() const { return re_ * re_ + im_sq_; }

    template <class R>
    R im(const PrecisionContext& ctx) const {
        return math::sqrt(make_scalar<R>(im_sq_, ctx));
    }

    template <class R>
    Complex<R> value(const PrecisionContext& ctx) const {
        return Complex<R>(make_scalar<R>(re_, ctx), im<R>(ctx));
    }

    /// (a tau + b)/(c tau + d), exact.
    Tau apply(const UnimodularMatrix& m) const {
        mpq_class cx_d = m.c * re_ + m.d;
        mpq_class denom = cx_d * cx_d + mpq_class(m.c) * m.c * im_sq_;
        mpq_class re = ((m.a * re_ + m.b) * cx_d + mpq_class(m.a) * m.c * im_sq_) / denom;
        return Tau(re, im_sq_ / (denom * denom));
    }

    std::string to_string() const {
        return "re=" + ellgreen::to_string(re_) + ",im^2=" + ellgreen::to_string(im_sq_);
    }

    friend bool operator==(const Tau&, const Tau&) = default;

private:
    mpq_class re_;
    mpq_class im_sq_;
};

/// Exact n-torsion point (p1/q, p2/q).
struct TorsionCoord {
    std::int64_t p1 = 0, p2 = 0, q = 1;

    std::int64_t order() const {
        std::int64_t g = std::gcd(std::gcd(p1, p2), q);
        return q / g;
    }
    bool is_zero() const { return p1 % q == 0 && p2 % q == 0; }
};

/// z = a1 tau + a2, coordinates reduced into [0, 1) and stored exactly.
class LatticeCoord {
public:
    LatticeCoord() = default;
    LatticeCoord(const mpq_class& a1, const mpq_class& a2) : a1_(frac(a1)), a2_(frac(a2)) {}
    LatticeCoord(const TorsionCoord& t) : LatticeCoord(mpq_class(t.p1, t.q), mpq_class(t.p2, t.q)) {}

    /// "p1/q,p2/q" (decimals accepted too).
    static LatticeCoord parse(const std::string& text) {
        auto comma = text.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("z must be 'a1,a2': " + text);
        return LatticeCoord(parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)));
    }

    const mpq_class& a1() const { return a1_; }
    const mpq_class& a2() const { return a2_; }
    bool is_zero() const { return a1_ == 0 && a2_ == 0; }

    LatticeCoord operator-() const { return LatticeCoord(-a1_, -a2_); }
    friend LatticeCoord operator+(const LatticeCoord& x, const LatticeCoord& y) {
        return LatticeCoord(x.a1_ + y.a1_, x.a2_ + y.a2_);
    }
    friend bool operator==(const LatticeCoord&, const LatticeCoord&) = default;

    /// The representative a1 tau + a2 with 0 <= a1, a2 < 1.
    template <class R>
    Complex<R> point(const Tau& tau, const PrecisionContext& ctx) const {
        Complex<R> t = tau.value<R>(ctx);
        R x1 = make_scalar<R>(a1_, ctx);
        return Complex<R>(x1 * t.re + make_scalar<R>(a2_, ctx), x1 * t.im);
    }

    std::string to_string() const { return ellgreen::to_string(a1_) + "," + ellgreen::to_string(a2_); }

private:
    mpq_class a1_{0};
    mpq_class a2_{0};
};

/**
 * Moves tau into |Re tau| <= 1/2, |tau| >= 1 by translations and inversions,
 * returning tau' = M tau and M.
 */
inline std::pair<Tau, UnimodularMatrix> reduce_tau(const Tau& tau) {
    Tau cur = tau;
    UnimodularMatrix m;
    for (int iter = 0; iter < 100000; ++iter) {
        mpz_class shift = round_nearest(cur.re());
        if (shift != 0) {
            if (!shift.fits_slong_p()) throw Overflow("tau reduction step out of range");
            UnimodularMatrix t{1, -shift.get_si(), 0, 1};
            cur = cur.apply(t);
            m = t * m;
        }
        if (cur.abs_sq() >= 1) return {cur, m};
        cur = cur.apply(UnimodularMatrix::S());
        m = UnimodularMatrix::S() * m;
    }
    throw NonConvergent("tau reduction did not terminate");
}

/**
 * Coordinates of the same torus point in the basis (M tau, 1).
 *
 * The lattice Z + Z tau scaled by 1/(c tau + d) is Z + Z tau', and
 * z/(c tau + d) = (d a1 - c a2) tau' + (a a2 - b a1).
 */
inline LatticeCoord transform_coord(const LatticeCoord& z, const UnimodularMatrix& m) {
    return LatticeCoord(m.d * z.a1() - m.c * z.a2(), m.a * z.a2() - m.b * z.a1());
}

/// All nonzero (p1/n, p2/n), ordered by p1 then p2; primitive_only keeps exact order n.
inline std::vector<TorsionCoord> torsion_points(std::int64_t n, bool primitive_only = false) {
    if (n < 1) throw std::invalid_argument("torsion order must be positive");
    std::vector<TorsionCoord> out;
    for (std::int64_t p1 = 0; p1 < n; ++p1)
        for (std::int64_t p2 = 0; p2 < n; ++p2) {
            if (p1 == 0 && p2 == 0) continue;
            TorsionCoord t{p1, p2, n};
            if (primitive_only && t.order() != n) continue;
            out.push_back(t);
        }
    return out;
}

/// Below this imaginary part, unreduced q-series get slow.
inline bool is_slow_tau(const Tau& tau) { return tau.im_sq() < mpq_class(1, 100); }

/// q = e^{2 pi i tau}
template <class R>
Complex<R> nome(const Tau& tau, const PrecisionContext& ctx) {
    Complex<R> t = tau.value<R>(ctx);
    R two_pi = 2 * pi_of<R>(ctx);
    return Complex<R>(math::exp(-two_pi * t.im) * math::cos(two_pi * t.re),
                      math::exp(-two_pi * t.im) * math::sin(two_pi * t.re));
}

/**
 * E2(tau) = 1 - 24 sum_{k>=1} sigma_1(k) q^k, summed in Lambert form
 * 1 - 24 sum k q^k / (1 - q^k). Evaluated at tau as given: E2 is only
 * quasi-modular, so callers reduce (tau, z) jointly beforehand.
 */
inline BigComplex eisenstein_e2(const Tau& tau, const PrecisionContext& ctx, Warning* warnings = nullptr) {
    BigComplex q = nome<BigReal>(tau, ctx);
    BigReal aq = abs(q);
    double r = aq.to_double();
    long from = std::max<long>(1, static_cast<long>(std::ceil(2 * r / (1 - r))));
    DecayCertificate cert{(1 + r) / 2, from};

    BigComplex qk = q;
    auto term = [&](long k) {
        BigComplex t = qk / (BigComplex(make_scalar<BigReal>(1, ctx), make_scalar<BigReal>(0, ctx)) - qk);
        t *= make_scalar<BigReal>(k, ctx);
        qk *= q;
        return t;
    };
    BigReal one_minus = 1 - aq;
    auto majorant = [&](long k) { return k * mp::pow(aq, k) / one_minus; };
    auto s = sum_tail_bounded(term, majorant, cert, ctx, 1);
    if (warnings) {
        *warnings |= s.warnings;
        if (is_slow_tau(tau)) *warnings |= Warning::slow_convergence;
    }
    BigComplex out = s.value * make_scalar<BigReal>(-24, ctx);
    out.re += 1;
    return out;
}

/// eta_1 = eta(1) and eta_2 = eta(tau), with eta_1 tau - eta_2 = 2 pi i.
struct QuasiPeriods {
    BigComplex eta1;
    BigComplex eta2;
};

inline QuasiPeriods quasi_periods(const Tau& tau, const PrecisionContext& ctx, Warning* warnings = nullptr) {
    BigReal pi = pi_of<BigReal>(ctx);
    BigComplex eta1 = eisenstein_e2(tau, ctx, warnings) * (pi * pi / 3);
    BigComplex eta2 = eta1 * tau.value<BigReal>(ctx);
    eta2.im -= 2 * pi;
    return {eta1, eta2};
}

/// R-linear extension eta(a1 tau + a2) = a1 eta_2 + a2 eta_1 for a complex point.
inline BigComplex quasi_period_at(const BigComplex& z, const Tau& tau, const QuasiPeriods& qp,
                                  const PrecisionContext& ctx) {
    Complex<BigReal> t = tau.value<BigReal>(ctx);
    BigReal a1 = z.im / t.im;
    BigReal a2 = z.re - a1 * t.re;
    return qp.eta2 * a1 + qp.eta1 * a2;
}

/// eta(z) for z = a1 tau + a2 given by lattice coordinates.
inline BigComplex quasi_period(const LatticeCoord& z, const Tau& tau, const PrecisionContext& ctx,
                               Warning* warnings = nullptr) {
    QuasiPeriods qp = quasi_periods(tau, ctx, warnings);
    return qp.eta2 * make_scalar<BigReal>(z.a1(), ctx) + qp.eta1 * make_scalar<BigReal>(z.a2(), ctx);
}

}  // namespace ellgreen
