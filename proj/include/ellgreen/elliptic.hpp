/**
 * @brief Special functions on Z + Z tau: Dedekind eta, the discriminant,
 * Weierstrass sigma and the Klein form.
 *
 * Conventions:
 *  - Delta(tau) = (2 pi)^12 q prod (1 - q^k)^24, whose twelfth root is
 *    taken as 2 pi eta(tau)^2;
 *  - sigma is normalized by sigma'(0) = 1 for the lattice Z + Z tau;
 *  - the Klein form is e^{-z eta(z)/2} sigma(z) with the R-linear
 *    quasi-period map of lattice.hpp.
 *
 * These functions evaluate at the tau they are given. Green-function entry
 * points reduce (tau, z) jointly before calling them.
 */
#pragma once

#include "ellgreen/complex.hpp"
#include "ellgreen/lattice.hpp"
#include "ellgreen/numerics.hpp"

namespace ellgreen {

/// prod_{k>=1} (1 - q^k w), truncated by the geometric tail bound |q|^k |w|.
template <class R>
Complex<R> q_product(const Complex<R>& q, const Complex<R>& w, const PrecisionContext& ctx) {
    R aq = abs(q);
    R aw = abs(w);
    Complex<R> qk_w = w;
    auto deviation = [&](long) {
        qk_w *= q;
        return -qk_w;
    };
    R majorant_k = aw;
    long last = 0;
    auto majorant = [&](long k) {
        while (last < k) {
            majorant_k *= aq;
            ++last;
        }
        return majorant_k;
    };
    DecayCertificate cert{std::min(math::to_double(aq) * (1 + 1e-12), 0.999999), 1};
    return product_tail_bounded(deviation, majorant, cert, ctx, 1).value;
}

/// eta(tau) = q^{1/24} prod (1 - q^k), principal branch, evaluated at tau as given.
inline BigComplex dedekind_eta(const Tau& tau, const PrecisionContext& ctx, Warning* warnings = nullptr) {
    if (warnings && is_slow_tau(tau)) *warnings |= Warning::slow_convergence;
    BigComplex t = tau.value<BigReal>(ctx);
    BigReal pi = pi_of<BigReal>(ctx);
    BigComplex q24 = exp(BigComplex(-pi * t.im / 12, pi * t.re / 12));
    BigComplex q = nome<BigReal>(tau, ctx);
    BigComplex one(make_scalar<BigReal>(1, ctx), make_scalar<BigReal>(0, ctx));
    return q24 * q_product(q, one, ctx);
}

/// |eta(tau)|, computed on the reduced tau' = M tau via |eta(tau)| = |eta(tau')| / |c tau + d|^{1/2}.
inline BigReal dedekind_eta_abs(const Tau& tau, const PrecisionContext& ctx) {
    auto [reduced, m] = reduce_tau(tau);
    BigReal value = abs(dedekind_eta(reduced, ctx));
    mpq_class cx_d = m.c * tau.re() + m.d;
    mpq_class cz_sq = cx_d * cx_d + mpq_class(m.c) * m.c * tau.im_sq();
    return value / math::sqrt(math::sqrt(make_scalar<BigReal>(cz_sq, ctx)));
}

/// Delta(tau) = (2 pi)^12 eta(tau)^24.
inline BigComplex delta(const Tau& tau, const PrecisionContext& ctx, Warning* warnings = nullptr) {
    BigReal two_pi = 2 * pi_of<BigReal>(ctx);
    return pow(dedekind_eta(tau, ctx, warnings), 24) * mp::pow(two_pi, 12);
}

/// |Delta(tau)|^{1/12} = 2 pi |eta(tau)|^2.
inline BigReal delta_twelfth_root_abs(const Tau& tau, const PrecisionContext& ctx) {
    BigReal e = dedekind_eta_abs(tau, ctx);
    return 2 * pi_of<BigReal>(ctx) * e * e;
}

/**
 * sigma(z; Z + Z tau) from the product
 *   e^{eta_1 z^2 / 2} / (2 pi i) * (q_z^{1/2} - q_z^{-1/2})
 *     * prod (1 - q^k q_z)(1 - q^k / q_z) / (1 - q^k)^2,   q_z = e^{2 pi i z}.
 * `z` is a complex point, not a torus class: sigma is not periodic.
 */
inline BigComplex weierstrass_sigma(const BigComplex& z, const Tau& tau, const QuasiPeriods& qp,
                                    const PrecisionContext& ctx) {
    BigReal pi = pi_of<BigReal>(ctx);
    BigComplex q = nome<BigReal>(tau, ctx);
    BigComplex half = exp(BigComplex(-pi * z.im, pi * z.re));  // q_z^{1/2}
    BigComplex qz = half * half;
    BigComplex one(make_scalar<BigReal>(1, ctx), make_scalar<BigReal>(0, ctx));
    BigComplex inv_qz = one / qz;

    BigComplex prod = q_product(q, qz, ctx) * q_product(q, inv_qz, ctx);
    BigComplex p0 = q_product(q, one, ctx);
    prod /= p0 * p0;

    BigComplex gauss = exp(qp.eta1 * z * z / make_scalar<BigReal>(2, ctx));
    // q_z^{1/2} - q_z^{-1/2} = 2i sin(pi z), without cancellation near z = 0
    BigComplex s = sin(z * pi);
    BigComplex sine(-2 * s.im, 2 * s.re);
    BigComplex two_pi_i(make_scalar<BigReal>(0, ctx), 2 * pi);
    return gauss * sine * prod / two_pi_i;
}

inline BigComplex weierstrass_sigma(const BigComplex& z, const Tau& tau, const PrecisionContext& ctx,
                                    Warning* warnings = nullptr) {
    return weierstrass_sigma(z, tau, quasi_periods(tau, ctx, warnings), ctx);
}

/// sigma at the representative a1 tau + a2 with 0 <= a1, a2 < 1.
inline BigComplex weierstrass_sigma(const LatticeCoord& z, const Tau& tau, const PrecisionContext& ctx,
                                    Warning* warnings = nullptr) {
    return weierstrass_sigma(z.point<BigReal>(tau, ctx), tau, ctx, warnings);
}

/// Klein form e^{-z eta(z)/2} sigma(z) at a complex point.
inline BigComplex klein_form(const BigComplex& z, const Tau& tau, const QuasiPeriods& qp,
                             const PrecisionContext& ctx) {
    BigComplex eta_z = quasi_period_at(z, tau, qp, ctx);
    BigComplex factor = exp(-(z * eta_z) / make_scalar<BigReal>(2, ctx));
    return factor * weierstrass_sigma(z, tau, qp, ctx);
}

inline BigComplex klein_form(const BigComplex& z, const Tau& tau, const PrecisionContext& ctx,
                             Warning* warnings = nullptr) {
    return klein_form(z, tau, quasi_periods(tau, ctx, warnings), ctx);
}

inline BigComplex klein_form(const LatticeCoord& z, const Tau& tau, const PrecisionContext& ctx,
                             Warning* warnings = nullptr) {
    if (z.is_zero()) throw ZeroPoint();
    return klein_form(z.point<BigReal>(tau, ctx), tau, ctx, warnings);
}

}  // namespace ellgreen
