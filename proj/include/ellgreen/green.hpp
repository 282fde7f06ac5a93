/**
 * @brief The canonical Green function phi of the torus C/(Z + Z tau), by
 * three independent routes, and the property checks built on it.
 *
 *   sigma:     phi = -2 log( |Klein form(z)| |Delta(tau)|^{1/12} )
 *   siegel:    phi = -2 log |g_{(a1,a2)}(tau)|, Siegel-function q-product
 *   kronecker: phi = E_{(a2,-a1)}(tau) / pi, twisted real-analytic Eisenstein
 *              series at s = 1 summed with incomplete-gamma acceleration
 *
 * phi has a -2 log|z| pole at 0, is even, lattice-periodic, independent of the
 * chosen basis of the lattice, has mean zero over the torus, and satisfies
 * sum_{n w = z} phi(w) = phi(z).
 */
#pragma once

#include "ellgreen/check_report.hpp"
#include "ellgreen/complex.hpp"
#include "ellgreen/elliptic.hpp"
#include "ellgreen/lattice.hpp"
#include "ellgreen/numerics.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ellgreen {

enum class Method { sigma, siegel, kronecker };

inline std::string to_string(Method m) {
    switch (m) {
        case Method::sigma: return "sigma";
        case Method::siegel: return "siegel";
        case Method::kronecker: return "kronecker";
    }
    return "?";
}

inline Method parse_method(const std::string& s) {
    if (s == "sigma") return Method::sigma;
    if (s == "siegel") return Method::siegel;
    if (s == "kronecker") return Method::kronecker;
    throw std::invalid_argument("unknown method: " + s);
}

/// Whether entry points move (tau, z) to the fundamental domain first.
enum class Reduction { joint, none };

struct GreenValue {
    BigReal value;
    Method method;
    BigReal est_error;
    Warning warnings = Warning::none;
};

/// Knobs beyond the mathematical inputs.
struct GreenOptions {
    Reduction reduction = Reduction::joint;
    /// Test hook: evaluate phi_sigma with Delta replaced by e^{delta_log_scale} * Delta.
    std::optional<BigReal> delta_log_scale;
};

/// The second Kronecker limit formula in the form used here:
/// phi(a1, a2; tau) = kKroneckerScale * E_{(a2, -a1)}(tau), kKroneckerScale = 1/pi.
/// Calibrated against phi_sigma at tau = 2i, z = (1/4, 0) and tau = 0.3 + 1.2i,
/// z = (1/3, 1/5), which also separates (a2, -a1) from (a2, a1).
struct KroneckerCalibration {
    static std::pair<mpq_class, mpq_class> index_map(const LatticeCoord& z) { return {z.a2(), -z.a1()}; }
    template <class R>
    static R scale(const PrecisionContext& ctx) {
        return make_scalar<R>(1, ctx) / pi_of<R>(ctx);
    }
};

namespace detail {

struct ReducedInput {
    Tau tau;
    LatticeCoord z;
};

inline ReducedInput prepare(const LatticeCoord& z, const Tau& tau, Reduction reduction) {
    if (z.is_zero()) throw ZeroPoint();
    if (reduction == Reduction::none) return {tau, z};
    auto [reduced, m] = reduce_tau(tau);
    return {reduced, transform_coord(z, m)};
}

inline BigReal default_error(const BigReal& value, const PrecisionContext& ctx) {
    BigReal mag = mp::abs(value);
    if (mag < 1) mag = make_scalar<BigReal>(1, ctx);
    return mp::ldexp(mag, -ctx.bits());
}

}  // namespace detail

/// B_2(x) = x^2 - x + 1/6
template <class R>
R bernoulli_poly2(const R& x) {
    return x * x - x + R(x * 0 + 1) / 6;
}

inline mpq_class bernoulli_poly2(const mpq_class& x) { return x * x - x + mpq_class(1, 6); }

/**
 * phi = -2 log |Klein form(z) Delta(tau)^{1/12}|, on the jointly reduced
 * (tau, z) unless told otherwise.
 */
inline GreenValue phi_sigma(const LatticeCoord& z, const Tau& tau, const PrecisionContext& ctx,
                            const GreenOptions& opts = {}) {
    auto in = detail::prepare(z, tau, opts.reduction);
    Warning w = Warning::none;
    if (is_slow_tau(in.tau)) w |= Warning::slow_convergence;
    QuasiPeriods qp = quasi_periods(in.tau, ctx, &w);
    BigComplex zc = in.z.point<BigReal>(in.tau, ctx);
    BigReal klein = abs(klein_form(zc, in.tau, qp, ctx));
    BigReal root = 2 * pi_of<BigReal>(ctx) * mp::pow(abs(dedekind_eta(in.tau, ctx)), 2);
    BigReal value = -2 * mp::log(klein * root);
    if (opts.delta_log_scale) value -= *opts.delta_log_scale / 6;
    BigReal err = detail::default_error(value, ctx);
    return {std::move(value), Method::sigma, std::move(err), w};
}

/**
 * -2 log |g_{(a1,a2)}(tau)| with 0 <= a1, a2 < 1 and tau given as a value,
 *   |g| = |q|^{B_2(a1)/2} |1 - q_z| prod |1 - q^k q_z| |1 - q^k / q_z|.
 * Templated so torus quadrature can run it in double precision.
 */
template <class R>
R phi_siegel_raw(const R& a1, const R& a2, const Complex<R>& tau, const Complex<R>& q, const PrecisionContext& ctx) {
    R pi = pi_of<R>(ctx);
    R two_pi = 2 * pi;
    Complex<R> z(a1 * tau.re + a2, a1 * tau.im);
    R log_qz_abs = -two_pi * z.im;
    Complex<R> qz(math::exp(log_qz_abs) * math::cos(two_pi * z.re), math::exp(log_qz_abs) * math::sin(two_pi * z.re));
    Complex<R> inv_qz(math::exp(-log_qz_abs) * math::cos(two_pi * z.re),
                      -math::exp(-log_qz_abs) * math::sin(two_pi * z.re));

    // log|1 - q_z| = log|2 sin(pi z)| - pi Im z, stable as z -> 0
    R log_g = bernoulli_poly2(a1) / 2 * (-two_pi * tau.im);
    log_g += math::log(2 * abs(sin(z * pi))) - pi * z.im;
    log_g += math::log(abs(q_product(q, qz, ctx) * q_product(q, inv_qz, ctx)));
    return -2 * log_g;
}

inline GreenValue phi_siegel(const LatticeCoord& z, const Tau& tau, const PrecisionContext& ctx,
                             Reduction reduction = Reduction::joint) {
    auto in = detail::prepare(z, tau, reduction);
    Warning w = is_slow_tau(in.tau) ? Warning::slow_convergence : Warning::none;
    BigReal value = phi_siegel_raw<BigReal>(make_scalar<BigReal>(in.z.a1(), ctx), make_scalar<BigReal>(in.z.a2(), ctx),
                                            in.tau.value<BigReal>(ctx), nome<BigReal>(in.tau, ctx), ctx);
    BigReal err = detail::default_error(value, ctx);
    return {std::move(value), Method::siegel, std::move(err), w};
}

/**
 * E_a(tau) = sum'_{(m,n)} e^{2 pi i (m a1 + n a2)} Im(tau) / |m tau + n|^2
 * (value at s = 1), from the theta-function split at t = 1:
 *
 *   E = pi ( sum'_v cos(2 pi <v,a>) e^{-pi Q(v)} / (pi Q(v))
 *            + sum_w E1(pi Q*(w + a)) - 1 ),
 *
 * Q(m,n) = |m tau + n|^2 / Im tau and Q* its inverse form (both of
 * determinant 1). Both sums run over the ellipse Q <= T where
 * e^{-pi T} sits below the working precision; `cutoff_scale` multiplies T.
 */
inline BigReal eisenstein_kronecker(const mpq_class& a1, const mpq_class& a2, const Tau& tau,
                                    const PrecisionContext& ctx, double cutoff_scale = 1.0) {
    if (a1.get_den() == 1 && a2.get_den() == 1)
        throw DivergentInput("character must be nontrivial: (a1, a2) is integral");
    const BigReal pi = pi_of<BigReal>(ctx);
    const BigReal x = make_scalar<BigReal>(tau.re(), ctx);
    const BigReal y = tau.im<BigReal>(ctx);
    const BigReal abs_sq = make_scalar<BigReal>(tau.abs_sq(), ctx);
    const BigReal alpha1 = make_scalar<BigReal>(frac(a1), ctx);
    const BigReal alpha2 = make_scalar<BigReal>(frac(a2), ctx);

    const double ln2 = std::log(2.0);
    const double cutoff = cutoff_scale * ((ctx.working_bits() + 16) * ln2 / std::numbers::pi + 2.0);
    const double yd = y.to_double();
    const double xd = x.to_double();
    const double reach = std::sqrt(cutoff / yd) + 1;

    BigReal direct = make_scalar<BigReal>(0, ctx);
    const long mmax = static_cast<long>(std::ceil(reach));
    for (long m = -mmax; m <= mmax; ++m) {
        double disc = cutoff * yd - double(m) * m * yd * yd;
        if (disc < 0) continue;
        double center = -m * xd;
        long lo = static_cast<long>(std::floor(center - std::sqrt(disc))) - 1;
        long hi = static_cast<long>(std::ceil(center + std::sqrt(disc))) + 1;
        for (long n = lo; n <= hi; ++n) {
            if (m == 0 && n == 0) continue;
            BigReal q = (abs_sq * (m * m) + x * (2 * m * n) + make_scalar<BigReal>(n * n, ctx)) / y;
            BigReal pq = pi * q;
            BigReal phase = 2 * pi * (alpha1 * m + alpha2 * n);
            direct += mp::cos(phase) * mp::exp(-pq) / pq;
        }
    }

    BigReal dual = make_scalar<BigReal>(0, ctx);
    const double a2d = alpha2.to_double();
    const double a1d = alpha1.to_double();
    const long vmax = static_cast<long>(std::ceil(reach));
    for (long w2 = -vmax - 1; w2 <= vmax; ++w2) {
        double v = w2 + a2d;
        double disc = cutoff * yd - v * v * yd * yd;
        if (disc < 0) continue;
        double center = xd * v - a1d;
        long lo = static_cast<long>(std::floor(center - std::sqrt(disc))) - 1;
        long hi = static_cast<long>(std::ceil(center + std::sqrt(disc))) + 1;
        for (long w1 = lo; w1 <= hi; ++w1) {
            BigReal u = alpha1 + w1;
            BigReal vv = alpha2 + w2;
            BigReal du = u - x * vv;
            BigReal qs = (du * du + y * y * vv * vv) / y;
            dual += mp::expint_e1(pi * qs);
        }
    }
    return pi * (direct + dual - 1);
}

inline GreenValue phi_kronecker(const LatticeCoord& z, const Tau& tau, const PrecisionContext& ctx,
                                Reduction reduction = Reduction::joint, double cutoff_scale = 1.0) {
    auto in = detail::prepare(z, tau, reduction);
    auto [b1, b2] = KroneckerCalibration::index_map(in.z);
    BigReal value =
        KroneckerCalibration::scale<BigReal>(ctx) * eisenstein_kronecker(b1, b2, in.tau, ctx, cutoff_scale);
    BigReal err = detail::default_error(value, ctx);
    Warning w = is_slow_tau(in.tau) ? Warning::slow_convergence : Warning::none;
    return {std::move(value), Method::kronecker, std::move(err), w};
}

inline GreenValue phi(const LatticeCoord& z, const Tau& tau, const PrecisionContext& ctx, Method method,
                      const GreenOptions& opts = {}) {
    switch (method) {
        case Method::sigma: return phi_sigma(z, tau, ctx, opts);
        case Method::siegel: return phi_siegel(z, tau, ctx, opts.reduction);
        case Method::kronecker: return phi_kronecker(z, tau, ctx, opts.reduction);
    }
    throw std::invalid_argument("unknown method");
}

/// Default check tolerance 2^{-bits/2}.
inline BigReal half_precision_tolerance(const PrecisionContext& ctx) {
    return mp::ldexp(make_scalar<BigReal>(1, ctx), -ctx.bits() / 2);
}

/**
 * sum over the n^2 preimages w = ((a1 + t1)/n, (a2 + t2)/n) of phi(w),
 * compared with phi(z). Summed in the fixed order t1-major.
 */
inline CheckReport check_distribution(const LatticeCoord& z, std::int64_t n, const Tau& tau,
                                      const PrecisionContext& ctx, const GreenOptions& opts = {},
                                      Method method = Method::sigma) {
    if (n < 1) throw std::invalid_argument("distribution degree must be positive");
    if (z.is_zero()) throw ZeroPoint();
    BigReal sum = make_scalar<BigReal>(0, ctx);
    for (std::int64_t t1 = 0; t1 < n; ++t1)
        for (std::int64_t t2 = 0; t2 < n; ++t2) {
            LatticeCoord w((z.a1() + t1) / n, (z.a2() + t2) / n);
            sum += phi(w, tau, ctx, method, opts).value;
        }
    BigReal target = phi(z, tau, ctx, method, opts).value;
    auto report = make_report("distribution", mp::abs(sum - target), half_precision_tolerance(ctx), ctx.bits());
    report.inputs = {{"z", z.to_string()}, {"n", std::to_string(n)}, {"tau", tau.to_string()},
                     {"method", to_string(method)}};
    report.outputs = {{"preimage_sum", sum.to_string()}, {"phi_z", target.to_string()}};
    return report;
}

/// S(n) = sum of phi over nonzero n-torsion, expected -2 log n.
inline CheckReport torsion_log_sum(std::int64_t n, const Tau& tau, const PrecisionContext& ctx,
                                   Method method = Method::sigma) {
    if (n < 2) throw std::invalid_argument("torsion_log_sum requires n >= 2");
    BigReal sum = make_scalar<BigReal>(0, ctx);
    for (const auto& t : torsion_points(n)) sum += phi(LatticeCoord(t), tau, ctx, method).value;
    BigReal expected = -2 * mp::log(make_scalar<BigReal>(static_cast<long>(n), ctx));
    auto report = make_report("torsion_sum", mp::abs(sum - expected), half_precision_tolerance(ctx), ctx.bits());
    report.inputs = {{"n", std::to_string(n)}, {"tau", tau.to_string()}, {"method", to_string(method)}};
    report.outputs = {{"sum", sum.to_string()}, {"expected", expected.to_string()}};
    return report;
}

/**
 * |phi(z, tau) - phi(z', M tau)| with z' = transform_coord(z, M), both sides
 * evaluated directly on the tau they are given (no reduction), so the check
 * exercises the modular invariance itself.
 */
inline CheckReport check_sl2_invariance(const LatticeCoord& z, const Tau& tau, const UnimodularMatrix& m,
                                        const PrecisionContext& ctx, Method method = Method::sigma) {
    if (!m.valid()) throw std::invalid_argument("matrix must have determinant 1");
    GreenOptions direct{Reduction::none, std::nullopt};
    Tau image = tau.apply(m);
    LatticeCoord moved = transform_coord(z, m);
    BigReal lhs = phi(z, tau, ctx, method, direct).value;
    BigReal rhs = phi(moved, image, ctx, method, direct).value;
    auto report = make_report("sl2_invariance", mp::abs(lhs - rhs), half_precision_tolerance(ctx), ctx.bits());
    report.inputs = {{"z", z.to_string()},
                     {"tau", tau.to_string()},
                     {"matrix", std::to_string(m.a) + "," + std::to_string(m.b) + "," + std::to_string(m.c) + "," +
                                    std::to_string(m.d)},
                     {"method", to_string(method)}};
    report.outputs = {{"phi", lhs.to_string()}, {"phi_transformed", rhs.to_string()}, {"z_transformed", moved.to_string()}};
    return report;
}

/// Pairwise agreement of the three evaluators at one point.
struct PathAgreement {
    GreenValue sigma, siegel, kronecker;
    int sigma_siegel = 0;
    int sigma_kronecker = 0;
    int siegel_kronecker = 0;
};

inline PathAgreement compare_paths(const LatticeCoord& z, const Tau& tau, const PrecisionContext& ctx) {
    PathAgreement out{phi_sigma(z, tau, ctx), phi_siegel(z, tau, ctx), phi_kronecker(z, tau, ctx)};
    out.sigma_siegel = agree_bits(out.sigma.value, out.siegel.value, ctx);
    out.sigma_kronecker = agree_bits(out.sigma.value, out.kronecker.value, ctx);
    out.siegel_kronecker = agree_bits(out.siegel.value, out.kronecker.value, ctx);
    return out;
}

/// Three-path agreement: sigma/siegel to bits - 2 guard, kronecker to 30 bits.
inline CheckReport check_paths(const LatticeCoord& z, const Tau& tau, const PrecisionContext& ctx) {
    PathAgreement p = compare_paths(z, tau, ctx);
    BigReal d1 = mp::abs(p.sigma.value - p.siegel.value);
    BigReal d2 = mp::abs(p.sigma.value - p.kronecker.value);
    bool ok = p.sigma_siegel >= ctx.bits() - 2 * ctx.guard() && p.sigma_kronecker >= 30;
    CheckReport report = make_report("paths", d1 > d2 ? d1 : d2, mp::ldexp(make_scalar<BigReal>(1, ctx), -30), ctx.bits());
    report.passed = ok;
    report.inputs = {{"z", z.to_string()}, {"tau", tau.to_string()}};
    report.outputs = {{"sigma", p.sigma.value.to_string()},
                      {"siegel", p.siegel.value.to_string()},
                      {"kronecker", p.kronecker.value.to_string()},
                      {"agree_sigma_siegel", std::to_string(p.sigma_siegel)},
                      {"agree_sigma_kronecker", std::to_string(p.sigma_kronecker)},
                      {"agree_siegel_kronecker", std::to_string(p.siegel_kronecker)}};
    return report;
}

/// Midpoint rule on the N x N grid of the unit square, offset by half a cell.
template <class F>
double midpoint_quadrature(F&& f, int n) {
    double total = 0;
    for (int i = 0; i < n; ++i) {
        double row = 0;
        double a1 = (i + 0.5) / n;
        for (int j = 0; j < n; ++j) row += f(a1, (j + 0.5) / n);
        total += row;
    }
    return total / (double(n) * n);
}

struct TorusIntegral {
    double coarse;  // I_N
    double fine;    // I_{2N}
};

/// Mean of phi over the torus (Haar measure of mass 1) at grid sizes N and 2N, in double precision.
inline TorusIntegral torus_integrals(const Tau& tau, int n, const PrecisionContext& ctx) {
    auto [reduced, m] = reduce_tau(tau);
    (void)m;  // the coordinate change is measure-preserving on the torus
    Complex<double> t = reduced.value<double>(ctx);
    Complex<double> q = nome<double>(reduced, ctx);
    auto f = [&](double a1, double a2) { return phi_siegel_raw<double>(a1, a2, t, q, ctx); };
    return {midpoint_quadrature(f, n), midpoint_quadrature(f, 2 * n)};
}

/// passed iff |I_2N| <= max(10 |I_2N - I_N|, 1e-3).
inline CheckReport integral_over_torus(const Tau& tau, int n, const PrecisionContext& ctx) {
    if (n < 64) throw std::invalid_argument("torus quadrature needs N >= 64");
    TorusIntegral in = torus_integrals(tau, n, ctx);
    double tol = std::max(10 * std::abs(in.fine - in.coarse), 1e-3);
    auto report = make_report("integral", BigReal(std::abs(in.fine), 64), BigReal(tol, 64), ctx.bits());
    report.inputs = {{"tau", tau.to_string()}, {"N", std::to_string(n)}};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e", in.coarse);
    report.outputs.emplace_back("I_N", buf);
    std::snprintf(buf, sizeof buf, "%.12e", in.fine);
    report.outputs.emplace_back("I_2N", buf);
    return report;
}

}  // namespace ellgreen
