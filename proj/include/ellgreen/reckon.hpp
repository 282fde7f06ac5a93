/**
 * @brief Integer relations: exact LLL, algebraic-number recognition, and the
 * unit check on exp(24 n phi) at torsion points of CM curves.
 */
#pragma once

#include "ellgreen/errors.hpp"
#include "ellgreen/green.hpp"
#include "ellgreen/lattice.hpp"
#include "ellgreen/numerics.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ellgreen {

/// Integer polynomial, constant term first.
struct IntPolynomial {
    std::vector<mpz_class> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    const mpz_class& leading() const { return coeffs.back(); }
    const mpz_class& constant() const { return coeffs.front(); }

    mpz_class content() const {
        mpz_class g = 0;
        for (const auto& c : coeffs) g = gcd(g, c);
        return g;
    }

    template <class R>
    R evaluate(const R& x) const {
        R acc = x * 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + R(*it, x.precision());
        return acc;
    }

    /// sum |c_i| |x|^i, the scale substitution residuals are measured against.
    BigReal weight(const BigReal& x) const {
        BigReal ax = mp::abs(x);
        BigReal acc = ax * 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            acc = acc * ax + BigReal(mpz_class(abs(*it)), x.precision());
        return acc;
    }

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

    /// e.g. "x^2 - 7300802*x + 1"
    std::string to_string() const {
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            const mpz_class& c = coeffs[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            mpz_class a = abs(c);
            if (out.empty())
                out += c < 0 ? "-" : "";
            else
                out += c < 0 ? " - " : " + ";
            bool unit = a == 1 && i > 0;
            if (!unit) out += a.get_str();
            if (i > 0) out += std::string(unit ? "" : "*") + "x" + (i > 1 ? "^" + std::to_string(i) : "");
        }
        return out.empty() ? "0" : out;
    }
};

/// Content 1, positive leading coefficient, no trailing zero coefficients or x^k factor.
inline IntPolynomial normalize(IntPolynomial p) {
    while (p.coeffs.size() > 1 && p.coeffs.back() == 0) p.coeffs.pop_back();
    std::size_t low = 0;
    while (low + 1 < p.coeffs.size() && p.coeffs[low] == 0) ++low;
    p.coeffs.erase(p.coeffs.begin(), p.coeffs.begin() + static_cast<std::ptrdiff_t>(low));
    mpz_class g = p.content();
    if (g != 0)
        for (auto& c : p.coeffs) c /= g;
    if (p.leading() < 0)
        for (auto& c : p.coeffs) c = -c;
    return p;
}

using IntMatrix = std::vector<std::vector<mpz_class>>;

namespace detail {

inline mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// round(a / b) for b > 0, halves away from -infinity
inline mpz_class round_div(const mpz_class& a, const mpz_class& b) {
    mpz_class num = 2 * a + b;
    mpz_class den = 2 * b;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

}  // namespace detail

/// Lovasz parameter 99/100.
inline constexpr long kLovaszNum = 99;
inline constexpr long kLovaszDen = 100;

/**
 * Integral LLL: Gram-Schmidt data kept as the integers d_i (leading Gram
 * minors) and lambda_{ij} = d_j mu_{ij}, so every step is exact.
 */
inline IntMatrix lll_reduce(IntMatrix b) {
    const std::size_t n = b.size();
    if (n == 0) return b;
    std::vector<mpz_class> d(n + 1);
    std::vector<std::vector<mpz_class>> lam(n, std::vector<mpz_class>(n));
    d[0] = 1;

    // incremental Gram-Schmidt for row k
    auto build_row = [&](std::size_t k) {
        for (std::size_t j = 0; j <= k; ++j) {
            mpz_class u = detail::dot(b[k], b[j]);
            for (std::size_t i = 0; i < j; ++i) u = (d[i + 1] * u - lam[k][i] * lam[j][i]) / d[i];
            if (j < k)
                lam[k][j] = u;
            else {
                if (u == 0) throw DependentRows();
                d[k + 1] = u;
            }
        }
    };

    auto reduce = [&](std::size_t k, std::size_t l) {
        if (2 * abs(lam[k][l]) <= d[l + 1]) return;
        mpz_class q = detail::round_div(lam[k][l], d[l + 1]);
        for (std::size_t t = 0; t < b[k].size(); ++t) b[k][t] -= q * b[l][t];
        lam[k][l] -= q * d[l + 1];
        for (std::size_t i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
    };

    auto swap_rows = [&](std::size_t k) {
        std::swap(b[k], b[k - 1]);
        for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
        mpz_class l = lam[k][k - 1];
        mpz_class bb = (d[k - 1] * d[k + 1] + l * l) / d[k];
        for (std::size_t i = k + 1; i < n; ++i) {
            mpz_class t = lam[i][k];
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - l * t) / d[k];
            lam[i][k - 1] = (bb * t + l * lam[i][k]) / d[k + 1];
        }
        d[k] = bb;
    };

    build_row(0);
    std::size_t kmax = 0;
    std::size_t k = 1;
    while (k < n) {
        if (k > kmax) {
            kmax = k;
            build_row(k);
        }
        reduce(k, k - 1);
        // swap when 100 d_k d_{k-2} < 99 d_{k-1}^2 - 100 lambda^2 (indices shifted by one)
        mpz_class lhs = kLovaszDen * d[k + 1] * d[k - 1];
        mpz_class rhs = kLovaszNum * d[k] * d[k] - kLovaszDen * lam[k][k - 1] * lam[k][k - 1];
        if (lhs < rhs) {
            swap_rows(k);
            if (k > 1) --k;
        } else {
            for (std::size_t l = k - 1; l-- > 0;) reduce(k, l);
            ++k;
        }
    }
    return b;
}

/// Exact post-hoc test of size reduction and the Lovasz condition.
inline bool is_lll_reduced(const IntMatrix& b) {
    const std::size_t n = b.size();
    if (n == 0) return true;
    // rational Gram-Schmidt as an independent check
    std::vector<std::vector<mpq_class>> star(n);
    std::vector<mpq_class> norms(n);
    std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
        star[i].assign(b[i].begin(), b[i].end());
        for (std::size_t j = 0; j < i; ++j) {
            mpq_class num = 0;
            for (std::size_t t = 0; t < b[i].size(); ++t) num += mpq_class(b[i][t]) * star[j][t];
            mu[i][j] = num / norms[j];
            for (std::size_t t = 0; t < b[i].size(); ++t) star[i][t] -= mu[i][j] * star[j][t];
        }
        norms[i] = 0;
        for (const auto& v : star[i]) norms[i] += v * v;
        if (norms[i] == 0) return false;
    }
    const mpq_class half(1, 2);
    const mpq_class delta(kLovaszNum, kLovaszDen);
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (abs(mu[i][j]) > half) return false;
        if (norms[i] < (delta - mu[i][i - 1] * mu[i][i - 1]) * norms[i - 1]) return false;
    }
    return true;
}

struct AlgdepOptions {
    /// Rejected unless the same polynomial is found with `guard` fewer scale bits.
    bool require_stable = true;
};

namespace detail {

/// Shortest-vector candidate of exact degree `deg` at scale 2^scale_bits / max(1, |x|)^deg.
inline std::optional<IntPolynomial> algdep_at(const BigReal& x, int deg, long scale_bits) {
    const auto prec = x.precision();
    BigReal ax = mp::abs(x);
    BigReal norm = ax > 1 ? mp::pow(ax, static_cast<long>(deg)) : BigReal(1, prec);
    BigReal scale = mp::ldexp(BigReal(1, prec), scale_bits) / norm;

    IntMatrix rows(static_cast<std::size_t>(deg) + 1, std::vector<mpz_class>(static_cast<std::size_t>(deg) + 2, 0));
    BigReal power(1, prec);
    for (int i = 0; i <= deg; ++i) {
        rows[i][i] = 1;
        rows[i][deg + 1] = (power * scale).round_to_integer();
        power *= x;
    }
    IntMatrix reduced = lll_reduce(std::move(rows));
    IntPolynomial p;
    p.coeffs.assign(reduced[0].begin(), reduced[0].begin() + deg + 1);
    if (p.coeffs.back() == 0) return std::nullopt;
    return normalize(std::move(p));
}

/// |P(x)| <= 2^{-gate_bits} * sum |c_i| |x|^i
inline bool substitution_gate(const IntPolynomial& p, const BigReal& x, long gate_bits) {
    return mp::abs(p.evaluate(x)) <= mp::ldexp(p.weight(x), -gate_bits);
}

}  // namespace detail

/**
 * Smallest-degree integer polynomial vanishing at x, or none. For each degree
 * d = 1..maxdeg the lattice [e_i | round(S x^i)] with S = 2^B / max(1, |x|)^d,
 * B = bits - 2 guard, is reduced; the first row gives P. A spurious short
 * vector leaves |P(x)| near 2^{-B} sum |c_i| |x|^i, a true relation near the
 * working precision, so P must satisfy |P(x)| <= 2^{-(B + guard)} sum |c_i| |x|^i
 * and reappear unchanged at scale B - guard.
 */
inline std::optional<IntPolynomial> algdep(const BigReal& x, int maxdeg, const PrecisionContext& ctx,
                                           const AlgdepOptions& opts = {}) {
    if (maxdeg < 1) throw std::invalid_argument("maxdeg must be at least 1");
    const long scale_bits = ctx.bits() - 2L * ctx.guard();
    BigReal xw(x, ctx.working_bits());
    for (int deg = 1; deg <= maxdeg; ++deg) {
        auto p = detail::algdep_at(xw, deg, scale_bits);
        if (!p || p->degree() < 1) continue;
        if (!detail::substitution_gate(*p, xw, scale_bits + ctx.guard())) continue;
        if (opts.require_stable) {
            auto again = detail::algdep_at(xw, deg, scale_bits - ctx.guard());
            if (!again || !(*again == *p)) continue;
        }
        return p;
    }
    return std::nullopt;
}

enum class UnitVerdict { unit, unit_away_from_n, unrecognized };

inline std::string to_string(UnitVerdict v) {
    switch (v) {
        case UnitVerdict::unit: return "unit";
        case UnitVerdict::unit_away_from_n: return "unit_away_from_n";
        case UnitVerdict::unrecognized: return "unrecognized";
    }
    return "?";
}

struct UnitReport {
    BigReal value;                           // exp(exponent * n * phi(a))
    std::optional<IntPolynomial> polynomial;  // at ctx.bits
    std::optional<mpz_class> constant_abs;
    UnitVerdict verdict = UnitVerdict::unrecognized;
    BigReal phi;
    long exponent = 24;
    std::int64_t order = 0;
    bool stable = false;  // same polynomial at the confirming precision
    BigReal residual;     // |P(value)| at ctx.bits
    Warning warnings = Warning::none;
};

struct UnitCheckOptions {
    /// 24 (N_2) or 12.
    long exponent = 24;
    /// Extra bits for the confirming run.
    int confirm_extra_bits = 256;
};

inline constexpr int kUnitCheckMinBits = 512;

namespace detail {

/// Every prime factor of m divides n.
inline bool support_divides(mpz_class m, std::int64_t n) {
    m = abs(m);
    if (m == 0) return false;
    mpz_class nn = static_cast<long>(n);
    mpz_class g;
    while (true) {
        g = gcd(m, nn);
        if (g == 1) break;
        while (mpz_divisible_p(m.get_mpz_t(), g.get_mpz_t())) m /= g;
    }
    return m == 1;
}

}  // namespace detail

/**
 * v = exp(e n phi(a)) with e = 24 (or 12), n the exact order of a, recognized
 * by algdep at ctx.bits and again at ctx.bits + confirm_extra_bits. The verdict
 * is `unit` when both runs return the same polynomial with |leading| =
 * |constant| = 1, `unit_away_from_n` when those coefficients are supported on
 * primes dividing n.
 */
inline UnitReport unit_check(const Tau& tau, const TorsionCoord& a, int maxdeg, const PrecisionContext& ctx,
                             const UnitCheckOptions& opts = {}) {
    if (a.is_zero()) throw ZeroPoint();
    if (ctx.bits() < kUnitCheckMinBits)
        throw PrecisionTooLow("unit check needs at least " + std::to_string(kUnitCheckMinBits) + " bits");
    if (opts.exponent != 24 && opts.exponent != 12) throw std::invalid_argument("exponent must be 24 or 12");

    UnitReport r;
    r.order = a.order();
    r.exponent = opts.exponent;
    LatticeCoord z(a);

    auto value_at = [&](const PrecisionContext& c, GreenValue* g) {
        GreenValue phi = phi_sigma(z, tau, c);
        BigReal v = mp::exp(phi.value * (opts.exponent * r.order));
        if (g) *g = phi;
        return v;
    };

    GreenValue phi_main;
    r.value = value_at(ctx, &phi_main);
    r.phi = phi_main.value;
    r.warnings = phi_main.warnings;
    r.polynomial = algdep(r.value, maxdeg, ctx);

    PrecisionContext confirm = ctx.with_bits(ctx.bits() + opts.confirm_extra_bits);
    auto check = algdep(value_at(confirm, nullptr), maxdeg, confirm);
    r.stable = r.polynomial && check && *check == *r.polynomial;

    if (r.polynomial) {
        r.residual = mp::abs(r.polynomial->evaluate(r.value));
        r.constant_abs = abs(r.polynomial->constant());
    } else {
        r.residual = BigReal(-1, 64);
    }
    if (r.polynomial && r.stable) {
        const mpz_class lead = abs(r.polynomial->leading());
        if (lead == 1 && *r.constant_abs == 1)
            r.verdict = UnitVerdict::unit;
        else if (detail::support_divides(lead, r.order) && detail::support_divides(*r.constant_abs, r.order))
            r.verdict = UnitVerdict::unit_away_from_n;
    }
    return r;
}

}  // namespace ellgreen
