/**
 * @brief Exact Bernoulli numbers, von Staudt denominators, N_{2g} and the
 * prime-product formula for 2 * denominator((-1)^{(c+2)/2} B_c / c).
 *
 * B_t is defined by u / (e^u - 1) = sum_{t >= 0} B_t u^t / t!, so B_0 = 1 and
 * B_1 = -1/2. Everything here is exact.
 */
#pragma once

#include "ellgreen/errors.hpp"
#include "ellgreen/check_report.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellgreen {

/// B_0, ..., B_t from sum_{j=0}^{m} C(m+1, j) B_j = 0.
inline std::vector<mpq_class> bernoulli_table(std::int64_t t) {
    if (t < 0) throw std::invalid_argument("Bernoulli index must be non-negative");
    std::vector<mpq_class> b(static_cast<std::size_t>(t) + 1);
    b[0] = 1;
    for (std::int64_t m = 1; m <= t; ++m) {
        if (m >= 3 && m % 2 == 1) {
            b[m] = 0;
            continue;
        }
        // C(m+1, j) built incrementally
        mpz_class binom = 1;
        mpq_class acc = 0;
        for (std::int64_t j = 0; j < m; ++j) {
            acc += binom * b[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        b[m] = -acc / mpq_class(binom);
        b[m].canonicalize();
    }
    return b;
}

inline mpq_class bernoulli(std::int64_t t) { return bernoulli_table(t).back(); }

/// p-adic valuation of a positive integer.
inline int valuation(mpz_class n, unsigned long p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    int v = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        n /= p;
        ++v;
    }
    return v;
}

inline bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Primes p with (p - 1) | c, ascending.
inline std::vector<std::int64_t> staudt_primes(std::int64_t c) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = 1; d <= c; ++d)
        if (c % d == 0 && is_prime(d + 1)) out.push_back(d + 1);
    return out;
}

/// prod_{(p-1) | c} p, the denominator of B_c.
inline mpz_class von_staudt_denominator(std::int64_t c) {
    if (c % 2 != 0) throw OddInput("c must be even, got " + std::to_string(c));
    if (c < 2) throw std::invalid_argument("von Staudt denominator needs c >= 2");
    mpz_class d = 1;
    for (auto p : staudt_primes(c)) d *= p;
    return d;
}

/// N_{2g} = 2 * denominator((-1)^{g+1} B_{2g} / (2g)).
inline mpz_class n2g(std::int64_t g) {
    if (g < 1) throw std::invalid_argument("n2g needs g >= 1");
    mpq_class r = bernoulli(2 * g) / mpq_class(2 * g);
    r.canonicalize();
    return 2 * mpz_class(r.get_den());
}

struct Eq33Sides {
    mpz_class lhs;  // 2 * denominator((-1)^{(c+2)/2} B_c / c)
    mpz_class rhs;  // 2 * prod_{(p-1)|c} p^{v_p(c) + 1}
};

inline Eq33Sides eq33_sides(std::int64_t c, const std::vector<mpq_class>* table = nullptr) {
    if (c % 2 != 0) throw OddInput("c must be even, got " + std::to_string(c));
    if (c < 2) throw std::invalid_argument("c must be at least 2");
    mpq_class bc = table ? (*table)[c] : bernoulli(c);
    mpq_class r = ((c + 2) / 2 % 2 == 0 ? bc : mpq_class(-bc)) / mpq_class(c);
    r.canonicalize();
    Eq33Sides s;
    s.lhs = 2 * mpz_class(r.get_den());
    s.rhs = 2;
    for (auto p : staudt_primes(c)) {
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(valuation(c, static_cast<unsigned long>(p)) + 1));
        s.rhs *= pk;
    }
    return s;
}

inline CheckReport verify_eq33(std::int64_t c) {
    Eq33Sides s = eq33_sides(c);
    CheckReport r;
    r.name = "eq33";
    r.inputs = {{"c", std::to_string(c)}};
    r.outputs = {{"lhs", s.lhs.get_str()}, {"rhs", s.rhs.get_str()}};
    mpz_class diff = abs(s.lhs - s.rhs);
    r.residual = BigReal(diff, 64);
    r.tolerance = BigReal(0, 64);
    r.passed = diff == 0;
    return r;
}

}  // namespace ellgreen
