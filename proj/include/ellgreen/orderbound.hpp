/**
 * @brief Order bounds for elements killed by k^c - l^c whenever k = l mod n:
 * the refined prime-by-prime formula, the coarse 2 n c prod p bound, and an
 * exhaustive residue-group oracle.
 *
 * For a prime p and delta >= 1 let C(p^delta) be the set of ratios l / k mod
 * p^delta over integers k, l prime to p with k = l (mod n). The oracle finds the
 * largest delta for which x^c = 1 on all of C(p^delta); soundness of the
 * formula means this never exceeds v_p(refined).
 */
#pragma once

#include "ellgreen/bernoulli.hpp"
#include "ellgreen/check_report.hpp"
#include "ellgreen/errors.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace ellgreen {

struct BoundInput {
    std::int64_t n;
    std::int64_t c;
};

struct BoundReport {
    mpz_class refined;
    mpz_class coarse;
    std::map<std::int64_t, int> per_prime;  // exponent of p in `refined`
    std::string f2_case;
};

namespace detail {

inline void require_bound_input(std::int64_t n, std::int64_t c) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (c < 1) throw std::invalid_argument("c must be positive");
}

inline int small_valuation(std::int64_t x, std::int64_t p) {
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

inline std::vector<std::int64_t> prime_divisors(std::int64_t x) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p * p <= x; ++p)
        if (x % p == 0) {
            out.push_back(p);
            while (x % p == 0) x /= p;
        }
    if (x > 1) out.push_back(x);
    return out;
}

inline mpz_class ipow(std::int64_t p, int e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = static_cast<std::uint64_t>((unsigned __int128)r * b % m);
        b = static_cast<std::uint64_t>((unsigned __int128)b * b % m);
        e >>= 1;
    }
    return r;
}

}  // namespace detail

/// The refined bound with its F_2 case analysis.
inline BoundReport lemma45_refined(std::int64_t n, std::int64_t c) {
    detail::require_bound_input(n, c);
    BoundReport r;
    const int v2n = detail::small_valuation(n, 2);
    const int v2c = detail::small_valuation(c, 2);
    int f2;
    if (n % 2 == 1 && c % 2 == 1) {
        f2 = 1;
        r.f2_case = "n odd, c odd";
    } else if (n % 2 == 1) {
        f2 = 2 + v2c;
        r.f2_case = "n odd, c even";
    } else {
        int w2 = (v2n == 1 && c % 2 == 0) ? 1 : 0;
        f2 = v2n + v2c + w2;
        r.f2_case = w2 ? "n even, v2(n) = 1, c even" : "n even";
    }
    r.per_prime[2] = f2;

    for (auto p : staudt_primes(c))
        if (p != 2 && n % p != 0) r.per_prime[p] = 1 + detail::small_valuation(c, p);
    for (auto p : detail::prime_divisors(n))
        if (p != 2) r.per_prime[p] = detail::small_valuation(n, p) + detail::small_valuation(c, p);

    r.refined = 1;
    for (auto [p, e] : r.per_prime) r.refined *= detail::ipow(p, e);

    r.coarse = 2 * mpz_class(static_cast<long>(n)) * mpz_class(static_cast<long>(c));
    for (auto p : staudt_primes(c))
        if (n % p != 0) r.coarse *= p;
    return r;
}

/// 2 n c prod_{p prime, p does not divide n, (p - 1) | c} p.
inline mpz_class lemma45_coarse(std::int64_t n, std::int64_t c) { return lemma45_refined(n, c).coarse; }

/// Largest modulus the exhaustive oracle will enumerate.
inline constexpr std::int64_t kMaxEnumeration = 1'000'000;

/**
 * C(p^delta) by literal enumeration of k, l in [1, p^delta * n], both prime to
 * p, with k = l (mod n). Sorted residues. Quadratic cost; meant for small moduli.
 */
inline std::vector<std::int64_t> residue_set(std::int64_t p, std::int64_t n, int delta) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    detail::require_bound_input(n, 1);
    const mpz_class big = detail::ipow(p, delta);
    if (big * n > 20000) throw Overflow("residue_set enumeration too large");
    const std::int64_t mod = big.get_si();
    const std::int64_t range = mod * n;
    std::set<std::int64_t> out;
    for (std::int64_t k = 1; k <= range; ++k) {
        if (k % p == 0) continue;
        mpz_class kinv, km = k % mod, mm = mod;
        mpz_invert(kinv.get_mpz_t(), km.get_mpz_t(), mm.get_mpz_t());
        const std::int64_t ki = kinv.get_si();
        for (std::int64_t l = k % n == 0 ? n : k % n; l <= range; l += n) {
            if (l % p == 0) continue;
            out.insert((l % mod) * ki % mod);
        }
    }
    return {out.begin(), out.end()};
}

/**
 * Largest delta <= delta_max with x^c = 1 (mod p^delta) for all x in
 * C(p^delta). Only k, l mod p^delta matter, and k = l (mod n) restricts them
 * mod p^{min(v_p(n), delta)} alone (the prime-to-p part of n imposes nothing by
 * CRT), so C(p^delta) is enumerated as { l k^{-1} : k, l units mod p^delta,
 * k = l mod p^{min(v_p(n), delta)} }. A failure at delta persists at every
 * larger delta, so the scan stops at the first one.
 */
inline int max_admissible_delta(std::int64_t p, std::int64_t n, std::int64_t c, int delta_max) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    detail::require_bound_input(n, c);
    if (delta_max < 1) throw std::invalid_argument("delta_max must be at least 1");
    if (detail::ipow(p, delta_max) > kMaxEnumeration)
        throw Overflow("p^delta_max exceeds " + std::to_string(kMaxEnumeration));
    const int beta = detail::small_valuation(n, p);
    int best = 0;
    std::int64_t mod = 1;
    for (int delta = 1; delta <= delta_max; ++delta) {
        mod *= p;
        std::int64_t step = 1;
        for (int i = 0; i < std::min(beta, delta); ++i) step *= p;
        std::vector<char> member(static_cast<std::size_t>(mod), 0);
        std::vector<char> seen_class(static_cast<std::size_t>(step), 0);
        for (std::int64_t k = 1; k < mod; ++k) {
            if (k % p == 0) continue;
            // ratios from this k cover { x : x k = k mod step }, which depends on k only through
            // k mod step; one k per class enumerates them all
            if (seen_class[k % step]) continue;
            seen_class[k % step] = 1;
            mpz_class kinv, km = k, mm = mod;
            mpz_invert(kinv.get_mpz_t(), km.get_mpz_t(), mm.get_mpz_t());
            const std::int64_t ki = kinv.get_si();
            for (std::int64_t l = k % step; l < mod; l += step) {
                if (l % p == 0) continue;
                member[static_cast<std::size_t>((unsigned __int128)l * ki % mod)] = 1;
            }
        }
        bool ok = true;
        for (std::int64_t x = 1; x < mod && ok; ++x)
            if (member[x] && detail::powmod(x, static_cast<std::uint64_t>(c), mod) != 1) ok = false;
        if (!ok) break;
        best = delta;
    }
    return best;
}

struct PrimeVerdict {
    std::int64_t p;
    int brute;    // max admissible delta
    int formula;  // v_p(refined)
    int delta_max;
    bool sound;
    bool tight;
};

struct Lemma45Verification {
    BoundReport bound;
    std::vector<PrimeVerdict> primes;
    bool refined_divides_coarse;
    bool passed;
    std::vector<std::int64_t> tight_primes() const {
        std::vector<std::int64_t> out;
        for (const auto& v : primes)
            if (v.tight) out.push_back(v.p);
        return out;
    }
};

/// Largest delta with p^delta <= limit (at least 1 when p <= limit).
inline int delta_cap(std::int64_t p, std::int64_t limit) {
    int d = 0;
    std::int64_t m = 1;
    while (m * p <= limit) {
        m *= p;
        ++d;
    }
    return d;
}

/**
 * For every prime p <= p_max compares the oracle with v_p(refined), with delta
 * capped at delta_max and at p^delta <= `modulus_limit`. A prime is tight when the
 * oracle reaches a positive formula exponent.
 */
inline Lemma45Verification verify_lemma45_detail(std::int64_t n, std::int64_t c, std::int64_t p_max, int delta_max,
                                                 std::int64_t modulus_limit = kMaxEnumeration) {
    detail::require_bound_input(n, c);
    Lemma45Verification out{lemma45_refined(n, c), {}, false, true};
    out.refined_divides_coarse = mpz_divisible_p(out.bound.coarse.get_mpz_t(), out.bound.refined.get_mpz_t()) != 0;
    out.passed = out.refined_divides_coarse;
    for (std::int64_t p = 2; p <= p_max; ++p) {
        if (!is_prime(p)) continue;
        int cap = std::min(delta_max, delta_cap(p, std::min(modulus_limit, kMaxEnumeration)));
        if (cap < 1) continue;
        auto it = out.bound.per_prime.find(p);
        int formula = it == out.bound.per_prime.end() ? 0 : it->second;
        int brute = max_admissible_delta(p, n, c, cap);
        bool sound = brute <= formula;
        out.primes.push_back({p, brute, formula, cap, sound, formula > 0 && brute == formula});
        out.passed = out.passed && sound;
    }
    return out;
}

inline CheckReport verify_lemma45(std::int64_t n, std::int64_t c, std::int64_t p_max, int delta_max) {
    Lemma45Verification v = verify_lemma45_detail(n, c, p_max, delta_max);
    CheckReport r;
    r.name = "lemma45";
    r.inputs = {{"n", std::to_string(n)}, {"c", std::to_string(c)}, {"p_max", std::to_string(p_max)},
                {"delta_max", std::to_string(delta_max)}};
    std::string tight;
    for (auto p : v.tight_primes()) tight += (tight.empty() ? "" : ",") + std::to_string(p);
    long violations = 0;
    for (const auto& pv : v.primes)
        if (!pv.sound) ++violations;
    r.outputs = {{"refined", v.bound.refined.get_str()},
                 {"coarse", v.bound.coarse.get_str()},
                 {"refined_divides_coarse", v.refined_divides_coarse ? "true" : "false"},
                 {"tight_primes", tight}};
    r.residual = BigReal(violations + (v.refined_divides_coarse ? 0 : 1), 64);
    r.tolerance = BigReal(0, 64);
    r.passed = v.passed;
    return r;
}

}  // namespace ellgreen
