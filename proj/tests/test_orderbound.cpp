#include "ellgreen/orderbound.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace ellgreen;

TEST(Refined, Examples) {
    EXPECT_EQ(lemma45_refined(1, 2).refined, 24);
    EXPECT_EQ(lemma45_refined(3, 2).refined, 24);
    EXPECT_EQ(lemma45_refined(1, 4).refined, 240);
    EXPECT_EQ(lemma45_refined(1, 2).f2_case, "n odd, c even");
}

TEST(Refined, TwoFactorCases) {
    EXPECT_EQ(lemma45_refined(1, 1).per_prime.at(2), 1);   // n, c odd
    EXPECT_EQ(lemma45_refined(3, 4).per_prime.at(2), 4);   // n odd: 2 + v2(4)
    EXPECT_EQ(lemma45_refined(2, 2).per_prime.at(2), 3);   // v2(n) = 1, c even: 1 + 1 + 1
    EXPECT_EQ(lemma45_refined(4, 2).per_prime.at(2), 3);   // v2(n) = 2: 2 + 1 + 0
    EXPECT_EQ(lemma45_refined(2, 3).per_prime.at(2), 1);   // c odd: 1 + 0 + 0
    EXPECT_EQ(lemma45_refined(9, 6).per_prime.at(3), 3);   // p | n: v3(9) + v3(6)
}

TEST(Coarse, Examples) {
    EXPECT_EQ(lemma45_coarse(1, 2), 24);
    EXPECT_EQ(lemma45_coarse(3, 2), 24);
    EXPECT_EQ(lemma45_coarse(1, 4), 240);
    EXPECT_THROW(lemma45_coarse(0, 2), std::invalid_argument);
}

TEST(Coarse, RefinedDivides) {
    for (int n = 1; n <= 30; ++n)
        for (int c = 1; c <= 20; ++c) {
            auto b = lemma45_refined(n, c);
            EXPECT_TRUE(mpz_divisible_p(b.coarse.get_mpz_t(), b.refined.get_mpz_t())) << n << "," << c;
        }
}

TEST(MaxDelta, Examples) {
    EXPECT_EQ(max_admissible_delta(3, 1, 2, 4), 1);
    EXPECT_EQ(max_admissible_delta(2, 1, 2, 5), 3);
    EXPECT_EQ(max_admissible_delta(3, 3, 2, 4), 1);
    EXPECT_EQ(max_admissible_delta(5, 1, 2, 3), 0);
    EXPECT_THROW(max_admissible_delta(4, 1, 2, 2), NotPrime);
    EXPECT_THROW(max_admissible_delta(2, 1, 2, 30), Overflow);
}

TEST(MaxDelta, AgreesWithLiteralEnumeration) {
    // the direct residue set, exponentiated, gives the same answer
    for (std::int64_t p : {2, 3, 5})
        for (std::int64_t n : {1, 2, 3, 4, 6})
            for (std::int64_t c : {1, 2, 4}) {
                int expected = 0;
                for (int d = 1; d <= 4; ++d) {
                    std::int64_t mod = 1;
                    for (int i = 0; i < d; ++i) mod *= p;
                    if (mod * n > 20000) break;
                    auto set = residue_set(p, n, d);
                    bool ok = std::all_of(set.begin(), set.end(),
                                          [&](std::int64_t x) { return detail::powmod(x, c, mod) == 1; });
                    if (!ok) break;
                    expected = d;
                }
                int cap = 1;
                for (std::int64_t m = p; m * p * n <= 20000 && cap < 4; m *= p) ++cap;
                EXPECT_EQ(max_admissible_delta(p, n, c, cap), expected) << p << "," << n << "," << c;
            }
}

TEST(ResidueSet, IsSubgroup) {
    for (std::int64_t p : {2, 3, 5})
        for (std::int64_t n : {1, 2, 3, 4, 5, 6}) {
            auto set = residue_set(p, n, 2);
            std::set<std::int64_t> s(set.begin(), set.end());
            std::int64_t mod = p * p;
            EXPECT_TRUE(s.count(1));
            for (auto x : set)
                for (auto y : set) EXPECT_TRUE(s.count(x * y % mod)) << p << "," << n;
        }
}

TEST(ResidueSet, FullUnitGroupWhenPrimeDoesNotDivideN) {
    for (std::int64_t p : {2, 3, 5, 7})
        for (std::int64_t n : {1, 2, 3, 5, 7, 11}) {
            if (n % p == 0) continue;
            for (int d = 1; d <= 2; ++d) {
                std::int64_t mod = d == 1 ? p : p * p;
                if (mod * n > 20000) continue;
                auto set = residue_set(p, n, d);
                std::int64_t units = mod - mod / p;
                EXPECT_EQ(static_cast<std::int64_t>(set.size()), units) << p << "," << n << "," << d;
            }
        }
}

TEST(ResidueSet, KernelOfReductionWhenPrimeDividesN) {
    // p | n, delta > beta = v_p(n): C = { x = 1 mod p^beta }
    for (auto [p, n, d] : {std::tuple{2, 2, 3}, std::tuple{2, 4, 3}, std::tuple{3, 3, 2}, std::tuple{3, 6, 3},
                           std::tuple{5, 5, 2}}) {
        auto set = residue_set(p, n, d);
        std::int64_t beta_mod = 1, nn = n;
        while (nn % p == 0) {
            nn /= p;
            beta_mod *= p;
        }
        std::int64_t mod = 1;
        for (int i = 0; i < d; ++i) mod *= p;
        std::vector<std::int64_t> kernel;
        for (std::int64_t x = 1; x < mod; ++x)
            if (x % beta_mod == 1 % beta_mod && x % p != 0) kernel.push_back(x);
        EXPECT_EQ(set, kernel) << p << "," << n << "," << d;
    }
}

TEST(Verify, Examples) {
    auto a = verify_lemma45_detail(1, 2, 50, 6);
    EXPECT_TRUE(a.passed);
    EXPECT_EQ(a.tight_primes(), (std::vector<std::int64_t>{2, 3}));
    EXPECT_TRUE(verify_lemma45(2, 2, 50, 6).passed);
    auto c = verify_lemma45_detail(1, 4, 50, 6);
    EXPECT_TRUE(c.passed);
    EXPECT_EQ(c.tight_primes(), (std::vector<std::int64_t>{2, 3, 5}));
}

TEST(Verify, SoundOverSweep) {
    for (int n = 1; n <= 12; ++n)
        for (int c : {1, 2, 3, 4, 6, 8}) {
            auto v = verify_lemma45_detail(n, c, 50, 64, 100000);
            for (const auto& pv : v.primes) EXPECT_TRUE(pv.sound) << n << "," << c << ", p=" << pv.p;
        }
}
