#include "ellgreen/numerics.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace ellgreen;

namespace {

BigReal real(long v, const PrecisionContext& ctx) { return make_scalar<BigReal>(v, ctx); }

/// Machin: pi = 16 atan(1/5) - 4 atan(1/239), each atan by its alternating series.
BigReal machin_pi(const PrecisionContext& ctx) {
    auto arctan_inv = [&](long m) {
        BigReal x = real(1, ctx) / m;
        BigReal x2 = x * x;
        BigReal power = x;
        BigReal sum = real(0, ctx);
        for (long k = 0;; ++k) {
            BigReal t = power / (2 * k + 1);
            if (t < mp::ldexp(real(1, ctx), -ctx.working_bits() - 8)) break;
            sum += (k % 2 == 0) ? t : -t;
            power *= x2;
        }
        return sum;
    };
    return 16 * arctan_inv(5) - 4 * arctan_inv(239);
}

}  // namespace

TEST(PrecisionContext, RejectsBadValues) {
    EXPECT_THROW(PrecisionContext(63), std::invalid_argument);
    EXPECT_THROW(PrecisionContext(128, -1), std::invalid_argument);
    PrecisionContext ctx(128, 16);
    EXPECT_EQ(ctx.working_bits(), 144);
    EXPECT_EQ(ctx.with_bits(512).guard(), 16);
}

TEST(SumTailBounded, GeometricHalfSumsToTwo) {
    PrecisionContext ctx(256);
    BigReal half = real(1, ctx) / 2;
    BigReal power = real(1, ctx);
    auto term = [&](long) {
        BigReal t = power;
        power *= half;
        return t;
    };
    auto s = sum_tail_bounded(term, [&](long k) { return mp::ldexp(real(1, ctx), -k); }, {0.5, 0}, ctx);
    EXPECT_EQ(agree_bits(s.value, real(2, ctx), ctx), ctx.working_bits());
    EXPECT_EQ(s.warnings, Warning::none);
}

TEST(SumTailBounded, AllZeroTermsGiveZero) {
    PrecisionContext ctx(128);
    auto s = sum_tail_bounded([&](long) { return real(0, ctx); }, {0.5, 0}, ctx);
    EXPECT_TRUE(s.value.is_zero());
}

TEST(SumTailBounded, ReciprocalFactorialsMatchExp) {
    PrecisionContext ctx(256);
    auto term = [&](long k) {
        BigReal fact = real(1, ctx);
        for (long j = 2; j <= k; ++j) fact *= j;
        return real(1, ctx) / fact;
    };
    // 1/k! decays with ratio 1/(k+1) <= 1/2 from k = 1
    auto s = sum_tail_bounded(term, {0.5, 1}, ctx);
    EXPECT_GE(agree_bits(s.value, mp::exp(real(1, ctx)), ctx), ctx.bits());
}

TEST(SumTailBounded, RejectsNonDecayingCertificate) {
    PrecisionContext ctx(128);
    EXPECT_THROW(sum_tail_bounded([&](long) { return real(1, ctx); }, {1.0, 0}, ctx), NonConvergent);
}

TEST(SumTailBounded, FlagsCancellation) {
    PrecisionContext ctx(128, 8);
    // 2^40 - 2^40 + 2^-k: the big pair cancels far beyond 8 guard bits
    BigReal big = mp::ldexp(real(1, ctx), 40);
    auto term = [&](long k) {
        if (k == 0) return big;
        if (k == 1) return -big;
        return mp::ldexp(real(1, ctx), -k);
    };
    auto majorant = [&](long k) { return k < 2 ? big : mp::ldexp(real(1, ctx), -k); };
    auto s = sum_tail_bounded(term, majorant, {0.5, 2}, ctx);
    EXPECT_TRUE(has(s.warnings, Warning::precision_loss));
}

TEST(ProductTailBounded, EulerProductOfHalfPowers) {
    // prod (1 + 2^-k) for k >= 1 against the partial product carried far past the cutoff
    PrecisionContext ctx(128);
    auto p = product_tail_bounded([&](long k) { return mp::ldexp(real(1, ctx), -k); },
                                  [&](long k) { return mp::ldexp(real(1, ctx), -k); }, {0.5, 1}, ctx, 1);
    BigReal ref = real(1, ctx);
    PrecisionContext wide(512);
    BigReal refw = make_scalar<BigReal>(1, wide);
    for (long k = 1; k < 600; ++k) refw *= 1 + mp::ldexp(make_scalar<BigReal>(1, wide), -k);
    EXPECT_GE(agree_bits(p.value, BigReal(refw, ctx.working_bits()), ctx), ctx.bits());
}

TEST(AgreeBits, Basics) {
    PrecisionContext ctx(256);
    EXPECT_EQ(agree_bits(real(1, ctx), real(1, ctx), ctx), ctx.working_bits());
    EXPECT_EQ(agree_bits(real(1, ctx), real(3, ctx) / 2, ctx), 1);
}

TEST(AgreeBits, PiTwoWays) {
    PrecisionContext ctx(256);
    EXPECT_GE(agree_bits(machin_pi(ctx), pi_of<BigReal>(ctx), ctx), 224);
}

TEST(Determinism, RepeatedEvaluationIsBitIdentical) {
    PrecisionContext ctx(300);
    EXPECT_EQ(machin_pi(ctx).to_string(), machin_pi(ctx).to_string());
}

TEST(MpReal, PrecisionPropagatesAndParses) {
    mp::Real a(1, 100), b(1, 300);
    EXPECT_EQ((a + b).precision(), 300);
    EXPECT_EQ(mp::Real::parse("0.25", 64).to_double(), 0.25);
    EXPECT_THROW(mp::Real::parse("x", 64), std::invalid_argument);
    EXPECT_NEAR(mp::expint_e1(mp::Real(1, 128)).to_double(), 0.21938393439552029, 1e-16);
}

TEST(Warnings, Names) {
    Warning w = Warning::slow_convergence | Warning::precision_loss;
    EXPECT_EQ(warning_names(w), (std::vector<std::string>{"slow_convergence", "precision_loss"}));
    EXPECT_TRUE(warning_names(Warning::none).empty());
}
