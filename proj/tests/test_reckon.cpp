#include "ellgreen/acceptance.hpp"
#include "ellgreen/reckon.hpp"

#include <gtest/gtest.h>

using namespace ellgreen;

namespace {

IntPolynomial poly(std::initializer_list<long> c) {
    IntPolynomial p;
    for (long v : c) p.coeffs.emplace_back(v);
    return p;
}

mpz_class norm_sq(const std::vector<mpz_class>& v) { return detail::dot(v, v); }

}  // namespace

TEST(Polynomial, NormalizeAndPrint) {
    EXPECT_EQ(normalize(poly({0, 2, -4})), poly({-1, 2}));
    EXPECT_EQ(normalize(poly({3, 0, 0})), poly({1}));
    EXPECT_EQ(poly({1, -7300802, 1}).to_string(), "x^2 - 7300802*x + 1");
    EXPECT_EQ(poly({-1, 16777216}).to_string(), "16777216*x - 1");
    EXPECT_EQ(poly({-2, 0, 1}).to_string(), "x^2 - 2");
}

TEST(Lll, IdentityAndScaledIdentityAreFixed) {
    IntMatrix id{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    EXPECT_EQ(lll_reduce(id), id);
    IntMatrix seven{{7, 0, 0}, {0, 7, 0}, {0, 0, 7}};
    EXPECT_EQ(lll_reduce(seven), seven);
}

TEST(Lll, FindsShortestVectorInPlane) {
    IntMatrix b{{201, 37}, {1648, 297}};
    IntMatrix r = lll_reduce(b);
    EXPECT_TRUE(is_lll_reduced(r));
    // brute-force minimum over small combinations
    mpz_class best = -1;
    for (long x = -60; x <= 60; ++x)
        for (long y = -60; y <= 60; ++y) {
            if (x == 0 && y == 0) continue;
            std::vector<mpz_class> v{x * b[0][0] + y * b[1][0], x * b[0][1] + y * b[1][1]};
            mpz_class n = norm_sq(v);
            if (best < 0 || n < best) best = n;
        }
    EXPECT_EQ(norm_sq(r[0]), best);
    EXPECT_EQ(best, 1025);
    // determinant is preserved up to sign
    mpz_class d0 = b[0][0] * b[1][1] - b[0][1] * b[1][0];
    mpz_class d1 = r[0][0] * r[1][1] - r[0][1] * r[1][0];
    EXPECT_EQ(abs(d0), abs(d1));
}

TEST(Lll, ReducesRandomBases) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        IntMatrix b(4, std::vector<mpz_class>(5));
        for (auto& row : b)
            for (auto& x : row) x = static_cast<long>(rng() % 2001) - 1000;
        try {
            EXPECT_TRUE(is_lll_reduced(lll_reduce(b)));
        } catch (const DependentRows&) {
        }
    }
    EXPECT_FALSE(is_lll_reduced({{201, 37}, {1648, 297}}));
}

TEST(Lll, DependentRowsThrow) {
    EXPECT_THROW(lll_reduce({{1, 2, 3}, {2, 4, 6}}), DependentRows);
}

TEST(Algdep, RationalAndQuadratic) {
    PrecisionContext ctx(256);
    auto two = algdep(make_scalar<BigReal>(2, ctx), 4, ctx);
    ASSERT_TRUE(two);
    EXPECT_EQ(*two, poly({-2, 1}));
    auto sqrt2 = algdep(mp::sqrt(make_scalar<BigReal>(2, ctx)), 4, ctx);
    ASSERT_TRUE(sqrt2);
    EXPECT_EQ(*sqrt2, poly({-2, 0, 1}));
    BigReal phi = (1 + mp::sqrt(make_scalar<BigReal>(5, ctx))) / 2;
    auto golden = algdep(phi, 4, ctx);
    ASSERT_TRUE(golden);
    EXPECT_EQ(*golden, poly({-1, -1, 1}));
}

TEST(Algdep, TranscendentalIsRejected) {
    PrecisionContext ctx(256);
    EXPECT_FALSE(algdep(pi_of<BigReal>(ctx), 4, ctx));
    EXPECT_THROW(algdep(pi_of<BigReal>(ctx), 0, ctx), std::invalid_argument);
}

TEST(UnitCheck, OrderSixPresetIsUnit) {
    PrecisionContext ctx(768);
    auto r = unit_check(Tau::i(), unit_preset(6), 8, ctx);
    EXPECT_EQ(r.verdict, UnitVerdict::unit);
    ASSERT_TRUE(r.polynomial);
    EXPECT_EQ(r.polynomial->to_string(), "x^2 - 53301709843202*x + 1");
    EXPECT_TRUE(r.stable);
    EXPECT_LT(r.residual, 1e-200);
}

TEST(UnitCheck, OrderTwoIsUnitAwayFromTwo) {
    PrecisionContext ctx(768);
    auto r = unit_check(Tau::i(), unit_preset(2), 8, ctx);
    EXPECT_EQ(r.verdict, UnitVerdict::unit_away_from_n);
    ASSERT_TRUE(r.polynomial);
    EXPECT_EQ(r.polynomial->to_string(), "16777216*x - 1");
}

TEST(UnitCheck, OrderThreeSupportedOnThree) {
    PrecisionContext ctx(768);
    auto r = unit_check(Tau::i(), unit_preset(3), 8, ctx);
    EXPECT_EQ(r.verdict, UnitVerdict::unit_away_from_n);
    ASSERT_TRUE(r.polynomial);
    mpz_class three36;
    mpz_ui_pow_ui(three36.get_mpz_t(), 3, 36);
    EXPECT_EQ(r.polynomial->leading(), three36);
    EXPECT_EQ(r.polynomial->constant(), 1);
}

TEST(UnitCheck, SixthOfPeriodNeedsQuarticAtHigherPrecision) {
    PrecisionContext low(768);
    auto a = unit_check(Tau::i(), TorsionCoord{1, 0, 6}, 8, low);
    EXPECT_EQ(a.verdict, UnitVerdict::unrecognized);
    PrecisionContext high(1536);
    auto b = unit_check(Tau::i(), TorsionCoord{1, 0, 6}, 8, high);
    EXPECT_EQ(b.verdict, UnitVerdict::unit);
    ASSERT_TRUE(b.polynomial);
    EXPECT_EQ(b.polynomial->degree(), 4);
}

TEST(UnitCheck, ExponentTwelveSquaresToTwentyFour) {
    PrecisionContext ctx(768);
    UnitCheckOptions twelve;
    twelve.exponent = 12;
    auto a = unit_check(Tau::i(), unit_preset(6), 8, ctx, twelve);
    auto b = unit_check(Tau::i(), unit_preset(6), 8, ctx);
    EXPECT_GE(agree_bits(a.value * a.value, b.value, ctx), ctx.bits() - 64);
    EXPECT_EQ(a.exponent, 12);
}

TEST(UnitCheck, InputErrors) {
    PrecisionContext ctx(768);
    EXPECT_THROW(unit_check(Tau::i(), TorsionCoord{0, 0, 6}, 8, ctx), ZeroPoint);
    EXPECT_THROW(unit_check(Tau::i(), unit_preset(6), 8, PrecisionContext(256)), PrecisionTooLow);
    UnitCheckOptions bad;
    bad.exponent = 7;
    EXPECT_THROW(unit_check(Tau::i(), unit_preset(6), 8, ctx, bad), std::invalid_argument);
}

TEST(UnitCheck, PhiAgreesWithDirectEvaluation) {
    PrecisionContext ctx(768);
    auto r = unit_check(Tau::i(), unit_preset(5), 8, ctx);
    BigReal direct = phi_sigma(LatticeCoord(unit_preset(5)), Tau::i(), ctx).value;
    EXPECT_GE(agree_bits(r.phi, direct, ctx), ctx.bits());
    EXPECT_EQ(r.order, 5);
}
