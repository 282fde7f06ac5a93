#include "ellgreen/lattice.hpp"
#include "ellgreen/rational.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace ellgreen;

namespace {

BigReal real(long v, const PrecisionContext& ctx) { return make_scalar<BigReal>(v, ctx); }

bool in_fundamental_domain(const Tau& t) {
    return abs(t.re()) <= mpq_class(1, 2) && t.abs_sq() >= 1;
}

}  // namespace

TEST(Rational, ParsesFractionsAndDecimals) {
    EXPECT_EQ(parse_rational("1/3"), mpq_class(1, 3));
    EXPECT_EQ(parse_rational("-2/4"), mpq_class(-1, 2));
    EXPECT_EQ(parse_rational("0.3"), mpq_class(3, 10));
    EXPECT_EQ(parse_rational("1.25e-2"), mpq_class(1, 80));
    EXPECT_EQ(parse_rational("7"), mpq_class(7));
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
    EXPECT_EQ(frac(mpq_class(-1, 3)), mpq_class(2, 3));
}

TEST(Tau, ParsesPresetsAndPairs) {
    EXPECT_EQ(Tau::parse("i"), Tau::i());
    EXPECT_EQ(Tau::parse("2i"), Tau(0, 4));
    EXPECT_EQ(Tau::parse("0,1"), Tau::i());
    EXPECT_EQ(Tau::parse("0.3,1.2"), Tau(mpq_class(3, 10), mpq_class(36, 25)));
    EXPECT_THROW(Tau::parse("0,-1"), std::invalid_argument);
    EXPECT_THROW(Tau::parse("nonsense"), std::invalid_argument);
}

TEST(ReduceTau, IdentityAtI) {
    auto [t, m] = reduce_tau(Tau::i());
    EXPECT_EQ(t, Tau::i());
    EXPECT_EQ(m, UnimodularMatrix::identity());
}

TEST(ReduceTau, TranslationOnly) {
    auto [t, m] = reduce_tau(Tau::from_parts(5, 1));
    EXPECT_EQ(t, Tau::i());
    EXPECT_EQ(m, (UnimodularMatrix{1, -5, 0, 1}));
}

TEST(ReduceTau, SmallTauMobiusIdentity) {
    Tau tau = Tau::parse("0.1,0.1");
    auto [t, m] = reduce_tau(tau);
    EXPECT_TRUE(m.valid());
    EXPECT_TRUE(in_fundamental_domain(t));
    EXPECT_EQ(tau.apply(m), t);
    // numerically too: (a tau + b)/(c tau + d)
    PrecisionContext ctx(128);
    BigComplex z = tau.value<BigReal>(ctx);
    BigComplex num = z * real(m.a, ctx);
    num.re += m.b;
    BigComplex den = z * real(m.c, ctx);
    den.re += m.d;
    BigComplex w = num / den;
    BigComplex expect = t.value<BigReal>(ctx);
    EXPECT_GE(agree_bits(w.re, expect.re, ctx), ctx.bits());
    EXPECT_GE(agree_bits(w.im, expect.im, ctx), ctx.bits());
}

TEST(ReduceTau, ManyPointsLandInDomain) {
    for (int a = -7; a <= 7; ++a)
        for (int b = 1; b <= 9; ++b) {
            Tau tau = Tau::from_parts(mpq_class(a, 3), mpq_class(b, 11));
            auto [t, m] = reduce_tau(tau);
            EXPECT_TRUE(in_fundamental_domain(t)) << tau.to_string();
            EXPECT_EQ(tau.apply(m), t);
            // |q'| <= e^{-pi sqrt 3}
            EXPECT_GE(t.im_sq(), mpq_class(3, 4));
        }
}

TEST(TransformCoord, Examples) {
    LatticeCoord half(mpq_class(1, 2), 0);
    EXPECT_EQ(transform_coord(half, UnimodularMatrix::identity()), half);
    EXPECT_EQ(transform_coord(LatticeCoord(), UnimodularMatrix::S()), LatticeCoord());
    EXPECT_EQ(transform_coord(half, UnimodularMatrix::S()), LatticeCoord(0, mpq_class(1, 2)));
}

TEST(TransformCoord, TracksTheRescaledPoint) {
    // z / (c tau + d) must equal a1' tau' + a2' modulo Z + Z tau'
    PrecisionContext ctx(192);
    Tau tau = Tau::parse("0.3,1.2");
    LatticeCoord z(mpq_class(2, 7), mpq_class(3, 11));
    for (UnimodularMatrix m : {UnimodularMatrix::S(), UnimodularMatrix::T(), UnimodularMatrix{2, 1, 1, 1},
                               UnimodularMatrix{1, 0, 3, 1}}) {
        Tau image = tau.apply(m);
        LatticeCoord moved = transform_coord(z, m);
        BigComplex t = tau.value<BigReal>(ctx);
        BigComplex den = t * real(m.c, ctx);
        den.re += m.d;
        BigComplex scaled = z.point<BigReal>(tau, ctx) / den;
        BigComplex target = moved.point<BigReal>(image, ctx);
        BigComplex diff = scaled - target;
        // solve diff = u tau' + v and require u, v integral
        BigComplex tp = image.value<BigReal>(ctx);
        BigReal u = diff.im / tp.im;
        BigReal v = diff.re - u * tp.re;
        EXPECT_LT(mp::abs(u - BigReal(u.round_to_integer(), u.precision())), 1e-40);
        EXPECT_LT(mp::abs(v - BigReal(v.round_to_integer(), v.precision())), 1e-40);
    }
}

TEST(TransformCoord, GroupAction) {
    LatticeCoord z(mpq_class(1, 3), mpq_class(1, 5));
    UnimodularMatrix a{2, 1, 1, 1}, b = UnimodularMatrix::S() * UnimodularMatrix::T();
    EXPECT_EQ(transform_coord(transform_coord(z, b), a), transform_coord(z, a * b));
    EXPECT_EQ(transform_coord(transform_coord(z, a), a.inverse()), z);
}

TEST(TorsionPoints, CountsAndOrder) {
    EXPECT_TRUE(torsion_points(1).empty());
    auto two = torsion_points(2, true);
    EXPECT_EQ(two.size(), 3u);
    for (int n = 1; n <= 12; ++n) EXPECT_EQ(torsion_points(n).size(), static_cast<std::size_t>(n * n - 1));
    // exact-order count by brute-force gcd
    for (int n = 2; n <= 12; ++n) {
        std::size_t expected = 0;
        for (int p1 = 0; p1 < n; ++p1)
            for (int p2 = 0; p2 < n; ++p2)
                if (std::gcd(std::gcd(p1, p2), n) == 1) ++expected;
        EXPECT_EQ(torsion_points(n, true).size(), expected);
    }
    EXPECT_EQ(torsion_points(6, true).size(), 24u);
    auto pts = torsion_points(3);
    EXPECT_EQ(pts.front().p1, 0);
    EXPECT_EQ(pts.front().p2, 1);
    EXPECT_EQ(pts.back().p1, 2);
}

TEST(LatticeCoord, StoredReduced) {
    LatticeCoord z(mpq_class(7, 3), mpq_class(-1, 5));
    EXPECT_EQ(z.a1(), mpq_class(1, 3));
    EXPECT_EQ(z.a2(), mpq_class(4, 5));
    EXPECT_TRUE(LatticeCoord(1, 2).is_zero());
    EXPECT_EQ(LatticeCoord(TorsionCoord{2, 3, 6}), LatticeCoord(mpq_class(1, 3), mpq_class(1, 2)));
    EXPECT_EQ((TorsionCoord{2, 4, 6}).order(), 3);
    EXPECT_EQ(LatticeCoord::parse("1/3,1/5"), LatticeCoord(mpq_class(1, 3), mpq_class(1, 5)));
}

TEST(EisensteinE2, ValueAtI) {
    PrecisionContext ctx(256);
    BigComplex e2 = eisenstein_e2(Tau::i(), ctx);
    BigReal expected = real(3, ctx) / pi_of<BigReal>(ctx);
    EXPECT_GE(agree_bits(e2.re, expected, ctx), ctx.bits());
    EXPECT_LT(mp::abs(e2.im), mp::ldexp(real(1, ctx), -ctx.bits()));
}

TEST(EisensteinE2, LimitAndPeriodicity) {
    PrecisionContext ctx(128);
    BigComplex far = eisenstein_e2(Tau::from_parts(0, 40), ctx);
    EXPECT_LT(mp::abs(far.re - 1), 1e-100);
    Tau t = Tau::parse("0.3,1.2");
    BigComplex a = eisenstein_e2(t, ctx);
    BigComplex b = eisenstein_e2(t.apply(UnimodularMatrix::T()), ctx);
    EXPECT_GE(agree_bits(a.re, b.re, ctx), ctx.bits() - 4);
    EXPECT_GE(agree_bits(a.im, b.im, ctx), ctx.bits() - 4);
}

TEST(EisensteinE2, SlowWarningBelowThreshold) {
    PrecisionContext ctx(64);
    Warning w = Warning::none;
    eisenstein_e2(Tau::from_parts(0, mpq_class(1, 20)), ctx, &w);
    EXPECT_TRUE(has(w, Warning::slow_convergence));
}

TEST(QuasiPeriod, LinearityAndLegendre) {
    PrecisionContext ctx(256);
    Tau tau = Tau::i();
    BigComplex zero = quasi_period(LatticeCoord(), tau, ctx);
    EXPECT_TRUE(zero.re.is_zero() && zero.im.is_zero());
    // eta(1) at tau = i is pi
    QuasiPeriods qp = quasi_periods(tau, ctx);
    EXPECT_GE(agree_bits(qp.eta1.re, pi_of<BigReal>(ctx), ctx), ctx.bits());
    // eta1 tau - eta2 = 2 pi i at an arbitrary tau
    Tau t = Tau::parse("0.3,1.2");
    qp = quasi_periods(t, ctx);
    BigComplex leg = qp.eta1 * t.value<BigReal>(ctx) - qp.eta2;
    EXPECT_LT(mp::abs(leg.re), 1e-70);
    EXPECT_GE(agree_bits(leg.im, 2 * pi_of<BigReal>(ctx), ctx), ctx.bits());
    // additivity on exact coordinates before reduction
    LatticeCoord a(mpq_class(1, 3), mpq_class(1, 5)), b(mpq_class(1, 4), mpq_class(2, 7));
    BigComplex sum = quasi_period(a, t, ctx) + quasi_period(b, t, ctx);
    BigComplex joint = quasi_period(a + b, t, ctx);
    EXPECT_LT(mp::abs(sum.re - joint.re), 1e-70);
    EXPECT_LT(mp::abs(sum.im - joint.im), 1e-70);
}
