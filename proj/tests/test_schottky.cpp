#include "fuchsdim/errors.hpp"
#include "fuchsdim/schottky.hpp"

#include "test_support.hpp"

#include <random>

using namespace fuchsdim;
using fuchsdim::testing::near_abs;
using fuchsdim::testing::near_rel;
using fuchsdim::testing::P512;

TEST(Generators, ParametersFollowTheConstruction) {
    for (long j = 1; j <= 12; ++j) {
        const GeneratorParams p = generator_params(j, P512);
        EXPECT_TRUE(p.x == BigReal::pow2(j * j, P512));
        EXPECT_TRUE(p.r == BigReal::pow2(-j - 2, P512));
        EXPECT_TRUE(near_rel(p.xp, sqrt(p.x * p.x + p.r * p.r), -505));
        // λ_j = 1 + (2x² + 2x sqrt(x² + r²)) / r².
        const BigReal lam = 1L + (2L * p.x * p.x + 2L * p.x * sqrt(p.x * p.x + p.r * p.r)) / (p.r * p.r);
        EXPECT_TRUE(near_rel(p.lambda, lam, -500));
        const GeneratorParams m = generator_params(-j, P512);
        EXPECT_TRUE(m.x == -p.x);
        EXPECT_TRUE(m.xp == -p.xp);
        EXPECT_TRUE(m.r == p.r);
        EXPECT_TRUE(m.lambda == p.lambda);
    }
    EXPECT_THROW(generator_params(0, P512), std::invalid_argument);
}

TEST(Generators, MatchThePrintedMap) {
    // h_j(z) = (x(λ+1) z + x²(λ-1)) / ((λ-1) z + (λ+1) x).
    std::mt19937_64 rng(41);
    for (long j = 1; j <= 8; ++j) {
        const GeneratorParams p = generator_params(j, P512);
        const MoebiusMap h = build_generator(j, P512);
        for (int i = 0; i < 20; ++i) {
            const BigReal y(std::uniform_real_distribution<double>(-50, 50)(rng), P512);
            const BigReal ref = (p.x * (p.lambda + 1L) * y + p.x * p.x * (p.lambda - 1L)) /
                                ((p.lambda - 1L) * y + (p.lambda + 1L) * p.x);
            const BoundaryPoint img = apply(h, BoundaryPoint::finite(y));
            ASSERT_TRUE(img.is_finite());
            EXPECT_TRUE(near_rel(img.value(), ref, -480));
        }
        // ad - bc cancels at the scale of |ad|, so the residual is measured against it.
        const BigReal scale = max(abs(h.a() * h.d()), BigReal(1L, P512));
        EXPECT_TRUE(abs(h.a() * h.d() - h.b() * h.c() - 1L) <= scale.ldexp(-500)) << "j=" << j;
    }
}

TEST(Generators, FixedPointsAreMinusAndPlusX) {
    for (long j = 1; j <= 10; ++j) {
        const MoebiusMap h = build_generator(j, P512);
        EXPECT_EQ(classify(h).cls, MapClass::hyperbolic);
        const FixedPoints fp = fixed_points(h);
        ASSERT_EQ(fp.boundary.size(), 2u);
        const BigReal x = BigReal::pow2(j * j, P512);
        EXPECT_TRUE(near_rel(fp.boundary[0].value(), -x, -480));
        EXPECT_TRUE(near_rel(fp.boundary[1].value(), x, -480));
    }
}

TEST(Generators, NegativeIndexIsTheInverse) {
    for (long j = 1; j <= 10; ++j) {
        const MoebiusMap h = build_generator(j, P512);
        const MoebiusMap g = build_generator(-j, P512);
        EXPECT_TRUE(coefficient_distance(compose(h, g), MoebiusMap::identity(P512)) <= BigReal::pow2(-400, P512));
    }
}

TEST(Generators, PairingHitsTheCircleEndpoints) {
    for (long j = 1; j <= 12; ++j) {
        const PairingReport rep = pairing_check(j, P512);
        EXPECT_TRUE(rep.residual_center_plus <= BigReal::pow2(-240, P512)) << j;
        EXPECT_TRUE(rep.residual_center_minus <= BigReal::pow2(-240, P512)) << j;
        EXPECT_EQ(rep.matches, "x_prime");
        EXPECT_TRUE(rep.orientation_ok);
    }
    // The literal targets x_j ± r_j miss by x'_j - x_j ≈ r_j² / (2 x_j).
    const PairingReport one = pairing_check(1, P512);
    EXPECT_NEAR(one.residual_literal_plus.to_double(), (1.0 / 64) / 4, 1e-4);
}

TEST(Generators, ExteriorMapsIntoTheImageDisk) {
    std::mt19937_64 rng(43);
    for (long j = 2; j <= 6; ++j) {
        const MoebiusMap h = build_generator(j, P512);
        const HalfCircle src = base_circle(-j, P512);
        const HalfCircle dst = base_circle(j, P512);
        for (int i = 0; i < 50; ++i) {
            const UHPoint z{BigReal(std::uniform_real_distribution<double>(-100, 100)(rng), P512),
                            BigReal(std::uniform_real_distribution<double>(0.01, 50)(rng), P512)};
            if (src.contains(z)) {
                continue;
            }
            EXPECT_TRUE(dst.contains(apply(h, z)));
        }
    }
}

TEST(Generators, ExponentRangeIsChecked) {
    EXPECT_EQ(generator_exponent_need(40), 2 * 1600 + 80 + 8);
    EXPECT_THROW(generator_params(40, Precision{4096}, 1000), ExponentOverflow);
    EXPECT_NO_THROW(generator_params(40, Precision{4096}));
}

TEST(Family, AlphabetAndCircles) {
    const GeneratorFamily f(2, 6, P512);
    EXPECT_EQ(f.alphabet().size(), 10u);
    EXPECT_EQ(f.alphabet().front(), -6);
    EXPECT_EQ(f.alphabet().back(), 6);
    EXPECT_FALSE(f.in_alphabet(1));
    EXPECT_TRUE(f.in_alphabet(-4));
    // Circles are pairwise disjoint, so the ping-pong construction applies.
    for (long a : f.alphabet()) {
        for (long b : f.alphabet()) {
            if (a < b) {
                EXPECT_TRUE(f.circle(a).q().value() < f.circle(b).p().value());
            }
        }
    }
}

TEST(Family, PrecisionGuard) {
    EXPECT_NO_THROW(GeneratorFamily(2, 6, Precision{64}));
    EXPECT_THROW(GeneratorFamily(2, 23, P512), PrecisionExhausted);
    EXPECT_THROW(GeneratorFamily(3, 2, P512), std::invalid_argument);
}

TEST(Family, FundamentalDomain) {
    const GeneratorFamily f(2, 6, P512);
    const BigReal zero(0L, P512);
    EXPECT_TRUE(in_fundamental_domain(UHPoint{zero, BigReal(1L, P512)}, 2, f));
    const GeneratorParams p = f.params(3);
    EXPECT_FALSE(in_fundamental_domain(UHPoint{p.xp, p.r / 2L}, 2, f));
    // On the circle itself: not in the open domain.
    EXPECT_FALSE(in_fundamental_domain(UHPoint{p.xp, p.r}, 2, f));
    EXPECT_TRUE(in_fundamental_domain(BoundaryPoint::finite(zero), 2, f));
    EXPECT_FALSE(in_fundamental_domain(BoundaryPoint::finite(p.xp), 2, f));
    EXPECT_THROW(in_fundamental_domain(BoundaryPoint::infinity(), 2, f), Indeterminate);
    EXPECT_THROW(in_fundamental_domain(BoundaryPoint::finite(BigReal::pow2(60, P512)), 2, f), Indeterminate);
}

TEST(Family, ManifestRoundTrip) {
    const GeneratorFamily f(2, 6, P512);
    const std::string text = family_manifest_json(f);
    const GeneratorFamily g = family_from_manifest_json(text);
    EXPECT_EQ(family_manifest_json(g), text);
    for (long j : f.alphabet()) {
        EXPECT_TRUE(coefficient_distance(f.generator(j), g.generator(j)).is_zero());
    }
    EXPECT_NE(text.find("\"generator_count\": 10"), std::string::npos);
}
