#include "test_support.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

using namespace fuchsdim;
using fuchsdim::testing::near_abs;
using fuchsdim::testing::near_rel;
using fuchsdim::testing::P512;

TEST(BigReal, RejectsNarrowPrecision) {
    EXPECT_THROW(Precision{32}, std::invalid_argument);
    EXPECT_NO_THROW(Precision{64});
}

TEST(BigReal, MixedPrecisionTakesTheWider) {
    const BigReal a(1L, Precision{64});
    const BigReal b(3L, Precision{256});
    EXPECT_EQ((a / b).precision().bits(), 256);
    EXPECT_EQ((b + a).precision().bits(), 256);
}

TEST(BigReal, PiMatchesPublishedDigits) {
    const BigReal ref = BigReal::parse("3.14159265358979323846264338327950288419716939937510582097494459230781640628620899",
                                       P512);
    EXPECT_TRUE(near_abs(BigReal::pi(P512), ref, -260));
}

TEST(BigReal, BinaryStringRoundTripsExactly) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const BigReal x = sqrt(BigReal(static_cast<long>(rng() % 100000 + 1), P512)) *
                          BigReal::pow2(static_cast<long>(rng() % 400) - 200, P512);
        const BigReal y = BigReal::parse(x.to_binary(), P512);
        EXPECT_TRUE(x == y) << x.to_binary();
    }
}

TEST(BigReal, DecimalOutputParsesBackClosely) {
    const BigReal x = BigReal(1L, P512) / 3L;
    EXPECT_TRUE(near_rel(BigReal::parse(x.to_decimal(60), P512), x, -190));
}

TEST(BigReal, ElementaryIdentities) {
    const BigReal two(2L, P512);
    EXPECT_TRUE(near_abs(sqrt(two) * sqrt(two), two, -500));
    EXPECT_TRUE(near_abs(exp(log(BigReal(7L, P512))), BigReal(7L, P512), -500));
    const BigReal x = BigReal::parse("0.3", P512);
    EXPECT_TRUE(near_abs(sinh(asinh(x)), x, -505));
    EXPECT_TRUE(near_abs(cosh(acosh(two)), two, -505));
    EXPECT_TRUE(near_abs(sin(x) * sin(x) + cos(x) * cos(x), BigReal(1L, P512), -505));
    EXPECT_TRUE(near_abs(atan2(BigReal(1L, P512), BigReal(1L, P512)), BigReal::pi(P512) / 4L, -505));
    EXPECT_TRUE(near_abs(hypot(BigReal(3L, P512), BigReal(4L, P512)), BigReal(5L, P512), -505));
    EXPECT_TRUE(near_abs(pow(two, BigReal(10L, P512)), BigReal(1024L, P512), -495));
    EXPECT_TRUE(near_abs(log2(BigReal::pow2(77, P512)), BigReal(77L, P512), -500));
}

TEST(BigReal, AgreesWithDoubleArithmetic) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 500; ++i) {
        const double a = u(rng), b = u(rng);
        const BigReal x(a, P512), y(b, P512);
        EXPECT_EQ((x + y).to_double(), a + b);
        EXPECT_EQ((x * y).to_double(), a * b);
        EXPECT_EQ((x - y).to_double(), a - b);
        if (b != 0) {
            EXPECT_EQ((x / y).to_double(), a / b);
        }
    }
}

TEST(BigReal, ExponentAndScaling) {
    EXPECT_EQ(BigReal(1L, P512).exponent(), 1);
    EXPECT_EQ(BigReal::pow2(-40, P512).exponent(), -39);
    EXPECT_EQ(BigReal(0L, P512).exponent(), LONG_MIN);
    EXPECT_TRUE(BigReal(3L, P512).ldexp(5) == BigReal(96L, P512));
    EXPECT_TRUE(BigReal::pow2(1L << 20, P512).is_finite());
}

TEST(BigReal, FloorAndRounding) {
    EXPECT_EQ(BigReal::parse("-1.5", P512).to_long_floor(), -2);
    EXPECT_EQ(BigReal::parse("2.999", P512).to_long_floor(), 2);
    EXPECT_TRUE(floor(BigReal::parse("7.25", P512)) == BigReal(7L, P512));
    EXPECT_THROW(BigReal::pow2(200, P512).to_long_floor(), std::range_error);
}

TEST(BigReal, ComparisonsAndSign) {
    const BigReal a(2L, P512), b(3L, P512);
    EXPECT_TRUE(a < b);
    EXPECT_TRUE(b > 2L);
    EXPECT_TRUE(a == 2L);
    EXPECT_EQ((-a).sign(), -1);
    EXPECT_TRUE(BigReal(0L, P512).is_zero());
    EXPECT_TRUE(BigReal::infinity(P512).is_inf());
    EXPECT_TRUE(&min(a, b) == &a);
    EXPECT_TRUE(&max(a, b) == &b);
}

TEST(BigReal, ParseRejectsGarbage) {
    EXPECT_THROW(BigReal::parse("twelve", P512), std::invalid_argument);
}

TEST(BigReal, MovedFromValueStaysUsable) {
    BigReal a(5L, P512);
    BigReal b(std::move(a));
    a = BigReal(2L, P512);
    EXPECT_TRUE(a + b == 7L);
}
