#include "fuchsdim/dimension.hpp"
#include "fuchsdim/errors.hpp"

#include "test_support.hpp"

#include <algorithm>
#include <cmath>

using namespace fuchsdim;
using fuchsdim::testing::P512;

namespace {

std::vector<BigReal> grid_points(long n) {
    std::vector<BigReal> pts;
    for (long i = 0; i < n; ++i) {
        pts.emplace_back(static_cast<double>(i) / static_cast<double>(n), P512);
    }
    return pts;
}

// Left endpoints of the depth-n middle-thirds intervals.
std::vector<BigReal> cantor_points(int depth) {
    std::vector<BigReal> pts{BigReal(0L, P512)};
    BigReal len(1L, P512);
    for (int d = 0; d < depth; ++d) {
        len /= 3L;
        std::vector<BigReal> next;
        for (const auto& p : pts) {
            next.push_back(p);
            next.push_back(p + 2L * len);
        }
        pts = std::move(next);
    }
    return pts;
}

BoundaryPoint attracting_fixed_point(long j, const GeneratorFamily& f) {
    for (const auto& b : fixed_points(f.generator(j)).boundary) {
        if (b.is_finite() && f.circle(j).contains_boundary(b.value())) {
            return b;
        }
    }
    throw std::logic_error("fixed point not found");
}

} // namespace

TEST(Certificate, PassesForSmallTruncations) {
    for (long k = 2; k <= 5; ++k) {
        const GeneratorFamily f(k, k + 4, P512);
        const CertificateReport rep = certify_hd_upper(k, 3, f, kDefaultWordBudget, 4);
        EXPECT_TRUE(rep.passed) << "k=" << k << " " << rep.violation;
        EXPECT_EQ(rep.alpha_rational, "1/" + std::to_string(2 * k));
        EXPECT_TRUE(rep.alpha * (2 * k) == 1L);
        EXPECT_EQ(rep.covers.size(), 3u);
        EXPECT_TRUE(rep.violation.empty());
    }
}

TEST(Certificate, RefusesKOne) {
    const GeneratorFamily f(1, 4, P512);
    EXPECT_THROW(certify_hd_upper(1, 2, f), std::invalid_argument);
    EXPECT_THROW(certify_hd_upper(3, 2, GeneratorFamily(2, 6, P512)), std::invalid_argument);
}

TEST(BoxCount, SinglePointHasSlopeZero) {
    const std::vector<BigReal> pts(1000, BigReal(0.3, P512));
    const BoxCountResult r = box_count_dimension(pts, 2, 14);
    EXPECT_EQ(r.distinct, 1u);
    EXPECT_DOUBLE_EQ(r.slope, 0.0);
}

TEST(BoxCount, UniformGridHasSlopeOne) {
    const BoxCountResult r = box_count_dimension(grid_points(1L << 14), 1, 12);
    EXPECT_NEAR(r.slope, 1.0, 0.05);
    EXPECT_LE(r.band_lo, r.slope);
    EXPECT_GE(r.band_hi, r.slope);
}

TEST(BoxCount, CantorSetMatchesSimilarityDimension) {
    const BoxCountResult r = box_count_dimension(cantor_points(12), 2, 16);
    EXPECT_NEAR(r.slope, std::log(2.0) / std::log(3.0), 0.05);
    EXPECT_EQ(r.points, 4096u);
}

TEST(BoxCount, SaturationIsDegenerate) {
    EXPECT_THROW(box_count_dimension(grid_points(1000), 8, 20), DegenerateFit);
    EXPECT_THROW(box_count_dimension(grid_points(999), 2, 14), std::invalid_argument);
    EXPECT_THROW(box_count_dimension(grid_points(2000), 2, 5), std::invalid_argument);
}

TEST(LimitSamples, DeterministicAndInsideFirstLetter) {
    const GeneratorFamily f(2, 6, P512);
    const auto a = sample_limit_points(f, 4, 300, 17, 1);
    const auto b = sample_limit_points(f, 4, 300, 17, 4);
    ASSERT_EQ(a.size(), 300u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].word, b[i].word);
        EXPECT_EQ(a[i].center.to_binary(), b[i].center.to_binary());
        EXPECT_EQ(a[i].word.size(), 4u);
        EXPECT_TRUE(is_reduced(a[i].word));
        EXPECT_TRUE(f.circle(a[i].word.front()).contains_boundary(a[i].center));
        // The center lies in every prefix circle.
        for (std::size_t len = 1; len < a[i].word.size(); ++len) {
            const ReducedWord prefix(a[i].word.begin(), a[i].word.begin() + static_cast<long>(len));
            EXPECT_TRUE(word_circle(prefix, f).circle.contains_boundary(a[i].center));
        }
    }
    EXPECT_THROW(sample_limit_points(f, 2, 10, 1), std::invalid_argument);
}

TEST(BoxCount, EstimatesDecreaseWithK) {
    double prev = 2;
    for (long k = 1; k <= 3; ++k) {
        const long j_max = k + 5;
        const GeneratorFamily f(k, j_max, Precision(std::max<long>(512, estimated_bits(j_max, 4))));
        const auto samples = sample_limit_points(f, 4, 2000, 7, 4);
        std::vector<BigReal> pts;
        for (const auto& s : samples) {
            pts.push_back(s.center);
        }
        const BoxCountResult r = box_count_dimension(pts, 0, 12);
        EXPECT_LE(r.slope, prev + 0.02) << "k=" << k;
        prev = r.slope;
    }
}

TEST(Orbit, SmallRadiiSeeOnlyTheIdentity) {
    const GeneratorFamily f(2, 6, P512);
    OrbitOptions opts;
    opts.budget = 1000;
    const OrbitReport rep = orbit_count(f, opts, 2);
    EXPECT_EQ(rep.n_max, max_length_within_budget(2, 6, 1000));
    EXPECT_EQ(rep.n_max, 3);  // 10 + 90 + 810 words
    for (const auto& row : rep.counts) {
        if (row.r < rep.min_distance.to_double()) {
            EXPECT_EQ(row.count, 1u) << "R=" << row.r;
        }
        EXPECT_LT(row.r, rep.completeness_radius.to_double());
    }
    EXPECT_TRUE(std::is_sorted(rep.counts.begin(), rep.counts.end(),
                               [](const OrbitRow& a, const OrbitRow& b) { return a.count < b.count; }));
}

TEST(Orbit, GeneratorDisplacementLowerBound) {
    const GeneratorFamily f(1, 8, P512);
    const UHPoint o{BigReal(0L, P512), BigReal(1L, P512)};
    for (long j : f.alphabet()) {
        const long a = std::abs(j);
        const BigReal d = hyp_distance(o, apply(f.generator(j), o));
        EXPECT_TRUE(d >= BigReal(static_cast<double>(2 * a * a + 2 * a + 6) * std::log(2.0), P512)) << j;
    }
}

TEST(Orbit, PoincareSumsAreMonotone) {
    const GeneratorFamily f(2, 6, P512);
    OrbitOptions opts;
    opts.budget = 10000;
    const OrbitReport rep = orbit_count(f, opts, 4);
    ASSERT_EQ(rep.poincare.size(), static_cast<std::size_t>(rep.n_max));
    ASSERT_EQ(rep.s_grid.size(), 20u);
    for (std::size_t l = 0; l < rep.poincare.size(); ++l) {
        for (std::size_t i = 0; i < rep.s_grid.size(); ++i) {
            EXPECT_GT(rep.poincare[l][i], 1.0);
            if (l > 0) {
                EXPECT_GE(rep.poincare[l][i], rep.poincare[l - 1][i]);
            }
            if (i > 0) {
                EXPECT_LE(rep.poincare[l][i], rep.poincare[l][i - 1]);
            }
        }
    }
    const OrbitReport serial = orbit_count(f, opts, 1);
    EXPECT_EQ(serial.counts.size(), rep.counts.size());
    for (std::size_t i = 0; i < rep.counts.size(); ++i) {
        EXPECT_EQ(serial.counts[i].count, rep.counts[i].count);
    }
}

TEST(Orbit, BudgetMustCoverLengthOne) {
    OrbitOptions opts;
    opts.budget = 5;
    EXPECT_THROW(orbit_count(GeneratorFamily(2, 6, P512), opts), BudgetExceeded);
}

TEST(Escape, FixedPointIsRadial) {
    const GeneratorFamily f(2, 6, P512);
    EscapeOptions opts;
    opts.horizon = 60;
    const EscapeProfile p = escape_profile(attracting_fixed_point(2, f), f, opts);
    EXPECT_FALSE(p.budget_limited);
    EXPECT_EQ(p.classification, "radial-like");
    EXPECT_LE(p.window_min, 8.0);
}

TEST(Escape, ParabolicLikeCuspEscapesLinearly) {
    const GeneratorFamily f(2, 6, P512);
    const EscapeProfile p = escape_profile(BoundaryPoint::finite(BigReal(0L, P512)), f, EscapeOptions{});
    EXPECT_FALSE(p.budget_limited);
    EXPECT_EQ(p.classification, "linear-escape-like");
    EXPECT_GE(p.alpha_hat, 0.5);
}

TEST(Escape, ProfileIsOneLipschitz) {
    const GeneratorFamily f(2, 6, P512);
    EscapeOptions opts;
    opts.horizon = 30;
    opts.step = 0.5;
    for (const BoundaryPoint& xi : {BoundaryPoint::finite(BigReal(0.37, P512)), attracting_fixed_point(-3, f)}) {
        const EscapeProfile p = escape_profile(xi, f, opts);
        for (std::size_t i = 1; i < p.samples.size(); ++i) {
            const auto& a = p.samples[i - 1];
            const auto& b = p.samples[i];
            if (a.exact && b.exact) {
                EXPECT_LE(std::abs((b.delta - a.delta).to_double()), b.t - a.t + 1e-9) << "t=" << b.t;
            }
        }
    }
}

TEST(Escape, WordCenterIsTransient) {
    const long j_max = 22;
    const GeneratorFamily f(2, j_max, Precision(std::max<long>(512, estimated_bits(j_max, 2))));
    const BoundaryPoint xi = BoundaryPoint::finite(word_circle({2, -3}, f).circle.center());
    EscapeOptions opts;
    opts.horizon = 150;
    const EscapeProfile p = escape_profile(xi, f, opts);
    EXPECT_FALSE(p.budget_limited);
    EXPECT_EQ(p.classification, "transient-like");
    EXPECT_GT(p.window_min, 8.0);
    EXPECT_LT(p.alpha_hat, 0.5);
}

TEST(Escape, OrbitDistanceFindsTheGeneratorImage) {
    const GeneratorFamily f(2, 6, P512);
    const UHPoint target = orbit_point({3, -2}, f);
    const EscapeSample s = orbit_distance(target, f, 100000);
    EXPECT_TRUE(s.exact);
    EXPECT_TRUE(s.delta < BigReal::pow2(-100, P512));
    EXPECT_EQ(s.best_word, (ReducedWord{3, -2}));
}
