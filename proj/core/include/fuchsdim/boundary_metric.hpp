#pragma once

#include "fuchsdim/big_real.hpp"
#include "fuchsdim/hyperbolic.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fuchsdim {

// <w1, w2>_z = (d(w1, z) + d(z, w2) - d(w1, w2)) / 2.
BigReal gromov_product(const UHPoint& z, const UHPoint& w1, const UHPoint& w2);

struct BoundaryLimitOptions {
    double t_start = 20;
    double t_step = 10;
    double t_cap = 200;
    long tolerance_exponent = -40;
};

// Limit of gromov_product along the rays [z, xi1) and [z, xi2). Throws
// NonConvergence when successive values still differ at the cap.
BigReal gromov_product_boundary(const UHPoint& z, const BoundaryPoint& xi1, const BoundaryPoint& xi2,
                                const BoundaryLimitOptions& opts = {});

// exp(-<xi1, xi2>_o) with o = i.
BigReal visual_distance(const BoundaryPoint& xi1, const BoundaryPoint& xi2, Precision prec);

// Arc of boundary angles (around o = i) running counterclockwise from lo to hi.
struct ShadowInterval {
    BigReal lo_angle;
    BigReal hi_angle;
    BoundaryPoint lo = BoundaryPoint::infinity();
    BoundaryPoint hi = BoundaryPoint::infinity();
    bool wraps = false;  // the arc contains ∞ (angle 0)
    bool full = false;   // the whole boundary

    bool contains_angle(const BigReal& theta) const;
    bool contains(const BoundaryPoint& xi) const;
    bool contains(const ShadowInterval& other) const;
    BigReal width() const;
};

// Directions xi whose ray [o, xi) from o = i meets the closed ball B(z, R).
ShadowInterval shadow_interval(const UHPoint& z, const BigReal& R);

struct LemmaSampleReport {
    std::string lemma;
    std::uint64_t samples = 0;
    std::uint64_t failures = 0;
    std::uint64_t seed = 0;
    BigReal worst_margin;
    std::vector<std::pair<std::string, double>> parameters;
    std::vector<std::pair<std::string, BigReal>> measurements;

    bool passed() const { return failures == 0; }
};

// Checks B(xi, e^-t / c) ⊂ O_o(xi_t, 1) ⊂ B(xi, c e^-t) for xi uniform in
// visual angle and t uniform in [t_lo, t_hi]. Margins are in log scale.
LemmaSampleReport check_kaimanovich(std::uint64_t samples, double t_lo, double t_hi, const BigReal& c,
                                    std::uint64_t seed, Precision prec, int jobs = 1);

// Single (xi, t) instance of the sandwich; fills inner/outer log margins.
bool kaimanovich_instance(const BoundaryPoint& xi, const BigReal& t, const BigReal& c, BigReal& inner_margin,
                          BigReal& outer_margin);

// Samples d(o,z) log-uniform in [min_scale, 4 min_scale] and w uniform in the
// hyperbolic ball B(z, β d(o,z)); checks d(o,w)/(1+β) <= d(o,z) <= d(o,w)/(1-β).
LemmaSampleReport check_lemma_main1(std::uint64_t samples, double beta, std::uint64_t seed, Precision prec,
                                    double min_scale = 1.0, int jobs = 1);

// Same sampling with d(o,w) >= min_scale; finds the last point p on [o, w+)
// within distance 1 of [o, z+) and checks d(o,p) >= (1-2β-β²)/(1-β²) d(o,w).
LemmaSampleReport check_lemma_main2(std::uint64_t samples, double beta, double min_scale, std::uint64_t seed,
                                    Precision prec, int jobs = 1);

// sup{s : d(p(s), [o, z+)) <= 1} for p(s) on [o, w+).
BigReal last_close_parameter(const UHPoint& o, const BoundaryPoint& w_end, const BoundaryPoint& z_end,
                             const BigReal& s_cap);

// Largest observed ρ(a,c) / max(ρ(a,b), ρ(b,c)) over random boundary triples.
BigReal empirical_quasi_ultrametric(std::uint64_t samples, std::uint64_t seed, Precision prec);

} // namespace fuchsdim
