#pragma once

#include "fuchsdim/big_real.hpp"
#include "fuchsdim/hyperbolic.hpp"
#include "fuchsdim/schottky.hpp"
#include "fuchsdim/words.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fuchsdim {

struct CertificateReport {
    long k = 0;
    long n = 0;
    long j_max = 0;
    long precision = 0;
    BigReal alpha;               // 1/(2k)
    std::string alpha_rational;  // "1/(2k)" spelled out, e.g. "1/4"
    MuSumReport mu_sum;
    ContractionBound contraction;
    std::vector<CoverReport> covers;  // lengths 1..n
    bool mu_ok = false;
    bool monotone_ok = false;
    bool contraction_ok = false;
    bool passed = false;
    std::string violation;  // empty on pass
};

// μ-sum over the family alphabet, covering sums S(1..n) at α = 1/(2k) and
// the contraction bound. Requires k >= 2.
CertificateReport certify_hd_upper(long k, long n, const GeneratorFamily& family,
                                   std::uint64_t budget = kDefaultWordBudget, int jobs = 1);

struct LimitSample {
    ReducedWord word;
    BigReal center;
    BigReal log_radius;
};

// Centers of `count` distinct uniformly random reduced words of length depth.
std::vector<LimitSample> sample_limit_points(const GeneratorFamily& family, long depth, std::uint64_t count,
                                             std::uint64_t seed, int jobs = 1);

struct ScaleCount {
    long s = 0;  // ε = 2^-s
    std::uint64_t count = 0;
};

struct BoxCountResult {
    double slope = 0;
    double intercept = 0;
    double stderr_slope = 0;
    double band_lo = 0;  // slope ± 2 stderr
    double band_hi = 0;
    std::uint64_t points = 0;
    std::uint64_t distinct = 0;
    std::vector<ScaleCount> scales;
};

// Least-squares slope of ln N(2^-s) against s ln 2 for s in [s_min, s_max],
// boxes [m 2^-s, (m+1) 2^-s). Throws DegenerateFit when counts saturate.
BoxCountResult box_count_dimension(std::vector<BigReal> points, long s_min, long s_max);

struct OrbitRow {
    double r = 0;
    std::uint64_t count = 0;
};

struct OrbitReport {
    long k = 0;
    long j_max = 0;
    long n_max = 0;
    std::uint64_t word_count = 0;
    BigReal min_distance;
    BigReal completeness_radius;  // N(R) is exact for R below this
    std::vector<OrbitRow> counts;
    bool fit_found = false;
    double delta_hat = 0;
    double fit_lo = 0;
    double fit_hi = 0;
    double fit_residual = 0;
    std::vector<double> s_grid;
    // poincare[l][i]: 1 + Σ over words of length <= l+1 of e^(-s_i d(o, w o)).
    std::vector<std::vector<double>> poincare;
};

struct OrbitOptions {
    long n_max = 0;  // 0 picks the largest length within the budget
    std::uint64_t budget = 100'000;
    double r_step = 0.5;
    double r_max = 0;  // 0 means up to the completeness radius
    double residual_limit = 0.05;
    long min_fit_points = 8;
    std::vector<double> s_grid;  // empty uses 0.05, 0.10, ..., 1.00
};

OrbitReport orbit_count(const GeneratorFamily& family, const OrbitOptions& opts, int jobs = 1);

// Largest n with Σ_{l<=n} m (m-1)^(l-1) <= budget.
long max_length_within_budget(long k, long j_max, std::uint64_t budget);

// Lower bound on d(z, h(o)) over orbit points h(o) whose word starts with a
// letter |b| > J_max.
BigReal out_of_alphabet_bound(const UHPoint& z, const GeneratorFamily& family);

struct EscapeSample {
    double t = 0;
    BigReal delta;  // min over visited orbit points of d(ξ_t, h o)
    bool exact = false;
    std::uint64_t nodes = 0;
    ReducedWord best_word;  // empty for o itself
};

struct EscapeProfile {
    BoundaryPoint xi = BoundaryPoint::infinity();
    double horizon = 0;
    double step = 0;
    std::vector<EscapeSample> samples;
    bool budget_limited = false;
    std::string classification;  // radial-like, transient-like, linear-escape-like, withheld
    double alpha_hat = 0;
    double window_min = 0;
};

struct EscapeOptions {
    double horizon = 40;
    double step = 1;
    std::uint64_t node_budget = 100'000;
    double radial_threshold = 8;
    double linear_threshold = 0.5;
};

EscapeProfile escape_profile(const BoundaryPoint& xi, const GeneratorFamily& family, const EscapeOptions& opts);

// Exact min over the truncated orbit when achievable within the budget.
EscapeSample orbit_distance(const UHPoint& z, const GeneratorFamily& family, std::uint64_t node_budget,
                            const std::optional<ReducedWord>& warm_start = std::nullopt);

// h_w(o) by sequential application.
UHPoint orbit_point(const ReducedWord& w, const GeneratorFamily& family);

} // namespace fuchsdim
