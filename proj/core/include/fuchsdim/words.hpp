#pragma once

#include "fuchsdim/big_real.hpp"
#include "fuchsdim/hyperbolic.hpp"
#include "fuchsdim/schottky.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fuchsdim {

using ReducedWord = std::vector<long>;

inline constexpr std::uint64_t kDefaultWordBudget = 10'000'000;

bool is_reduced(const ReducedWord& w);
std::string word_to_string(const ReducedWord& w);

// m (m-1)^(n-1) with m = 2 (J_max - k + 1); saturates at UINT64_MAX.
std::uint64_t reduced_word_count(long k, long j_max, long n);

// Calls emit for every reduced word of length n over k <= |j| <= J_max, in
// lexicographic order of the signed letters.
void enumerate_reduced(long k, long n, long j_max, const std::function<void(const ReducedWord&)>& emit);

struct WordCircle {
    ReducedWord word;
    HalfCircle circle;
    BigReal log_radius;
};

// h_{j_1} ∘ ... ∘ h_{j_{n-1}} (C_{j_n}), applied right to left.
WordCircle word_circle(const ReducedWord& w, const GeneratorFamily& family);

// All word circles of length n in lexicographic order, built level by level
// as C_{j u} = h_j(C_u). Throws BudgetExceeded past the word budget.
std::vector<WordCircle> word_circles(const GeneratorFamily& family, long n,
                                     std::uint64_t budget = kDefaultWordBudget, int jobs = 1);

// 8 / (sqrt(λ_j) |x_i / x_j + 1|). Rejects i == -j.
BigReal mu(long i, long j, const GeneratorFamily& family);

struct ContractionCheck {
    ReducedWord word;
    BigReal log_lhs;  // ln r_{j_1..j_n}
    BigReal log_rhs;  // ln(μ_{j_1 j_2}^2 r_{j_2..j_n})
    BigReal ratio;    // lhs / rhs
    bool holds = false;
};

ContractionCheck check_radius_contraction(const ReducedWord& w, const GeneratorFamily& family);

struct ContractionSweep {
    long n_max = 0;
    std::uint64_t checked = 0;
    std::vector<ContractionCheck> violations;
    ContractionCheck worst;  // largest ratio seen
};

// Exhaustive check over every reduced word of length 2..n_max.
ContractionSweep sweep_radius_contraction(const GeneratorFamily& family, long n_max, int jobs = 1);

struct MuSumReport {
    long k = 0;
    long j_max = 0;
    BigReal alpha;
    BigReal truncated_sum;
    BigReal tail_bound;
    BigReal total;
    BigReal reference_bound;  // (4/3) 2^(-k)
    std::uint64_t term_count = 0;
    bool within_one = false;
    bool within_reference_bound = false;  // truncated_sum <= reference_bound
};

// Σ μ_{i,j}^{2α} over k < |i|, |j| <= J_max, i != ±j, α = 1/(2k), plus the
// analytic tail for max(|i|, |j|) > J_max.
MuSumReport check_mu_sum(long k, long j_max, const GeneratorFamily& family);

// Sup over circles inside C_j of (image radius / radius) under h_i.
BigReal contraction_factor(long i, long j, const GeneratorFamily& family);
// Analytic bound 1.02 · 2^(1 - 2|i| - 2 max(|i|,|j|)^2) on contraction_factor.
BigReal contraction_factor_bound(long i, long j, Precision prec);

struct ContractionBound {
    BigReal alpha;
    BigReal sigma;     // max column sum of κ^α including out-of-alphabet rows and columns
    BigReal beta;      // max column sum over out-of-alphabet rows only
    BigReal nu_total;  // Σ_{|j| >= k} r_j^α
    BigReal nu_big;    // Σ_{|j| > J_max} r_j^α
    long worst_column = 0;  // 0 when the out-of-alphabet column bound dominates
};

ContractionBound contraction_bound(const GeneratorFamily& family, const BigReal& alpha);

// Upper bound on Σ r_w^α over reduced words of length n using some letter |j| > J_max.
BigReal covering_tail(const ContractionBound& cb, long n);

struct CoverReport {
    long k = 0;
    long n = 0;
    BigReal alpha;
    long j_max = 0;
    BigReal truncated_sum;
    BigReal tail_bound;
    std::uint64_t word_count = 0;
    BigReal max_radius;
    BigReal log2_max_radius;
    long precision = 0;
};

// Reports for lengths 1..n, all from one level-by-level pass.
std::vector<CoverReport> covering_sums(const GeneratorFamily& family, long n, const BigReal& alpha,
                                       std::uint64_t budget = kDefaultWordBudget, int jobs = 1);

CoverReport covering_sum(const GeneratorFamily& family, long n, const BigReal& alpha,
                         std::uint64_t budget = kDefaultWordBudget, int jobs = 1);

// Mantissa bits needed to resolve depth-n word circle endpoints at J_max.
long estimated_bits(long j_max, long n);

} // namespace fuchsdim
