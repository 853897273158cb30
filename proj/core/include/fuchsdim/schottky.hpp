#pragma once

#include "fuchsdim/big_real.hpp"
#include "fuchsdim/hyperbolic.hpp"

#include <string>
#include <vector>

namespace fuchsdim {

inline constexpr long kDefaultMaxExponent = 1L << 24;

struct GeneratorParams {
    long j = 0;
    BigReal x;       // sign(j) 2^(j^2)
    BigReal r;       // 2^(-|j|-2)
    BigReal xp;      // sign(j) sqrt(x^2 + r^2)
    BigReal lambda;  // 1 + (2x^2 + 2|x| x') / r^2, same for ±j
};

// Largest binary exponent of any quantity built for |j| = j.
long generator_exponent_need(long j);

// Throws std::invalid_argument for j == 0 and ExponentOverflow when the
// quantities for j exceed max_exponent.
GeneratorParams generator_params(long j, Precision prec, long max_exponent = kDefaultMaxExponent);
MoebiusMap build_generator(long j, Precision prec, long max_exponent = kDefaultMaxExponent);
HalfCircle base_circle(long j, Precision prec);

// Γ_k truncated to the alphabet k <= |j| <= J_max.
class GeneratorFamily {
public:
    GeneratorFamily(long k, long j_max, Precision prec, long max_exponent = kDefaultMaxExponent);

    long k() const { return k_; }
    long j_max() const { return j_max_; }
    Precision precision() const { return prec_; }
    long max_exponent() const { return max_exponent_; }

    // Letters in increasing order: -J_max..-k, k..J_max.
    const std::vector<long>& alphabet() const { return alphabet_; }
    bool in_alphabet(long j) const;

    const GeneratorParams& params(long j) const;
    const MoebiusMap& generator(long j) const;
    const HalfCircle& circle(long j) const;

private:
    std::size_t slot(long j) const;

    long k_;
    long j_max_;
    Precision prec_;
    long max_exponent_;
    std::vector<long> alphabet_;
    std::vector<GeneratorParams> params_;
    std::vector<MoebiusMap> maps_;
    std::vector<HalfCircle> circles_;
};

struct PairingReport {
    long j = 0;
    // h_j(x'_{-j} - r_j) and h_j(x'_{-j} + r_j).
    BigReal image_low_end;
    BigReal image_high_end;
    // Residuals against x'_j ± r_j (the endpoints of C_j).
    BigReal residual_center_plus;
    BigReal residual_center_minus;
    // Residuals against x_j ± r_j (the literal printed identity).
    BigReal residual_literal_plus;
    BigReal residual_literal_minus;
    // "x_prime", "x", or "neither" at tolerance 2^(-prec/2+16).
    std::string matches;
    // h_j(0) lies inside the half disk of C_j.
    bool orientation_ok = false;
};

PairingReport pairing_check(long j, Precision prec);

// True iff z is strictly exterior to every C_j with |j| >= k. Throws
// Indeterminate if circles beyond the family's J_max could contain z.
bool in_fundamental_domain(const UHPoint& z, long k, const GeneratorFamily& family);
bool in_fundamental_domain(const BoundaryPoint& xi, long k, const GeneratorFamily& family);

// JSON manifest of the family.
std::string family_manifest_json(const GeneratorFamily& family);
GeneratorFamily family_from_manifest_json(const std::string& text);

} // namespace fuchsdim
