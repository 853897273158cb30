#include "fuchsdim/schottky.hpp"

#include "fuchsdim/errors.hpp"
#include "json_support.hpp"

#include <cstdlib>
#include <stdexcept>

namespace fuchsdim {

namespace {

void require_nonzero(long j) {
    if (j == 0) {
        throw std::invalid_argument("generator index must be nonzero");
    }
}

} // namespace

long generator_exponent_need(long j) {
    const long a = std::labs(j);
    return 2 * a * a + 2 * a + 8;
}

GeneratorParams generator_params(long j, Precision prec, long max_exponent) {
    require_nonzero(j);
    const long a = std::labs(j);
    if (generator_exponent_need(a) > max_exponent) {
        throw ExponentOverflow("generator " + std::to_string(j) + " needs binary exponent " +
                               std::to_string(generator_exponent_need(a)) + " > " +
                               std::to_string(max_exponent));
    }
    GeneratorParams p;
    p.j = j;
    const BigReal x = BigReal::pow2(a * a, prec);
    p.r = BigReal::pow2(-a - 2, prec);
    const BigReal xp = sqrt(x * x + p.r * p.r);
    p.lambda = 1L + (2L * x * x + 2L * x * xp) / (p.r * p.r);
    p.x = j > 0 ? x : -x;
    p.xp = j > 0 ? xp : -xp;
    return p;
}

MoebiusMap build_generator(long j, Precision prec, long max_exponent) {
    const GeneratorParams p = generator_params(std::labs(j), prec, max_exponent);
    // Closed form of the determinant-one scaling of
    // [[x(λ+1), x^2(λ-1)], [λ-1, (λ+1)x]]; avoids cancellation in ad - bc.
    const BigReal two_s = 2L * sqrt(p.lambda);
    const BigReal ad = (p.lambda + 1L) / two_s;
    const BigReal b = p.x * (p.lambda - 1L) / two_s;
    const BigReal c = (p.lambda - 1L) / (two_s * p.x);
    const MoebiusMap h = MoebiusMap::from_normalized(ad, b, c, ad);
    return j > 0 ? h : h.inverse();
}

HalfCircle base_circle(long j, Precision prec) {
    const GeneratorParams p = generator_params(j, prec);
    return HalfCircle(BoundaryPoint::finite(p.xp - p.r), BoundaryPoint::finite(p.xp + p.r));
}

GeneratorFamily::GeneratorFamily(long k, long j_max, Precision prec, long max_exponent)
    : k_(k), j_max_(j_max), prec_(prec), max_exponent_(max_exponent) {
    if (k < 1 || j_max < k) {
        throw std::invalid_argument("family requires 1 <= k <= J_max");
    }
    for (long j = -j_max; j <= -k; ++j) {
        alphabet_.push_back(j);
    }
    for (long j = k; j <= j_max; ++j) {
        alphabet_.push_back(j);
    }
    const long need = j_max * j_max + j_max + 8;
    if (prec.bits() < need) {
        throw PrecisionExhausted("J_max = " + std::to_string(j_max) + " needs at least " +
                                 std::to_string(need) + " bits to separate circle endpoints");
    }
    for (long j : alphabet_) {
        params_.push_back(generator_params(j, prec, max_exponent));
        maps_.push_back(build_generator(j, prec, max_exponent));
        const GeneratorParams& p = params_.back();
        circles_.emplace_back(BoundaryPoint::finite(p.xp - p.r), BoundaryPoint::finite(p.xp + p.r));
    }
}

bool GeneratorFamily::in_alphabet(long j) const {
    const long a = std::labs(j);
    return a >= k_ && a <= j_max_;
}

std::size_t GeneratorFamily::slot(long j) const {
    if (!in_alphabet(j)) {
        throw std::out_of_range("letter " + std::to_string(j) + " outside the family alphabet");
    }
    const long width = j_max_ - k_ + 1;
    return j < 0 ? static_cast<std::size_t>(j + j_max_)
                 : static_cast<std::size_t>(width + j - k_);
}

const GeneratorParams& GeneratorFamily::params(long j) const {
    return params_[slot(j)];
}

const MoebiusMap& GeneratorFamily::generator(long j) const {
    return maps_[slot(j)];
}

const HalfCircle& GeneratorFamily::circle(long j) const {
    return circles_[slot(j)];
}

PairingReport pairing_check(long j, Precision prec) {
    if (j < 1) {
        throw std::invalid_argument("pairing_check requires j >= 1");
    }
    const GeneratorParams p = generator_params(j, prec);
    const MoebiusMap h = build_generator(j, prec);
    PairingReport rep;
    rep.j = j;
    const BoundaryPoint low = apply(h, BoundaryPoint::finite(-p.xp - p.r));
    const BoundaryPoint high = apply(h, BoundaryPoint::finite(-p.xp + p.r));
    if (low.is_infinite() || high.is_infinite()) {
        throw PrecisionExhausted("pairing endpoint mapped to infinity");
    }
    rep.image_low_end = low.value();
    rep.image_high_end = high.value();
    rep.residual_center_plus = abs(rep.image_low_end - (p.xp + p.r));
    rep.residual_center_minus = abs(rep.image_high_end - (p.xp - p.r));
    rep.residual_literal_plus = abs(rep.image_low_end - (p.x + p.r));
    rep.residual_literal_minus = abs(rep.image_high_end - (p.x - p.r));
    const BigReal tol = BigReal::pow2(prec.half_tolerance_exponent(16), prec);
    const bool center_ok = rep.residual_center_plus <= tol && rep.residual_center_minus <= tol;
    const bool literal_ok = rep.residual_literal_plus <= tol && rep.residual_literal_minus <= tol;
    rep.matches = center_ok ? "x_prime" : (literal_ok ? "x" : "neither");
    const UHPoint zero_img = apply(h, UHPoint{BigReal(0L, prec), BigReal(1L, prec)});
    const HalfCircle cj(BoundaryPoint::finite(p.xp - p.r), BoundaryPoint::finite(p.xp + p.r));
    const BoundaryPoint h0 = apply(h, BoundaryPoint::finite(BigReal(0L, prec)));
    rep.orientation_ok = cj.contains(zero_img) && h0.is_finite() && cj.contains_boundary(h0.value());
    return rep;
}

namespace {

void require_truncation(const BigReal& extent, long k, const GeneratorFamily& family) {
    if (k < family.k()) {
        throw std::invalid_argument("query k is below the family's k");
    }
    const GeneratorParams next =
        generator_params(family.j_max() + 1, family.precision(), family.max_exponent());
    if (!(extent < next.xp - next.r)) {
        throw Indeterminate("point reaches circles beyond J_max; enlarge the family");
    }
}

} // namespace

bool in_fundamental_domain(const UHPoint& z, long k, const GeneratorFamily& family) {
    require_truncation(abs(z.x) + z.y, k, family);
    for (long j : family.alphabet()) {
        if (std::labs(j) >= k && family.circle(j).contains(z)) {
            return false;
        }
    }
    return true;
}

bool in_fundamental_domain(const BoundaryPoint& xi, long k, const GeneratorFamily& family) {
    if (xi.is_infinite()) {
        throw Indeterminate("infinity is an accumulation point of the circles");
    }
    require_truncation(abs(xi.value()), k, family);
    for (long j : family.alphabet()) {
        if (std::labs(j) >= k && family.circle(j).contains_boundary(xi.value())) {
            return false;
        }
    }
    return true;
}

std::string family_manifest_json(const GeneratorFamily& family) {
    using detail::number_json;
    detail::Json gens = detail::Json::array();
    for (long j : family.alphabet()) {
        const GeneratorParams& p = family.params(j);
        const MoebiusMap& h = family.generator(j);
        gens.push_back({{"j", j},
                        {"x", number_json(p.x)},
                        {"r", number_json(p.r)},
                        {"x_prime", number_json(p.xp)},
                        {"lambda", number_json(p.lambda)},
                        {"map", {{"a", number_json(h.a())},
                                 {"b", number_json(h.b())},
                                 {"c", number_json(h.c())},
                                 {"d", number_json(h.d())}}}});
    }
    detail::Json doc{{"k", family.k()},
                     {"J_max", family.j_max()},
                     {"precision", family.precision().bits()},
                     {"max_exponent", family.max_exponent()},
                     {"generator_count", gens.size()},
                     {"generators", gens}};
    return doc.dump(2) + "\n";
}

GeneratorFamily family_from_manifest_json(const std::string& text) {
    const detail::Json doc = detail::Json::parse(text);
    const Precision prec{doc.at("precision").get<long>()};
    GeneratorFamily family(doc.at("k").get<long>(), doc.at("J_max").get<long>(), prec,
                           doc.value("max_exponent", kDefaultMaxExponent));
    for (const auto& g : doc.at("generators")) {
        const long j = g.at("j").get<long>();
        const BigReal lam = detail::number_from_json(g.at("lambda"), prec);
        if (!(lam == family.params(j).lambda)) {
            throw std::runtime_error("manifest lambda for j=" + std::to_string(j) +
                                     " does not match the rebuilt family");
        }
    }
    return family;
}

} // namespace fuchsdim
