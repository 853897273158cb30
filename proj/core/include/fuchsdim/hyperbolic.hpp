#pragma once

#include "fuchsdim/big_real.hpp"

#include <optional>
#include <vector>

namespace fuchsdim {

struct UHPoint {
    BigReal x;
    BigReal y;
};

// A point of R ∪ {∞}.
class BoundaryPoint {
public:
    static BoundaryPoint finite(BigReal value) { return BoundaryPoint(std::move(value)); }
    static BoundaryPoint infinity() { return BoundaryPoint(); }

    bool is_infinite() const { return !value_.has_value(); }
    bool is_finite() const { return value_.has_value(); }
    // Precondition: is_finite().
    const BigReal& value() const { return *value_; }

private:
    BoundaryPoint() = default;
    explicit BoundaryPoint(BigReal v) : value_(std::move(v)) {}

    std::optional<BigReal> value_;
};

bool same_point(const BoundaryPoint& a, const BoundaryPoint& b);

// z -> (az + b) / (cz + d), stored with ad - bc = 1 and c > 0 (or c = 0, a > 0).
class MoebiusMap {
public:
    // Scales by 1/sqrt(ad - bc) and fixes the sign. Throws std::invalid_argument
    // when ad - bc <= 0 and PrecisionExhausted when the determinant is not
    // resolved at the working precision.
    static MoebiusMap from_coefficients(BigReal a, BigReal b, BigReal c, BigReal d);
    // Trusts that ad - bc = 1 already holds; only the sign convention is applied.
    static MoebiusMap from_normalized(BigReal a, BigReal b, BigReal c, BigReal d);
    static MoebiusMap identity(Precision prec);

    const BigReal& a() const { return a_; }
    const BigReal& b() const { return b_; }
    const BigReal& c() const { return c_; }
    const BigReal& d() const { return d_; }
    Precision precision() const { return a_.precision(); }

    MoebiusMap inverse() const;
    BigReal trace() const { return a_ + d_; }

private:
    MoebiusMap(BigReal a, BigReal b, BigReal c, BigReal d);

    BigReal a_;
    BigReal b_;
    BigReal c_;
    BigReal d_;
};

// Returns g ∘ h.
MoebiusMap compose(const MoebiusMap& g, const MoebiusMap& h);

UHPoint apply(const MoebiusMap& g, const UHPoint& z);
BoundaryPoint apply(const MoebiusMap& g, const BoundaryPoint& xi);

enum class MapClass { identity, hyperbolic, parabolic, elliptic };

struct Classification {
    MapClass cls;
    bool near_degenerate = false;
};

Classification classify(const MoebiusMap& g);
const char* to_string(MapClass cls);

struct FixedPoints {
    std::vector<BoundaryPoint> boundary;
    std::optional<UHPoint> interior;
};

// Throws std::invalid_argument for the identity.
FixedPoints fixed_points(const MoebiusMap& g);

// Largest |coefficient difference| relative to the largest coefficient.
BigReal coefficient_distance(const MoebiusMap& g, const MoebiusMap& h);

BigReal hyp_distance(const UHPoint& z, const UHPoint& w);

// Point at distance t from o on the ray [o, xi).
UHPoint geodesic_ray_point(const UHPoint& o, const BoundaryPoint& xi, const BigReal& t);

// Isometry carrying i to o and ∞ to xi; the ray [o, xi) is the image of [i, ∞).
MoebiusMap ray_frame(const UHPoint& o, const BoundaryPoint& xi);

// Distance from w to the standard ray [i, ∞).
BigReal dist_to_standard_ray(const UHPoint& w);

// Endpoint of the ray from o through z (z != o).
BoundaryPoint ray_endpoint(const UHPoint& o, const UHPoint& z);

// Boundary-orthogonal half circle stored by its endpoints; p < q when both are
// finite. An infinite endpoint makes it a vertical line.
class HalfCircle {
public:
    HalfCircle(BoundaryPoint p, BoundaryPoint q);

    const BoundaryPoint& p() const { return p_; }
    const BoundaryPoint& q() const { return q_; }
    bool is_vertical() const { return p_.is_infinite() || q_.is_infinite(); }

    // Precondition: !is_vertical().
    BigReal center() const;
    BigReal radius() const;
    // True when x lies in the closed interval [p, q].
    bool contains_boundary(const BigReal& x) const;
    // True when z lies in the closed half disk bounded by the circle.
    bool contains(const UHPoint& z) const;

private:
    BoundaryPoint p_;
    BoundaryPoint q_;
};

struct Geodesic {
    BoundaryPoint u;
    BoundaryPoint v;
};

BigReal dist_to_geodesic(const UHPoint& z, const Geodesic& g);

// Distance from z to the closed ray [o, xi).
BigReal dist_to_ray(const UHPoint& z, const UHPoint& o, const BoundaryPoint& xi);

// Distance from z to the closed half disk bounded by a finite circle.
BigReal dist_to_halfdisk(const UHPoint& z, const HalfCircle& c);

HalfCircle image_halfcircle(const MoebiusMap& g, const HalfCircle& c);

// Boundary point with visual angle theta around o = i: -cot(theta / 2).
BoundaryPoint boundary_at_angle(const BigReal& theta);
// Inverse of boundary_at_angle with values in [0, 2π).
BigReal boundary_angle(const BoundaryPoint& xi, Precision prec);

} // namespace fuchsdim
