#include "fuchsdim/hyperbolic.hpp"

#include "fuchsdim/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace fuchsdim {

namespace {

BigReal one_like(const BigReal& x) {
    return BigReal(1L, x.precision());
}

} // namespace

// A(u) = x0 + y0 u carries i to o; K rotates about i so that K(∞) = A^{-1}(xi).
MoebiusMap ray_frame(const UHPoint& o, const BoundaryPoint& xi) {
    const Precision prec = o.x.precision();
    MoebiusMap a = MoebiusMap::from_normalized(sqrt(o.y), o.x / sqrt(o.y), BigReal(0L, prec),
                                               1L / sqrt(o.y));
    if (xi.is_infinite()) {
        return a;
    }
    const BigReal xp = (xi.value() - o.x) / o.y;
    const BigReal norm = sqrt(1L + xp * xp);
    const BigReal cs = -xp / norm;
    const BigReal sn = 1L / norm;
    MoebiusMap k = MoebiusMap::from_normalized(cs, sn, -sn, cs);
    return compose(a, k);
}

BigReal dist_to_standard_ray(const UHPoint& w) {
    if (w.x * w.x + w.y * w.y >= 1L) {
        return asinh(abs(w.x) / w.y);
    }
    const Precision prec = w.x.precision();
    return hyp_distance(w, UHPoint{BigReal(0L, prec), BigReal(1L, prec)});
}

bool same_point(const BoundaryPoint& a, const BoundaryPoint& b) {
    if (a.is_infinite() || b.is_infinite()) {
        return a.is_infinite() && b.is_infinite();
    }
    return a.value() == b.value();
}

MoebiusMap::MoebiusMap(BigReal a, BigReal b, BigReal c, BigReal d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

MoebiusMap MoebiusMap::from_normalized(BigReal a, BigReal b, BigReal c, BigReal d) {
    if (c.sign() < 0 || (c.is_zero() && a.sign() < 0)) {
        return MoebiusMap(-a, -b, -c, -d);
    }
    return MoebiusMap(std::move(a), std::move(b), std::move(c), std::move(d));
}

MoebiusMap MoebiusMap::from_coefficients(BigReal a, BigReal b, BigReal c, BigReal d) {
    const BigReal ad = a * d;
    const BigReal bc = b * c;
    const BigReal det = ad - bc;
    const long bits = std::max({a.precision().bits(), b.precision().bits(), c.precision().bits(),
                                d.precision().bits()});
    const BigReal scale = max(abs(ad), abs(bc));
    if (!scale.is_zero() && abs(det) < scale.ldexp(-bits / 2)) {
        throw PrecisionExhausted("determinant cancels below half the working precision");
    }
    if (det.sign() <= 0) {
        throw std::invalid_argument("Moebius map requires ad - bc > 0");
    }
    if (det < BigReal::pow2(-bits + 8, Precision{bits})) {
        throw PrecisionExhausted("determinant below 2^(-precision+8)");
    }
    const BigReal s = sqrt(det);
    return from_normalized(a / s, b / s, c / s, d / s);
}

MoebiusMap MoebiusMap::identity(Precision prec) {
    return MoebiusMap(BigReal(1L, prec), BigReal(0L, prec), BigReal(0L, prec), BigReal(1L, prec));
}

MoebiusMap MoebiusMap::inverse() const {
    return from_normalized(d_, -b_, -c_, a_);
}

MoebiusMap compose(const MoebiusMap& g, const MoebiusMap& h) {
    return MoebiusMap::from_coefficients(g.a() * h.a() + g.b() * h.c(), g.a() * h.b() + g.b() * h.d(),
                                         g.c() * h.a() + g.d() * h.c(), g.c() * h.b() + g.d() * h.d());
}

UHPoint apply(const MoebiusMap& g, const UHPoint& z) {
    const BigReal cxd = g.c() * z.x + g.d();
    const BigReal cy = g.c() * z.y;
    const BigReal denom = cxd * cxd + cy * cy;
    BigReal re = ((g.a() * z.x + g.b()) * cxd + g.a() * g.c() * z.y * z.y) / denom;
    BigReal im = z.y / denom;
    return UHPoint{std::move(re), std::move(im)};
}

BoundaryPoint apply(const MoebiusMap& g, const BoundaryPoint& xi) {
    if (xi.is_infinite()) {
        if (g.c().is_zero()) {
            return BoundaryPoint::infinity();
        }
        return BoundaryPoint::finite(g.a() / g.c());
    }
    const BigReal denom = g.c() * xi.value() + g.d();
    if (denom.is_zero()) {
        return BoundaryPoint::infinity();
    }
    return BoundaryPoint::finite((g.a() * xi.value() + g.b()) / denom);
}

Classification classify(const MoebiusMap& g) {
    const Precision prec = g.precision();
    const BigReal tol = BigReal::pow2(prec.half_tolerance_exponent(), prec);
    const BigReal gap = abs(g.trace()) - 2L;
    if (gap > tol) {
        return {MapClass::hyperbolic, false};
    }
    if (gap < -tol) {
        return {MapClass::elliptic, false};
    }
    const bool near_identity = abs(g.b()) <= tol && abs(g.c()) <= tol && abs(g.a() - 1L) <= tol &&
                               abs(g.d() - 1L) <= tol;
    if (near_identity) {
        return {MapClass::identity, !gap.is_zero()};
    }
    return {MapClass::parabolic, !gap.is_zero()};
}

const char* to_string(MapClass cls) {
    switch (cls) {
    case MapClass::identity:
        return "identity";
    case MapClass::hyperbolic:
        return "hyperbolic";
    case MapClass::parabolic:
        return "parabolic";
    case MapClass::elliptic:
        return "elliptic";
    }
    return "unknown";
}

FixedPoints fixed_points(const MoebiusMap& g) {
    const Classification cls = classify(g);
    FixedPoints out;
    const BigReal e = g.a() - g.d();
    switch (cls.cls) {
    case MapClass::identity:
        throw std::invalid_argument("identity map has no isolated fixed points");
    case MapClass::parabolic:
        if (g.c().is_zero()) {
            out.boundary.push_back(BoundaryPoint::infinity());
        } else {
            out.boundary.push_back(BoundaryPoint::finite(e / (2L * g.c())));
        }
        return out;
    case MapClass::elliptic: {
        const BigReal t = g.trace();
        out.interior = UHPoint{e / (2L * g.c()), sqrt(4L - t * t) / (2L * abs(g.c()))};
        return out;
    }
    case MapClass::hyperbolic:
        break;
    }
    if (g.c().is_zero()) {
        out.boundary.push_back(BoundaryPoint::finite(g.b() / (g.d() - g.a())));
        out.boundary.push_back(BoundaryPoint::infinity());
        return out;
    }
    // Roots of c z^2 - e z - b = 0 without cancellation.
    const BigReal t = g.trace();
    const BigReal sq = sqrt(t * t - 4L);
    const BigReal q = (e.sign() >= 0 ? e + sq : e - sq) / 2L;
    BigReal r1 = q / g.c();
    BigReal r2 = -g.b() / q;
    if (r2 < r1) {
        std::swap(r1, r2);
    }
    out.boundary.push_back(BoundaryPoint::finite(std::move(r1)));
    out.boundary.push_back(BoundaryPoint::finite(std::move(r2)));
    return out;
}

BigReal coefficient_distance(const MoebiusMap& g, const MoebiusMap& h) {
    const BigReal scale = max(max(abs(g.a()), abs(g.b())), max(abs(g.c()), abs(g.d())));
    const BigReal diff = max(max(abs(g.a() - h.a()), abs(g.b() - h.b())),
                             max(abs(g.c() - h.c()), abs(g.d() - h.d())));
    return diff / scale;
}

BigReal hyp_distance(const UHPoint& z, const UHPoint& w) {
    const BigReal chord = hypot(z.x - w.x, z.y - w.y);
    return 2L * asinh(chord / (2L * sqrt(z.y * w.y)));
}

UHPoint geodesic_ray_point(const UHPoint& o, const BoundaryPoint& xi, const BigReal& t) {
    const MoebiusMap frame = ray_frame(o, xi);
    const UHPoint up{BigReal(0L, t.precision()), exp(t)};
    return apply(frame, up);
}

BoundaryPoint ray_endpoint(const UHPoint& o, const UHPoint& z) {
    const BigReal x = (z.x - o.x) / o.y;
    const BigReal y = z.y / o.y;
    if (x.is_zero()) {
        if (y > 1L) {
            return BoundaryPoint::infinity();
        }
        return BoundaryPoint::finite(o.x);
    }
    const BigReal m = (x * x + y * y - 1L) / (2L * x);
    const BigReal rho = sqrt(1L + m * m);
    const BigReal phi_o = atan2(one_like(m), -m);
    const BigReal phi_z = atan2(y, x - m);
    const BigReal end = phi_z < phi_o ? m + rho : m - rho;
    return BoundaryPoint::finite(o.x + o.y * end);
}

HalfCircle::HalfCircle(BoundaryPoint p, BoundaryPoint q) : p_(std::move(p)), q_(std::move(q)) {
    if (p_.is_infinite() && q_.is_infinite()) {
        throw std::invalid_argument("half circle endpoints must differ");
    }
    if (p_.is_infinite()) {
        std::swap(p_, q_);
    } else if (q_.is_finite()) {
        if (p_.value() == q_.value()) {
            throw std::invalid_argument("half circle endpoints must differ");
        }
        if (q_.value() < p_.value()) {
            std::swap(p_, q_);
        }
    }
}

BigReal HalfCircle::center() const {
    return (p_.value() + q_.value()) / 2L;
}

BigReal HalfCircle::radius() const {
    return (q_.value() - p_.value()) / 2L;
}

bool HalfCircle::contains_boundary(const BigReal& x) const {
    return p_.value() <= x && x <= q_.value();
}

bool HalfCircle::contains(const UHPoint& z) const {
    const BigReal dx = z.x - center();
    const BigReal r = radius();
    return dx * dx + z.y * z.y <= r * r;
}

BigReal dist_to_geodesic(const UHPoint& z, const Geodesic& g) {
    if (g.u.is_infinite() || g.v.is_infinite()) {
        const BigReal& foot = g.u.is_infinite() ? g.v.value() : g.u.value();
        return asinh(abs(z.x - foot) / z.y);
    }
    const BigReal m = (g.u.value() + g.v.value()) / 2L;
    const BigReal rho = abs(g.v.value() - g.u.value()) / 2L;
    const BigReal dx = z.x - m;
    const BigReal power = dx * dx + z.y * z.y - rho * rho;
    return asinh(abs(power) / (2L * rho * z.y));
}

BigReal dist_to_ray(const UHPoint& z, const UHPoint& o, const BoundaryPoint& xi) {
    return dist_to_standard_ray(apply(ray_frame(o, xi).inverse(), z));
}

BigReal dist_to_halfdisk(const UHPoint& z, const HalfCircle& c) {
    if (c.contains(z)) {
        return BigReal(0L, z.x.precision());
    }
    return dist_to_geodesic(z, Geodesic{c.p(), c.q()});
}

HalfCircle image_halfcircle(const MoebiusMap& g, const HalfCircle& c) {
    return HalfCircle(apply(g, c.p()), apply(g, c.q()));
}

BoundaryPoint boundary_at_angle(const BigReal& theta) {
    const BigReal half = theta / 2L;
    const BigReal s = sin(half);
    if (s.is_zero()) {
        return BoundaryPoint::infinity();
    }
    return BoundaryPoint::finite(-cos(half) / s);
}

BigReal boundary_angle(const BoundaryPoint& xi, Precision prec) {
    if (xi.is_infinite()) {
        return BigReal(0L, prec);
    }
    return 2L * atan2(BigReal(1L, prec), -xi.value());
}

} // namespace fuchsdim
