#include "fuchsdim/boundary_metric.hpp"

#include "fuchsdim/errors.hpp"
#include "fuchsdim/parallel.hpp"
#include "fuchsdim/random.hpp"

#include <cmath>
#include <stdexcept>

namespace fuchsdim {

namespace {

constexpr int kBisectionSteps = 60;

UHPoint origin(Precision prec) {
    return UHPoint{BigReal(0L, prec), BigReal(1L, prec)};
}

BigReal two_pi(Precision prec) {
    return 2L * BigReal::pi(prec);
}

BigReal reduce_angle(const BigReal& theta) {
    const BigReal period = two_pi(theta.precision());
    BigReal out = theta - period * floor(theta / period);
    if (out >= period) {
        out -= period;
    }
    return out;
}

BigReal uniform_angle(std::mt19937_64& rng, Precision prec) {
    return two_pi(prec) * BigReal(uniform01(rng), prec);
}

// Point at distance r from z in the direction with visual angle psi at z.
UHPoint point_from(const UHPoint& z, const BigReal& psi, const BigReal& r) {
    const BoundaryPoint dir = boundary_at_angle(psi);
    const BoundaryPoint target =
        dir.is_infinite() ? dir : BoundaryPoint::finite(z.x + z.y * dir.value());
    return geodesic_ray_point(z, target, r);
}

// w uniform in the hyperbolic ball B(z, radius): cosh r - 1 is uniform.
UHPoint uniform_in_ball(const UHPoint& z, const BigReal& radius, std::mt19937_64& rng) {
    const Precision prec = z.x.precision();
    const BigReal u(uniform01(rng), prec);
    const BigReal r = acosh(1L + u * (cosh(radius) - 1L));
    return point_from(z, uniform_angle(rng, prec), r);
}

struct Sample {
    bool fail = false;
    BigReal margin;
    BigReal extra;
};

LemmaSampleReport aggregate(std::string lemma, const std::vector<Sample>& results, Precision prec) {
    LemmaSampleReport rep;
    rep.lemma = std::move(lemma);
    rep.samples = results.size();
    rep.worst_margin = BigReal::infinity(prec);
    for (const Sample& s : results) {
        if (s.fail) {
            ++rep.failures;
        }
        if (s.margin < rep.worst_margin) {
            rep.worst_margin = s.margin;
        }
    }
    return rep;
}

BigReal kappa_exponent(double beta, Precision prec) {
    const BigReal b(beta, prec);
    return (1L - 2L * b - b * b) / (1L - b * b);
}

} // namespace

BigReal gromov_product(const UHPoint& z, const UHPoint& w1, const UHPoint& w2) {
    return (hyp_distance(w1, z) + hyp_distance(z, w2) - hyp_distance(w1, w2)) / 2L;
}

BigReal gromov_product_boundary(const UHPoint& z, const BoundaryPoint& xi1, const BoundaryPoint& xi2,
                                const BoundaryLimitOptions& opts) {
    if (same_point(xi1, xi2)) {
        throw std::invalid_argument("boundary Gromov product needs distinct points");
    }
    const Precision prec = z.x.precision();
    const BigReal tol = BigReal::pow2(opts.tolerance_exponent, prec);
    auto at = [&](double t) {
        const BigReal tt(t, prec);
        return gromov_product(z, geodesic_ray_point(z, xi1, tt), geodesic_ray_point(z, xi2, tt));
    };
    double t = opts.t_start;
    BigReal prev = at(t);
    t += opts.t_step;
    BigReal cur = at(t);
    while (abs(cur - prev) > tol) {
        if (t + opts.t_step > opts.t_cap) {
            throw NonConvergence("boundary Gromov product did not stabilise by t = " + std::to_string(opts.t_cap));
        }
        prev = std::move(cur);
        t += opts.t_step;
        cur = at(t);
    }
    return cur;
}

BigReal visual_distance(const BoundaryPoint& xi1, const BoundaryPoint& xi2, Precision prec) {
    if (same_point(xi1, xi2)) {
        return BigReal(0L, prec);
    }
    return exp(-gromov_product_boundary(origin(prec), xi1, xi2));
}

bool ShadowInterval::contains_angle(const BigReal& theta) const {
    if (full) {
        return true;
    }
    const BigReal t = reduce_angle(theta);
    if (!wraps) {
        return lo_angle <= t && t <= hi_angle;
    }
    return t >= lo_angle || t <= hi_angle;
}

bool ShadowInterval::contains(const BoundaryPoint& xi) const {
    return contains_angle(boundary_angle(xi, lo_angle.precision()));
}

BigReal ShadowInterval::width() const {
    if (full) {
        return two_pi(lo_angle.precision());
    }
    return reduce_angle(hi_angle - lo_angle);
}

bool ShadowInterval::contains(const ShadowInterval& other) const {
    if (full) {
        return true;
    }
    if (other.full) {
        return false;
    }
    const BigReal start = reduce_angle(other.lo_angle - lo_angle);
    return start <= width() && start + other.width() <= width();
}

ShadowInterval shadow_interval(const UHPoint& z, const BigReal& R) {
    if (R.sign() <= 0) {
        throw std::invalid_argument("shadow radius must be positive");
    }
    const Precision prec = z.x.precision();
    const UHPoint o = origin(prec);
    if (z.x.is_zero() && z.y == 1L) {
        throw std::invalid_argument("shadow center must differ from o");
    }
    ShadowInterval out;
    const BigReal d = hyp_distance(o, z);
    if (d <= R) {
        out.full = true;
        out.lo_angle = BigReal(0L, prec);
        out.hi_angle = two_pi(prec);
        return out;
    }
    // Rotate about o so that z sits on the vertical ray; then the shadow is the
    // set of angles phi with d(z~, [o, ζ(phi))) <= R around phi = 0.
    const UHPoint zt{BigReal(0L, prec), exp(d)};
    auto inside = [&](const BigReal& phi) { return dist_to_ray(zt, o, boundary_at_angle(phi)) <= R; };
    const BigReal pi = BigReal::pi(prec);
    auto half_width = [&](long sign) {
        BigReal h = exp(-d);
        if (inside(h * sign)) {
            while (2L * h < pi && inside(2L * h * sign)) {
                h *= 2L;
            }
        } else {
            int guard = 0;
            while (!inside(h * sign)) {
                h /= 2L;
                if (++guard > 4 * prec.bits()) {
                    throw NonConvergence("shadow bracket search failed");
                }
            }
        }
        BigReal lo = h;
        BigReal hi = min(2L * h, pi);
        for (int step = 0; step < kBisectionSteps; ++step) {
            BigReal mid = (lo + hi) / 2L;
            if (inside(mid * sign)) {
                lo = std::move(mid);
            } else {
                hi = std::move(mid);
            }
        }
        return lo;
    };
    const BigReal plus = half_width(1);
    const BigReal minus = half_width(-1);
    const BigReal center = boundary_angle(ray_endpoint(o, z), prec);
    out.lo_angle = reduce_angle(center - minus);
    out.hi_angle = reduce_angle(center + plus);
    out.wraps = out.lo_angle > out.hi_angle;
    out.lo = boundary_at_angle(out.lo_angle);
    out.hi = boundary_at_angle(out.hi_angle);
    return out;
}

bool kaimanovich_instance(const BoundaryPoint& xi, const BigReal& t, const BigReal& c, BigReal& inner_margin,
                          BigReal& outer_margin) {
    const Precision prec = t.precision();
    const UHPoint o = origin(prec);
    const UHPoint xt = geodesic_ray_point(o, xi, t);
    const ShadowInterval s = shadow_interval(xt, BigReal(1L, prec));
    if (s.full) {
        inner_margin = BigReal::infinity(prec);
        outer_margin = BigReal::infinity(prec, -1);
        return false;
    }
    const BigReal r_lo = visual_distance(xi, s.lo, prec);
    const BigReal r_hi = visual_distance(xi, s.hi, prec);
    const BigReal log_c = log(c);
    inner_margin = log(min(r_lo, r_hi)) + log_c + t;
    outer_margin = log_c - t - log(max(r_lo, r_hi));
    return inner_margin.sign() >= 0 && outer_margin.sign() > 0;
}

LemmaSampleReport check_kaimanovich(std::uint64_t samples, double t_lo, double t_hi, const BigReal& c,
                                    std::uint64_t seed, Precision prec, int jobs) {
    if (c < 1L) {
        throw std::invalid_argument("Kaimanovich constant must be >= 1");
    }
    if (t_lo < 0 || t_hi < t_lo) {
        throw std::invalid_argument("t range must satisfy 0 <= t_lo <= t_hi");
    }
    std::vector<Sample> results(samples);
    parallel_for(samples, jobs, [&](std::size_t i) {
        auto rng = sample_rng(seed, i);
        const BoundaryPoint xi = boundary_at_angle(uniform_angle(rng, prec));
        const BigReal t(t_lo + (t_hi - t_lo) * uniform01(rng), prec);
        BigReal inner;
        BigReal outer;
        const bool ok = kaimanovich_instance(xi, t, c, inner, outer);
        Sample& s = results[i];
        s.fail = !ok;
        s.margin = min(inner, outer);
        // Smallest c that would make this sample pass.
        s.extra = exp(log(c) - s.margin);
    });
    LemmaSampleReport rep = aggregate("kaimanovich", results, prec);
    rep.parameters = {{"c", c.to_double()}, {"t_lo", t_lo}, {"t_hi", t_hi}, {"ball_radius", 1.0}};
    rep.seed = seed;
    BigReal needed(1L, prec);
    for (const Sample& s : results) {
        needed = max(needed, s.extra);
    }
    rep.measurements = {{"empirical_c", needed}};
    return rep;
}

LemmaSampleReport check_lemma_main1(std::uint64_t samples, double beta, std::uint64_t seed, Precision prec,
                                    double min_scale, int jobs) {
    if (!(beta >= 0 && beta < 1)) {
        throw std::invalid_argument("beta must lie in [0, 1)");
    }
    if (!(min_scale > 0)) {
        throw std::invalid_argument("min_scale must be positive");
    }
    const UHPoint o = origin(prec);
    const BigReal b(beta, prec);
    std::vector<Sample> results(samples);
    parallel_for(samples, jobs, [&](std::size_t i) {
        auto rng = sample_rng(seed, i);
        const BigReal theta = uniform_angle(rng, prec);
        const BigReal dz_target = BigReal(min_scale, prec) * exp(BigReal(uniform01(rng), prec) * log(BigReal(4L, prec)));
        const UHPoint z = geodesic_ray_point(o, boundary_at_angle(theta), dz_target);
        const BigReal dz = hyp_distance(o, z);
        const UHPoint w = uniform_in_ball(z, b * dz, rng);
        const BigReal dw = hyp_distance(o, w);
        const BigReal lower = dz - dw / (1L + b);
        const BigReal upper = dw / (1L - b) - dz;
        // Rounding slack at the working precision for the equality case z = w.
        const BigReal slack = BigReal::pow2(prec.half_tolerance_exponent(16), prec);
        Sample& s = results[i];
        s.margin = min(lower, upper);
        s.fail = s.margin < -slack;
    });
    LemmaSampleReport rep = aggregate("lemma_main1", results, prec);
    rep.parameters = {{"beta", beta}, {"min_scale", min_scale}, {"max_scale", 4 * min_scale}};
    rep.seed = seed;
    return rep;
}

BigReal last_close_parameter(const UHPoint& o, const BoundaryPoint& w_end, const BoundaryPoint& z_end,
                             const BigReal& s_cap) {
    const Precision prec = s_cap.precision();
    // Pull [o, z_end) back to [i, ∞) once; p(s) becomes H(i e^s).
    const MoebiusMap h = compose(ray_frame(o, z_end).inverse(), ray_frame(o, w_end));
    const BigReal zero(0L, prec);
    auto close = [&](const BigReal& s) { return dist_to_standard_ray(apply(h, UHPoint{zero, exp(s)})) <= 1L; };
    BigReal s(0L, prec);
    while (s + 1L <= s_cap && close(s + 1L)) {
        s += 1L;
    }
    if (s + 1L > s_cap) {
        return s;
    }
    BigReal lo = s;
    BigReal hi = s + 1L;
    for (int step = 0; step < kBisectionSteps; ++step) {
        BigReal mid = (lo + hi) / 2L;
        if (close(mid)) {
            lo = std::move(mid);
        } else {
            hi = std::move(mid);
        }
    }
    return lo;
}

LemmaSampleReport check_lemma_main2(std::uint64_t samples, double beta, double min_scale, std::uint64_t seed,
                                    Precision prec, int jobs) {
    if (!(beta > 0 && beta < 0.2)) {
        throw std::invalid_argument("beta must lie in (0, 1/5)");
    }
    if (!(min_scale >= 10)) {
        throw std::invalid_argument("min_scale must be >= 10");
    }
    const UHPoint o = origin(prec);
    const BigReal b(beta, prec);
    const BigReal kappa = kappa_exponent(beta, prec);
    std::vector<Sample> results(samples);
    parallel_for(samples, jobs, [&](std::size_t i) {
        auto rng = sample_rng(seed, i);
        for (int attempt = 0;; ++attempt) {
            if (attempt > 1000) {
                throw NonConvergence("lemma_main2 rejection sampling exhausted");
            }
            const BigReal theta = uniform_angle(rng, prec);
            const BigReal dz_target =
                BigReal(min_scale, prec) * exp(BigReal(uniform01(rng), prec) * log(BigReal(4L, prec)));
            const UHPoint z = geodesic_ray_point(o, boundary_at_angle(theta), dz_target);
            const BigReal dz = hyp_distance(o, z);
            const UHPoint w = uniform_in_ball(z, b * dz, rng);
            const BigReal dw = hyp_distance(o, w);
            if (dw < BigReal(min_scale, prec)) {
                continue;
            }
            const BigReal s_star =
                last_close_parameter(o, ray_endpoint(o, w), ray_endpoint(o, z), 3L * dw + 10L);
            Sample& s = results[i];
            s.margin = s_star - kappa * dw;
            s.fail = s.margin.sign() < 0;
            return;
        }
    });
    LemmaSampleReport rep = aggregate("lemma_main2", results, prec);
    rep.parameters = {{"beta", beta}, {"min_scale", min_scale}, {"max_scale", 4 * min_scale}};
    rep.seed = seed;
    rep.measurements = {{"kappa", kappa}};
    return rep;
}

BigReal empirical_quasi_ultrametric(std::uint64_t samples, std::uint64_t seed, Precision prec) {
    BigReal worst(0L, prec);
    for (std::uint64_t i = 0; i < samples; ++i) {
        auto rng = sample_rng(seed, i);
        const BoundaryPoint a = boundary_at_angle(uniform_angle(rng, prec));
        const BoundaryPoint b = boundary_at_angle(uniform_angle(rng, prec));
        const BoundaryPoint c = boundary_at_angle(uniform_angle(rng, prec));
        const BigReal ac = visual_distance(a, c, prec);
        const BigReal denom = max(visual_distance(a, b, prec), visual_distance(b, c, prec));
        if (denom.sign() > 0) {
            worst = max(worst, ac / denom);
        }
    }
    return worst;
}

} // namespace fuchsdim
