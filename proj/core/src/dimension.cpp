#include "fuchsdim/dimension.hpp"

#include "fuchsdim/errors.hpp"
#include "fuchsdim/parallel.hpp"
#include "fuchsdim/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

namespace fuchsdim {

CertificateReport certify_hd_upper(long k, long n, const GeneratorFamily& family, std::uint64_t budget, int jobs) {
    if (k < 2) {
        throw std::invalid_argument("certificate needs k >= 2");
    }
    if (family.k() != k) {
        throw std::invalid_argument("family was built for a different k");
    }
    if (n < 1) {
        throw std::invalid_argument("certificate needs n >= 1");
    }
    const Precision prec = family.precision();
    CertificateReport rep;
    rep.k = k;
    rep.n = n;
    rep.j_max = family.j_max();
    rep.precision = prec.bits();
    rep.alpha = BigReal(1L, prec) / (2 * k);
    rep.alpha_rational = "1/" + std::to_string(2 * k);

    rep.mu_sum = check_mu_sum(k, family.j_max(), family);
    rep.contraction = contraction_bound(family, rep.alpha);
    rep.covers = covering_sums(family, n, rep.alpha, budget, jobs);

    rep.mu_ok = rep.mu_sum.within_one;
    rep.contraction_ok = rep.contraction.sigma <= 1L;
    rep.monotone_ok = true;
    for (std::size_t i = 1; i < rep.covers.size(); ++i) {
        if (rep.covers[i].truncated_sum > rep.covers[i - 1].truncated_sum) {
            rep.monotone_ok = false;
            if (rep.violation.empty()) {
                rep.violation = "covering sum increases from n=" + std::to_string(i) + " to n=" +
                                std::to_string(i + 1) + ": " + rep.covers[i - 1].truncated_sum.to_decimal(17) +
                                " < " + rep.covers[i].truncated_sum.to_decimal(17);
            }
        }
    }
    if (!rep.mu_ok) {
        rep.violation = "mu-sum total " + rep.mu_sum.total.to_decimal(17) + " exceeds 1";
    } else if (!rep.contraction_ok && rep.violation.empty()) {
        rep.violation = "contraction column sum " + rep.contraction.sigma.to_decimal(17) + " exceeds 1";
    }
    rep.passed = rep.mu_ok && rep.monotone_ok && rep.contraction_ok;
    return rep;
}

namespace {

ReducedWord random_word(const std::vector<long>& letters, long depth, std::mt19937_64& rng) {
    ReducedWord w;
    w.reserve(static_cast<std::size_t>(depth));
    const std::size_t m = letters.size();
    while (static_cast<long>(w.size()) < depth) {
        if (w.empty()) {
            w.push_back(letters[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(m))]);
            continue;
        }
        // Uniform over the m - 1 letters other than the inverse of the last one.
        const long banned = -w.back();
        std::size_t idx = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(m - 1));
        const auto banned_pos =
            static_cast<std::size_t>(std::lower_bound(letters.begin(), letters.end(), banned) - letters.begin());
        if (idx >= banned_pos) {
            ++idx;
        }
        w.push_back(letters[idx]);
    }
    return w;
}

} // namespace

std::vector<LimitSample> sample_limit_points(const GeneratorFamily& family, long depth, std::uint64_t count,
                                             std::uint64_t seed, int jobs) {
    if (depth < 3) {
        throw std::invalid_argument("limit-point sampling needs depth >= 3");
    }
    if (reduced_word_count(family.k(), family.j_max(), depth) < count) {
        throw std::invalid_argument("fewer reduced words than requested samples");
    }
    // Candidate i draws from its own stream; duplicates are skipped in index order.
    std::set<ReducedWord> seen;
    std::vector<ReducedWord> words;
    words.reserve(count);
    const std::uint64_t max_attempts = 50 * count + 1000;
    for (std::uint64_t i = 0; words.size() < count; ++i) {
        if (i >= max_attempts) {
            throw BudgetExceeded("could not draw enough distinct words");
        }
        auto rng = sample_rng(seed, i);
        ReducedWord w = random_word(family.alphabet(), depth, rng);
        if (seen.insert(w).second) {
            words.push_back(std::move(w));
        }
    }
    std::vector<LimitSample> out(words.size());
    parallel_for(words.size(), jobs, [&](std::size_t i) {
        WordCircle wc = word_circle(words[i], family);
        out[i] = LimitSample{words[i], wc.circle.center(), wc.log_radius};
    });
    return out;
}

BoxCountResult box_count_dimension(std::vector<BigReal> points, long s_min, long s_max) {
    if (points.size() < 1000) {
        throw std::invalid_argument("box counting needs at least 1000 points");
    }
    if (s_max - s_min < 10) {
        throw std::invalid_argument("box-counting scales must span at least 3 decades");
    }
    std::sort(points.begin(), points.end(), [](const BigReal& a, const BigReal& b) { return a < b; });
    BoxCountResult res;
    res.points = points.size();
    res.distinct = 1;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i] != points[i - 1]) {
            ++res.distinct;
        }
    }
    long saturated = 0;
    for (long s = s_min; s <= s_max; ++s) {
        std::uint64_t count = 1;
        BigReal prev = floor(points.front().ldexp(s));
        for (std::size_t i = 1; i < points.size(); ++i) {
            BigReal cur = floor(points[i].ldexp(s));
            if (cur != prev) {
                ++count;
                prev = std::move(cur);
            }
        }
        res.scales.push_back(ScaleCount{s, count});
        if (count == res.distinct) {
            ++saturated;
        }
    }
    if (res.distinct > 1 && saturated >= 2) {
        throw DegenerateFit("box counts saturate at " + std::to_string(saturated) + " scales");
    }
    const double ln2 = std::log(2.0);
    const double n = static_cast<double>(res.scales.size());
    double sx = 0, sy = 0;
    for (const auto& sc : res.scales) {
        sx += static_cast<double>(sc.s) * ln2;
        sy += std::log(static_cast<double>(sc.count));
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& sc : res.scales) {
        const double dx = static_cast<double>(sc.s) * ln2 - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(static_cast<double>(sc.count)) - my);
    }
    res.slope = sxy / sxx;
    res.intercept = my - res.slope * mx;
    double ssr = 0;
    for (const auto& sc : res.scales) {
        const double e =
            std::log(static_cast<double>(sc.count)) - (res.intercept + res.slope * static_cast<double>(sc.s) * ln2);
        ssr += e * e;
    }
    res.stderr_slope = std::sqrt(ssr / (n - 2) / sxx);
    res.band_lo = res.slope - 2 * res.stderr_slope;
    res.band_hi = res.slope + 2 * res.stderr_slope;
    return res;
}

namespace {

UHPoint origin(Precision prec) {
    return UHPoint{BigReal(0L, prec), BigReal(1L, prec)};
}

// Bounds for letters outside the alphabet: explicit disks while the
// precision resolves them, then the half-planes |Re| >= 2^(j^2 - 1).
class BigLetterBound {
public:
    explicit BigLetterBound(const GeneratorFamily& family) {
        const Precision prec = family.precision();
        long j = family.j_max() + 1;
        for (; j <= family.j_max() + 3; ++j) {
            if (prec.bits() < j * j + j + 8 || generator_exponent_need(j) > family.max_exponent()) {
                break;
            }
            circles_.push_back(base_circle(j, prec));
            circles_.push_back(base_circle(-j, prec));
        }
        if (j * j - 1 > family.max_exponent()) {
            throw ExponentOverflow("out-of-alphabet bound exceeds the exponent range");
        }
        edge_ = BigReal::pow2(j * j - 1, prec);
    }

    BigReal operator()(const UHPoint& z) const {
        const BigReal gap = edge_ - abs(z.x);
        BigReal best = gap.sign() > 0 ? asinh(gap / z.y) : BigReal(0L, z.x.precision());
        for (const auto& c : circles_) {
            BigReal d = dist_to_halfdisk(z, c);
            if (d < best) {
                best = std::move(d);
            }
        }
        return best;
    }

private:
    std::vector<HalfCircle> circles_;
    BigReal edge_;
};

struct OrbitEntry {
    ReducedWord word;
    UHPoint point;
    BigReal distance;
};

} // namespace

BigReal out_of_alphabet_bound(const UHPoint& z, const GeneratorFamily& family) {
    return BigLetterBound(family)(z);
}

UHPoint orbit_point(const ReducedWord& w, const GeneratorFamily& family) {
    UHPoint p = origin(family.precision());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        p = apply(family.generator(*it), p);
    }
    return p;
}

long max_length_within_budget(long k, long j_max, std::uint64_t budget) {
    std::uint64_t total = 0;
    long n = 0;
    for (;;) {
        const std::uint64_t c = reduced_word_count(k, j_max, n + 1);
        if (c > budget - total) {
            return n;
        }
        total += c;
        ++n;
    }
}

OrbitReport orbit_count(const GeneratorFamily& family, const OrbitOptions& opts, int jobs) {
    const long k = family.k();
    const long jm = family.j_max();
    const long n_max = opts.n_max > 0 ? opts.n_max : max_length_within_budget(k, jm, opts.budget);
    if (n_max < 1) {
        throw BudgetExceeded("word budget does not cover length 1");
    }
    std::uint64_t total = 0;
    for (long l = 1; l <= n_max; ++l) {
        const std::uint64_t c = reduced_word_count(k, jm, l);
        if (c > opts.budget || total + c > opts.budget) {
            throw BudgetExceeded("orbit enumeration to length " + std::to_string(n_max) + " exceeds budget " +
                                 std::to_string(opts.budget));
        }
        total += c;
    }
    if (opts.r_step <= 0) {
        throw std::invalid_argument("R grid step must be positive");
    }
    const Precision prec = family.precision();
    const auto& letters = family.alphabet();
    const BigLetterBound big(family);

    OrbitReport rep;
    rep.k = k;
    rep.j_max = jm;
    rep.n_max = n_max;
    rep.word_count = total;
    rep.s_grid = opts.s_grid;
    if (rep.s_grid.empty()) {
        for (int i = 1; i <= 20; ++i) {
            rep.s_grid.push_back(0.05 * i);
        }
    }

    // Level l holds h_w(o) for all reduced w of length l, lexicographic.
    std::vector<OrbitEntry> level{OrbitEntry{{}, origin(prec), BigReal(0L, prec)}};
    BigReal completeness = BigReal::infinity(prec);
    std::vector<double> distances;
    distances.reserve(total);
    bool min_set = false;

    auto bound_level = [&](const std::vector<OrbitEntry>& lv, bool last) {
        // Words continuing lv with a letter outside the alphabet, and, at the
        // final enumerated length, with any letter at all.
        std::vector<BigReal> part(lv.size(), BigReal::infinity(prec));
        parallel_for(lv.size(), jobs, [&](std::size_t i) {
            const OrbitEntry& e = lv[i];
            BigReal b = big(e.point);
            if (last) {
                for (long c : letters) {
                    if (!e.word.empty() && c == e.word.front()) {
                        continue;
                    }
                    BigReal d = dist_to_halfdisk(e.point, family.circle(c));
                    if (d < b) {
                        b = std::move(d);
                    }
                }
            }
            part[i] = std::move(b);
        });
        for (auto& b : part) {
            if (b < completeness) {
                completeness = std::move(b);
            }
        }
    };

    rep.poincare.assign(static_cast<std::size_t>(n_max), std::vector<double>(rep.s_grid.size(), 0.0));
    std::vector<double> running(rep.s_grid.size(), 1.0);
    std::vector<OrbitEntry> penultimate;
    for (long len = 1; len <= n_max; ++len) {
        bound_level(level, false);
        if (len == n_max) {
            penultimate = level;
        }
        std::vector<std::vector<OrbitEntry>> parts(letters.size());
        parallel_for(letters.size(), jobs, [&](std::size_t li) {
            const long j = letters[li];
            const MoebiusMap& h = family.generator(j);
            const UHPoint o = origin(prec);
            for (const OrbitEntry& e : level) {
                if (!e.word.empty() && e.word.front() == -j) {
                    continue;
                }
                ReducedWord w;
                w.reserve(e.word.size() + 1);
                w.push_back(j);
                w.insert(w.end(), e.word.begin(), e.word.end());
                UHPoint p = apply(h, e.point);
                BigReal d = hyp_distance(o, p);
                parts[li].push_back(OrbitEntry{std::move(w), std::move(p), std::move(d)});
            }
        });
        std::vector<OrbitEntry> next;
        next.reserve(reduced_word_count(k, jm, len));
        for (auto& part : parts) {
            for (auto& e : part) {
                next.push_back(std::move(e));
            }
        }
        level = std::move(next);
        for (const OrbitEntry& e : level) {
            if (!min_set || e.distance < rep.min_distance) {
                rep.min_distance = e.distance;
                min_set = true;
            }
            const double d = e.distance.to_double();
            distances.push_back(d);
            for (std::size_t si = 0; si < rep.s_grid.size(); ++si) {
                running[si] += std::exp(-rep.s_grid[si] * d);
            }
        }
        rep.poincare[static_cast<std::size_t>(len - 1)] = running;
    }
    // Words longer than n_max pass through a depth-n_max disk: pull back by
    // the first n_max - 1 letters and measure to the base disk of the last.
    bound_level(penultimate, true);
    rep.completeness_radius = completeness;

    std::sort(distances.begin(), distances.end());
    const double rc = completeness.to_double();
    double r_top = rc;
    if (opts.r_max > 0 && opts.r_max < r_top) {
        r_top = opts.r_max;
    }
    for (long i = 0;; ++i) {
        const double r = opts.r_step * static_cast<double>(i);
        if ((i > 0 && r >= r_top) || r >= rc) {
            break;
        }
        const auto cnt = static_cast<std::uint64_t>(std::upper_bound(distances.begin(), distances.end(), r) -
                                                    distances.begin());
        rep.counts.push_back(OrbitRow{r, cnt + 1});
    }

    // Largest window over which N grows, with relative RMS residual below the limit.
    const auto& rows = rep.counts;
    std::size_t best_a = 0, best_b = 0;
    bool found = false;
    for (std::size_t a = 0; a < rows.size(); ++a) {
        if (rows[a].count < 2) {
            continue;
        }
        for (std::size_t b = a + static_cast<std::size_t>(opts.min_fit_points) - 1; b < rows.size(); ++b) {
            if (rows[b].count <= rows[a].count) {
                continue;
            }
            const double n = static_cast<double>(b - a + 1);
            double sx = 0, sy = 0;
            for (std::size_t i = a; i <= b; ++i) {
                sx += rows[i].r;
                sy += std::log(static_cast<double>(rows[i].count));
            }
            const double mx = sx / n, my = sy / n;
            double sxx = 0, sxy = 0;
            for (std::size_t i = a; i <= b; ++i) {
                sxx += (rows[i].r - mx) * (rows[i].r - mx);
                sxy += (rows[i].r - mx) * (std::log(static_cast<double>(rows[i].count)) - my);
            }
            const double slope = sxy / sxx;
            double ssr = 0;
            for (std::size_t i = a; i <= b; ++i) {
                const double e = std::log(static_cast<double>(rows[i].count)) - (my + slope * (rows[i].r - mx));
                ssr += e * e;
            }
            const double rel = std::sqrt(ssr / n) / my;
            if (rel >= opts.residual_limit) {
                continue;
            }
            const std::size_t width = b - a + 1;
            const std::size_t best_width = found ? best_b - best_a + 1 : 0;
            if (!found || width > best_width || (width == best_width && b > best_b)) {
                found = true;
                best_a = a;
                best_b = b;
                rep.delta_hat = slope;
                rep.fit_residual = rel;
            }
        }
    }
    rep.fit_found = found;
    if (found) {
        rep.fit_lo = rows[best_a].r;
        rep.fit_hi = rows[best_b].r;
    }
    return rep;
}

namespace {

struct Candidate {
    BigReal bound;
    std::size_t parent;
    long letter;
};

struct CandidateOrder {
    bool operator()(const Candidate& a, const Candidate& b) const {
        if (a.bound != b.bound) {
            return a.bound > b.bound;
        }
        if (a.parent != b.parent) {
            return a.parent > b.parent;
        }
        return a.letter > b.letter;
    }
};

struct Expanded {
    ReducedWord word;
    UHPoint pulled;  // h_w^{-1}(z)
};

EscapeSample orbit_distance_impl(const UHPoint& z, const GeneratorFamily& family, const BigLetterBound& big,
                                 std::uint64_t node_budget, const std::optional<ReducedWord>& warm) {
    const Precision prec = family.precision();
    const UHPoint o = origin(prec);
    EscapeSample out;
    out.delta = hyp_distance(z, o);
    if (warm && !warm->empty()) {
        BigReal d = hyp_distance(z, orbit_point(*warm, family));
        if (d < out.delta) {
            out.delta = std::move(d);
            out.best_word = *warm;
        }
    }
    std::vector<Expanded> nodes{Expanded{{}, z}};
    std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder> heap;
    BigReal big_min = big(z);
    auto push_children = [&](std::size_t idx) {
        const Expanded& e = nodes[idx];
        for (long c : family.alphabet()) {
            if (!e.word.empty() && c == -e.word.back()) {
                continue;
            }
            BigReal b = dist_to_halfdisk(e.pulled, family.circle(c));
            if (b < out.delta) {
                heap.push(Candidate{std::move(b), idx, c});
            }
        }
    };
    push_children(0);
    while (!heap.empty() && heap.top().bound < out.delta && out.nodes < node_budget) {
        Candidate cand = heap.top();
        heap.pop();
        ReducedWord w = nodes[cand.parent].word;
        w.push_back(cand.letter);
        UHPoint pulled = apply(family.generator(-cand.letter), nodes[cand.parent].pulled);
        BigReal d = hyp_distance(pulled, o);
        if (d < out.delta) {
            out.delta = std::move(d);
            out.best_word = w;
        }
        BigReal b = big(pulled);
        if (b < big_min) {
            big_min = std::move(b);
        }
        nodes.push_back(Expanded{std::move(w), std::move(pulled)});
        ++out.nodes;
        push_children(nodes.size() - 1);
    }
    const bool settled = heap.empty() || !(heap.top().bound < out.delta);
    out.exact = settled && big_min >= out.delta;
    return out;
}

} // namespace

EscapeSample orbit_distance(const UHPoint& z, const GeneratorFamily& family, std::uint64_t node_budget,
                            const std::optional<ReducedWord>& warm_start) {
    const BigLetterBound big(family);
    return orbit_distance_impl(z, family, big, node_budget, warm_start);
}

EscapeProfile escape_profile(const BoundaryPoint& xi, const GeneratorFamily& family, const EscapeOptions& opts) {
    if (!(opts.horizon > 0) || !(opts.step > 0)) {
        throw std::invalid_argument("escape profile needs T > 0 and step > 0");
    }
    const Precision prec = family.precision();
    const BigLetterBound big(family);
    const UHPoint o = origin(prec);
    EscapeProfile prof;
    prof.xi = xi;
    prof.horizon = opts.horizon;
    prof.step = opts.step;
    std::optional<ReducedWord> warm;
    const long steps = static_cast<long>(std::floor(opts.horizon / opts.step + 1e-9));
    for (long i = 0; i <= steps; ++i) {
        const double t = opts.step * static_cast<double>(i);
        const UHPoint zt = geodesic_ray_point(o, xi, BigReal(t, prec));
        EscapeSample s = orbit_distance_impl(zt, family, big, opts.node_budget, warm);
        s.t = t;
        warm = s.best_word;
        if (!s.exact) {
            prof.budget_limited = true;
        }
        prof.samples.push_back(std::move(s));
    }
    bool window_exact = true;
    double wmin = std::numeric_limits<double>::infinity();
    double amin = std::numeric_limits<double>::infinity();
    for (const auto& s : prof.samples) {
        if (s.t < opts.horizon / 2) {
            continue;
        }
        window_exact = window_exact && s.exact;
        const double d = s.delta.to_double();
        wmin = std::min(wmin, d);
        if (s.t > 0) {
            amin = std::min(amin, d / s.t);
        }
    }
    prof.window_min = wmin;
    prof.alpha_hat = amin;
    if (!window_exact) {
        prof.classification = "withheld";
    } else if (wmin <= opts.radial_threshold) {
        prof.classification = "radial-like";
    } else if (amin >= opts.linear_threshold) {
        prof.classification = "linear-escape-like";
    } else {
        prof.classification = "transient-like";
    }
    return prof;
}

} // namespace fuchsdim
