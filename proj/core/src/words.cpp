#include "fuchsdim/words.hpp"

#include "fuchsdim/errors.hpp"
#include "fuchsdim/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fuchsdim {

namespace {

constexpr long kGuardBits = 32;

void check_resolved(const HalfCircle& c, Precision prec) {
    const BigReal width = c.q().value() - c.p().value();
    const BigReal scale = max(abs(c.p().value()), abs(c.q().value()));
    if (width <= scale.ldexp(-prec.bits() + kGuardBits)) {
        throw PrecisionExhausted("word circle width below working precision; increase precision");
    }
}

HalfCircle mapped_circle(const MoebiusMap& h, const HalfCircle& c, Precision prec) {
    HalfCircle out = image_halfcircle(h, c);
    if (out.is_vertical()) {
        throw PrecisionExhausted("word circle mapped through a pole");
    }
    check_resolved(out, prec);
    return out;
}

BigReal power(const BigReal& x, const BigReal& alpha) {
    if (x.is_zero()) {
        return x;
    }
    return exp(alpha * log(x));
}

struct Node {
    WordCircle wc;
    std::size_t parent = 0;
};

// Next level C_{j u} = h_j(C_u), partitioned by the new first letter so the
// output order is lexicographic for any job count.
std::vector<Node> expand(const GeneratorFamily& family, const std::vector<Node>& prev, int jobs) {
    const auto& letters = family.alphabet();
    std::vector<std::vector<Node>> parts(letters.size());
    parallel_for(letters.size(), jobs, [&](std::size_t li) {
        const long j = letters[li];
        const MoebiusMap& h = family.generator(j);
        auto& out = parts[li];
        for (std::size_t pi = 0; pi < prev.size(); ++pi) {
            const WordCircle& u = prev[pi].wc;
            if (u.word.front() == -j) {
                continue;
            }
            ReducedWord w;
            w.reserve(u.word.size() + 1);
            w.push_back(j);
            w.insert(w.end(), u.word.begin(), u.word.end());
            HalfCircle c = mapped_circle(h, u.circle, family.precision());
            BigReal lr = log(c.radius());
            out.push_back(Node{WordCircle{std::move(w), std::move(c), std::move(lr)}, pi});
        }
    });
    std::vector<Node> next;
    for (auto& part : parts) {
        for (auto& node : part) {
            next.push_back(std::move(node));
        }
    }
    return next;
}

std::vector<Node> first_level(const GeneratorFamily& family) {
    std::vector<Node> level;
    for (long j : family.alphabet()) {
        const HalfCircle& c = family.circle(j);
        level.push_back(Node{WordCircle{ReducedWord{j}, c, log(c.radius())}, 0});
    }
    return level;
}

void check_budget(const GeneratorFamily& family, long n, std::uint64_t budget) {
    const std::uint64_t count = reduced_word_count(family.k(), family.j_max(), n);
    if (count > budget) {
        throw BudgetExceeded(std::to_string(count) + " words at length " + std::to_string(n) +
                             " exceed the budget of " + std::to_string(budget));
    }
}

} // namespace

bool is_reduced(const ReducedWord& w) {
    for (std::size_t m = 0; m + 1 < w.size(); ++m) {
        if (w[m] == -w[m + 1]) {
            return false;
        }
    }
    return !w.empty();
}

std::string word_to_string(const ReducedWord& w) {
    std::ostringstream out;
    out << '(';
    for (std::size_t m = 0; m < w.size(); ++m) {
        out << (m ? " " : "") << w[m];
    }
    out << ')';
    return out.str();
}

std::uint64_t reduced_word_count(long k, long j_max, long n) {
    if (n < 1 || j_max < k) {
        return 0;
    }
    const std::uint64_t m = 2 * static_cast<std::uint64_t>(j_max - k + 1);
    std::uint64_t count = m;
    for (long i = 1; i < n; ++i) {
        if (count > std::numeric_limits<std::uint64_t>::max() / (m - 1 == 0 ? 1 : m - 1)) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        count *= m - 1;
    }
    return count;
}

void enumerate_reduced(long k, long n, long j_max, const std::function<void(const ReducedWord&)>& emit) {
    if (n < 1 || j_max < k || k < 1) {
        throw std::invalid_argument("enumerate_reduced requires n >= 1 and 1 <= k <= J_max");
    }
    std::vector<long> letters;
    for (long j = -j_max; j <= -k; ++j) {
        letters.push_back(j);
    }
    for (long j = k; j <= j_max; ++j) {
        letters.push_back(j);
    }
    ReducedWord w(static_cast<std::size_t>(n));
    std::function<void(std::size_t)> fill = [&](std::size_t pos) {
        if (pos == w.size()) {
            emit(w);
            return;
        }
        for (long j : letters) {
            if (pos > 0 && w[pos - 1] == -j) {
                continue;
            }
            w[pos] = j;
            fill(pos + 1);
        }
    };
    fill(0);
}

WordCircle word_circle(const ReducedWord& w, const GeneratorFamily& family) {
    if (w.empty()) {
        throw std::invalid_argument("word must be nonempty");
    }
    if (!is_reduced(w)) {
        throw std::invalid_argument("word " + word_to_string(w) + " is not reduced");
    }
    HalfCircle c = family.circle(w.back());
    for (std::size_t m = w.size() - 1; m-- > 0;) {
        c = mapped_circle(family.generator(w[m]), c, family.precision());
    }
    BigReal lr = log(c.radius());
    return WordCircle{w, std::move(c), std::move(lr)};
}

std::vector<WordCircle> word_circles(const GeneratorFamily& family, long n, std::uint64_t budget, int jobs) {
    if (n < 1) {
        throw std::invalid_argument("word length must be >= 1");
    }
    check_budget(family, n, budget);
    std::vector<Node> level = first_level(family);
    for (long len = 2; len <= n; ++len) {
        level = expand(family, level, jobs);
    }
    std::vector<WordCircle> out;
    out.reserve(level.size());
    for (auto& node : level) {
        out.push_back(std::move(node.wc));
    }
    return out;
}

BigReal mu(long i, long j, const GeneratorFamily& family) {
    if (i == -j) {
        throw std::invalid_argument("mu is undefined for i = -j");
    }
    const GeneratorParams& pi = family.params(i);
    const GeneratorParams& pj = family.params(j);
    return 8L / (sqrt(pj.lambda) * abs(pi.x / pj.x + 1L));
}

ContractionCheck check_radius_contraction(const ReducedWord& w, const GeneratorFamily& family) {
    if (w.size() < 2) {
        throw std::invalid_argument("radius contraction needs a word of length >= 2");
    }
    const WordCircle full = word_circle(w, family);
    const WordCircle tail = word_circle(ReducedWord(w.begin() + 1, w.end()), family);
    ContractionCheck out;
    out.word = w;
    out.log_lhs = full.log_radius;
    out.log_rhs = 2L * log(mu(w[0], w[1], family)) + tail.log_radius;
    out.ratio = exp(out.log_lhs - out.log_rhs);
    out.holds = out.log_lhs <= out.log_rhs;
    return out;
}

ContractionSweep sweep_radius_contraction(const GeneratorFamily& family, long n_max, int jobs) {
    if (n_max < 2) {
        throw std::invalid_argument("sweep needs n_max >= 2");
    }
    ContractionSweep sweep;
    sweep.n_max = n_max;
    std::vector<Node> level = first_level(family);
    bool have_worst = false;
    for (long len = 2; len <= n_max; ++len) {
        std::vector<Node> next = expand(family, level, jobs);
        for (const Node& node : next) {
            const WordCircle& wc = node.wc;
            ContractionCheck c;
            c.word = wc.word;
            c.log_lhs = wc.log_radius;
            c.log_rhs = 2L * log(mu(wc.word[0], wc.word[1], family)) + level[node.parent].wc.log_radius;
            c.ratio = exp(c.log_lhs - c.log_rhs);
            c.holds = c.log_lhs <= c.log_rhs;
            ++sweep.checked;
            if (!have_worst || c.ratio > sweep.worst.ratio) {
                sweep.worst = c;
                have_worst = true;
            }
            if (!c.holds) {
                sweep.violations.push_back(std::move(c));
            }
        }
        level = std::move(next);
    }
    return sweep;
}

MuSumReport check_mu_sum(long k, long j_max, const GeneratorFamily& family) {
    if (k < 2) {
        throw std::invalid_argument("the mu-sum certificate requires k >= 2");
    }
    if (family.k() > k + 1 || family.j_max() < j_max || j_max <= k) {
        throw std::invalid_argument("family does not cover k < |j| <= J_max");
    }
    const Precision prec = family.precision();
    MuSumReport rep;
    rep.k = k;
    rep.j_max = j_max;
    rep.alpha = BigReal(1L, prec) / (2 * k);
    const BigReal two_alpha = 2L * rep.alpha;
    rep.truncated_sum = BigReal(0L, prec);
    for (long i : family.alphabet()) {
        if (std::labs(i) <= k || std::labs(i) > j_max) {
            continue;
        }
        for (long j : family.alphabet()) {
            if (std::labs(j) <= k || std::labs(j) > j_max || i == j || i == -j) {
                continue;
            }
            rep.truncated_sum += power(mu(i, j, family), two_alpha);
            ++rep.term_count;
        }
    }
    // Pairs with max(|i|,|j|) = M > J_max: 8 (M - k - 1) terms, each at most
    // 2^(2α(1 - M^2)). Term ratio for M >= J_max + 1 is at most q below.
    auto term = [&](long m) {
        return BigReal(8 * (m - k - 1), prec) * exp(two_alpha * (1 - m * m) * log(BigReal(2L, prec)));
    };
    const long m0 = j_max + 1;
    const BigReal q = BigReal(m0 - k, prec) / BigReal(m0 - k - 1, prec) *
                      exp(-two_alpha * (2 * m0 + 1) * log(BigReal(2L, prec)));
    rep.tail_bound = term(m0) / (1L - q);
    rep.total = rep.truncated_sum + rep.tail_bound;
    rep.reference_bound = BigReal(4L, prec) / 3L * BigReal::pow2(-k, prec);
    rep.within_one = rep.total <= 1L;
    rep.within_reference_bound = rep.truncated_sum <= rep.reference_bound;
    return rep;
}

BigReal contraction_factor(long i, long j, const GeneratorFamily& family) {
    const MoebiusMap& h = family.generator(i);
    const GeneratorParams& pj = family.params(j);
    const BigReal pole = -h.d() / h.c();
    const BigReal dist = abs(pj.xp - pole);
    const BigReal gap = dist - pj.r;
    const BigReal denom = h.c() * h.c() * (gap * gap - pj.r * pj.r);
    if (gap.sign() <= 0 || denom.sign() <= 0) {
        return BigReal::infinity(family.precision());
    }
    return 1L / denom;
}

BigReal contraction_factor_bound(long i, long j, Precision prec) {
    const long ai = std::labs(i);
    const long m = std::max(ai, std::labs(j));
    return BigReal(102L, prec) / 100L * BigReal::pow2(1 - 2 * ai - 2 * m * m, prec);
}

ContractionBound contraction_bound(const GeneratorFamily& family, const BigReal& alpha) {
    const Precision prec = family.precision();
    const long k = family.k();
    const long jm = family.j_max();
    const BigReal two(2L, prec);
    auto pow2a = [&](const BigReal& e) { return exp(alpha * e * log(two)); };

    ContractionBound cb;
    cb.alpha = alpha;
    // Rows |a| > J_max against an in-alphabet column: Σ 2 (1.02 · 2^(1-2a-2a^2))^α,
    // consecutive terms shrink by at least 2^(-α(4J+8)).
    const BigReal first_row = power(contraction_factor_bound(jm + 1, jm + 1, prec), alpha);
    const BigReal row_ratio = pow2a(BigReal(-(4 * jm + 8), prec));
    const BigReal beta_tail = 2L * first_row / (1L - row_ratio);
    // Columns |j| > J_max against every row.
    const BigReal lead = power(BigReal(102L, prec) / 100L * BigReal::pow2(1 - 2 * (jm + 1) * (jm + 1), prec),
                               alpha);
    const BigReal big_column =
        2L * lead * pow2a(BigReal(-2 * k, prec)) / (1L - pow2a(BigReal(-2L, prec)));

    cb.sigma = big_column;
    cb.worst_column = 0;
    for (long j : family.alphabet()) {
        BigReal col = beta_tail;
        for (long a : family.alphabet()) {
            if (a == -j) {
                continue;
            }
            col += power(contraction_factor(a, j, family), alpha);
        }
        if (col > cb.sigma) {
            cb.sigma = col;
            cb.worst_column = j;
        }
    }
    cb.beta = max(beta_tail, big_column);
    const BigReal denom = 1L - pow2a(BigReal(-1L, prec));
    cb.nu_total = 2L * pow2a(BigReal(-(k + 2), prec)) / denom;
    cb.nu_big = 2L * pow2a(BigReal(-(jm + 3), prec)) / denom;
    return cb;
}

BigReal covering_tail(const ContractionBound& cb, long n) {
    if (n < 1) {
        throw std::invalid_argument("word length must be >= 1");
    }
    if (n == 1) {
        return cb.nu_big;
    }
    BigReal sig_n2(1L, cb.sigma.precision());
    for (long i = 0; i < n - 2; ++i) {
        sig_n2 *= cb.sigma;
    }
    return cb.nu_big * sig_n2 * cb.sigma + BigReal(n - 1, cb.sigma.precision()) * cb.beta * cb.nu_total * sig_n2;
}

std::vector<CoverReport> covering_sums(const GeneratorFamily& family, long n, const BigReal& alpha,
                                       std::uint64_t budget, int jobs) {
    if (n < 1 || alpha.sign() <= 0) {
        throw std::invalid_argument("covering sums need n >= 1 and alpha > 0");
    }
    check_budget(family, n, budget);
    const ContractionBound cb = contraction_bound(family, alpha);
    const Precision prec = family.precision();
    std::vector<CoverReport> reports;
    std::vector<Node> level = first_level(family);
    for (long len = 1; len <= n; ++len) {
        if (len > 1) {
            level = expand(family, level, jobs);
        }
        // Partition sums by first letter in alphabet order, then merge.
        const auto& letters = family.alphabet();
        std::vector<BigReal> part(letters.size(), BigReal(0L, prec));
        std::vector<std::size_t> bounds(letters.size() + 1, level.size());
        for (std::size_t li = 0; li < letters.size(); ++li) {
            const auto it = std::partition_point(level.begin(), level.end(), [&](const Node& nd) {
                return nd.wc.word.front() < letters[li];
            });
            bounds[li] = static_cast<std::size_t>(it - level.begin());
        }
        parallel_for(letters.size(), jobs, [&](std::size_t li) {
            for (std::size_t idx = bounds[li]; idx < bounds[li + 1]; ++idx) {
                part[li] += exp(alpha * level[idx].wc.log_radius);
            }
        });
        CoverReport rep;
        rep.k = family.k();
        rep.n = len;
        rep.alpha = alpha;
        rep.j_max = family.j_max();
        rep.truncated_sum = BigReal(0L, prec);
        for (const auto& p : part) {
            rep.truncated_sum += p;
        }
        rep.tail_bound = covering_tail(cb, len);
        rep.word_count = level.size();
        BigReal max_log = level.front().wc.log_radius;
        for (const Node& node : level) {
            if (node.wc.log_radius > max_log) {
                max_log = node.wc.log_radius;
            }
        }
        rep.max_radius = exp(max_log);
        rep.log2_max_radius = max_log / log(BigReal(2L, prec));
        rep.precision = prec.bits();
        reports.push_back(std::move(rep));
    }
    return reports;
}

CoverReport covering_sum(const GeneratorFamily& family, long n, const BigReal& alpha, std::uint64_t budget,
                         int jobs) {
    return covering_sums(family, n, alpha, budget, jobs).back();
}

long estimated_bits(long j_max, long n) {
    const long j2 = j_max * j_max;
    return j2 + j_max + 2 + (n - 1) * (2 * j2 + 2 * j_max + 8) + 64;
}

} // namespace fuchsdim
