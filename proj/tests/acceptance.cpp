// Acceptance run: one PASS/FAIL line per criterion. Exit status is 0 when
// every criterion passes except the documented radius-contraction failures.

#include "fuchsdim/boundary_metric.hpp"
#include "fuchsdim/dimension.hpp"
#include "fuchsdim/errors.hpp"
#include "fuchsdim/random.hpp"
#include "fuchsdim/schottky.hpp"
#include "fuchsdim/words.hpp"
#include "fuchsdim_cli/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace fuchsdim;

namespace {

const Precision P512{512};

int jobs() {
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Line {
    std::string id;
    bool pass = false;
    bool gating = true;
};

std::vector<Line> lines;

void report(const std::string& id, const std::string& title, double limit_seconds,
            const std::function<Outcome()>& body, bool gating = true) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass;
    char timing[96];
    if (limit_seconds > 0) {
        std::snprintf(timing, sizeof timing, "%.2f s (limit %.0f s)", secs, limit_seconds);
        pass = pass && secs < limit_seconds;
    } else {
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
    }
    std::printf("%s %s %s: %s; %s%s\n", pass ? "PASS" : "FAIL", id.c_str(), title.c_str(), o.detail.c_str(), timing,
                gating ? "" : " [informational]");
    std::fflush(stdout);
    lines.push_back({id, pass, gating});
}

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string log2_str(const BigReal& x) {
    if (x.is_zero()) {
        return "0";
    }
    return "2^" + fmt("%.1f", log2(abs(x)).to_double());
}

int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "fuchsdim");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::map<std::string, std::string> json_files(const fs::path& dir) {
    std::map<std::string, std::string> files;
    if (!fs::exists(dir)) {
        return files;
    }
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().extension() == ".json") {
            std::ifstream in(e.path(), std::ios::binary);
            std::ostringstream s;
            s << in.rdbuf();
            files[e.path().filename().string()] = s.str();
        }
    }
    return files;
}

const fs::path work = fs::temp_directory_path() / "fuchsdim-acceptance";

Outcome pairing() {
    const BigReal limit = BigReal::pow2(-240, P512);
    BigReal worst(0L, P512);
    bool ok = true;
    for (long j = 1; j <= 12; ++j) {
        const PairingReport r = pairing_check(j, P512);
        worst = max(worst, max(r.residual_center_minus, r.residual_center_plus));
        ok = ok && r.orientation_ok;
    }
    ok = ok && worst <= limit;
    return {ok, "max residual of h_j(x'_-j -/+ r_j) vs x'_j -/+ r_j is " + log2_str(worst) + " (limit 2^-240)"};
}

Outcome pairing_literal() {
    BigReal worst(0L, P512);
    for (long j = 1; j <= 12; ++j) {
        const PairingReport r = pairing_check(j, P512);
        worst = max(worst, max(r.residual_literal_minus, r.residual_literal_plus));
    }
    return {worst <= BigReal::pow2(-240, P512),
            "max residual against the printed x_j -/+ r_j is " + worst.to_decimal(6) + " (limit 2^-240)"};
}

Outcome mu_sums() {
    bool ok = true;
    std::string detail;
    for (long k = 2; k <= 5; ++k) {
        const long j_max = k + 20;
        const GeneratorFamily f(k, j_max, Precision(std::max<long>(512, estimated_bits(j_max, 1))));
        const MuSumReport r = check_mu_sum(k, j_max, f);
        const bool pass = r.total <= 1L && r.total <= r.reference_bound + r.tail_bound;
        ok = ok && pass;
        detail += (detail.empty() ? "" : ", ") + std::string("k=") + std::to_string(k) + " sum " +
                  r.total.to_decimal(6) + " vs (4/3)2^-k + tail " + (r.reference_bound + r.tail_bound).to_decimal(6);
    }
    return {ok, detail};
}

Outcome covering_monotone() {
    const GeneratorFamily f(2, 6, Precision(std::max<long>(512, estimated_bits(6, 4))));
    const auto reps = covering_sums(f, 4, BigReal(1L, f.precision()) / 4L, kDefaultWordBudget, jobs());
    bool ok = reps.size() == 4;
    const std::uint64_t expected[] = {10, 90, 810, 7290};
    std::string detail = "S(n) =";
    for (std::size_t i = 0; i < reps.size(); ++i) {
        ok = ok && reps[i].word_count == expected[i];
        if (i > 0) {
            ok = ok && reps[i].truncated_sum <= reps[i - 1].truncated_sum;
        }
        detail += " " + reps[i].truncated_sum.to_decimal(6) + " (" + std::to_string(reps[i].word_count) + " words)";
    }
    return {ok, detail};
}

Outcome radius_contraction() {
    const GeneratorFamily f(2, 4, P512);
    const ContractionSweep s = sweep_radius_contraction(f, 3, jobs());
    std::string words;
    for (const auto& v : s.violations) {
        words += (words.empty() ? "" : " ") + word_to_string(v.word);
    }
    return {s.violations.empty(), std::to_string(s.violations.size()) + " violations in " +
                                      std::to_string(s.checked) + " words" +
                                      (words.empty() ? "" : ": " + words)};
}

// The documented violation set: every word of length 2 or 3 starting (-2, 4) or (2, -4).
bool contraction_matches_known_failures() {
    const GeneratorFamily f(2, 4, P512);
    const ContractionSweep s = sweep_radius_contraction(f, 3, jobs());
    std::set<ReducedWord> got;
    for (const auto& v : s.violations) {
        got.insert(v.word);
    }
    std::set<ReducedWord> expected;
    for (long n = 2; n <= 3; ++n) {
        enumerate_reduced(2, n, 4, [&](const ReducedWord& w) {
            if ((w[0] == -2 && w[1] == 4) || (w[0] == 2 && w[1] == -4)) {
                expected.insert(w);
            }
        });
    }
    return s.checked == 180 && got == expected;
}

Outcome headline() {
    bool ok = true;
    std::string detail;
    for (long k = 2; k <= 5; ++k) {
        const fs::path dir = work / ("certify-k" + std::to_string(k));
        const int code = cli({"certify", "--k", std::to_string(k), "--n", "3", "--jobs", std::to_string(jobs()), "--out",
                              dir.string()});
        const auto files = json_files(dir);
        bool pass = code == 0 && files.size() == 1;
        std::string rational = "?";
        if (pass) {
            const auto rep = nlohmann::json::parse(files.begin()->second);
            rational = rep.at("alpha_rational").is_string() ? rep.at("alpha_rational").get<std::string>() : "null";
            const Precision prec{rep.at("parameters").at("precision").get<long>()};
            const BigReal exact = BigReal(1L, prec) / (2 * k);
            pass = rational == "1/" + std::to_string(2 * k) && rep.at("alpha_certified").is_object() &&
                   rep.at("alpha_certified").at("binary").get<std::string>() == exact.to_binary();
        }
        ok = ok && pass;
        detail += (detail.empty() ? "" : ", ") + std::string("k=") + std::to_string(k) + " exit " +
                  std::to_string(code) + " alpha " + rational;
    }
    return {ok, detail};
}

std::vector<BigReal> cantor(int depth) {
    std::vector<BigReal> pts{BigReal(0L, P512)};
    BigReal len(1L, P512);
    for (int d = 0; d < depth; ++d) {
        len /= 3L;
        std::vector<BigReal> next;
        for (const auto& p : pts) {
            next.push_back(p);
            next.push_back(p + 2L * len);
        }
        pts = std::move(next);
    }
    return pts;
}

Outcome calibration() {
    const double target = std::log(2.0) / std::log(3.0);
    const BoxCountResult c = box_count_dimension(cantor(12), 2, 16);
    std::vector<BigReal> grid;
    const long n = 1L << 14;
    for (long i = 0; i < n; ++i) {
        grid.emplace_back(static_cast<double>(i) / static_cast<double>(n), P512);
    }
    const BoxCountResult g = box_count_dimension(std::move(grid), 1, 12);
    const bool ok = std::abs(c.slope - target) <= 0.05 && std::abs(g.slope - 1.0) <= 0.05;
    return {ok, "Cantor slope " + fmt("%.4f", c.slope) + " vs " + fmt("%.4f", target) + ", grid slope " +
                    fmt("%.4f", g.slope) + " (tolerance 0.05)"};
}

Outcome corroboration() {
    const long k = 2, j_max = 22, depth = 4;
    const GeneratorFamily f(k, j_max, Precision(std::max<long>(512, estimated_bits(j_max, depth))));
    const auto samples = sample_limit_points(f, depth, 10'000, 1, jobs());
    std::vector<BigReal> pts;
    for (const auto& s : samples) {
        pts.push_back(s.center);
    }
    const BoxCountResult r = box_count_dimension(std::move(pts), 5, 30);
    return {r.slope <= 0.35, "Lambda_2 slope " + fmt("%.4f", r.slope) + " band [" + fmt("%.4f", r.band_lo) + ", " +
                                 fmt("%.4f", r.band_hi) + "], certificate 0.25 + slack 0.10 = 0.35"};
}

Outcome lemma_samplers() {
    const auto m1 = check_lemma_main1(10'000, 0.15, 1, P512, 1.0, jobs());
    const auto m2 = check_lemma_main2(10'000, 0.1, 10.0, 1, P512, jobs());
    const auto ka = check_kaimanovich(1'000, 1.0, 40.0, BigReal(10L, P512), 1, P512, jobs());
    const bool ok = m1.failures == 0 && m2.failures == 0 && ka.failures == 0;
    return {ok, "lemma_main1 " + std::to_string(m1.failures) + "/" + std::to_string(m1.samples) + ", lemma_main2 " +
                    std::to_string(m2.failures) + "/" + std::to_string(m2.samples) + ", sandwich " +
                    std::to_string(ka.failures) + "/" + std::to_string(ka.samples) + " failures"};
}

Outcome isometry_suite() {
    const GeneratorFamily f(2, 4, P512);
    std::vector<ReducedWord> words;
    for (long n = 1; n <= 3; ++n) {
        enumerate_reduced(2, n, 4, [&](const ReducedWord& w) { words.push_back(w); });
    }
    const BigReal tol = BigReal::pow2(-240, P512);
    BigReal worst_dist(0L, P512), worst_assoc(0L, P512);
    for (std::uint64_t i = 0; i < 10'000; ++i) {
        auto rng = sample_rng(9, i);
        const ReducedWord& word = words[rng() % words.size()];
        auto point = [&] {
            return UHPoint{BigReal(uniform01(rng) * 8 - 4, P512), BigReal(0.05 + uniform01(rng) * 4, P512)};
        };
        const UHPoint z = point(), w = point();
        // Left and right bracketings of the word's letters.
        MoebiusMap left = MoebiusMap::identity(P512);
        for (long j : word) {
            left = compose(left, f.generator(j));
        }
        MoebiusMap right = MoebiusMap::identity(P512);
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
            right = compose(f.generator(*it), right);
        }
        worst_assoc = max(worst_assoc, coefficient_distance(left, right));
        const BigReal d0 = hyp_distance(z, w);
        const BigReal d1 = hyp_distance(apply(left, z), apply(left, w));
        worst_dist = max(worst_dist, abs(d1 - d0) / max(BigReal(1L, P512), d0));
    }
    return {worst_dist <= tol && worst_assoc <= tol, "distance drift " + log2_str(worst_dist) +
                                                         ", associativity " + log2_str(worst_assoc) +
                                                         " over 10^4 triples (limit 2^-240)"};
}

Outcome orbit_consistency() {
    const GeneratorFamily f(2, 6, P512);
    OrbitOptions opts;
    opts.budget = 100'000;
    const OrbitReport r = orbit_count(f, opts, jobs());
    if (!r.fit_found) {
        return {false, "no fitting window below completeness radius " + r.completeness_radius.to_decimal(6)};
    }
    return {r.delta_hat <= 0.30, "delta_hat " + fmt("%.4f", r.delta_hat) + " on R in [" + fmt("%.1f", r.fit_lo) +
                                     ", " + fmt("%.1f", r.fit_hi) + "], " + std::to_string(r.word_count) +
                                     " words, limit 0.30"};
}

Outcome determinism() {
    const std::vector<std::vector<std::string>> runs = {
        {"mu-sum", "--k", "2"},
        {"cover-sum", "--k", "2", "--jmax", "6", "--n", "4", "--alpha", "1/4"},
        {"boxcount", "--k", "2", "--seed", "1"},
    };
    const fs::path dirs[] = {work / "det-a", work / "det-b", work / "det-c"};
    const char* job_counts[] = {"1", "1", "8"};
    for (int d = 0; d < 3; ++d) {
        for (auto args : runs) {
            args.insert(args.end(), {"--jobs", job_counts[d], "--out", dirs[d].string()});
            if (cli(args) != 0) {
                return {false, "run failed: " + args.front()};
            }
        }
    }
    const auto a = json_files(dirs[0]);
    const auto b = json_files(dirs[1]);
    const auto c = json_files(dirs[2]);
    const bool ok = a.size() == 3 && a == b && a == c;
    return {ok, std::to_string(a.size()) + " reports; repeat " + (a == b ? "identical" : "differs") +
                    ", jobs 1 vs 8 " + (a == c ? "identical" : "differs")};
}

} // namespace

int main() {
    fs::remove_all(work);
    fs::create_directories(work);

    report("1", "pairing exactness", 1, pairing);
    report("1b", "printed pairing targets", 0, pairing_literal, false);
    report("2", "mu-sum certificate", 40, mu_sums);
    report("3", "covering-sum monotonicity", 60, covering_monotone);
    report("4", "radius contraction", 60, radius_contraction);
    report("5", "headline certificate", 0, headline);
    report("6", "box-count calibration", 0, calibration);
    report("7", "box-count corroboration", 0, corroboration);
    report("8", "geometry property suites", 120, lemma_samplers);
    report("9", "isometry and group law", 0, isometry_suite);
    report("10", "orbit-count consistency", 0, orbit_consistency);
    report("11", "determinism", 0, determinism);

    // Criterion 4 is known to fail; anything else failing, or 4 failing in a
    // different way, fails the run.
    bool ok = true;
    bool four_failed = false;
    for (const auto& l : lines) {
        if (!l.gating || l.pass) {
            continue;
        }
        if (l.id == "4") {
            four_failed = true;
            continue;
        }
        ok = false;
    }
    if (four_failed) {
        const bool known = contraction_matches_known_failures();
        std::printf("NOTE 4 fails on %s the documented (-2, 4, *) / (2, -4, *) words\n", known ? "exactly" : "other than");
        ok = ok && known;
    }
    std::printf("%s\n", ok ? "ACCEPTANCE OK" : "ACCEPTANCE FAILED");
    fs::remove_all(work);
    return ok ? 0 : 1;
}
