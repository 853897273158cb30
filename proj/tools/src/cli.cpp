#include "fuchsdim_cli/cli.hpp"

#include "fuchsdim_cli/svg.hpp"

#include "fuchsdim/boundary_metric.hpp"
#include "fuchsdim/dimension.hpp"
#include "fuchsdim/errors.hpp"
#include "fuchsdim/report_io.hpp"
#include "fuchsdim/schottky.hpp"
#include "fuchsdim/words.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

namespace fuchsdim::cli {

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

struct Options {
    long k = 2;
    long jmax = 0;
    long n = 0;
    std::string alpha;
    long precision = 0;
    std::uint64_t seed = 1;
    std::uint64_t budget = 0;
    int jobs = 1;
    std::string out = "fuchsdim-out";
    long emax = kDefaultMaxExponent;

    bool words = false;
    std::uint64_t samples = 0;
    bool with_contraction = false;
    long depth = 0;
    std::uint64_t count = 10'000;
    long s_min = 5;
    long s_max = 30;
    double r_step = 0.5;
    double r_max = 0;
    double horizon = 40;
    double step = 1;
    std::string xi;
    long xi_fixed = 0;
    std::string xi_word;
    std::optional<double> x_min;
    std::optional<double> x_max;
    double width = 1200;
    double height = 600;
    double stroke = 1;
    bool shade = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Context {
    const Options& opt;
    std::string command;
    std::string run_id;
    std::ostream& out;

    long j_max() const { return opt.jmax > 0 ? opt.jmax : opt.k + 20; }

    Precision precision_for(long depth) const {
        if (opt.precision > 0) {
            return Precision{opt.precision};
        }
        return Precision{std::max(Precision::kDefaultBits, estimated_bits(j_max(), depth))};
    }

    GeneratorFamily family(long depth) const {
        return GeneratorFamily(opt.k, j_max(), precision_for(depth), opt.emax);
    }

    std::uint64_t budget_or(std::uint64_t fallback) const { return opt.budget > 0 ? opt.budget : fallback; }

    BigReal alpha(Precision prec) const {
        if (opt.alpha.empty()) {
            return BigReal(1L, prec) / (2 * opt.k);
        }
        BigReal a(0L, prec);
        const auto slash = opt.alpha.find('/');
        if (slash == std::string::npos) {
            a = BigReal::parse(opt.alpha, prec);
        } else {
            a = BigReal::parse(opt.alpha.substr(0, slash), prec) / BigReal::parse(opt.alpha.substr(slash + 1), prec);
        }
        if (!(a.sign() > 0)) {
            throw UsageError("--alpha must be positive");
        }
        return a;
    }

    // Writes out/<command>-<run id><suffix>. An existing artifact is never
    // replaced; rewriting identical bytes is a no-op.
    std::string write(const std::string& suffix, const std::string& content) const {
        namespace fs = std::filesystem;
        fs::create_directories(opt.out);
        const fs::path path = fs::path(opt.out) / (command + "-" + run_id + suffix);
        if (fs::exists(path)) {
            std::ifstream in(path, std::ios::binary);
            std::ostringstream existing;
            existing << in.rdbuf();
            if (existing.str() != content) {
                throw std::runtime_error("refusing to overwrite " + path.string());
            }
        } else {
            std::ofstream f(path, std::ios::binary);
            f << content;
            if (!f) {
                throw std::runtime_error("cannot write " + path.string());
            }
        }
        out << "wrote " << path.string() << "\n";
        return path.string();
    }
};

std::string run_identity(CLI::App& app, const std::string& command) {
    std::map<std::string, std::string> items;
    for (const CLI::Option* opt : app.get_options()) {
        const auto& names = opt->get_lnames();
        if (names.empty()) {
            continue;
        }
        const std::string& name = names.front();
        if (name == "help" || name == "jobs" || name == "out" || name == "config") {
            continue;
        }
        std::string value;
        for (const auto& r : opt->results()) {
            if (!value.empty()) {
                value += ",";
            }
            value += r;
        }
        items[name] = value;
    }
    std::string canon = command + "\n";
    for (const auto& [name, value] : items) {
        canon += name + "=" + value + "\n";
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canon)));
    return buf;
}

void validate(const Options& opt) {
    if (opt.k < 1) {
        throw UsageError("--k must be >= 1");
    }
    if (opt.jmax != 0 && opt.jmax < opt.k) {
        throw UsageError("--jmax must be >= --k");
    }
    if (opt.n < 0) {
        throw UsageError("--n must be >= 1");
    }
    if (opt.jobs < 1) {
        throw UsageError("--jobs must be >= 1");
    }
    if (opt.precision != 0 && opt.precision < Precision::kMinBits) {
        throw UsageError("--precision must be >= 64 bits");
    }
    if (opt.emax < 1) {
        throw UsageError("--emax must be positive");
    }
}

void require_k2(const Options& opt) {
    if (opt.k < 2) {
        throw UsageError("this command requires k >= 2");
    }
}

int cmd_family(const Context& ctx) {
    const GeneratorFamily fam = ctx.family(1);
    ctx.write(".json", family_manifest_json(fam));
    ctx.out << "generators " << fam.alphabet().size() << " precision " << fam.precision().bits() << "\n";
    return kPass;
}

int cmd_certify(const Context& ctx) {
    require_k2(ctx.opt);
    const long n = ctx.opt.n > 0 ? ctx.opt.n : 3;
    const GeneratorFamily fam = ctx.family(n);
    const CertificateReport rep =
        certify_hd_upper(ctx.opt.k, n, fam, ctx.budget_or(kDefaultWordBudget), ctx.opt.jobs);
    ctx.write(".json", report_json(rep));
    for (const auto& c : rep.covers) {
        ctx.out << "S(n=" << c.n << ") " << c.truncated_sum.to_decimal(12) << " tail " << c.tail_bound.to_decimal(6)
                << "\n";
    }
    ctx.out << "mu-sum total " << rep.mu_sum.total.to_decimal(12) << "\n";
    if (!rep.passed) {
        ctx.out << "certificate failed: " << rep.violation << "\n";
        return kCheckFailed;
    }
    ctx.out << "alpha_certified " << rep.alpha_rational << " = " << rep.alpha.to_decimal(17) << "\n";
    return kPass;
}

int cmd_cover_sum(const Context& ctx) {
    const long n = ctx.opt.n > 0 ? ctx.opt.n : 3;
    const GeneratorFamily fam = ctx.family(n);
    const BigReal a = ctx.alpha(fam.precision());
    const std::uint64_t budget = ctx.budget_or(kDefaultWordBudget);
    const auto reps = covering_sums(fam, n, a, budget, ctx.opt.jobs);
    ctx.write(".json", report_json(reps));
    if (ctx.opt.words) {
        ctx.write("-words.csv", word_stream_csv(word_circles(fam, n, budget, ctx.opt.jobs)));
    }
    for (const auto& c : reps) {
        ctx.out << "S(n=" << c.n << ") " << c.truncated_sum.to_decimal(12) << " tail " << c.tail_bound.to_decimal(6)
                << " words " << c.word_count << "\n";
    }
    return kPass;
}

int cmd_mu_sum(const Context& ctx) {
    require_k2(ctx.opt);
    const GeneratorFamily fam = ctx.family(1);
    const MuSumReport rep = check_mu_sum(ctx.opt.k, fam.j_max(), fam);
    ctx.write(".json", report_json(rep));
    ctx.out << "mu-sum " << rep.truncated_sum.to_decimal(12) << " + tail " << rep.tail_bound.to_decimal(6)
            << " (reference " << rep.reference_bound.to_decimal(6) << ")\n";
    return rep.within_one ? kPass : kCheckFailed;
}

int cmd_verify_lemmas(const Context& ctx) {
    const Options& opt = ctx.opt;
    const Precision prec = opt.precision > 0 ? Precision{opt.precision} : Precision{};
    const std::uint64_t big = opt.samples > 0 ? opt.samples : 10'000;
    const std::uint64_t small = opt.samples > 0 ? opt.samples : 1'000;
    bool ok = true;
    auto note = [&](const std::string& name, std::uint64_t failures, std::uint64_t total) {
        ctx.out << (failures == 0 ? "PASS " : "FAIL ") << name << " failures " << failures << "/" << total << "\n";
        ok = ok && failures == 0;
    };
    {
        const auto rep = check_kaimanovich(small, 1.0, 40.0, BigReal(10L, prec), opt.seed, prec, opt.jobs);
        ctx.write("-kaimanovich.json", report_json(rep));
        note(rep.lemma, rep.failures, rep.samples);
    }
    {
        const auto rep = check_lemma_main1(big, 0.15, opt.seed, prec, 1.0, opt.jobs);
        ctx.write("-lemma_main1.json", report_json(rep));
        note(rep.lemma, rep.failures, rep.samples);
    }
    {
        const auto rep = check_lemma_main2(big, 0.1, 10.0, opt.seed, prec, opt.jobs);
        ctx.write("-lemma_main2.json", report_json(rep));
        note(rep.lemma, rep.failures, rep.samples);
    }
    if (opt.with_contraction) {
        const long n = opt.n > 0 ? opt.n : 3;
        const GeneratorFamily fam = ctx.family(n);
        const auto sweep = sweep_radius_contraction(fam, n, opt.jobs);
        ctx.write("-radius_contraction.json", report_json(sweep));
        note("radius_contraction", sweep.violations.size(), sweep.checked);
    }
    return ok ? kPass : kCheckFailed;
}

int cmd_boxcount(const Context& ctx) {
    const Options& opt = ctx.opt;
    const long depth = opt.depth > 0 ? opt.depth : 4;
    const GeneratorFamily fam = ctx.family(depth);
    const auto pts = sample_limit_points(fam, depth, opt.count, opt.seed, opt.jobs);
    std::vector<BigReal> centers;
    centers.reserve(pts.size());
    for (const auto& p : pts) {
        centers.push_back(p.center);
    }
    BoxCountRun run;
    run.k = opt.k;
    run.j_max = fam.j_max();
    run.depth = depth;
    run.count = opt.count;
    run.seed = opt.seed;
    run.precision = fam.precision().bits();
    run.s_min = opt.s_min;
    run.s_max = opt.s_max;
    run.result = box_count_dimension(std::move(centers), opt.s_min, opt.s_max);
    ctx.write(".json", report_json(run));
    ctx.write("-counts.csv", box_counts_csv(run));
    const double bound = 1.0 / (2.0 * static_cast<double>(opt.k)) + 0.10;
    char line[160];
    std::snprintf(line, sizeof line, "box slope %.6f band [%.6f, %.6f] bound %.6f\n", run.result.slope,
                  run.result.band_lo, run.result.band_hi, bound);
    ctx.out << line;
    return run.result.slope <= bound ? kPass : kCheckFailed;
}

int cmd_orbit(const Context& ctx) {
    const Options& opt = ctx.opt;
    const GeneratorFamily fam = ctx.family(1);
    OrbitOptions oo;
    oo.n_max = opt.n;
    oo.budget = ctx.budget_or(100'000);
    oo.r_step = opt.r_step;
    oo.r_max = opt.r_max;
    const OrbitReport rep = orbit_count(fam, oo, opt.jobs);
    ctx.write(".json", report_json(rep));
    ctx.write("-counts.csv", orbit_counts_csv(rep, oo.budget));
    ctx.write("-poincare.csv", poincare_csv(rep, oo.budget));
    if (!rep.fit_found) {
        ctx.out << "no fitting window with relative residual below " << oo.residual_limit << "\n";
        return kCheckFailed;
    }
    const double bound = 1.0 / (2.0 * static_cast<double>(opt.k)) + 0.05;
    char line[200];
    std::snprintf(line, sizeof line, "delta_hat %.6f window [%.2f, %.2f] n_max %ld completeness %.3f bound %.3f\n",
                  rep.delta_hat, rep.fit_lo, rep.fit_hi, rep.n_max, rep.completeness_radius.to_double(), bound);
    ctx.out << line;
    return rep.delta_hat <= bound ? kPass : kCheckFailed;
}

ReducedWord parse_word(const std::string& text) {
    ReducedWord w;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) {
        std::istringstream t(tok);
        long v = 0;
        if (!(t >> v)) {
            throw UsageError("cannot parse word letter '" + tok + "'");
        }
        w.push_back(v);
    }
    return w;
}

int cmd_profile(const Context& ctx) {
    const Options& opt = ctx.opt;
    const int chosen = (opt.xi.empty() ? 0 : 1) + (opt.xi_fixed != 0 ? 1 : 0) + (opt.xi_word.empty() ? 0 : 1);
    if (chosen != 1) {
        throw UsageError("profile needs exactly one of --xi, --xi-fixed, --xi-word");
    }
    const ReducedWord word = opt.xi_word.empty() ? ReducedWord{} : parse_word(opt.xi_word);
    const GeneratorFamily fam = ctx.family(std::max<long>(1, static_cast<long>(word.size())));
    BoundaryPoint xi = BoundaryPoint::infinity();
    if (!opt.xi.empty()) {
        if (opt.xi != "inf" && opt.xi != "infinity") {
            xi = BoundaryPoint::finite(BigReal::parse(opt.xi, fam.precision()));
        }
    } else if (opt.xi_fixed != 0) {
        if (!fam.in_alphabet(opt.xi_fixed)) {
            throw UsageError("--xi-fixed letter is outside the alphabet");
        }
        // The attracting fixed point lies in the disk of its own letter.
        const FixedPoints fp = fixed_points(fam.generator(opt.xi_fixed));
        bool found = false;
        for (const auto& b : fp.boundary) {
            if (b.is_finite() && fam.circle(opt.xi_fixed).contains_boundary(b.value())) {
                xi = b;
                found = true;
            }
        }
        if (!found) {
            throw Indeterminate("attracting fixed point not resolved at this precision");
        }
    } else {
        for (long j : word) {
            if (!fam.in_alphabet(j)) {
                throw UsageError("--xi-word letter outside the alphabet");
            }
        }
        if (!is_reduced(word)) {
            throw UsageError("--xi-word is not reduced");
        }
        xi = BoundaryPoint::finite(word_circle(word, fam).circle.center());
    }
    EscapeOptions eo;
    eo.horizon = opt.horizon;
    eo.step = opt.step;
    eo.node_budget = ctx.budget_or(100'000);
    const EscapeProfile prof = escape_profile(xi, fam, eo);
    ctx.write(".json", report_json(prof));
    ctx.write(".csv", escape_csv(prof));
    char line[160];
    std::snprintf(line, sizeof line, "classification %s alpha_hat %.6f window_min %.6f\n", prof.classification.c_str(),
                  prof.alpha_hat, prof.window_min);
    ctx.out << line;
    return prof.budget_limited ? kCheckFailed : kPass;
}

int cmd_render(const Context& ctx) {
    const Options& opt = ctx.opt;
    RenderSpec spec;
    spec.depth = opt.depth > 0 ? opt.depth : 2;
    spec.x_min = opt.x_min;
    spec.x_max = opt.x_max;
    spec.width = opt.width;
    spec.height = opt.height;
    spec.stroke = opt.stroke;
    spec.shade = opt.shade;
    if (spec.x_min && spec.x_max && !(*spec.x_max > *spec.x_min)) {
        throw UsageError("render viewport is empty");
    }
    const GeneratorFamily fam = ctx.family(spec.depth);
    ctx.write(".svg", render_svg(spec, fam, ctx.budget_or(100'000)));
    return kPass;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certified dimension bounds for Schottky-type limit sets", "fuchsdim"};
    app.fallthrough();
    app.require_subcommand(1, 1);
    app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");

    Options opt;
    app.add_option("--k", opt.k, "Smallest generator index")->capture_default_str();
    app.add_option("--jmax", opt.jmax, "Largest generator index (default k+20)");
    app.add_option("--n", opt.n, "Word length");
    app.add_option("--alpha", opt.alpha, "Covering exponent, decimal or p/q (default 1/(2k))");
    app.add_option("--precision", opt.precision, "Mantissa bits (default: automatic)");
    app.add_option("--seed", opt.seed, "Random seed")->capture_default_str();
    app.add_option("--budget", opt.budget, "Word or node budget");
    app.add_option("--jobs", opt.jobs, "Worker threads")->capture_default_str();
    app.add_option("--out", opt.out, "Output directory")->capture_default_str();
    app.add_option("--emax", opt.emax, "Largest binary exponent allowed for generator data")->capture_default_str();

    app.add_flag("--words", opt.words, "cover-sum: also write the word stream CSV");
    app.add_option("--samples", opt.samples, "verify-lemmas: samples per lemma");
    app.add_flag("--with-contraction", opt.with_contraction, "verify-lemmas: add the radius-contraction sweep");
    app.add_option("--depth", opt.depth, "boxcount/render: word depth");
    app.add_option("--count", opt.count, "boxcount: number of limit points")->capture_default_str();
    app.add_option("--smin", opt.s_min, "boxcount: coarsest scale 2^-smin")->capture_default_str();
    app.add_option("--smax", opt.s_max, "boxcount: finest scale 2^-smax")->capture_default_str();
    app.add_option("--rstep", opt.r_step, "orbit: R grid step")->capture_default_str();
    app.add_option("--rmax", opt.r_max, "orbit: largest R (default: completeness radius)");
    app.add_option("--horizon", opt.horizon, "profile: horizon T")->capture_default_str();
    app.add_option("--step", opt.step, "profile: t grid step")->capture_default_str();
    app.add_option("--xi", opt.xi, "profile: boundary point (number or inf)");
    app.add_option("--xi-fixed", opt.xi_fixed, "profile: attracting fixed point of h_j");
    app.add_option("--xi-word", opt.xi_word, "profile: center of a word circle, letters comma separated");
    app.add_option("--xmin", opt.x_min, "render: viewport left end");
    app.add_option("--xmax", opt.x_max, "render: viewport right end");
    app.add_option("--width", opt.width, "render: SVG width")->capture_default_str();
    app.add_option("--height", opt.height, "render: SVG height")->capture_default_str();
    app.add_option("--stroke", opt.stroke, "render: stroke scale")->capture_default_str();
    app.add_flag("--shade", opt.shade, "render: shade the fundamental domain");

    using Command = int (*)(const Context&);
    const std::vector<std::tuple<std::string, std::string, Command>> commands = {
        {"family", "Write the generator family manifest", cmd_family},
        {"certify", "Run the Hausdorff dimension certificate at alpha = 1/(2k)", cmd_certify},
        {"cover-sum", "Covering sums S(k, n, alpha) with tail bounds", cmd_cover_sum},
        {"mu-sum", "Sum of mu_{i,j}^(2 alpha)", cmd_mu_sum},
        {"verify-lemmas", "Sampled checks of the boundary geometry lemmas", cmd_verify_lemmas},
        {"boxcount", "Box-counting slope of sampled limit points", cmd_boxcount},
        {"orbit", "Orbit counting N(R), delta_hat and Poincare partial sums", cmd_orbit},
        {"profile", "Escape profile of a boundary direction", cmd_profile},
        {"render", "SVG of the word circles", cmd_render},
    };
    std::map<const CLI::App*, Command> dispatch;
    for (const auto& [name, help, fn] : commands) {
        dispatch[app.add_subcommand(name, help)] = fn;
    }

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) {
        args.emplace_back(argv[i]);
    }
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kUsage;
    }

    const CLI::App* sub = app.get_subcommands().front();
    try {
        validate(opt);
        const Context ctx{opt, sub->get_name(), run_identity(app, sub->get_name()), out};
        return dispatch.at(sub)(ctx);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DegenerateFit& e) {
        err << "degenerate fit: " << e.what() << "\n";
        return kCheckFailed;
    } catch (const Indeterminate& e) {
        err << "indeterminate: " << e.what() << "\n";
        return kNumeric;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kNumeric;
    }
}

} // namespace fuchsdim::cli
