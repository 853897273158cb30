#include "fuchsdim/report_io.hpp"

#include "json_support.hpp"

#include <cstdio>
#include <sstream>

namespace fuchsdim {

using detail::Json;
using detail::number_json;

namespace {

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

Json real_json(double v) {
    return Json{{"decimal", fmt("%.17g", v)}, {"binary", fmt("%a", v)}};
}

std::string dump(const Json& j) {
    return j.dump(2) + "\n";
}

Json word_json(const ReducedWord& w) {
    Json arr = Json::array();
    for (long j : w) {
        arr.push_back(j);
    }
    return arr;
}

Json boundary_json(const BoundaryPoint& xi) {
    if (xi.is_infinite()) {
        return "infinity";
    }
    return number_json(xi.value());
}

Json cover_object(const CoverReport& r) {
    return Json{{"k", r.k},
                {"n", r.n},
                {"alpha", number_json(r.alpha)},
                {"J_max", r.j_max},
                {"truncated_sum", number_json(r.truncated_sum)},
                {"tail_bound", number_json(r.tail_bound)},
                {"word_count", r.word_count},
                {"max_radius", number_json(r.max_radius)},
                {"log2_max_radius", number_json(r.log2_max_radius)},
                {"precision", r.precision}};
}

Json mu_object(const MuSumReport& r) {
    return Json{{"k", r.k},
                {"J_max", r.j_max},
                {"alpha", number_json(r.alpha)},
                {"truncated_sum", number_json(r.truncated_sum)},
                {"tail_bound", number_json(r.tail_bound)},
                {"total", number_json(r.total)},
                {"reference_bound", number_json(r.reference_bound)},
                {"term_count", r.term_count},
                {"within_one", r.within_one},
                {"within_reference_bound", r.within_reference_bound}};
}

Json contraction_object(const ContractionBound& cb) {
    return Json{{"alpha", number_json(cb.alpha)},
                {"sigma", number_json(cb.sigma)},
                {"beta", number_json(cb.beta)},
                {"nu_total", number_json(cb.nu_total)},
                {"nu_big", number_json(cb.nu_big)},
                {"worst_column", cb.worst_column}};
}

Json check_object(const ContractionCheck& c) {
    return Json{{"word", word_json(c.word)},
                {"log_lhs", number_json(c.log_lhs)},
                {"log_rhs", number_json(c.log_rhs)},
                {"ratio", number_json(c.ratio)},
                {"holds", c.holds}};
}

} // namespace

std::string report_json(const CertificateReport& rep) {
    Json covers = Json::array();
    for (const auto& c : rep.covers) {
        covers.push_back(cover_object(c));
    }
    Json j{{"report", "dimension"},
           {"k", rep.k},
           {"alpha_certified", rep.passed ? number_json(rep.alpha) : Json(nullptr)},
           {"alpha_rational", rep.passed ? Json(rep.alpha_rational) : Json(nullptr)},
           {"box_estimate", nullptr},
           {"delta_hat", nullptr},
           {"parameters", {{"J_max", rep.j_max}, {"n", rep.n}, {"precision", rep.precision}}},
           {"certificate",
            {{"passed", rep.passed},
             {"mu_ok", rep.mu_ok},
             {"monotone_ok", rep.monotone_ok},
             {"contraction_ok", rep.contraction_ok},
             {"violation", rep.violation.empty() ? Json(nullptr) : Json(rep.violation)},
             {"mu_sum", mu_object(rep.mu_sum)},
             {"contraction", contraction_object(rep.contraction)},
             {"covering_sums", covers}}}};
    return dump(j);
}

std::string report_json(const BoxCountRun& run) {
    Json scales = Json::array();
    for (const auto& s : run.result.scales) {
        scales.push_back(Json{{"s", s.s}, {"count", s.count}});
    }
    const auto& r = run.result;
    Json j{{"report", "dimension"},
           {"k", run.k},
           {"alpha_certified", nullptr},
           {"box_estimate",
            {{"value", real_json(r.slope)},
             {"stderr", real_json(r.stderr_slope)},
             {"band_lo", real_json(r.band_lo)},
             {"band_hi", real_json(r.band_hi)},
             {"intercept", real_json(r.intercept)},
             {"points", r.points},
             {"distinct", r.distinct},
             {"scales", scales}}},
           {"delta_hat", nullptr},
           {"parameters",
            {{"J_max", run.j_max},
             {"depth", run.depth},
             {"count", run.count},
             {"seed", run.seed},
             {"precision", run.precision},
             {"s_min", run.s_min},
             {"s_max", run.s_max}}}};
    return dump(j);
}

std::string report_json(const OrbitReport& rep) {
    Json delta = nullptr;
    if (rep.fit_found) {
        delta = Json{{"value", real_json(rep.delta_hat)},
                     {"fit_lo", real_json(rep.fit_lo)},
                     {"fit_hi", real_json(rep.fit_hi)},
                     {"relative_residual", real_json(rep.fit_residual)}};
    }
    Json j{{"report", "dimension"},
           {"k", rep.k},
           {"alpha_certified", nullptr},
           {"box_estimate", nullptr},
           {"delta_hat", delta},
           {"parameters", {{"J_max", rep.j_max}, {"n_max", rep.n_max}, {"word_count", rep.word_count}}},
           {"orbit",
            {{"min_distance", number_json(rep.min_distance)},
             {"completeness_radius", number_json(rep.completeness_radius)},
             {"grid_points", rep.counts.size()}}}};
    return dump(j);
}

std::string report_json(const EscapeProfile& prof) {
    Json samples = Json::array();
    for (const auto& s : prof.samples) {
        samples.push_back(Json{{"t", real_json(s.t)},
                               {"delta_hat", number_json(s.delta)},
                               {"exact", s.exact},
                               {"nodes", s.nodes},
                               {"word", word_json(s.best_word)}});
    }
    Json j{{"report", "escape_profile"},
           {"xi", boundary_json(prof.xi)},
           {"horizon", real_json(prof.horizon)},
           {"step", real_json(prof.step)},
           {"budget_limited", prof.budget_limited},
           {"classification", prof.classification},
           {"alpha_hat", real_json(prof.alpha_hat)},
           {"window_min", real_json(prof.window_min)},
           {"samples", samples}};
    return dump(j);
}

std::string report_json(const CoverReport& rep) {
    return dump(cover_object(rep));
}

std::string report_json(const std::vector<CoverReport>& reps) {
    Json arr = Json::array();
    for (const auto& r : reps) {
        arr.push_back(cover_object(r));
    }
    return dump(Json{{"report", "covering_sums"}, {"lengths", arr}});
}

std::string report_json(const MuSumReport& rep) {
    return dump(mu_object(rep));
}

std::string report_json(const ContractionSweep& sweep) {
    Json viol = Json::array();
    for (const auto& v : sweep.violations) {
        viol.push_back(check_object(v));
    }
    Json j{{"report", "radius_contraction"},
           {"n_max", sweep.n_max},
           {"checked", sweep.checked},
           {"failures", sweep.violations.size()},
           {"worst", check_object(sweep.worst)},
           {"violations", viol}};
    return dump(j);
}

std::string report_json(const LemmaSampleReport& rep) {
    Json params = Json::object();
    for (const auto& [name, v] : rep.parameters) {
        params[name] = real_json(v);
    }
    Json meas = Json::object();
    for (const auto& [name, v] : rep.measurements) {
        meas[name] = number_json(v);
    }
    Json j{{"lemma", rep.lemma},
           {"samples", rep.samples},
           {"failures", rep.failures},
           {"worst_margin", number_json(rep.worst_margin)},
           {"params", params},
           {"seed", rep.seed},
           {"measurements", meas}};
    return dump(j);
}

std::string report_json(const std::vector<PairingReport>& reps) {
    Json arr = Json::array();
    for (const auto& r : reps) {
        arr.push_back(Json{{"j", r.j},
                           {"image_low_end", number_json(r.image_low_end)},
                           {"image_high_end", number_json(r.image_high_end)},
                           {"residual_center_minus", number_json(r.residual_center_minus)},
                           {"residual_center_plus", number_json(r.residual_center_plus)},
                           {"residual_literal_minus", number_json(r.residual_literal_minus)},
                           {"residual_literal_plus", number_json(r.residual_literal_plus)},
                           {"matches", r.matches},
                           {"orientation_ok", r.orientation_ok}});
    }
    return dump(Json{{"report", "pairing"}, {"generators", arr}});
}

std::string orbit_counts_csv(const OrbitReport& rep, std::uint64_t budget) {
    std::ostringstream out;
    out << "# k=" << rep.k << " J_max=" << rep.j_max << " n_max=" << rep.n_max << " budget=" << budget
        << " words=" << rep.word_count << " completeness_radius=" << rep.completeness_radius.to_decimal(17) << "\n";
    out << "R,N\n";
    for (const auto& row : rep.counts) {
        out << fmt("%.17g", row.r) << "," << row.count << "\n";
    }
    return out.str();
}

std::string poincare_csv(const OrbitReport& rep, std::uint64_t budget) {
    std::ostringstream out;
    out << "# k=" << rep.k << " J_max=" << rep.j_max << " n_max=" << rep.n_max << " budget=" << budget << "\n";
    out << "s";
    for (long l = 1; l <= rep.n_max; ++l) {
        out << ",P_len" << l;
    }
    out << "\n";
    for (std::size_t si = 0; si < rep.s_grid.size(); ++si) {
        out << fmt("%.17g", rep.s_grid[si]);
        for (const auto& row : rep.poincare) {
            out << "," << fmt("%.17g", row[si]);
        }
        out << "\n";
    }
    return out.str();
}

std::string word_stream_csv(const std::vector<WordCircle>& circles) {
    std::ostringstream out;
    out << "word,center,radius_log2\n";
    for (const auto& wc : circles) {
        const BigReal l2 = wc.log_radius / log(BigReal(2L, wc.log_radius.precision()));
        out << "\"" << word_to_string(wc.word) << "\"," << wc.circle.center().to_binary() << ","
            << l2.to_decimal(17) << "\n";
    }
    return out.str();
}

std::string escape_csv(const EscapeProfile& prof) {
    std::ostringstream out;
    out << "# horizon=" << fmt("%.17g", prof.horizon) << " step=" << fmt("%.17g", prof.step)
        << " classification=" << prof.classification << "\n";
    out << "t,delta_hat,exact,nodes\n";
    for (const auto& s : prof.samples) {
        out << fmt("%.17g", s.t) << "," << s.delta.to_decimal(17) << "," << (s.exact ? 1 : 0) << "," << s.nodes
            << "\n";
    }
    return out.str();
}

std::string box_counts_csv(const BoxCountRun& run) {
    std::ostringstream out;
    out << "# k=" << run.k << " J_max=" << run.j_max << " depth=" << run.depth << " count=" << run.count
        << " seed=" << run.seed << "\n";
    out << "s,epsilon_log2,N\n";
    for (const auto& sc : run.result.scales) {
        out << sc.s << "," << -sc.s << "," << sc.count << "\n";
    }
    return out.str();
}

} // namespace fuchsdim
