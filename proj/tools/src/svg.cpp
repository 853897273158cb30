#include "fuchsdim_cli/svg.hpp"

#include "fuchsdim/errors.hpp"
#include "fuchsdim/words.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace fuchsdim::cli {

namespace {

const char* const kPalette[] = {"#1b4f9c", "#c0392b", "#1e8449", "#b9770e", "#6c3483", "#117a65", "#7b7d7d"};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

} // namespace

std::string render_svg(const RenderSpec& spec, const GeneratorFamily& family, std::uint64_t budget) {
    if (spec.depth < 1) {
        throw std::invalid_argument("render depth must be >= 1");
    }
    if (!(spec.width > 0) || !(spec.height > 0)) {
        throw std::invalid_argument("render size must be positive");
    }
    std::uint64_t total = 0;
    for (long d = 1; d <= spec.depth; ++d) {
        const std::uint64_t c = reduced_word_count(family.k(), family.j_max(), d);
        if (c > budget || total + c > budget) {
            throw BudgetExceeded("render needs more word circles than the budget allows");
        }
        total += c;
    }

    double lo = 0, hi = 0;
    {
        const auto& letters = family.alphabet();
        lo = family.circle(letters.front()).p().value().to_double();
        hi = family.circle(letters.back()).q().value().to_double();
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
    const double x0 = spec.x_min.value_or(lo);
    const double x1 = spec.x_max.value_or(hi);
    if (!(x1 > x0)) {
        throw std::invalid_argument("render viewport is empty");
    }
    const double scale = spec.width / (x1 - x0);
    const double base = spec.height;
    auto px = [&](double x) { return (x - x0) * scale; };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(spec.width) << "\" height=\""
        << num(spec.height) << "\" viewBox=\"0 0 " << num(spec.width) << " " << num(spec.height) << "\">\n";
    out << "<!-- k=" << family.k() << " J_max=" << family.j_max() << " depth=" << spec.depth << " viewport=["
        << num(x0) << ", " << num(x1) << "] precision=" << family.precision().bits() << " -->\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << num(spec.width) << "\" height=\"" << num(spec.height)
        << "\" fill=\"white\"/>\n";

    std::vector<std::vector<WordCircle>> levels;
    for (long d = 1; d <= spec.depth; ++d) {
        levels.push_back(word_circles(family, d, budget, 1));
    }
    auto arc = [&](const HalfCircle& c, bool closed) {
        const double a = px(c.p().value().to_double());
        const double b = px(c.q().value().to_double());
        const double r = (b - a) / 2;
        std::string d = "M " + num(a) + " " + num(base) + " A " + num(r) + " " + num(r) + " 0 0 1 " + num(b) + " " +
                        num(base);
        if (closed) {
            d += " Z";
        }
        return d;
    };

    if (spec.shade) {
        out << "<g id=\"fundamental-domain\">\n";
        out << "<rect x=\"0\" y=\"0\" width=\"" << num(spec.width) << "\" height=\"" << num(spec.height)
            << "\" fill=\"#eef3fb\"/>\n";
        for (const auto& wc : levels.front()) {
            out << "<path d=\"" << arc(wc.circle, true) << "\" fill=\"white\"/>\n";
        }
        out << "</g>\n";
    }
    out << "<line x1=\"0\" y1=\"" << num(base) << "\" x2=\"" << num(spec.width) << "\" y2=\"" << num(base)
        << "\" stroke=\"black\" stroke-width=\"" << num(spec.stroke) << "\"/>\n";

    const std::size_t palette = sizeof kPalette / sizeof kPalette[0];
    for (std::size_t li = 0; li < levels.size(); ++li) {
        const double width = spec.stroke / static_cast<double>(li + 1);
        out << "<g id=\"depth-" << li + 1 << "\" fill=\"none\" stroke=\"" << kPalette[li % palette]
            << "\" stroke-width=\"" << num(width) << "\">\n";
        for (const auto& wc : levels[li]) {
            out << "<path data-word=\"" << word_to_string(wc.word) << "\" d=\"" << arc(wc.circle, false) << "\"/>\n";
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace fuchsdim::cli
