#pragma once

#include "fuchsdim/schottky.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace fuchsdim::cli {

struct RenderSpec {
    long depth = 2;
    // Real interval shown; unset ends fall back to the depth-1 circles plus a margin.
    std::optional<double> x_min;
    std::optional<double> x_max;
    double width = 1200;
    double height = 600;
    double stroke = 1.0;
    bool shade = false;
};

// One arc per word circle of length 1..depth, colored by depth. Throws
// std::invalid_argument for an empty viewport or depth < 1.
std::string render_svg(const RenderSpec& spec, const GeneratorFamily& family, std::uint64_t budget);

} // namespace fuchsdim::cli
