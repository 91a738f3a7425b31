#pragma once

#include "carpetq/optimal_set.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace carpetq::cli {

struct RenderConfig {
  int depth = 3;             // levels of carpet squares drawn, 0..6
  int viewport = 480;        // side of the square image in pixels, >= 64
  double point_radius = 4.0;
};

/// Optimal points of the stage-n set drawn in the figure (greedy sequence,
/// canonical order), exact and unscaled.
std::vector<Point> figure_points(std::size_t n);

/// SVG document: carpet squares to config.depth as stroked rectangles and
/// the set's points as filled circles. y points up in the unit square and is
/// flipped for SVG. Each circle carries its exact coordinates in data-x and
/// data-y. Throws PreconditionError for an invalid config.
std::string render_svg(const OptimalSet& set, const RenderConfig& config);

/// Serialized stage-n set, as printed by `optimal --format json`.
std::string optimal_json(const OptimalSet& set);

/// Rebuilds a set from optimal_json output (nodes' kind and word only).
OptimalSet parse_optimal_json(const std::string& text);

/// Runs one subcommand. `args` excludes the program name. Returns 0 on
/// success, 1 on a computation error or failed check, 2 on a usage error.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace carpetq::cli
