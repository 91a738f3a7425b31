#include "carpetq/cli.hpp"

#include "carpetq/carpet_measure.hpp"
#include "carpetq/errors.hpp"
#include "carpetq/optimal_engine.hpp"
#include "carpetq/oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace carpetq::cli {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string general(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

OptimalSet stage(std::size_t n) { return greedy_sequence(n).back(); }

}  // namespace

std::vector<Point> figure_points(std::size_t n) { return stage(n).codebook(); }

std::string render_svg(const OptimalSet& set, const RenderConfig& config) {
  if (config.depth < 0 || config.depth > 6) {
    throw PreconditionError("figure depth must be in [0, 6]");
  }
  if (config.viewport < 64) throw PreconditionError("figure viewport must be >= 64");

  const double side = config.viewport;
  auto px = [side](const Rational& x) { return fixed(to_double(x) * side, 4); };
  auto py = [side](const Rational& y) { return fixed(to_double(Rational(1) - y) * side, 4); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(config.viewport) +
         "\" height=\"" + std::to_string(config.viewport) + "\" viewBox=\"0 0 " +
         std::to_string(config.viewport) + " " + std::to_string(config.viewport) + "\">\n";
  svg += "<g fill=\"none\" stroke=\"black\" stroke-width=\"0.5\">\n";

  std::vector<Word> level{Word{}};
  for (int d = 0; d <= config.depth; ++d) {
    for (const Word& w : level) {
      const Point lower_left = apply_map(w, Point(Point::Zero()));
      const Rational s = word_params(w).ratio;
      // SVG anchors rectangles at the top-left corner.
      svg += "<rect x=\"" + px(lower_left.x()) + "\" y=\"" + py(lower_left.y() + s) +
             "\" width=\"" + fixed(to_double(s) * side, 4) + "\" height=\"" +
             fixed(to_double(s) * side, 4) + "\"/>\n";
    }
    std::vector<Word> next;
    next.reserve(level.size() * 4);
    for (const Word& w : level) {
      for (int i = 1; i <= 4; ++i) next.push_back(w.child(i));
    }
    level = std::move(next);
  }
  svg += "</g>\n<g fill=\"red\" stroke=\"none\">\n";
  for (const Node& n : set) {
    const Point p = node_centroid(n);
    svg += "<circle cx=\"" + px(p.x()) + "\" cy=\"" + py(p.y()) + "\" r=\"" +
           fixed(config.point_radius, 2) + "\" data-x=\"" + to_string(p.x()) + "\" data-y=\"" +
           to_string(p.y()) + "\" data-node=\"" + std::string(kind_name(n.kind)) + ":" +
           n.word.str() + "\"/>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

std::string optimal_json(const OptimalSet& set) {
  nlohmann::ordered_json doc;
  doc["n"] = set.size();
  doc["nodes"] = nlohmann::ordered_json::array();
  for (const Node& n : set) {
    const Point c = node_centroid(n);
    nlohmann::ordered_json node;
    node["kind"] = std::string(kind_name(n.kind));
    node["word"] = n.word.str();
    node["centroid"] = {{"x", to_string(c.x())}, {"y", to_string(c.y())}};
    node["error"] = to_string(node_error(n));
    doc["nodes"].push_back(std::move(node));
  }
  const Rational v = set_distortion(set);
  doc["V"] = to_string(v);
  doc["V_decimal"] = to_double(v);
  return doc.dump(2);
}

OptimalSet parse_optimal_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw ParseError("JSON document has no \"nodes\" array");
  }
  std::vector<Node> nodes;
  for (const auto& item : doc["nodes"]) {
    if (!item.contains("kind") || !item.contains("word") || !item["kind"].is_string() ||
        !item["word"].is_string()) {
      throw ParseError("node entry needs string \"kind\" and \"word\"");
    }
    const auto kind = parse_kind(item["kind"].get<std::string>());
    if (!kind) throw ParseError("unknown node kind \"" + item["kind"].get<std::string>() + "\"");
    nodes.push_back({*kind, Word::parse(item["word"].get<std::string>())});
  }
  return OptimalSet(std::move(nodes));
}

namespace {

struct Options {
  std::size_t n = 1;
  std::size_t n_max = 1;
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t max_sets = EngineOptions{}.max_sets;
  std::size_t restarts = 1000;
  std::uint64_t seed = 0;
  int level = 0;
  bool count_only = false;
  std::string format = "json";
  std::string out_path;
  RenderConfig render;
};

int cmd_optimal(const Options& o, std::ostream& out) {
  const OptimalSet set = stage(o.n);
  if (o.format == "json") {
    out << optimal_json(set) << "\n";
    return 0;
  }
  out << "kind,word,x,y,error,error_decimal\n";
  for (const Node& n : set) {
    const Point c = node_centroid(n);
    const Rational e = node_error(n);
    out << kind_name(n.kind) << "," << n.word.str() << "," << to_string(c.x()) << ","
        << to_string(c.y()) << "," << to_string(e) << "," << general(to_double(e)) << "\n";
  }
  const Rational v = set_distortion(set);
  out << "total,,,," << to_string(v) << "," << general(to_double(v)) << "\n";
  return 0;
}

int cmd_errors(const Options& o, std::ostream& out) {
  const auto seq = greedy_sequence(o.n_max);
  out << "n\tV_n\tdecimal\n";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Rational v = set_distortion(seq[i]);
    out << i + 1 << "\t" << to_string(v) << "\t" << fixed(to_double(v), 6) << "\n";
  }
  return 0;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  EngineOptions eo;
  eo.max_sets = o.max_sets;
  const auto layer = enumerate_level(o.n, eo);
  if (o.count_only) {
    out << layer.size() << "\n";
    return 0;
  }
  for (std::size_t i = 0; i < layer.size(); ++i) {
    out << o.n << ":" << i + 1 << "\t" << layer[i].display() << "\tV=" << to_string(set_distortion(layer[i]))
        << "\n";
  }
  return 0;
}

int cmd_table(const Options& o, std::ostream& out) {
  EngineOptions eo;
  eo.max_sets = o.max_sets;
  const CountTable table = count_table(o.from, o.to, eo);
  out << "n\tcard(C_n)\n";
  for (const auto& [n, count] : table.entries) out << n << "\t" << count << "\n";
  return 0;
}

int cmd_tree(const Options& o, std::ostream& out) {
  EngineOptions eo;
  eo.max_sets = o.max_sets;
  for (const TreeEdge& e : tree_edges(o.from, o.to, eo)) {
    out << e.n << ":" << e.parent << " -> " << e.n + 1 << ":" << e.child << "\n";
  }
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const OptimalSet set = stage(o.n);
  // A tie puts an atom on a Voronoi boundary; deepen the level and retry.
  constexpr int kRetries = 2;
  for (int level = o.level;; ++level) {
    try {
      const bool centroid_ok = oracle::verify_centroid_condition(set, level);
      const bool identity_ok = oracle::verify_distortion_identity(set, level);
      out << "level\t" << level << "\n";
      out << "centroid_condition\t" << (centroid_ok ? "PASS" : "FAIL") << "\n";
      out << "distortion_identity\t" << (identity_ok ? "PASS" : "FAIL") << "\n";
      return centroid_ok && identity_ok ? 0 : 1;
    } catch (const TieError& e) {
      if (level - o.level >= kRetries || level + 1 > oracle::kMaxLevel) throw;
      err << "tie at level " << level << ", retrying at level " << level + 1 << ": " << e.what()
          << "\n";
    }
  }
}

int cmd_lloyd(const Options& o, std::ostream& out) {
  const oracle::LloydResult result = oracle::lloyd_search(o.n, o.level, o.restarts, o.seed);
  const Rational claimed =
      set_distortion(stage(o.n)) -
      measure().variance / pow_rational(Rational(9), static_cast<unsigned>(o.level));
  out << "best_distortion\t" << general(result.best_distortion) << "\n";
  out << "best_restart\t" << result.best_restart << "\n";
  out << "exact_discretized_optimum\t" << to_string(claimed) << "\t" << general(to_double(claimed))
      << "\n";
  out << "difference\t" << general(result.best_distortion - to_double(claimed)) << "\n";
  return 0;
}

int cmd_figure(const Options& o, std::ostream& out) {
  const std::string svg = render_svg(stage(o.n), o.render);
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file) throw PreconditionError("cannot open output file '" + o.out_path + "'");
  file << svg;
  if (!file) throw PreconditionError("failed writing '" + o.out_path + "'");
  out << "wrote " << o.out_path << "\n";
  return 0;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal quantizers for a nonhomogeneous measure on the Sierpinski carpet",
               "carpetq"};
  app.require_subcommand(1);
  Options o;
  const auto positive = CLI::PositiveNumber;

  auto* optimal = app.add_subcommand("optimal", "print the stage-N optimal set");
  optimal->add_option("--n", o.n, "number of points")->required()->check(positive);
  optimal->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* errors = app.add_subcommand("errors", "quantization errors V_1..V_N");
  errors->add_option("--n-max", o.n_max, "largest n")->required()->check(positive);

  auto* enumerate = app.add_subcommand("enumerate", "all optimal sets of N-means");
  enumerate->add_option("--n", o.n, "number of points")->required()->check(positive);
  enumerate->add_flag("--count-only", o.count_only, "print only the number of sets");
  enumerate->add_option("--max-sets", o.max_sets, "layer capacity")->check(positive);

  auto* table = app.add_subcommand("table", "card(C_n) for a range of n");
  table->add_option("--from", o.from, "first n (>= 2)")->required()->check(CLI::Range(2, 1 << 20));
  table->add_option("--to", o.to, "last n")->required()->check(positive);
  table->add_option("--max-sets", o.max_sets, "layer capacity for fallback enumeration")
      ->check(positive);

  auto* tree = app.add_subcommand("tree", "edges between consecutive stages");
  tree->add_option("--from", o.from, "first stage")->required()->check(positive);
  tree->add_option("--to", o.to, "last stage")->required()->check(positive);
  tree->add_option("--max-sets", o.max_sets, "layer capacity")->check(positive);

  auto* verify = app.add_subcommand("verify", "exact oracle checks on the stage-N set");
  verify->add_option("--n", o.n, "number of points")->required()->check(positive);
  verify->add_option("--level", o.level, "discretization level")
      ->required()
      ->check(CLI::Range(0, oracle::kMaxLevel));

  auto* lloyd = app.add_subcommand("lloyd", "floating-point Lloyd search on the discretization");
  lloyd->add_option("--n", o.n, "number of points")->required()->check(positive);
  lloyd->add_option("--level", o.level, "discretization level")
      ->required()
      ->check(CLI::Range(0, oracle::kMaxLevel));
  lloyd->add_option("--restarts", o.restarts, "random restarts")->check(positive);
  lloyd->add_option("--seed", o.seed, "random seed");

  auto* figure = app.add_subcommand("figure", "SVG of the carpet and the stage-N points");
  figure->add_option("--n", o.n, "number of points")->required()->check(positive);
  figure->add_option("--depth", o.render.depth, "carpet levels drawn")->check(CLI::Range(0, 6));
  figure->add_option("--out", o.out_path, "output path")->required();
  figure->add_option("--viewport", o.render.viewport, "image side in pixels")
      ->check(CLI::Range(64, 1 << 16));
  figure->add_option("--radius", o.render.point_radius, "point radius in pixels")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*optimal) return cmd_optimal(o, out);
    if (*errors) return cmd_errors(o, out);
    if (*enumerate) return cmd_enumerate(o, out);
    if (*table) {
      if (o.to < o.from) {
        err << "usage error: --to must be >= --from\n";
        return 2;
      }
      return cmd_table(o, out);
    }
    if (*tree) {
      if (o.to <= o.from) {
        err << "usage error: --to must be > --from\n";
        return 2;
      }
      return cmd_tree(o, out);
    }
    if (*verify) return cmd_verify(o, out, err);
    if (*lloyd) return cmd_lloyd(o, out);
    if (*figure) return cmd_figure(o, out);
  } catch (const Error& e) {
    err << e.name() << ": " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace carpetq::cli
