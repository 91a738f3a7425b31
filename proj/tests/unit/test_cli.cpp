#include "carpetq/cli.hpp"
#include "carpetq/errors.hpp"
#include "carpetq/optimal_engine.hpp"

#include "helpers.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

using namespace carpetq;
using namespace carpetq::test;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<Point> svg_points(const std::string& svg) {
  static const std::regex circle(R"re(data-x="([^"]+)" data-y="([^"]+)")re");
  std::vector<Point> out;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), circle); it != std::sregex_iterator();
       ++it) {
    out.push_back(Pt(parse_rational((*it)[1].str()), parse_rational((*it)[2].str())));
  }
  return out;
}

}  // namespace

TEST_CASE("optimal prints exact json") {
  const Run r = run({"optimal", "--n", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("V") == "31/288");
  REQUIRE(j.at("nodes").size() == 2);
  CHECK(j["nodes"][0]["centroid"]["x"] == "1/6");
  CHECK(j["nodes"][0]["centroid"]["y"] == "3/4");
  CHECK(j["nodes"][1]["centroid"]["x"] == "5/6");
  CHECK(j["nodes"][0]["kind"] == "pair13");
  CHECK(j["nodes"][1]["kind"] == "pair24");
  CHECK(j["nodes"][0]["error"] == "31/576");
  CHECK(j.at("V_decimal").get<double>() == doctest::Approx(31.0 / 288.0));
}

TEST_CASE("json round trip reproduces the printed distortion") {
  for (std::size_t n : {1u, 3u, 9u, 17u, 40u, 72u}) {
    CAPTURE(n);
    const Run r = run({"optimal", "--n", std::to_string(n), "--format", "json"});
    REQUIRE(r.code == 0);
    const OptimalSet s = cli::parse_optimal_json(r.out);
    CHECK(s.size() == n);
    CHECK(to_string(set_distortion(s)) == nlohmann::json::parse(r.out).at("V").get<std::string>());
    CHECK(s == greedy_sequence(n).back());
  }
  CHECK_THROWS_AS(cli::parse_optimal_json("{\"nodes\": [{\"kind\": \"pair99\", \"word\": \"\"}]}"),
                  ParseError);
  CHECK_THROWS_AS(cli::parse_optimal_json("not json"), ParseError);
}

TEST_CASE("optimal csv ends with the total") {
  const Run r = run({"optimal", "--n", "3", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("kind,word,x,y,error,error_decimal\n", 0) == 0);
  CHECK(r.out.find("pair12,,1/2,1/4,13/384,") != std::string::npos);
  CHECK(r.out.find("\ntotal,,,,5/96,") != std::string::npos);
}

TEST_CASE("enumerate, table, tree and errors") {
  CHECK(run({"enumerate", "--n", "1", "--count-only"}).out == "1\n");
  CHECK(run({"enumerate", "--n", "24", "--count-only"}).out == "70\n");

  const Run nine = run({"enumerate", "--n", "9"});
  CHECK(nine.code == 0);
  CHECK(nine.out.find("9:2\t{a(11,13), a(12,14), a(21,23), a(22,24), a(31,33), a(32,34), "
                      "a(41,42), a(43), a(44)}\tV=25/2592") != std::string::npos);

  const Run table = run({"table", "--from", "5", "--to", "82"});
  CHECK(table.code == 0);
  CHECK(std::count(table.out.begin(), table.out.end(), '\n') == 79);
  CHECK(table.out.find("\n82\t1961256\n") != std::string::npos);

  const Run tree = run({"tree", "--from", "19", "--to", "20"});
  CHECK(tree.out == "19:1 -> 20:1\n19:2 -> 20:1\n19:3 -> 20:1\n19:4 -> 20:1\n");

  const Run errors = run({"errors", "--n-max", "3"});
  CHECK(errors.code == 0);
  CHECK(errors.out.find("31/288") != std::string::npos);
  CHECK(errors.out.find("5/96") != std::string::npos);
}

TEST_CASE("verify and lloyd") {
  const Run v = run({"verify", "--n", "5", "--level", "4"});
  CHECK(v.code == 0);
  CHECK(v.out.find("centroid_condition\tPASS") != std::string::npos);
  CHECK(v.out.find("distortion_identity\tPASS") != std::string::npos);

  const Run l = run({"lloyd", "--n", "2", "--level", "3", "--restarts", "5", "--seed", "1"});
  CHECK(l.code == 0);
  CHECK(l.out.find("exact_discretized_optimum") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"optimal", "--bogus"}).code == 2);
  CHECK(run({"nosuch"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"optimal", "--n", "0"}).code == 2);
  CHECK(run({"optimal", "--n", "2", "--format", "xml"}).code == 2);
  CHECK(run({"--help"}).code == 0);

  const Run cap = run({"enumerate", "--n", "30", "--max-sets", "2"});
  CHECK(cap.code == 1);
  CHECK(cap.err.rfind("CapacityError: ", 0) == 0);

  const Run shallow = run({"verify", "--n", "16", "--level", "1"});
  CHECK(shallow.code == 1);
  CHECK(shallow.err.find("PreconditionError") != std::string::npos);
}

TEST_CASE("figure points") {
  CHECK(cli::figure_points(5) ==
        std::vector{Pt(Q(1, 6), Q(1, 4)), Pt(Q(5, 6), Q(1, 4)), Pt(Q(1, 18), Q(11, 12)),
                    Pt(Q(5, 18), Q(11, 12)), Pt(Q(5, 6), Q(11, 12))});

  const std::string svg = cli::render_svg(greedy_sequence(5).back(), {});
  CHECK(svg.find("<svg xmlns=") != std::string::npos);
  auto pts = svg_points(svg);
  std::vector<Point> want{Pt(Q(1, 18), Q(11, 12)), Pt(Q(5, 18), Q(11, 12)), Pt(Q(1, 6), Q(1, 4)),
                          Pt(Q(5, 6), Q(1, 4)), Pt(Q(5, 6), Q(11, 12))};
  const auto by_xy = [](const Point& a, const Point& b) {
    return std::pair(a.x(), a.y()) < std::pair(b.x(), b.y());
  };
  std::sort(pts.begin(), pts.end(), by_xy);
  std::sort(want.begin(), want.end(), by_xy);
  CHECK(pts == want);

  // depth d draws 1 + 4 + … + 4^d squares
  cli::RenderConfig cfg;
  cfg.depth = 2;
  const std::string two = cli::render_svg(OptimalSet::root(), cfg);
  std::size_t rects = 0;
  for (std::size_t pos = two.find("<rect"); pos != std::string::npos; pos = two.find("<rect", pos + 1)) {
    ++rects;
  }
  CHECK(rects == 21);

  cfg.depth = 7;
  CHECK_THROWS_AS(cli::render_svg(OptimalSet::root(), cfg), PreconditionError);
  cfg.depth = 1;
  cfg.viewport = 10;
  CHECK_THROWS_AS(cli::render_svg(OptimalSet::root(), cfg), PreconditionError);
}

TEST_CASE("figure writes a file") {
  const auto path = std::filesystem::temp_directory_path() / "carpetq_test_figure.svg";
  const Run r = run({"figure", "--n", "4", "--depth", "1", "--out", path.string()});
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  const std::string svg((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(svg_points(svg).size() == 4);
  std::filesystem::remove(path);
}
