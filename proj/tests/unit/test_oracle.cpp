#include "carpetq/carpet_measure.hpp"
#include "carpetq/errors.hpp"
#include "carpetq/optimal_engine.hpp"
#include "carpetq/oracle.hpp"

#include "helpers.hpp"

#include <cmath>

using namespace carpetq;
using namespace carpetq::test;
namespace co = carpetq::oracle;

namespace {

Rational within_level(int k) {
  return measure().variance / pow_rational(Q(9), static_cast<unsigned>(k));
}

}  // namespace

TEST_CASE("discretize") {
  const auto a0 = co::discretize(0);
  REQUIRE(a0.size() == 1);
  CHECK(a0[0].position == Pt(Q(1, 2), Q(3, 4)));
  CHECK(a0[0].mass == 1);

  const auto a2 = co::discretize(2);
  REQUIRE(a2.size() == 16);
  // Lexicographic order: atom 4(i−1)+(j−1) sits at a(ij).
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) {
      const Word w = W(std::string{static_cast<char>('0' + i), static_cast<char>('0' + j)});
      const auto& atom = a2[static_cast<std::size_t>(4 * (i - 1) + (j - 1))];
      CHECK(atom.position == centroid(w));
      CHECK(atom.mass == word_params(w).probability);
    }
  }

  for (int k = 0; k <= 6; ++k) {
    const auto atoms = co::discretize(k);
    CHECK(atoms.size() == (std::size_t{1} << (2 * k)));
    Rational mass(0);
    Point mean = Point::Zero();
    for (const auto& a : atoms) {
      mass += a.mass;
      mean += a.mass * a.position;
    }
    CHECK(mass == 1);
    CHECK(mean == measure().mean);
  }
  CHECK_THROWS_AS(co::discretize(-1), CapacityError);
  CHECK_THROWS_AS(co::discretize(co::kMaxLevel + 1), CapacityError);
}

TEST_CASE("exact assignment for two points") {
  const std::vector<Point> codebook{Pt(Q(1, 6), Q(3, 4)), Pt(Q(5, 6), Q(3, 4))};
  const auto atoms = co::discretize(3);
  const auto asg = co::voronoi_assign_exact(codebook, atoms);
  CHECK(asg.mass[0] == Q(1, 2));
  CHECK(asg.mass[1] == Q(1, 2));
  CHECK(asg.weighted_sum[0] / asg.mass[0] == codebook[0]);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    CHECK(asg.node_of_atom[i] == (atoms[i].position.x() < Q(1, 2) ? 0u : 1u));
  }
  CHECK_THROWS_AS(co::voronoi_assign_exact(std::span<const Point>{}, atoms), PreconditionError);
}

TEST_CASE("duplicate codepoints tie") {
  const std::vector<Point> codebook{Pt(Q(1, 2), Q(3, 4)), Pt(Q(1, 2), Q(3, 4))};
  CHECK_THROWS_AS(co::voronoi_assign_exact(codebook, co::discretize(2)), TieError);
  // A point equidistant from two codepoints also ties.
  const std::vector<Point> split{Pt(Q(1, 2), Q(0)), Pt(Q(1, 2), Q(3, 2))};
  CHECK_THROWS_AS(co::voronoi_assign_exact(split, co::discretize(0)), TieError);
}

TEST_CASE("centroid condition and distortion identity for the first stages") {
  const auto seq = greedy_sequence(16);
  for (const OptimalSet& s : seq) {
    const int k = co::minimum_level(s) + 1;
    CAPTURE(s.display());
    CHECK(co::verify_centroid_condition(s, k));
    CHECK(co::verify_distortion_identity(s, k));
  }
  CHECK(co::minimum_level(seq[0]) == 1);
  CHECK(co::minimum_level(seq[1]) == 2);
  CHECK_THROWS_AS(co::verify_centroid_condition(seq[1], 1), PreconditionError);
}

TEST_CASE("perturbed codebooks fail the centroid condition") {
  const OptimalSet a2 = greedy_sequence(2).back();
  std::vector<Point> moved = a2.codebook();
  CHECK(co::verify_centroid_condition(moved, 4));
  moved[0].x() += Q(1, 81);
  CHECK_FALSE(co::verify_centroid_condition(moved, 4));

  // A codepoint far from every atom owns no mass.
  std::vector<Point> stray = a2.codebook();
  stray.push_back(Pt(Q(10), Q(10)));
  CHECK_FALSE(co::verify_centroid_condition(stray, 3));
}

TEST_CASE("discretized distortion at neighbouring levels") {
  const OptimalSet a4 = greedy_sequence(4).back();
  const auto codebook = a4.codebook();
  for (int k = 1; k <= 5; ++k) {
    CHECK(co::discretized_distortion(codebook, k) == set_distortion(a4) - within_level(k));
    CHECK(co::discretized_distortion(codebook, k + 1) - co::discretized_distortion(codebook, k) ==
          within_level(k) - within_level(k + 1));
  }
}

TEST_CASE("Lloyd matches the exact optimum for small n") {
  const std::array<Rational, 3> optimum{Q(31, 288), Q(5, 96), Q(7, 288)};
  for (std::size_t n = 2; n <= 4; ++n) {
    CAPTURE(n);
    const double exact = to_double(optimum[n - 2] - within_level(4));
    const auto r = co::lloyd_search(n, 4, 100, 7);
    CHECK(r.codebook.size() == n);
    CHECK(r.best_distortion >= exact - 1e-12);
    CHECK(r.best_distortion <= exact + 1e-10);
  }
}

TEST_CASE("Lloyd is deterministic in the seed") {
  const auto a = co::lloyd_search(5, 3, 20, 99);
  const auto b = co::lloyd_search(5, 3, 20, 99);
  CHECK(a.best_distortion == b.best_distortion);
  CHECK(a.best_restart == b.best_restart);
  CHECK(a.codebook == b.codebook);
  CHECK_THROWS_AS(co::lloyd_search(0, 3, 1, 0), PreconditionError);
  CHECK_THROWS_AS(co::lloyd_search(2, 3, 0, 0), PreconditionError);
  CHECK_THROWS_AS(co::lloyd_search(5, 1, 1, 0), PreconditionError);
}

TEST_CASE("Lloyd handles every atom being a codepoint") {
  const auto r = co::lloyd_search(4, 1, 3, 1);
  CHECK(r.best_distortion == doctest::Approx(0.0));
}

TEST_CASE("splitting by gain beats the max-error rule at stages 7 and 8") {
  // Both sets use only the four node shapes; the max-error rule splits a(1)
  // and a(2) before the heavier sibling pairs in J3 and J4.
  const OptimalSet gain7{Node::singleton(W("1")),  Node::singleton(W("2")),
                         Node::pair12(W("3")),     Node::singleton(W("33")),
                         Node::singleton(W("34")), Node::pair13(W("4")),
                         Node::pair24(W("4"))};
  const OptimalSet gain8{Node::singleton(W("1")),  Node::singleton(W("2")),
                         Node::pair12(W("3")),     Node::singleton(W("33")),
                         Node::singleton(W("34")), Node::pair12(W("4")),
                         Node::singleton(W("43")), Node::singleton(W("44"))};
  const auto seq = greedy_sequence(8);
  CHECK(set_distortion(gain8) == Q(1, 96));
  CHECK(set_distortion(gain7) < set_distortion(seq[6]));
  CHECK(set_distortion(gain8) < set_distortion(seq[7]));

  // The oracle agrees on a discretization: the alternative is a centroidal
  // configuration with strictly smaller distortion.
  const int k = 4;
  CHECK(co::verify_centroid_condition(gain8, k));
  CHECK(co::verify_distortion_identity(gain8, k));
  CHECK(co::discretized_distortion(gain8.codebook(), k) <
        co::discretized_distortion(seq[7].codebook(), k));
}

TEST_CASE("marginals") {
  const auto mx = co::marginal(1, 0);
  REQUIRE(mx.size() == 2);
  CHECK(mx.at(Q(1, 6)) == Q(1, 2));
  CHECK(mx.at(Q(5, 6)) == Q(1, 2));
  const auto my = co::marginal(1, 1);
  REQUIRE(my.size() == 2);
  CHECK(my.at(Q(1, 4)) == Q(1, 4));
  CHECK(my.at(Q(11, 12)) == Q(3, 4));

  for (int k = 1; k <= 6; ++k) CHECK(co::marginal_mixture_check(k));
  CHECK_THROWS_AS(co::marginal_mixture_check(0), PreconditionError);
  CHECK_THROWS_AS(co::marginal_mixture_check(9), PreconditionError);
}

TEST_CASE("marginal moments match the fixed-point moments") {
  for (int axis = 0; axis < 2; ++axis) {
    Rational first(0), second(0);
    for (const auto& [x, p] : co::marginal(5, axis)) {
      first += p * x;
      second += p * x * x;
    }
    const Rational var = axis == 0 ? measure().variance_x : measure().variance_y;
    CHECK(first == measure().mean(axis));
    // Each level-5 square holds a scaled copy with variance var / 9⁵.
    CHECK(second - first * first == var - var / pow_rational(Q(9), 5));
  }
}
