#include "carpetq/carpet_measure.hpp"

#include "carpetq/errors.hpp"

#include <algorithm>
#include <vector>

namespace carpetq {

namespace {

const std::array<Rational, 4>& probabilities() {
  static const std::array<Rational, 4> p{Rational(1, 8), Rational(1, 8), Rational(3, 8),
                                         Rational(3, 8)};
  return p;
}

const std::array<Point, 4>& offsets() {
  static const std::array<Point, 4> t{
      make_point(Rational(0), Rational(0)), make_point(Rational(2, 3), Rational(0)),
      make_point(Rational(0), Rational(2, 3)), make_point(Rational(2, 3), Rational(2, 3))};
  return t;
}

void check_digit(int digit) {
  if (digit < 1 || digit > 4) {
    throw PreconditionError("digit out of range: " + std::to_string(digit));
  }
}

// First and second moment of one marginal. With S_(i,axis)(x) = s x + t_i:
//   m1 = Σ p_i (s m1 + t_i)
//   m2 = Σ p_i (s² m2 + 2 s t_i m1 + t_i²)
// i.e. (I − A) m = b with A lower triangular.
Vec2<Rational> marginal_moments(int axis) {
  const Rational& s = contraction_ratio();
  Rational pt(0), pt2(0);
  for (int i = 0; i < 4; ++i) {
    const Rational& t = offsets()[i](axis);
    pt += probabilities()[i] * t;
    pt2 += probabilities()[i] * t * t;
  }
  Mat2<Rational> a;
  a << s, Rational(0), Rational(2) * s * pt, s * s;
  const Vec2<Rational> b(pt, pt2);
  const Mat2<Rational> system = Mat2<Rational>::Identity() - a;
  return system.triangularView<Eigen::Lower>().solve(b);
}

}  // namespace

const Rational& digit_probability(int digit) {
  check_digit(digit);
  return probabilities()[digit - 1];
}

const Point& digit_offset(int digit) {
  check_digit(digit);
  return offsets()[digit - 1];
}

MeasureParams moments() {
  MeasureParams m;
  m.probabilities = probabilities();
  m.ratios.fill(contraction_ratio());
  const Vec2<Rational> mx = marginal_moments(0);
  const Vec2<Rational> my = marginal_moments(1);
  m.mean = make_point(mx(0), my(0));
  m.second_moment_x = mx(1);
  m.second_moment_y = my(1);
  m.variance_x = mx(1) - mx(0) * mx(0);
  m.variance_y = my(1) - my(0) * my(0);
  m.variance = m.variance_x + m.variance_y;
  return m;
}

const MeasureParams& measure() {
  static const MeasureParams params = moments();
  return params;
}

WordParams word_params(const Word& w, std::size_t depth_cap) {
  check_depth(w, depth_cap);
  WordParams out{Rational(1), Rational(1)};
  for (std::size_t i = 0; i < w.size(); ++i) {
    out.probability *= probabilities()[w[i] - 1];
    out.ratio *= contraction_ratio();
  }
  return out;
}

Point centroid(const Word& w) { return apply_map(w, measure().mean); }

void require_non_overlapping(std::span<const Word> words) {
  std::vector<const Word*> sorted;
  sorted.reserve(words.size());
  for (const Word& w : words) sorted.push_back(&w);
  // In plain lexicographic order a prefix sorts immediately before some word
  // it prefixes, so adjacent checks suffice.
  std::sort(sorted.begin(), sorted.end(),
            [](const Word* a, const Word* b) { return a->str() < b->str(); });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1]->is_prefix_of(*sorted[i])) {
      throw PreconditionError("overlapping squares: \"" + sorted[i - 1]->str() +
                              "\" and \"" + sorted[i]->str() + "\"");
    }
  }
}

Point conditional_centroid(std::span<const Word> words) {
  if (words.empty()) throw PreconditionError("conditional_centroid of an empty list");
  require_non_overlapping(words);
  Rational mass(0);
  Point weighted = Point::Zero();
  for (const Word& w : words) {
    const Rational p = word_params(w).probability;
    mass += p;
    weighted += p * centroid(w);
  }
  return weighted / mass;
}

Rational cell_distortion(const Word& w, const Point& pt) {
  const WordParams wp = word_params(w);
  return wp.probability *
         (wp.ratio * wp.ratio * measure().variance + (centroid(w) - pt).squaredNorm());
}

Rational union_distortion(std::span<const Word> words, const Point& pt) {
  require_non_overlapping(words);
  Rational total(0);
  for (const Word& w : words) total += cell_distortion(w, pt);
  return total;
}

}  // namespace carpetq
