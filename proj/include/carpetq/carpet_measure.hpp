#pragma once

#include "carpetq/rational.hpp"
#include "carpetq/word.hpp"

#include <array>
#include <span>

namespace carpetq {

// The self-affine measure P = 1/8 P∘S1⁻¹ + 1/8 P∘S2⁻¹ + 3/8 P∘S3⁻¹ + 3/8 P∘S4⁻¹
// on the Sierpiński carpet, with S_i(x) = x/3 + t_i and the translations t_i
// placing the copies at the four corners of the unit square.

struct MeasureParams {
  std::array<Rational, 4> probabilities;  // p_1..p_4
  std::array<Rational, 4> ratios;         // s_1..s_4
  Point mean;
  Rational variance;                      // E‖X − mean‖²
  Rational second_moment_x;               // E(X₁²)
  Rational second_moment_y;               // E(X₂²)
  Rational variance_x;
  Rational variance_y;
};

struct WordParams {
  Rational probability;  // p_ω = 3^{c(ω)} / 8^{|ω|}
  Rational ratio;        // s_ω = 3^{-|ω|}
};

/// Probability p_i of digit i ∈ {1,2,3,4}.
const Rational& digit_probability(int digit);

/// Translation t_i of the map S_i.
const Point& digit_offset(int digit);

inline const Rational& contraction_ratio() {
  static const Rational third(1, 3);
  return third;
}

/// Solves the self-similarity fixed-point equations for the first and second
/// moments of each marginal. Nothing here is a literal except p_i, s_i, t_i.
MeasureParams moments();

/// Cached result of moments().
const MeasureParams& measure();

WordParams word_params(const Word& w, std::size_t depth_cap = kDefaultDepthCap);

/// S_ω(pt) = S_{ω₁} ∘ … ∘ S_{ωₖ}(pt); the empty word maps to the identity.
template <typename Scalar>
Vec2<Scalar> apply_map(const Word& w, Vec2<Scalar> pt) {
  const Scalar third = Scalar(1) / Scalar(3);
  for (std::size_t i = w.size(); i-- > 0;) {
    const int d = w[i];
    pt *= third;
    if (d == 2 || d == 4) pt.x() += Scalar(2) / Scalar(3);
    if (d == 3 || d == 4) pt.y() += Scalar(2) / Scalar(3);
  }
  return pt;
}

/// a(ω) = E(X | X ∈ J_ω) = S_ω(mean).
Point centroid(const Word& w);

/// Throws PreconditionError if one word is a prefix of another.
void require_non_overlapping(std::span<const Word> words);

/// a(β, γ, …): the conditional mean over the union of the listed squares.
Point conditional_centroid(std::span<const Word> words);

/// ∫_{J_ω} ‖x − pt‖² dP = p_ω (s_ω² V + ‖a(ω) − pt‖²).
Rational cell_distortion(const Word& w, const Point& pt);

Rational union_distortion(std::span<const Word> words, const Point& pt);

}  // namespace carpetq
