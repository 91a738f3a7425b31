#pragma once

#include "carpetq/optimal_set.hpp"
#include "carpetq/rational.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace carpetq::oracle {

// Verification against a level-k discretization of P: each square J_ω with
// |ω| = k is replaced by a point mass p_ω at its centroid a(ω). Everything
// here is exact except lloyd_search.

inline constexpr int kMaxLevel = 10;

struct Atom {
  Point position;
  Rational mass;
};

/// One atom per ω ∈ I^k in lexicographic order. Throws CapacityError for
/// k outside [0, kMaxLevel].
std::vector<Atom> discretize(int k);

struct Assignment {
  std::vector<std::size_t> node_of_atom;
  std::vector<Rational> mass;              // per codepoint
  std::vector<Point> weighted_sum;         // Σ mass · position, per codepoint
  std::vector<Rational> squared_distance;  // Σ mass · ‖position − codepoint‖², per codepoint
};

/// Nearest-codepoint assignment by exact squared distance. Throws TieError
/// when an atom is equidistant from two nearest codepoints.
Assignment voronoi_assign_exact(std::span<const Point> codebook, std::span<const Atom> atoms);
Assignment voronoi_assign_exact(const OptimalSet& set, std::span<const Atom> atoms);

/// Every codepoint equals the mass centroid of the atoms assigned to it.
/// Codepoints with no atoms fail the check.
bool verify_centroid_condition(std::span<const Point> codebook, int k);
bool verify_centroid_condition(const OptimalSet& set, int k);

/// Σ mass ‖position − codepoint‖² over level-k atoms equals
/// set_distortion(set) − V / 9^k.
bool verify_distortion_identity(const OptimalSet& set, int k);

/// Exact discretized distortion of a codebook at level k.
Rational discretized_distortion(std::span<const Point> codebook, int k);

/// Smallest level at which verify_* may be applied to the set: its deepest
/// region word plus one.
int minimum_level(const OptimalSet& set);

struct LloydResult {
  double best_distortion = 0.0;
  std::size_t best_restart = 0;
  std::vector<Vec2<double>> codebook;
};

/// Floating-point Lloyd iteration on the level-k atoms from `restarts`
/// random initializations (n distinct atoms, uniformly). Stops a restart
/// when the relative distortion change drops below 1e-14 or after 1000
/// iterations. An empty cell moves its codepoint to the atom farthest from
/// its current codepoint. Deterministic in `seed`.
LloydResult lloyd_search(std::size_t n, int k, std::size_t restarts, std::uint64_t seed);

/// Marginal atoms on one axis: coordinate → mass.
using MarginalAtoms = std::map<Rational, Rational>;

/// Projection of the level-k atoms on axis 0 (x) or 1 (y), equal
/// coordinates merged.
MarginalAtoms marginal(int k, int axis);

/// Checks that pushing the level-(k−1) marginal through the four component
/// maps S_(i,axis) with weights (1/8, 1/8, 3/8, 3/8) reproduces the level-k
/// marginal exactly, for both axes. Requires 1 ≤ k ≤ 8.
bool marginal_mixture_check(int k);

}  // namespace carpetq::oracle
