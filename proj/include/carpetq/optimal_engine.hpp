#pragma once

#include "carpetq/optimal_set.hpp"
#include "carpetq/rational.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace carpetq {

struct EngineOptions {
  std::size_t depth_cap = kDefaultDepthCap;
  /// Largest number of sets a single enumeration layer may hold.
  std::size_t max_sets = 10'000'000;
  /// count_table uses binomial plateaus when true, layer-by-layer
  /// enumeration when false.
  bool plateau_shortcut = true;
};

/// A splittable unit of a set: a Singleton, a Pair12, or the Pair13 member
/// standing for a whole sibling pair.
struct SplitUnit {
  Node representative;
  Rational unit_error;
};

enum class TiePolicy { canonical_least };

/// Sum of node errors: the quantization error of the set.
Rational set_distortion(const OptimalSet& set);

/// Every unit of the set, in canonical order.
std::vector<SplitUnit> split_units(const OptimalSet& set);

/// Units attaining the maximal unit error, in canonical order.
std::vector<SplitUnit> max_error_units(const OptimalSet& set);

/// All successors obtained by splitting one max-error unit, deduplicated and
/// canonically sorted.
std::vector<OptimalSet> next_sets(const OptimalSet& set, std::size_t depth_cap = kDefaultDepthCap);

/// α₁ … α_{n_max}, each step splitting the canonically least max-error unit.
std::vector<OptimalSet> greedy_sequence(std::size_t n_max,
                                        TiePolicy policy = TiePolicy::canonical_least,
                                        const EngineOptions& options = {});

/// Layers C_{n_from} … C_{n_to}, each deduplicated and canonically sorted.
/// Throws CapacityError when a layer grows past options.max_sets.
std::vector<std::vector<OptimalSet>> enumerate_levels(std::size_t n_from, std::size_t n_to,
                                                      const EngineOptions& options = {});

/// All of C_n. For n ≤ 48 also checks that every member has the same
/// distortion and throws StructuralError otherwise.
std::vector<OptimalSet> enumerate_level(std::size_t n, const EngineOptions& options = {});

/// One binomial plateau: starting from a unique set at stage base_n whose
/// max-error units number `width`, stage base_n + k has binomial(width, k)
/// optimal sets.
struct Plateau {
  std::size_t base_n = 0;
  std::size_t width = 0;
  Rational unit_error;
  bool validated = false;
};

struct CountTable {
  std::map<std::size_t, BigInt> entries;
  std::vector<Plateau> plateaus;
  /// Set when some range was counted by enumeration instead of plateaus.
  bool used_enumeration = false;
};

/// True iff the units share one error and every child created by splitting
/// any of them has strictly smaller error.
bool validate_plateau(std::span<const SplitUnit> units, std::size_t depth_cap = kDefaultDepthCap);

/// card(C_n) for n_from ≤ n ≤ n_to (requires 2 ≤ n_from ≤ n_to).
CountTable count_table(std::size_t n_from, std::size_t n_to, const EngineOptions& options = {});

BigInt binomial(std::size_t m, std::size_t k);

struct TreeEdge {
  std::size_t n;       // stage of the parent
  std::size_t parent;  // 1-based index in canonical order of C_n
  std::size_t child;   // 1-based index in canonical order of C_{n+1}

  friend auto operator<=>(const TreeEdge&, const TreeEdge&) = default;
};

/// Every edge α_{n,i} → α_{n+1,j} for n_from ≤ n < n_to.
std::vector<TreeEdge> tree_edges(std::size_t n_from, std::size_t n_to,
                                 const EngineOptions& options = {});

}  // namespace carpetq
