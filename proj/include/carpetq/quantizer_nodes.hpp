#pragma once

#include "carpetq/rational.hpp"
#include "carpetq/word.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace carpetq {

// Every point of an optimal set has one of four shapes, each tied to a word ω:
//   Singleton(ω)  a(ω)        region J_ω
//   Pair12(ω)     a(ω1, ω2)   region J_ω1 ∪ J_ω2
//   Pair13(ω)     a(ω1, ω3)   region J_ω1 ∪ J_ω3
//   Pair24(ω)     a(ω2, ω4)   region J_ω2 ∪ J_ω4
// The enumerator order is the kind rank used for canonical ordering.
enum class NodeKind : std::uint8_t { Singleton = 0, Pair12 = 1, Pair13 = 2, Pair24 = 3 };

/// Kinds with provably equal error ratios share a family.
enum class NodeFamily : std::uint8_t { Singleton, Pair12, SiblingPair };

NodeFamily family(NodeKind kind) noexcept;

/// "singleton" | "pair12" | "pair13" | "pair24"
std::string_view kind_name(NodeKind kind) noexcept;
std::optional<NodeKind> parse_kind(std::string_view name) noexcept;

struct Node {
  NodeKind kind = NodeKind::Singleton;
  Word word;

  static Node singleton(Word w) { return {NodeKind::Singleton, std::move(w)}; }
  static Node pair12(Word w) { return {NodeKind::Pair12, std::move(w)}; }
  static Node pair13(Word w) { return {NodeKind::Pair13, std::move(w)}; }
  static Node pair24(Word w) { return {NodeKind::Pair24, std::move(w)}; }

  // Canonical order: |word|, then word, then kind rank.
  friend std::strong_ordering operator<=>(const Node& a, const Node& b) noexcept {
    if (auto c = a.word <=> b.word; c != 0) return c;
    return a.kind <=> b.kind;
  }
  friend bool operator==(const Node& a, const Node& b) noexcept = default;
};

/// Paper-style label: a(33), a(31,33), a(∅).
std::string display(const Node& node);

/// Squares making up the node's Voronoi region.
std::vector<Word> region_words(const Node& node, std::size_t depth_cap = kDefaultDepthCap);

Point node_centroid(const Node& node);

/// E(ω) = ∫_{J_ω} ‖x − a(ω)‖² dP = p_ω s_ω² V.
Rational singleton_error(const Word& w);

/// Distortion contributed by the node over its own region. Pair errors are
/// fixed multiples of E(ω): 31/126 for Pair13/Pair24, 13/84 for Pair12.
Rational node_error(const Node& node);

/// Multiplier r with node_error(node) = r · E(node.word).
const Rational& error_ratio(NodeKind kind);

class OptimalSet;

/// One induction step on `node`:
///   Singleton(ω)          → Pair13(ω), Pair24(ω)
///   Pair13(ω) / Pair24(ω) → both replaced by Pair12(ω), Singleton(ω3), Singleton(ω4)
///   Pair12(ω)             → Singleton(ω1), Singleton(ω2)
/// Throws MembershipError if the node is absent, StructuralError if a
/// sibling pair is incomplete, LengthError past the depth cap.
OptimalSet split(const OptimalSet& set, const Node& node,
                 std::size_t depth_cap = kDefaultDepthCap);

/// Nodes that replace `node` under split (for a sibling pair, the three
/// nodes replacing both members).
std::vector<Node> split_children(const Node& node, std::size_t depth_cap = kDefaultDepthCap);

/// Each entry is one biconditional "error(A) > error(B) iff splitting A
/// leaves less total error than splitting B", evaluated exactly, in the order
/// (singleton, singleton), (singleton, sibling pair), (pair, pair),
/// (pair, singleton), (pair12, singleton), (pair12, pair), (pair12, pair12),
/// (singleton, pair12) for the units of ω and τ respectively.
std::array<bool, 8> lemma36_biconditionals(const Word& omega, const Word& tau,
                                           std::size_t depth_cap = kDefaultDepthCap);

/// Evaluates the eight comparison biconditionals between local errors of ω
/// and τ and returns true iff every one of them holds.
bool lemma36_equivalences(const Word& omega, const Word& tau,
                          std::size_t depth_cap = kDefaultDepthCap);

}  // namespace carpetq
