#pragma once

#include "carpetq/quantizer_nodes.hpp"

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace carpetq {

/// Canonically ordered, duplicate-free collection of nodes.
///
/// Construction sorts the nodes and rejects duplicates and unpaired
/// Pair13/Pair24 members. The cover invariant (regions form a prefix-free
/// cover of total probability one) is checked separately by check_cover().
class OptimalSet {
 public:
  OptimalSet() = default;
  explicit OptimalSet(std::vector<Node> nodes);
  OptimalSet(std::initializer_list<Node> nodes) : OptimalSet(std::vector<Node>(nodes)) {}

  /// {Singleton(∅)}: the one-point optimal set at the mean.
  static OptimalSet root();

  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const Node> nodes() const noexcept { return nodes_; }
  auto begin() const noexcept { return nodes_.begin(); }
  auto end() const noexcept { return nodes_.end(); }

  bool contains(const Node& node) const;

  /// Throws StructuralError unless region words are pairwise non-overlapping
  /// and their probabilities sum to one.
  void check_cover() const;

  /// Compact byte serialization; equal keys iff equal sets.
  std::string key() const;

  /// Node codebook in canonical order.
  std::vector<Point> codebook() const;

  std::string display() const;

  friend auto operator<=>(const OptimalSet& a, const OptimalSet& b) = default;
  friend bool operator==(const OptimalSet& a, const OptimalSet& b) = default;

 private:
  struct Trusted {};
  OptimalSet(std::vector<Node> sorted_nodes, Trusted) : nodes_(std::move(sorted_nodes)) {}
  friend OptimalSet split(const OptimalSet&, const Node&, std::size_t);

  std::vector<Node> nodes_;
};

}  // namespace carpetq
