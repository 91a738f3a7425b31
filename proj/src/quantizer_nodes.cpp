#include "carpetq/quantizer_nodes.hpp"

#include "carpetq/carpet_measure.hpp"
#include "carpetq/errors.hpp"
#include "carpetq/optimal_set.hpp"

#include <algorithm>
#include <array>

namespace carpetq {

NodeFamily family(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::Singleton: return NodeFamily::Singleton;
    case NodeKind::Pair12: return NodeFamily::Pair12;
    case NodeKind::Pair13:
    case NodeKind::Pair24: return NodeFamily::SiblingPair;
  }
  return NodeFamily::Singleton;
}

std::string_view kind_name(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::Singleton: return "singleton";
    case NodeKind::Pair12: return "pair12";
    case NodeKind::Pair13: return "pair13";
    case NodeKind::Pair24: return "pair24";
  }
  return "";
}

std::optional<NodeKind> parse_kind(std::string_view name) noexcept {
  for (NodeKind k : {NodeKind::Singleton, NodeKind::Pair12, NodeKind::Pair13, NodeKind::Pair24}) {
    if (kind_name(k) == name) return k;
  }
  return std::nullopt;
}

namespace {

// Digits (i, j) of the two squares a pair node merges.
std::array<int, 2> pair_digits(NodeKind kind) {
  switch (kind) {
    case NodeKind::Pair12: return {1, 2};
    case NodeKind::Pair13: return {1, 3};
    case NodeKind::Pair24: return {2, 4};
    case NodeKind::Singleton: break;
  }
  throw PreconditionError("singleton has no pair digits");
}

}  // namespace

std::string display(const Node& node) {
  if (node.kind == NodeKind::Singleton) return "a(" + node.word.display() + ")";
  const auto [i, j] = pair_digits(node.kind);
  return "a(" + node.word.str() + std::to_string(i) + "," + node.word.str() +
         std::to_string(j) + ")";
}

std::vector<Word> region_words(const Node& node, std::size_t depth_cap) {
  if (node.kind == NodeKind::Singleton) {
    check_depth(node.word, depth_cap);
    return {node.word};
  }
  const auto [i, j] = pair_digits(node.kind);
  return {node.word.child(i, depth_cap), node.word.child(j, depth_cap)};
}

Point node_centroid(const Node& node) {
  if (node.kind == NodeKind::Singleton) return centroid(node.word);
  const auto [i, j] = pair_digits(node.kind);
  const Rational& pi = digit_probability(i);
  const Rational& pj = digit_probability(j);
  const Point ai = centroid(node.word.child(i, node.word.size() + 1));
  const Point aj = centroid(node.word.child(j, node.word.size() + 1));
  return (pi * ai + pj * aj) / (pi + pj);
}

Rational singleton_error(const Word& w) {
  const WordParams wp = word_params(w, w.size());
  return wp.probability * wp.ratio * wp.ratio * measure().variance;
}

const Rational& error_ratio(NodeKind kind) {
  static const Rational one(1);
  static const Rational pair12(13, 84);
  static const Rational sibling(31, 126);
  switch (family(kind)) {
    case NodeFamily::Singleton: return one;
    case NodeFamily::Pair12: return pair12;
    case NodeFamily::SiblingPair: return sibling;
  }
  return one;
}

Rational node_error(const Node& node) {
  return error_ratio(node.kind) * singleton_error(node.word);
}

std::vector<Node> split_children(const Node& node, std::size_t depth_cap) {
  const Word& w = node.word;
  switch (node.kind) {
    case NodeKind::Singleton:
      check_depth(w.child(1, depth_cap), depth_cap);
      return {Node::pair13(w), Node::pair24(w)};
    case NodeKind::Pair13:
    case NodeKind::Pair24:
      return {Node::pair12(w), Node::singleton(w.child(3, depth_cap)),
              Node::singleton(w.child(4, depth_cap))};
    case NodeKind::Pair12:
      return {Node::singleton(w.child(1, depth_cap)), Node::singleton(w.child(2, depth_cap))};
  }
  return {};
}

OptimalSet split(const OptimalSet& set, const Node& node, std::size_t depth_cap) {
  if (!set.contains(node)) {
    throw MembershipError("node " + display(node) + " is not in the set");
  }
  std::vector<Node> removed{node};
  if (family(node.kind) == NodeFamily::SiblingPair) {
    const Node sibling{node.kind == NodeKind::Pair13 ? NodeKind::Pair24 : NodeKind::Pair13,
                       node.word};
    if (!set.contains(sibling)) {
      throw StructuralError("node " + display(node) + " has no sibling " + display(sibling));
    }
    removed.push_back(sibling);
  }
  std::vector<Node> children = split_children(node, depth_cap);

  std::vector<Node> out;
  out.reserve(set.size() + 1);
  for (const Node& n : set) {
    if (std::find(removed.begin(), removed.end(), n) == removed.end()) out.push_back(n);
  }
  std::sort(children.begin(), children.end());
  const auto mid = static_cast<std::ptrdiff_t>(out.size());
  out.insert(out.end(), children.begin(), children.end());
  std::inplace_merge(out.begin(), out.begin() + mid, out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw StructuralError("split of " + display(node) + " produced a duplicate node");
  }
  return OptimalSet(std::move(out), OptimalSet::Trusted{});
}

std::array<bool, 8> lemma36_biconditionals(const Word& omega, const Word& tau,
                                           std::size_t depth_cap) {
  struct Local {
    Rational e, pair, p12, e1, e2, e3, e4;
  };
  auto local = [depth_cap](const Word& w) {
    check_depth(w.child(1, depth_cap), depth_cap);
    return Local{singleton_error(w),
                 node_error(Node::pair13(w)),
                 node_error(Node::pair12(w)),
                 singleton_error(w.child(1, depth_cap)),
                 singleton_error(w.child(2, depth_cap)),
                 singleton_error(w.child(3, depth_cap)),
                 singleton_error(w.child(4, depth_cap))};
  };
  const Local o = local(omega);
  const Local t = local(tau);
  // After splitting each unit: singleton → two sibling pairs, sibling pair →
  // pair12 + two singletons, pair12 → two singletons.
  const Rational o_single_split = o.pair + o.pair;
  const Rational o_pair_split = o.p12 + o.e3 + o.e4;
  const Rational o_p12_split = o.e1 + o.e2;
  const Rational t_single_split = t.pair + t.pair;
  const Rational t_pair_split = t.p12 + t.e3 + t.e4;
  const Rational t_p12_split = t.e1 + t.e2;
  const Rational o_pairs = o.pair + o.pair;
  const Rational t_pairs = t.pair + t.pair;

  return {
      (o.e > t.e) == (o_single_split + t.e < o.e + t_single_split),
      (o.e > t.pair) == (o_single_split + t_pairs < o.e + t_pair_split),
      (o.pair > t.pair) == (o_pair_split + t_pairs < o_pairs + t_pair_split),
      (o.pair > t.e) == (o_pair_split + t.e < o_pairs + t_single_split),
      (o.p12 > t.e) == (o_p12_split + t.e < o.p12 + t_single_split),
      (o.p12 > t.pair) == (o_p12_split + t_pairs < o.p12 + t_pair_split),
      (o.p12 > t.p12) == (o_p12_split + t.p12 < o.p12 + t_p12_split),
      (o.e > t.p12) == (o_single_split + t.p12 < o.e + t_p12_split),
  };
}

bool lemma36_equivalences(const Word& omega, const Word& tau, std::size_t depth_cap) {
  const auto results = lemma36_biconditionals(omega, tau, depth_cap);
  return std::all_of(results.begin(), results.end(), [](bool b) { return b; });
}

}  // namespace carpetq
