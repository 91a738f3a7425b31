#include "carpetq/optimal_set.hpp"

#include "carpetq/carpet_measure.hpp"
#include "carpetq/errors.hpp"

#include <algorithm>

namespace carpetq {

OptimalSet::OptimalSet(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  if (auto dup = std::adjacent_find(nodes_.begin(), nodes_.end()); dup != nodes_.end()) {
    throw StructuralError("duplicate node " + carpetq::display(*dup));
  }
  for (const Node& n : nodes_) {
    if (family(n.kind) != NodeFamily::SiblingPair) continue;
    const Node sibling{n.kind == NodeKind::Pair13 ? NodeKind::Pair24 : NodeKind::Pair13, n.word};
    if (!contains(sibling)) {
      throw StructuralError("node " + carpetq::display(n) + " has no sibling " +
                            carpetq::display(sibling));
    }
  }
}

OptimalSet OptimalSet::root() { return OptimalSet({Node::singleton(Word{})}); }

bool OptimalSet::contains(const Node& node) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), node);
}

void OptimalSet::check_cover() const {
  std::vector<Word> words;
  words.reserve(nodes_.size() * 2);
  for (const Node& n : nodes_) {
    auto r = region_words(n, n.word.size() + 1);
    words.insert(words.end(), std::make_move_iterator(r.begin()),
                 std::make_move_iterator(r.end()));
  }
  try {
    require_non_overlapping(words);
  } catch (const PreconditionError& e) {
    throw StructuralError(std::string("regions overlap: ") + e.what());
  }
  Rational total(0);
  for (const Word& w : words) total += word_params(w, w.size()).probability;
  if (total != 1) {
    throw StructuralError("regions cover probability " + to_string(total) + ", not 1");
  }
}

std::string OptimalSet::key() const {
  // Per node: kind byte, 16-bit length, then digits packed 2 bits each.
  std::string out;
  for (const Node& n : nodes_) {
    const std::size_t len = n.word.size();
    out.push_back(static_cast<char>(n.kind));
    out.push_back(static_cast<char>(len & 0xffu));
    out.push_back(static_cast<char>((len >> 8) & 0xffu));
    unsigned char acc = 0;
    for (std::size_t i = 0; i < len; ++i) {
      acc = static_cast<unsigned char>(acc | ((n.word[i] - 1) << (2 * (i % 4))));
      if (i % 4 == 3 || i + 1 == len) {
        out.push_back(static_cast<char>(acc));
        acc = 0;
      }
    }
  }
  return out;
}

std::vector<Point> OptimalSet::codebook() const {
  std::vector<Point> points;
  points.reserve(nodes_.size());
  for (const Node& n : nodes_) points.push_back(node_centroid(n));
  return points;
}

std::string OptimalSet::display() const {
  std::string out = "{";
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i != 0) out += ", ";
    out += carpetq::display(nodes_[i]);
  }
  return out + "}";
}

}  // namespace carpetq
