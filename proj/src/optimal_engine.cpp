#include "carpetq/optimal_engine.hpp"

#include "carpetq/errors.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace carpetq {

Rational set_distortion(const OptimalSet& set) {
  Rational total(0);
  for (const Node& n : set) total += node_error(n);
  return total;
}

std::vector<SplitUnit> split_units(const OptimalSet& set) {
  std::vector<SplitUnit> units;
  units.reserve(set.size());
  for (const Node& n : set) {
    if (n.kind == NodeKind::Pair24) continue;  // represented by its Pair13 sibling
    units.push_back({n, node_error(n)});
  }
  return units;
}

std::vector<SplitUnit> max_error_units(const OptimalSet& set) {
  std::vector<SplitUnit> units = split_units(set);
  if (units.empty()) return units;
  const Rational top =
      std::max_element(units.begin(), units.end(), [](const SplitUnit& a, const SplitUnit& b) {
        return a.unit_error < b.unit_error;
      })->unit_error;
  std::erase_if(units, [&top](const SplitUnit& u) { return u.unit_error != top; });
  return units;
}

std::vector<OptimalSet> next_sets(const OptimalSet& set, std::size_t depth_cap) {
  std::vector<OptimalSet> out;
  for (const SplitUnit& u : max_error_units(set)) {
    out.push_back(split(set, u.representative, depth_cap));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<OptimalSet> greedy_sequence(std::size_t n_max, TiePolicy policy,
                                        const EngineOptions& options) {
  if (n_max < 1) throw PreconditionError("greedy_sequence needs n_max >= 1");
  std::vector<OptimalSet> seq;
  seq.reserve(n_max);
  seq.push_back(OptimalSet::root());
  while (seq.size() < n_max) {
    const auto units = max_error_units(seq.back());
    switch (policy) {
      case TiePolicy::canonical_least:
        seq.push_back(split(seq.back(), units.front().representative, options.depth_cap));
        break;
    }
  }
  return seq;
}

namespace {

std::vector<OptimalSet> expand_layer(const std::vector<OptimalSet>& layer, std::size_t n,
                                     const EngineOptions& options) {
  std::unordered_set<std::string> seen;
  std::vector<OptimalSet> next;
  for (const OptimalSet& parent : layer) {
    for (OptimalSet& child : next_sets(parent, options.depth_cap)) {
      if (!seen.insert(child.key()).second) continue;
      if (next.size() == options.max_sets) {
        throw CapacityError("layer n=" + std::to_string(n + 1) + " holds more than " +
                            std::to_string(options.max_sets) + " sets");
      }
      next.push_back(std::move(child));
    }
  }
  std::sort(next.begin(), next.end());
  return next;
}

}  // namespace

std::vector<std::vector<OptimalSet>> enumerate_levels(std::size_t n_from, std::size_t n_to,
                                                      const EngineOptions& options) {
  if (n_from < 1 || n_from > n_to) {
    throw PreconditionError("enumerate_levels needs 1 <= n_from <= n_to");
  }
  std::vector<std::vector<OptimalSet>> out;
  std::vector<OptimalSet> layer{OptimalSet::root()};
  for (std::size_t n = 1;; ++n) {
    if (n >= n_from) out.push_back(layer);
    if (n == n_to) break;
    layer = expand_layer(layer, n, options);
  }
  return out;
}

std::vector<OptimalSet> enumerate_level(std::size_t n, const EngineOptions& options) {
  if (n < 1) throw PreconditionError("enumerate_level needs n >= 1");
  std::vector<OptimalSet> layer = std::move(enumerate_levels(n, n, options).front());
  if (n <= 48 && !layer.empty()) {
    const Rational expected = set_distortion(layer.front());
    for (std::size_t i = 1; i < layer.size(); ++i) {
      if (const Rational d = set_distortion(layer[i]); d != expected) {
        throw StructuralError("members of C_" + std::to_string(n) +
                              " disagree on distortion: " + to_string(expected) + " vs " +
                              to_string(d) + " at index " + std::to_string(i + 1));
      }
    }
  }
  return layer;
}

bool validate_plateau(std::span<const SplitUnit> units, std::size_t depth_cap) {
  if (units.empty()) return false;
  const Rational& top = units.front().unit_error;
  for (const SplitUnit& u : units) {
    if (u.unit_error != top || node_error(u.representative) != top) return false;
    for (const Node& child : split_children(u.representative, depth_cap)) {
      if (!(node_error(child) < top)) return false;
    }
  }
  return true;
}

BigInt binomial(std::size_t m, std::size_t k) {
  if (k > m) return 0;
  k = std::min(k, m - k);
  BigInt result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result *= m - k + i;
    result /= i;
  }
  return result;
}

CountTable count_table(std::size_t n_from, std::size_t n_to, const EngineOptions& options) {
  if (n_from < 2 || n_from > n_to) {
    throw PreconditionError("count_table needs 2 <= n_from <= n_to");
  }
  CountTable table;

  // Walk unique plateau bases: α₁, then the set obtained by splitting every
  // max-error unit of the previous base.
  OptimalSet base = OptimalSet::root();
  std::size_t n0 = 1;
  while (options.plateau_shortcut && n0 < n_to) {
    const std::vector<SplitUnit> units = max_error_units(base);
    if (!validate_plateau(units, options.depth_cap)) break;
    table.plateaus.push_back({n0, units.size(), units.front().unit_error, true});
    for (std::size_t k = 1; k <= units.size(); ++k) {
      const std::size_t n = n0 + k;
      if (n >= n_from && n <= n_to) table.entries[n] = binomial(units.size(), k);
    }
    for (const SplitUnit& u : units) base = split(base, u.representative, options.depth_cap);
    n0 += units.size();
  }

  if (n0 < n_to) {
    // Shortcut disabled or a plateau failed validation: count the remainder
    // exhaustively.
    table.used_enumeration = true;
    const std::size_t start = std::max(n_from, n0 + 1);
    const auto layers = enumerate_levels(start, n_to, options);
    for (std::size_t i = 0; i < layers.size(); ++i) table.entries[start + i] = layers[i].size();
  }
  return table;
}

std::vector<TreeEdge> tree_edges(std::size_t n_from, std::size_t n_to,
                                 const EngineOptions& options) {
  if (n_from < 1 || n_from >= n_to) throw PreconditionError("tree_edges needs 1 <= n_from < n_to");
  const auto layers = enumerate_levels(n_from, n_to, options);
  std::vector<TreeEdge> edges;
  for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t j = 0; j < layers[i + 1].size(); ++j) index.emplace(layers[i + 1][j].key(), j + 1);
    for (std::size_t p = 0; p < layers[i].size(); ++p) {
      for (const OptimalSet& child : next_sets(layers[i][p], options.depth_cap)) {
        edges.push_back({n_from + i, p + 1, index.at(child.key())});
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace carpetq
