#include "carpetq/oracle.hpp"

#include "carpetq/carpet_measure.hpp"
#include "carpetq/errors.hpp"
#include "carpetq/optimal_engine.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace carpetq::oracle {

std::vector<Atom> discretize(int k) {
  if (k < 0 || k > kMaxLevel) {
    throw CapacityError("discretization level " + std::to_string(k) + " outside [0, " +
                        std::to_string(kMaxLevel) + "]");
  }
  // Level k from level k−1: a(iω) = S_i(a(ω)), p_{iω} = p_i p_ω. Prepending
  // digits keeps lexicographic order when the outer loop runs over i.
  std::vector<Atom> atoms{{measure().mean, Rational(1)}};
  for (int level = 0; level < k; ++level) {
    std::vector<Atom> next;
    next.reserve(atoms.size() * 4);
    for (int d = 1; d <= 4; ++d) {
      const Word digit = Word::parse(std::string(1, static_cast<char>('0' + d)));
      for (const Atom& a : atoms) {
        next.push_back({apply_map(digit, a.position), digit_probability(d) * a.mass});
      }
    }
    atoms = std::move(next);
  }
  return atoms;
}

Assignment voronoi_assign_exact(std::span<const Point> codebook, std::span<const Atom> atoms) {
  if (atoms.empty()) throw PreconditionError("voronoi_assign_exact needs atoms");
  if (codebook.empty()) throw PreconditionError("voronoi_assign_exact needs a codebook");
  Assignment out;
  out.node_of_atom.resize(atoms.size());
  out.mass.assign(codebook.size(), Rational(0));
  out.weighted_sum.assign(codebook.size(), Point::Zero());
  out.squared_distance.assign(codebook.size(), Rational(0));

  for (std::size_t a = 0; a < atoms.size(); ++a) {
    const Point& x = atoms[a].position;
    std::size_t best = 0;
    Rational best_d = (x - codebook[0]).squaredNorm();
    bool tied = false;
    std::size_t tied_with = 0;
    for (std::size_t c = 1; c < codebook.size(); ++c) {
      Rational d = (x - codebook[c]).squaredNorm();
      if (d < best_d) {
        best = c;
        best_d = std::move(d);
        tied = false;
      } else if (d == best_d) {
        tied = true;
        tied_with = c;
      }
    }
    if (tied) {
      throw TieError("atom " + std::to_string(a) + " at " + to_string(x) +
                     " is equidistant from codepoints " + std::to_string(best) + " " +
                     to_string(codebook[best]) + " and " + std::to_string(tied_with) + " " +
                     to_string(codebook[tied_with]));
    }
    out.node_of_atom[a] = best;
    out.mass[best] += atoms[a].mass;
    out.weighted_sum[best] += atoms[a].mass * x;
    out.squared_distance[best] += atoms[a].mass * best_d;
  }
  return out;
}

Assignment voronoi_assign_exact(const OptimalSet& set, std::span<const Atom> atoms) {
  const std::vector<Point> codebook = set.codebook();
  return voronoi_assign_exact(codebook, atoms);
}

bool verify_centroid_condition(std::span<const Point> codebook, int k) {
  const std::vector<Atom> atoms = discretize(k);
  const Assignment asg = voronoi_assign_exact(codebook, atoms);
  for (std::size_t c = 0; c < codebook.size(); ++c) {
    if (asg.mass[c] == 0) return false;
    if (asg.weighted_sum[c] / asg.mass[c] != codebook[c]) return false;
  }
  return true;
}

int minimum_level(const OptimalSet& set) {
  std::size_t deepest = 0;
  for (const Node& n : set) {
    deepest = std::max(deepest, n.word.size() + (n.kind == NodeKind::Singleton ? 0 : 1));
  }
  return static_cast<int>(deepest) + 1;
}

bool verify_centroid_condition(const OptimalSet& set, int k) {
  if (k < minimum_level(set)) {
    throw PreconditionError("level " + std::to_string(k) + " is shallower than the set's regions");
  }
  const std::vector<Point> codebook = set.codebook();
  return verify_centroid_condition(codebook, k);
}

Rational discretized_distortion(std::span<const Point> codebook, int k) {
  const std::vector<Atom> atoms = discretize(k);
  const Assignment asg = voronoi_assign_exact(codebook, atoms);
  return std::accumulate(asg.squared_distance.begin(), asg.squared_distance.end(), Rational(0));
}

bool verify_distortion_identity(const OptimalSet& set, int k) {
  if (k < minimum_level(set) - 1) {
    throw PreconditionError("level " + std::to_string(k) + " is shallower than the set's regions");
  }
  const std::vector<Point> codebook = set.codebook();
  const Rational within = measure().variance / pow_rational(Rational(9), static_cast<unsigned>(k));
  return discretized_distortion(codebook, k) == set_distortion(set) - within;
}

LloydResult lloyd_search(std::size_t n, int k, std::size_t restarts, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("lloyd_search needs n >= 1");
  if (restarts < 1) throw PreconditionError("lloyd_search needs restarts >= 1");
  const std::vector<Atom> exact = discretize(k);
  const auto m = static_cast<Eigen::Index>(exact.size());
  if (static_cast<std::size_t>(m) < n) {
    throw PreconditionError("level " + std::to_string(k) + " has fewer atoms than codepoints");
  }

  Eigen::Matrix<double, Eigen::Dynamic, 2> pos(m, 2);
  Eigen::VectorXd mass(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    pos(i, 0) = to_double(exact[i].position.x());
    pos(i, 1) = to_double(exact[i].position.y());
    mass(i) = to_double(exact[i].mass);
  }

  constexpr int kMaxIterations = 1000;
  constexpr double kRelTol = 1e-14;
  const auto cn = static_cast<Eigen::Index>(n);

  std::mt19937_64 rng(seed);
  LloydResult best;
  best.best_distortion = std::numeric_limits<double>::infinity();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  Eigen::Matrix<double, Eigen::Dynamic, 2> code(cn, 2);
  Eigen::VectorXi label(m);
  Eigen::VectorXd dist(m);

  for (std::size_t r = 0; r < restarts; ++r) {
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    // Partial Fisher-Yates: the first n entries are a uniform n-subset.
    for (std::size_t i = 0; i < n; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, order.size() - 1);
      std::swap(order[i], order[pick(rng)]);
      code.row(static_cast<Eigen::Index>(i)) = pos.row(order[i]);
    }

    double prev = std::numeric_limits<double>::infinity();
    double current = prev;
    for (int it = 0; it < kMaxIterations; ++it) {
      // Assignment step.
      for (Eigen::Index i = 0; i < m; ++i) {
        Eigen::Index arg = 0;
        const double d = (code.rowwise() - pos.row(i)).rowwise().squaredNorm().minCoeff(&arg);
        label(i) = static_cast<int>(arg);
        dist(i) = d;
      }
      current = mass.dot(dist);

      // Centroid step.
      Eigen::Matrix<double, Eigen::Dynamic, 2> sums = Eigen::MatrixXd::Zero(cn, 2);
      Eigen::VectorXd weights = Eigen::VectorXd::Zero(cn);
      for (Eigen::Index i = 0; i < m; ++i) {
        sums.row(label(i)) += mass(i) * pos.row(i);
        weights(label(i)) += mass(i);
      }
      for (Eigen::Index c = 0; c < cn; ++c) {
        if (weights(c) > 0.0) {
          code.row(c) = sums.row(c) / weights(c);
        } else {
          Eigen::Index far = 0;
          dist.maxCoeff(&far);
          code.row(c) = pos.row(far);
          dist(far) = 0.0;
        }
      }

      if (std::isfinite(prev) && std::abs(prev - current) <= kRelTol * std::abs(prev)) break;
      prev = current;
    }

    // Score the final codebook.
    for (Eigen::Index i = 0; i < m; ++i) {
      dist(i) = (code.rowwise() - pos.row(i)).rowwise().squaredNorm().minCoeff();
    }
    current = mass.dot(dist);
    if (current < best.best_distortion) {
      best.best_distortion = current;
      best.best_restart = r;
      best.codebook.clear();
      for (Eigen::Index c = 0; c < cn; ++c) best.codebook.emplace_back(code(c, 0), code(c, 1));
    }
  }
  return best;
}

MarginalAtoms marginal(int k, int axis) {
  MarginalAtoms out;
  for (const Atom& a : discretize(k)) out[a.position(axis)] += a.mass;
  return out;
}

bool marginal_mixture_check(int k) {
  if (k < 1 || k > 8) throw PreconditionError("marginal_mixture_check needs 1 <= k <= 8");
  for (int axis = 0; axis < 2; ++axis) {
    const MarginalAtoms coarse = marginal(k - 1, axis);
    MarginalAtoms mixture;
    for (int d = 1; d <= 4; ++d) {
      const Rational& shift = digit_offset(d)(axis);
      for (const auto& [x, p] : coarse) {
        mixture[contraction_ratio() * x + shift] += digit_probability(d) * p;
      }
    }
    if (mixture != marginal(k, axis)) return false;
  }
  return true;
}

}  // namespace carpetq::oracle
