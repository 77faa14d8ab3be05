#include "povmlab/representation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "povmlab/linalg.hpp"

namespace povmlab {

namespace {

// Union-find over cluster seeds.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

bool tuples_close(const std::vector<double>& a, const std::vector<double>& b, double eps) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > eps) return false;
  return true;
}

std::vector<std::vector<std::size_t>> group_by_tuple(
    const std::vector<std::vector<double>>& tuples, double eps) {
  DisjointSets sets(tuples.size());
  for (std::size_t u = 0; u < tuples.size(); ++u)
    for (std::size_t v = u + 1; v < tuples.size(); ++v)
      if (tuples_close(tuples[u], tuples[v], eps)) sets.unite(u, v);

  std::vector<std::vector<std::size_t>> groups;
  std::vector<long> group_of(tuples.size(), -1);
  for (std::size_t u = 0; u < tuples.size(); ++u) {
    const std::size_t root = sets.find(u);
    if (group_of[root] < 0) {
      group_of[root] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(group_of[root])].push_back(u);
  }
  return groups;
}

std::vector<double> mean_tuple(const std::vector<std::vector<double>>& tuples,
                               const std::vector<std::size_t>& members) {
  std::vector<double> mean(tuples.front().size(), 0.0);
  for (std::size_t m : members)
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += tuples[m][i];
  for (double& v : mean) v /= static_cast<double>(members.size());
  return mean;
}

// Quantized lexicographic key; makes the canonical cluster order stable
// against sub-resolution noise in the row values.
std::vector<long long> sort_key(const std::vector<double>& tuple, double resolution) {
  std::vector<long long> key(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i) key[i] = llround(tuple[i] / resolution);
  return key;
}

}  // namespace

JointEigenstructure joint_eigenstructure(const std::vector<ComplexMatrix>& family,
                                         const Tolerance& tol, bool check_ambiguity) {
  const SimultaneousDiagonalization diag = simultaneous_diagonalization(family, tol);
  const Eigen::Index d = diag.basis.rows();

  // Group basis vectors by joint-value tuple, then merge groups whose mean
  // tuples still coincide (chaining can leave duplicates).
  auto groups = group_by_tuple(diag.joint_values, tol.eps_eig_cluster);
  std::vector<std::vector<double>> means;
  means.reserve(groups.size());
  for (const auto& g : groups) means.push_back(mean_tuple(diag.joint_values, g));
  const auto merged = group_by_tuple(means, tol.eps_eig_cluster);
  if (merged.size() != groups.size()) {
    std::vector<std::vector<std::size_t>> joined;
    for (const auto& meta : merged) {
      std::vector<std::size_t> members;
      for (std::size_t g : meta)
        members.insert(members.end(), groups[g].begin(), groups[g].end());
      joined.push_back(std::move(members));
    }
    groups = std::move(joined);
    means.clear();
    for (const auto& g : groups) means.push_back(mean_tuple(diag.joint_values, g));
  }

  if (check_ambiguity) {
    for (std::size_t k = 0; k < means.size(); ++k)
      for (std::size_t l = k + 1; l < means.size(); ++l)
        for (std::size_t i = 0; i < means[k].size(); ++i) {
          const double gap = std::abs(means[k][i] - means[l][i]);
          if (gap > tol.eps_eig_cluster && gap <= 10.0 * tol.eps_eig_cluster)
            throw ClusterAmbiguity(
                "joint-value tuples of clusters " + std::to_string(k) + " and " +
                std::to_string(l) + " differ by " + std::to_string(gap) + " in coordinate " +
                std::to_string(i) + ", inside the ambiguous band (eps, 10*eps]");
        }
  }

  JointEigenstructure result;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    ComplexMatrix pi = ComplexMatrix::Zero(d, d);
    for (std::size_t v : groups[k]) {
      const ComplexVector col = diag.basis.col(static_cast<Eigen::Index>(v));
      pi += col * col.adjoint();
    }
    result.projections.push_back(hermitian_part(pi));
    result.cluster_values.push_back(means[k]);
  }
  return result;
}

SpectralRep spectral_representation(const Observable& e, const Tolerance& tol) {
  const auto check = is_commutative(e, tol);
  if (!check.commutative) throw NotCommutative(check.max_commutator);

  JointEigenstructure eig = joint_eigenstructure(e.effects(), tol, /*check_ambiguity=*/true);

  // Canonical order: lexicographic by probability row.
  std::vector<std::size_t> order(eig.projections.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<std::vector<long long>> keys;
  keys.reserve(order.size());
  for (const auto& row : eig.cluster_values) keys.push_back(sort_key(row, tol.eps_eig_cluster));
  std::sort(order.begin(), order.end(),
            [&keys](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

  SpectralRep rep{e.outcomes(), {}, {}};
  for (std::size_t k : order) {
    rep.projections.push_back(std::move(eig.projections[k]));
    RealVector row(static_cast<Eigen::Index>(eig.cluster_values[k].size()));
    for (std::size_t x = 0; x < eig.cluster_values[k].size(); ++x)
      row[static_cast<Eigen::Index>(x)] = std::clamp(eig.cluster_values[k][x], 0.0, 1.0);
    rep.rows.emplace_back(e.outcomes(), std::move(row), tol);
  }
  return rep;
}

Observable reconstruct_spectral(const SpectralRep& rep) {
  if (rep.projections.empty()) throw Error("reconstruct_spectral: empty representation");
  const Eigen::Index d = rep.projections.front().rows();
  std::vector<ComplexMatrix> effects;
  effects.reserve(rep.source_outcomes.size());
  for (std::size_t x = 0; x < rep.source_outcomes.size(); ++x) {
    ComplexMatrix effect = ComplexMatrix::Zero(d, d);
    for (std::size_t k = 0; k < rep.size(); ++k)
      effect += rep.rows[k].weight(x) * rep.projections[k];
    effects.push_back(std::move(effect));
  }
  return Observable(rep.source_outcomes, std::move(effects));
}

SharpObservable cluster_observable(const SpectralRep& rep, const Tolerance& tol) {
  return SharpObservable(
      Observable(OutcomeSet::indexed(rep.size()),
                 std::vector<ComplexMatrix>(rep.projections.begin(), rep.projections.end())),
      tol);
}

MixtureDecomposition mixture_decomposition(const SpectralRep& rep, const Tolerance& tol) {
  const std::size_t num_clusters = rep.size();
  const std::size_t num_outcomes = rep.source_outcomes.size();
  RealMatrix residual(num_clusters, num_outcomes);
  for (std::size_t k = 0; k < num_clusters; ++k) {
    // Normalized rows keep the peeled masses aligned across rows, so the
    // leftover at termination is rounding dust rather than the row-sum error.
    const RealVector& row = rep.rows[k].weights();
    residual.row(static_cast<Eigen::Index>(k)) = row.transpose() / row.sum();
  }

  MixtureDecomposition dec{RealVector(), {}, rep.source_outcomes};
  std::vector<double> weights;
  const std::size_t max_components = num_clusters * (num_outcomes - 1) + 1;

  while (weights.size() < max_components) {
    if (residual.rowwise().sum().maxCoeff() < tol.eps_eq) break;

    // Deterministic map: each row takes its residual argmax, earliest outcome
    // winning ties; the weight is the smallest selected residual.
    std::vector<std::size_t> map(num_clusters);
    double weight = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < num_clusters; ++k) {
      Eigen::Index best = 0;
      residual.row(static_cast<Eigen::Index>(k)).maxCoeff(&best);
      map[k] = static_cast<std::size_t>(best);
      weight = std::min(weight, residual(static_cast<Eigen::Index>(k), best));
    }
    if (weight <= 0.0) break;

    for (std::size_t k = 0; k < num_clusters; ++k)
      residual(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(map[k])) -= weight;
    dec.components.push_back(std::move(map));
    weights.push_back(weight);
  }

  dec.weights = weights.empty() ? RealVector()
                                : Eigen::Map<RealVector>(weights.data(),
                                                         static_cast<Eigen::Index>(weights.size()));
  return dec;
}

SharpObservable component_observable(const MixtureDecomposition& dec, const SpectralRep& rep,
                                     std::size_t j, const Tolerance& tol) {
  if (j >= dec.components.size()) throw IndexMismatch("component_observable: no such component");
  if (dec.components[j].size() != rep.size())
    throw IndexMismatch("component_observable: component map does not index rep projections");
  const Eigen::Index d = rep.projections.front().rows();
  std::vector<ComplexMatrix> effects(dec.outcomes.size(), ComplexMatrix::Zero(d, d));
  for (std::size_t k = 0; k < rep.size(); ++k) effects[dec.components[j][k]] += rep.projections[k];
  return SharpObservable(Observable(dec.outcomes, std::move(effects)), tol);
}

Observable reconstruct_mixture(const MixtureDecomposition& dec, const SpectralRep& rep) {
  if (!(dec.outcomes == rep.source_outcomes))
    throw IndexMismatch("reconstruct_mixture: outcome sets disagree");
  for (const auto& map : dec.components)
    if (map.size() != rep.size())
      throw IndexMismatch("reconstruct_mixture: component map does not index rep projections");

  const Eigen::Index d = rep.projections.front().rows();
  std::vector<ComplexMatrix> effects(dec.outcomes.size(), ComplexMatrix::Zero(d, d));
  for (std::size_t j = 0; j < dec.components.size(); ++j) {
    const double w = dec.weights[static_cast<Eigen::Index>(j)];
    for (std::size_t k = 0; k < rep.size(); ++k)
      effects[dec.components[j][k]] += w * rep.projections[k];
  }
  return Observable(dec.outcomes, std::move(effects));
}

namespace {

ProbabilityVector cyclic_weights(RealVector w, const Tolerance& tol) {
  const std::size_t n = static_cast<std::size_t>(w.size());
  return ProbabilityVector(OutcomeSet::indexed(n), std::move(w), tol);
}

}  // namespace

CyclicMeasure::CyclicMeasure(RealVector w, const Tolerance& tol)
    : weights(cyclic_weights(std::move(w), tol)) {}

Observable convolution_observable(const CyclicMeasure& m) {
  const std::size_t n = m.order();
  std::vector<ComplexMatrix> effects;
  effects.reserve(n);
  for (std::size_t x0 = 0; x0 < n; ++x0) {
    ComplexMatrix effect = ComplexMatrix::Zero(static_cast<Eigen::Index>(n),
                                               static_cast<Eigen::Index>(n));
    for (std::size_t x = 0; x < n; ++x)
      effect(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) =
          m.weights.weight((x + n - x0) % n);
    effects.push_back(std::move(effect));
  }
  return Observable(OutcomeSet::indexed(n), std::move(effects));
}

}  // namespace povmlab
