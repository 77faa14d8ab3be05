#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "povmlab/observable.hpp"
#include "povmlab/types.hpp"

namespace povmlab {

/// Canonical spectral form of a commutative observable: the minimal
/// projections of the algebra generated by its effects, paired with one
/// probability row per projection. E(x) = sum_k rows[k](x) * projections[k].
struct SpectralRep {
  OutcomeSet source_outcomes;
  std::vector<ComplexMatrix> projections;  // Hermitian idempotents, orthogonal, sum to I
  std::vector<ProbabilityVector> rows;     // pairwise distinct, canonical (lexicographic) order

  std::size_t size() const { return projections.size(); }
};

/// Convex mixture of deterministic relabelings of one sharp observable:
/// component j maps projection index k to the outcome components[j][k].
struct MixtureDecomposition {
  RealVector weights;                               // positive, sum to 1
  std::vector<std::vector<std::size_t>> components; // pairwise distinct maps
  OutcomeSet outcomes;
};

/// Probability measure on the cyclic group Z_n.
struct CyclicMeasure {
  explicit CyclicMeasure(RealVector weights, const Tolerance& tol = {});

  std::size_t order() const { return weights.size(); }
  ProbabilityVector weights;
};

/// Joint eigenstructure of a commuting Hermitian family: basis vectors are
/// grouped by their full joint-eigenvalue tuple at resolution
/// tol.eps_eig_cluster. cluster_values[k][i] is the (common) diagonal value of
/// family member i on cluster k.
struct JointEigenstructure {
  std::vector<ComplexMatrix> projections;
  std::vector<std::vector<double>> cluster_values;
};

JointEigenstructure joint_eigenstructure(const std::vector<ComplexMatrix>& family,
                                         const Tolerance& tol = {}, bool check_ambiguity = false);

/// Spectral representation of a commutative observable. Throws NotCommutative
/// when effects fail to commute and ClusterAmbiguity when two joint-value
/// tuples sit between eps_eig_cluster and 10x eps_eig_cluster apart in some
/// coordinate.
SpectralRep spectral_representation(const Observable& e, const Tolerance& tol = {});

/// E(x) = sum_k mu_k(x) Pi_k.
Observable reconstruct_spectral(const SpectralRep& rep);

/// The sharp observable {Pi_k} on the cluster index set.
SharpObservable cluster_observable(const SpectralRep& rep, const Tolerance& tol = {});

/// Greedy argmax peeling of the row-stochastic matrix of rep.rows into a
/// convex combination of deterministic maps; terminates in at most
/// K(|Omega|-1)+1 components.
MixtureDecomposition mixture_decomposition(const SpectralRep& rep, const Tolerance& tol = {});

/// The sharp observable induced by component j: P(x) = sum_{k: d(k)=x} Pi_k.
SharpObservable component_observable(const MixtureDecomposition& dec, const SpectralRep& rep,
                                     std::size_t j, const Tolerance& tol = {});

/// sum_j w_j P_{d_j}; equals reconstruct_spectral(rep) up to tolerance.
Observable reconstruct_mixture(const MixtureDecomposition& dec, const SpectralRep& rep);

/// The convolution observable on Z_n: the effect of outcome x0 is the
/// diagonal matrix with entries nu(x - x0 mod n) in the position basis.
Observable convolution_observable(const CyclicMeasure& m);

}  // namespace povmlab
