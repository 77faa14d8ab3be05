#pragma once

#include <cstddef>
#include <vector>

#include "povmlab/types.hpp"

namespace povmlab {

struct HermitianEig {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // unitary, column k pairs with values[k]
};

/// Eigendecomposition of a Hermitian matrix with deterministic output: values
/// ascending, each eigenvector's first nonzero coordinate made real positive.
/// Throws NotHermitian if max |A - A*| exceeds tol.eps_herm.
HermitianEig hermitian_eig(const ComplexMatrix& a, const Tolerance& tol = {});

struct SimultaneousDiagonalization {
  ComplexMatrix basis;  // unitary; conjugates every family member to diagonal
  // joint_values[v][i]: diagonal entry of basis^* A_i basis at column v
  std::vector<std::vector<double>> joint_values;
};

/// Common eigenbasis of a commuting Hermitian family, found by recursive
/// eigenspace refinement: diagonalize the first matrix, split its spectrum
/// into clusters at resolution tol.eps_eig_cluster, restrict the remaining
/// matrices to each cluster's eigenspace, recurse. Deterministic: blocks are
/// processed in eigenvalue order and columns are phase-fixed.
SimultaneousDiagonalization simultaneous_diagonalization(const std::vector<ComplexMatrix>& family,
                                                         const Tolerance& tol = {});

/// Orthonormal basis of the right nullspace of a rectangular matrix, with the
/// rank decision made on singular values at threshold tol.eps_eig_cluster.
std::vector<ComplexVector> nullspace(const ComplexMatrix& m, const Tolerance& tol = {});

struct Commutant {
  std::size_t dimension = 0;
  std::vector<ComplexMatrix> basis;  // orthonormal in the Hilbert-Schmidt inner product
};

/// Basis of { X : X A_i = A_i X for all i }, computed as the joint nullspace
/// of the stacked maps X -> A_i X - X A_i over d^2-vectors.
Commutant commutant_basis(const std::vector<ComplexMatrix>& ops, const Tolerance& tol = {});

/// Half-open index ranges [begin, end) grouping an ascending value sequence;
/// a new group starts whenever the gap to the previous value exceeds
/// `resolution`.
std::vector<std::pair<std::size_t, std::size_t>> cluster_ascending(const RealVector& values,
                                                                   double resolution);

/// Rotate each column so its first coordinate of magnitude > 1e-12 becomes
/// real positive. Fixes the U(1) gauge freedom of eigenvectors.
void phase_fix_columns(ComplexMatrix& m);

}  // namespace povmlab
