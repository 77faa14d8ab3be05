#include "povmlab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace povmlab {

void phase_fix_columns(ComplexMatrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const double mag = std::abs(m(r, c));
      if (mag > 1e-12) {
        m.col(c) *= std::conj(m(r, c)) / mag;
        break;
      }
    }
  }
}

std::vector<std::pair<std::size_t, std::size_t>> cluster_ascending(const RealVector& values,
                                                                   double resolution) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  const std::size_t n = static_cast<std::size_t>(values.size());
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i == n || values[static_cast<Eigen::Index>(i)] - values[static_cast<Eigen::Index>(i - 1)] >
                      resolution) {
      ranges.emplace_back(begin, i);
      begin = i;
    }
  }
  return ranges;
}

HermitianEig hermitian_eig(const ComplexMatrix& a, const Tolerance& tol) {
  require_finite(a, "hermitian_eig");
  require_square(a, "hermitian_eig");
  const double defect = hermiticity_defect(a);
  if (defect > tol.eps_herm)
    throw NotHermitian("hermitian_eig: max |A - A*| entry " + std::to_string(defect) +
                       " exceeds eps_herm");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a));
  if (solver.info() != Eigen::Success)
    throw NoConvergence("hermitian_eig: eigensolver did not converge");

  HermitianEig result{solver.eigenvalues(), solver.eigenvectors()};
  phase_fix_columns(result.vectors);
  return result;
}

SimultaneousDiagonalization simultaneous_diagonalization(const std::vector<ComplexMatrix>& family,
                                                         const Tolerance& tol) {
  if (family.empty())
    throw Error("simultaneous_diagonalization: empty family");
  const Eigen::Index d = family.front().rows();
  for (std::size_t i = 0; i < family.size(); ++i) {
    const ComplexMatrix& a = family[i];
    require_finite(a, "simultaneous_diagonalization");
    require_square(a, "simultaneous_diagonalization");
    if (a.rows() != d)
      throw ShapeMismatch("simultaneous_diagonalization: member " + std::to_string(i) +
                          " has mismatched dimension");
    const double defect = hermiticity_defect(a);
    if (defect > tol.eps_herm)
      throw NotHermitian("simultaneous_diagonalization: member " + std::to_string(i) +
                         " is not Hermitian (defect " + std::to_string(defect) + ")");
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const double comm = max_abs(ComplexMatrix(family[i] * family[j] - family[j] * family[i]));
      if (comm > tol.eps_eq) throw NotCommutingFamily(i, j, comm);
    }
  }

  // Recursive eigenspace refinement, iterated over the family in order. Each
  // block is an isometry whose columns span a joint invariant subspace.
  std::vector<ComplexMatrix> blocks{ComplexMatrix::Identity(d, d)};
  for (const ComplexMatrix& a : family) {
    std::vector<ComplexMatrix> refined;
    refined.reserve(blocks.size());
    for (const ComplexMatrix& w : blocks) {
      if (w.cols() == 1) {
        refined.push_back(w);
        continue;
      }
      const ComplexMatrix restricted = hermitian_part(w.adjoint() * a * w);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(restricted);
      if (solver.info() != Eigen::Success)
        throw NoConvergence("simultaneous_diagonalization: eigensolver did not converge");
      const ComplexMatrix rotated = w * solver.eigenvectors();
      for (const auto& [begin, end] : cluster_ascending(solver.eigenvalues(), tol.eps_eig_cluster))
        refined.push_back(rotated.middleCols(static_cast<Eigen::Index>(begin),
                                             static_cast<Eigen::Index>(end - begin)));
    }
    blocks = std::move(refined);
  }

  SimultaneousDiagonalization result;
  result.basis.resize(d, d);
  Eigen::Index col = 0;
  for (const ComplexMatrix& w : blocks) {
    result.basis.middleCols(col, w.cols()) = w;
    col += w.cols();
  }
  phase_fix_columns(result.basis);

  result.joint_values.assign(static_cast<std::size_t>(d),
                             std::vector<double>(family.size(), 0.0));
  for (std::size_t i = 0; i < family.size(); ++i) {
    const ComplexMatrix diag = result.basis.adjoint() * family[i] * result.basis;
    for (Eigen::Index v = 0; v < d; ++v)
      result.joint_values[static_cast<std::size_t>(v)][i] = diag(v, v).real();
  }
  return result;
}

std::vector<ComplexVector> nullspace(const ComplexMatrix& m, const Tolerance& tol) {
  require_finite(m, "nullspace");
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const RealVector& sigma = svd.singularValues();
  const Eigen::Index cols = m.cols();

  std::vector<ComplexVector> basis;
  for (Eigen::Index k = 0; k < cols; ++k) {
    const double s = k < sigma.size() ? sigma[k] : 0.0;
    if (s <= tol.eps_eig_cluster) {
      ComplexVector v = svd.matrixV().col(k);
      for (Eigen::Index r = 0; r < v.size(); ++r) {
        const double mag = std::abs(v[r]);
        if (mag > 1e-12) {
          v *= std::conj(v[r]) / mag;
          break;
        }
      }
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

Commutant commutant_basis(const std::vector<ComplexMatrix>& ops, const Tolerance& tol) {
  if (ops.empty()) throw Error("commutant_basis: empty operator list");
  const Eigen::Index d = ops.front().rows();
  for (const ComplexMatrix& a : ops) {
    require_finite(a, "commutant_basis");
    require_square(a, "commutant_basis");
    if (a.rows() != d) throw ShapeMismatch("commutant_basis: mismatched operator dimensions");
  }

  // vec(AX - XA) = (I (x) A - A^T (x) I) vec(X) in column-major vectorization.
  const Eigen::Index d2 = d * d;
  ComplexMatrix stacked(static_cast<Eigen::Index>(ops.size()) * d2, d2);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const ComplexMatrix& a = ops[i];
    ComplexMatrix block = ComplexMatrix::Zero(d2, d2);
    for (Eigen::Index p = 0; p < d; ++p)
      block.block(p * d, p * d, d, d) = a;
    for (Eigen::Index p = 0; p < d; ++p)
      for (Eigen::Index q = 0; q < d; ++q)
        block.block(p * d, q * d, d, d).diagonal().array() -= a(q, p);
    stacked.middleRows(static_cast<Eigen::Index>(i) * d2, d2) = block;
  }

  Commutant result;
  for (const ComplexVector& v : nullspace(stacked, tol)) {
    ComplexMatrix x(d, d);
    for (Eigen::Index q = 0; q < d; ++q)
      x.col(q) = v.segment(q * d, d);
    result.basis.push_back(std::move(x));
  }
  result.dimension = result.basis.size();
  return result;
}

}  // namespace povmlab
