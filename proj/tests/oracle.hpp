#pragma once

#include <vector>

#include "povmlab/feasibility.hpp"

namespace povmlab::testing {

/// Independent feasibility oracle by exhaustive vertex enumeration.
///
/// The region { x >= 0 : |row.x - rhs| <= slack for every equality } is a
/// closed pointed polyhedron (it contains no line), so it is nonempty iff it
/// has a vertex, and every vertex is the intersection of num_vars linearly
/// independent active constraints chosen from the slab faces row.x = rhs +- s
/// and the coordinate planes x_i = 0. With <= 6 variables and <= 4 equalities
/// that is at most C(14,6) candidate systems.
inline bool oracle_feasible(const FeasibilityProblem& p) {
  const int n = static_cast<int>(p.num_vars);
  struct Plane {
    RealVector normal;
    double offset;
  };
  std::vector<Plane> planes;
  for (const LinearEquality& eq : p.equalities) {
    planes.push_back({eq.coeffs, eq.rhs + p.slack});
    planes.push_back({eq.coeffs, eq.rhs - p.slack});
  }
  for (int i = 0; i < n; ++i) {
    RealVector axis = RealVector::Zero(n);
    axis[i] = 1.0;
    planes.push_back({std::move(axis), 0.0});
  }

  const auto satisfies_all = [&](const RealVector& x) {
    for (int i = 0; i < n; ++i)
      if (x[i] < -1e-9) return false;
    for (const LinearEquality& eq : p.equalities)
      if (std::abs(eq.coeffs.dot(x) - eq.rhs) > p.slack + 1e-9) return false;
    return true;
  };

  std::vector<int> pick(n);
  const int num_planes = static_cast<int>(planes.size());
  // Enumerate all size-n subsets of the planes.
  const auto recurse = [&](auto&& self, int depth, int start) -> bool {
    if (depth == n) {
      RealMatrix a(n, n);
      RealVector b(n);
      for (int k = 0; k < n; ++k) {
        a.row(k) = planes[static_cast<std::size_t>(pick[k])].normal.transpose();
        b[k] = planes[static_cast<std::size_t>(pick[k])].offset;
      }
      const Eigen::FullPivLU<RealMatrix> lu(a);
      if (lu.rank() < n) return false;
      return satisfies_all(lu.solve(b));
    }
    for (int i = start; i < num_planes; ++i) {
      pick[static_cast<std::size_t>(depth)] = i;
      if (self(self, depth + 1, i + 1)) return true;
    }
    return false;
  };
  return recurse(recurse, 0, 0);
}

}  // namespace povmlab::testing
