#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "povmlab/types.hpp"

namespace povmlab {

class Observable;

struct LinearEquality {
  RealVector coeffs;
  double rhs;
};

/// Find x >= 0 with |coeffs . x - rhs| <= slack for every equality.
struct FeasibilityProblem {
  std::size_t num_vars = 0;
  std::vector<LinearEquality> equalities;
  double slack = kDefaultFeasibilitySlack;
};

/// Phase-1 simplex over a dense tableau with Bland's anti-cycling rule.
/// Equalities are handled via artificial variables; the problem is declared
/// feasible iff the phase-1 optimum (total constraint violation) stays within
/// num_equalities * slack. Returns a nonnegative assignment or nullopt.
/// Throws NumericalBreakdown if pivoting exceeds the iteration guard.
std::optional<RealVector> solve(const FeasibilityProblem& p);

/// Linear encoding of "E is a fuzzy version of F": variables are the kernel
/// entries mu_x(a) laid out row-major (x major, a minor); one equality per
/// effect matrix coordinate of E split into real and imaginary parts, plus one
/// row-sum equality per source outcome x.
FeasibilityProblem encode_kernel_problem(const Observable& e, const Observable& f,
                                         double slack = kDefaultFeasibilitySlack);

}  // namespace povmlab
