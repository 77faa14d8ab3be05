#include "povmlab/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "povmlab/observable.hpp"

namespace povmlab {

namespace {

constexpr double kReducedCostTol = 1e-10;
constexpr double kPivotTol = 1e-11;

}  // namespace

std::optional<RealVector> solve(const FeasibilityProblem& p) {
  const std::size_t n = p.num_vars;
  const std::size_t m = p.equalities.size();
  if (n == 0) throw Error("solve: problem has no variables");
  if (p.slack < 0) throw Error("solve: negative slack");
  for (const LinearEquality& eq : p.equalities) {
    if (static_cast<std::size_t>(eq.coeffs.size()) != n)
      throw ShapeMismatch("solve: coefficient row length does not match num_vars");
    if (!eq.coeffs.allFinite() || !std::isfinite(eq.rhs))
      throw Error("solve: non-finite constraint data");
  }
  if (m == 0) return RealVector::Zero(static_cast<Eigen::Index>(n));

  // Dense tableau: m constraint rows plus the phase-1 cost row; columns are
  // the original variables plus the right-hand side. The artificial variable
  // of row i starts basic; once driven out it is dropped for good, so its
  // column is never materialized.
  const Eigen::Index rows = static_cast<Eigen::Index>(m) + 1;
  const Eigen::Index cols = static_cast<Eigen::Index>(n) + 1;
  const Eigen::Index rhs_col = cols - 1;
  RealMatrix t = RealMatrix::Zero(rows, cols);
  std::vector<std::size_t> basis(m);  // basis[i] < n: original var; else artificial i

  for (std::size_t i = 0; i < m; ++i) {
    const double sign = p.equalities[i].rhs < 0 ? -1.0 : 1.0;
    t.row(static_cast<Eigen::Index>(i)).head(static_cast<Eigen::Index>(n)) =
        sign * p.equalities[i].coeffs.transpose();
    t(static_cast<Eigen::Index>(i), rhs_col) = sign * p.equalities[i].rhs;
    basis[i] = n + i;
  }
  // Phase-1 reduced costs: minimizing the sum of artificials gives cost row
  // -(column sums) over the constraint rows.
  t.row(rows - 1) = -t.topRows(rows - 1).colwise().sum();

  const std::size_t max_iterations = 50 * (m + n) + 10000;
  for (std::size_t iter = 0;; ++iter) {
    if (iter > max_iterations)
      throw NumericalBreakdown("solve: simplex exceeded " + std::to_string(max_iterations) +
                               " pivots");

    // Bland's rule: smallest-index improving column.
    Eigen::Index entering = -1;
    Eigen::Index leaving = -1;
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(n); ++j) {
      if (t(rows - 1, j) >= -kReducedCostTol) continue;
      // Ratio test; ties broken by smallest basic variable index.
      Eigen::Index best_row = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(m); ++i) {
        if (t(i, j) <= kPivotTol) continue;
        const double ratio = t(i, rhs_col) / t(i, j);
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && best_row >= 0 &&
             basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(best_row)])) {
          best_ratio = ratio;
          best_row = i;
        }
      }
      if (best_row >= 0) {
        entering = j;
        leaving = best_row;
        break;
      }
      // No admissible pivot in this column (numerically unbounded direction
      // cannot happen for a bounded phase-1 objective); try the next column.
    }
    if (entering < 0) break;  // optimal

    // Pivot.
    const double pivot = t(leaving, entering);
    t.row(leaving) /= pivot;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == leaving) continue;
      const double factor = t(i, entering);
      if (factor != 0.0) t.row(i) -= factor * t.row(leaving);
    }
    basis[static_cast<std::size_t>(leaving)] = static_cast<std::size_t>(entering);
  }

  double violation = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= n) violation += t(static_cast<Eigen::Index>(i), rhs_col);

  if (violation > static_cast<double>(m) * p.slack) return std::nullopt;

  RealVector x = RealVector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n)
      x[static_cast<Eigen::Index>(basis[i])] =
          std::max(0.0, t(static_cast<Eigen::Index>(i), rhs_col));
  return x;
}

FeasibilityProblem encode_kernel_problem(const Observable& e, const Observable& f, double slack) {
  if (e.dim() != f.dim())
    throw DimensionMismatch("encode_kernel_problem: observables act on different spaces");
  const std::size_t m_from = f.num_outcomes();  // kernel source: outcomes of F
  const std::size_t m_to = e.num_outcomes();    // kernel target: outcomes of E
  const Eigen::Index d = e.dim();

  FeasibilityProblem p;
  p.num_vars = m_from * m_to;
  p.slack = slack;
  const auto var = [m_to](std::size_t x, std::size_t a) { return x * m_to + a; };

  // Effect equations: sum_x mu_x(a) F(x)[i][j] = E(a)[i][j], real and imaginary.
  for (std::size_t a = 0; a < m_to; ++a) {
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        LinearEquality re{RealVector::Zero(static_cast<Eigen::Index>(p.num_vars)),
                          e.effect(a)(i, j).real()};
        LinearEquality im{RealVector::Zero(static_cast<Eigen::Index>(p.num_vars)),
                          e.effect(a)(i, j).imag()};
        for (std::size_t x = 0; x < m_from; ++x) {
          re.coeffs[static_cast<Eigen::Index>(var(x, a))] = f.effect(x)(i, j).real();
          im.coeffs[static_cast<Eigen::Index>(var(x, a))] = f.effect(x)(i, j).imag();
        }
        p.equalities.push_back(std::move(re));
        p.equalities.push_back(std::move(im));
      }
    }
  }
  // Row sums: sum_a mu_x(a) = 1.
  for (std::size_t x = 0; x < m_from; ++x) {
    LinearEquality row{RealVector::Zero(static_cast<Eigen::Index>(p.num_vars)), 1.0};
    for (std::size_t a = 0; a < m_to; ++a) row.coeffs[static_cast<Eigen::Index>(var(x, a))] = 1.0;
    p.equalities.push_back(std::move(row));
  }
  return p;
}

}  // namespace povmlab
