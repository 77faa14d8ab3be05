#include "povmlab/fuzzy.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "povmlab/feasibility.hpp"
#include "povmlab/linalg.hpp"

namespace povmlab {

MarkovKernel::MarkovKernel(OutcomeSet from, OutcomeSet to, RealMatrix matrix, const Tolerance& tol)
    : from_(std::move(from)), to_(std::move(to)), matrix_(std::move(matrix)) {
  if (static_cast<std::size_t>(matrix_.rows()) != from_.size() ||
      static_cast<std::size_t>(matrix_.cols()) != to_.size())
    throw ShapeMismatch("MarkovKernel: matrix is " + std::to_string(matrix_.rows()) + "x" +
                        std::to_string(matrix_.cols()) + " but outcome sets have sizes " +
                        std::to_string(from_.size()) + " and " + std::to_string(to_.size()));
  if (!matrix_.allFinite()) throw Error("MarkovKernel: non-finite entries");
  for (Eigen::Index x = 0; x < matrix_.rows(); ++x) {
    for (Eigen::Index a = 0; a < matrix_.cols(); ++a) {
      const double v = matrix_(x, a);
      if (v < -tol.eps_eq || v > 1.0 + tol.eps_eq)
        throw Error("MarkovKernel: entry " + std::to_string(v) + " outside [0,1]");
      matrix_(x, a) = std::clamp(v, 0.0, 1.0);
    }
    const double sum = matrix_.row(x).sum();
    if (std::abs(sum - 1.0) > tol.eps_eq)
      throw Error("MarkovKernel: row " + std::to_string(x) + " sums to " + std::to_string(sum));
    matrix_.row(x) /= sum;
  }
}

MarkovKernel MarkovKernel::identity(const OutcomeSet& outcomes) {
  const Eigen::Index n = static_cast<Eigen::Index>(outcomes.size());
  return MarkovKernel(outcomes, outcomes, RealMatrix::Identity(n, n));
}

MarkovKernel MarkovKernel::dirac(const Relabeling& phi) {
  RealMatrix m = RealMatrix::Zero(static_cast<Eigen::Index>(phi.from.size()),
                                  static_cast<Eigen::Index>(phi.to.size()));
  for (std::size_t x = 0; x < phi.from.size(); ++x) {
    if (phi.map.size() != phi.from.size() || phi.map[x] >= phi.to.size())
      throw IndexMismatch("MarkovKernel::dirac: relabeling map is not total");
    m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(phi.map[x])) = 1.0;
  }
  return MarkovKernel(phi.from, phi.to, std::move(m));
}

MarkovKernel MarkovKernel::then(const MarkovKernel& outer) const {
  if (!(to_ == outer.from()))
    throw OutcomeMismatch("MarkovKernel::then: inner target differs from outer source");
  return MarkovKernel(from_, outer.to(), matrix_ * outer.matrix());
}

Observable apply_kernel(const Observable& f, const MarkovKernel& mu) {
  if (!(mu.from() == f.outcomes()))
    throw OutcomeMismatch("apply_kernel: kernel source does not match observable outcomes");
  std::vector<ComplexMatrix> effects(mu.to().size(), ComplexMatrix::Zero(f.dim(), f.dim()));
  for (std::size_t x = 0; x < f.num_outcomes(); ++x)
    for (std::size_t a = 0; a < mu.to().size(); ++a) {
      const double w = mu.matrix()(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(a));
      if (w != 0.0) effects[a] += w * f.effect(x);
    }
  return Observable(mu.to(), std::move(effects));
}

std::optional<MarkovKernel> find_fuzzy_kernel(const Observable& e, const Observable& f,
                                              const Tolerance& tol, double slack) {
  const FeasibilityProblem problem = encode_kernel_problem(e, f, slack);
  const std::optional<RealVector> solution = solve(problem);
  if (!solution) return std::nullopt;

  const std::size_t m_from = f.num_outcomes();
  const std::size_t m_to = e.num_outcomes();
  RealMatrix kernel(m_from, m_to);
  for (std::size_t x = 0; x < m_from; ++x)
    for (std::size_t a = 0; a < m_to; ++a)
      kernel(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(a)) =
          (*solution)[static_cast<Eigen::Index>(x * m_to + a)];

  // The solver satisfies the stochasticity constraints only up to the
  // feasibility slack, which is looser than the kernel's own tolerance.
  Tolerance kernel_tol = tol;
  kernel_tol.eps_eq =
      std::max(tol.eps_eq, 2.0 * slack * static_cast<double>(problem.equalities.size()));
  return MarkovKernel(f.outcomes(), e.outcomes(), std::move(kernel), kernel_tol);
}

std::optional<Relabeling> is_relabeling(const MarkovKernel& mu, const Tolerance& tol) {
  std::vector<std::size_t> map(mu.from().size());
  for (std::size_t x = 0; x < mu.from().size(); ++x) {
    long hit = -1;
    for (std::size_t a = 0; a < mu.to().size(); ++a)
      if (mu.matrix()(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(a)) >=
          1.0 - tol.eps_eq) {
        if (hit >= 0) return std::nullopt;
        hit = static_cast<long>(a);
      }
    if (hit < 0) return std::nullopt;
    map[x] = static_cast<std::size_t>(hit);
  }
  return Relabeling{mu.from(), mu.to(), std::move(map)};
}

Observable relabel(const Observable& f, const Relabeling& phi) {
  if (!(phi.from == f.outcomes()))
    throw OutcomeMismatch("relabel: map domain does not match observable outcomes");
  if (phi.map.size() != phi.from.size())
    throw IndexMismatch("relabel: relabeling map is not total");
  std::vector<ComplexMatrix> effects(phi.to.size(), ComplexMatrix::Zero(f.dim(), f.dim()));
  for (std::size_t x = 0; x < f.num_outcomes(); ++x) {
    if (phi.map[x] >= phi.to.size()) throw IndexMismatch("relabel: map image out of range");
    effects[phi.map[x]] += f.effect(x);
  }
  return Observable(phi.to, std::move(effects));
}

MarkovKernel convolution_kernel(const CyclicMeasure& m) {
  const std::size_t n = m.order();
  RealMatrix matrix(n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t a = 0; a < n; ++a)
      matrix(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(a)) =
          m.weights.weight((x + n - a) % n);
  const OutcomeSet outcomes = OutcomeSet::indexed(n);
  return MarkovKernel(outcomes, outcomes, std::move(matrix));
}

namespace {

/// Splits every effect of a sharp observable into rank-1 projectors; the
/// result is a finer sharp observable from which `e` is recovered by merging
/// outcomes.
std::pair<Observable, Relabeling> rank_one_refinement(const Observable& e) {
  std::vector<std::string> labels;
  std::vector<ComplexMatrix> pieces;
  std::vector<std::size_t> map;
  for (std::size_t x = 0; x < e.num_outcomes(); ++x) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(e.effect(x)));
    std::size_t piece = 0;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
      if (solver.eigenvalues()[k] < 0.5) continue;  // projection spectrum is {0,1}
      const ComplexVector v = solver.eigenvectors().col(k);
      pieces.push_back(v * v.adjoint());
      labels.push_back(e.outcomes().label(x) + "." + std::to_string(piece++));
      map.push_back(x);
    }
  }
  Observable refined(OutcomeSet(std::move(labels)), std::move(pieces));
  Relabeling phi{refined.outcomes(), e.outcomes(), std::move(map)};
  return {std::move(refined), std::move(phi)};
}

}  // namespace

FuzzyClassification classify_fuzzy(const Observable& e, const Tolerance& tol) {
  FuzzyClassification result;
  if (is_sharp(e, tol)) {
    if (is_maximally_commutative(e, tol)) {
      result.verdict = FuzzyVerdict::NotFuzzy;
      result.reason = "sharp observable generating a maximal abelian algebra";
      return result;
    }
    auto [parent, phi] = rank_one_refinement(e);
    result.verdict = FuzzyVerdict::Fuzzy;
    result.kernel = MarkovKernel::dirac(phi);
    result.parent = std::move(parent);
    result.reason =
        "sharp observable with a degenerate effect: a proper relabeling of a finer "
        "sharp observable";
    return result;
  }

  if (!is_commutative(e, tol).commutative) {
    result.verdict = FuzzyVerdict::Unknown;
    result.reason = "noncommutative observables are outside the decision procedure";
    return result;
  }

  const SpectralRep rep = spectral_representation(e, tol);
  const SharpObservable parent = cluster_observable(rep, tol);
  RealMatrix rows(rep.size(), e.num_outcomes());
  for (std::size_t k = 0; k < rep.size(); ++k)
    rows.row(static_cast<Eigen::Index>(k)) = rep.rows[k].weights().transpose();
  MarkovKernel kernel(parent.outcomes(), e.outcomes(), std::move(rows), tol);

  if (!find_fuzzy_kernel(parent, e, tol)) {
    result.verdict = FuzzyVerdict::Fuzzy;
    result.parent = parent;
    result.kernel = std::move(kernel);
    result.reason =
        "fuzzy version of the sharp observable in its spectral representation, which is "
        "not recoverable from it";
    return result;
  }
  result.verdict = FuzzyVerdict::Unknown;
  result.reason =
      "mutually fuzzy with its spectral sharp observable; no finer parent is examined";
  return result;
}

}  // namespace povmlab
