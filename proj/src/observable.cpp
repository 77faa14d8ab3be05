#include "povmlab/observable.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "povmlab/linalg.hpp"

namespace povmlab {

OutcomeSet::OutcomeSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw Error("OutcomeSet: outcome set must be nonempty");
  std::unordered_set<std::string> seen;
  for (const std::string& l : labels_)
    if (!seen.insert(l).second) throw Error("OutcomeSet: duplicate label '" + l + "'");
}

OutcomeSet OutcomeSet::indexed(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return OutcomeSet(std::move(labels));
}

std::optional<std::size_t> OutcomeSet::find(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

std::size_t OutcomeSet::index_of(const std::string& label) const {
  if (auto i = find(label)) return *i;
  throw UnknownLabel("unknown outcome label '" + label + "'");
}

ProbabilityVector::ProbabilityVector(OutcomeSet outcomes, RealVector weights, const Tolerance& tol)
    : outcomes_(std::move(outcomes)), weights_(std::move(weights)) {
  if (static_cast<std::size_t>(weights_.size()) != outcomes_.size())
    throw ShapeMismatch("ProbabilityVector: weight count does not match outcome count");
  if (!weights_.allFinite()) throw Error("ProbabilityVector: non-finite weights");
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (weights_[i] < -tol.eps_eq)
      throw Error("ProbabilityVector: weight " + std::to_string(weights_[i]) + " at index " +
                  std::to_string(i) + " is negative beyond tolerance");
    if (weights_[i] < 0.0) weights_[i] = 0.0;
  }
  const double sum = weights_.sum();
  if (std::abs(sum - 1.0) > tol.eps_eq)
    throw Error("ProbabilityVector: weights sum to " + std::to_string(sum));
}

Observable::Observable(OutcomeSet outcomes, std::vector<ComplexMatrix> effects)
    : outcomes_(std::move(outcomes)), effects_(std::move(effects)) {
  if (effects_.size() != outcomes_.size())
    throw ShapeMismatch("Observable: " + std::to_string(effects_.size()) + " effects for " +
                        std::to_string(outcomes_.size()) + " outcomes");
  dim_ = effects_.front().rows();
  if (dim_ <= 0) throw ShapeMismatch("Observable: empty effect matrix");
  for (const ComplexMatrix& e : effects_) {
    require_square(e, "Observable effect");
    if (e.rows() != dim_) throw ShapeMismatch("Observable: effect dimensions disagree");
    require_finite(e, "Observable effect");
  }
}

SharpObservable::SharpObservable(Observable obs, const Tolerance& tol) : Observable(std::move(obs)) {
  if (!is_sharp(*this, tol)) throw Error("SharpObservable: effects are not orthogonal projections");
}

State::State(ComplexMatrix density, const Tolerance& tol) : density_(std::move(density)) {
  require_square(density_, "State");
  require_finite(density_, "State");
  const double herm = hermiticity_defect(density_);
  if (herm > tol.eps_herm)
    throw Error("State: density matrix not Hermitian (defect " + std::to_string(herm) + ")");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(density_),
                                                      Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol.eps_psd)
    throw Error("State: density matrix has negative eigenvalue " +
                std::to_string(solver.eigenvalues().minCoeff()));
  const double trace = density_.trace().real();
  if (std::abs(trace - 1.0) > tol.eps_eq)
    throw Error("State: trace is " + std::to_string(trace));
}

State State::pure(const ComplexVector& amplitudes, const Tolerance& tol) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw Error("State::pure: zero vector");
  const ComplexVector psi = amplitudes / norm;
  return State(psi * psi.adjoint(), tol);
}

State State::maximally_mixed(Eigen::Index dim) {
  if (dim <= 0) throw Error("State::maximally_mixed: dimension must be positive");
  return State(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

ValidationReport validate(const Observable& e, const Tolerance& tol) {
  ValidationReport report;
  ComplexMatrix sum = ComplexMatrix::Zero(e.dim(), e.dim());
  for (std::size_t i = 0; i < e.num_outcomes(); ++i) {
    const ComplexMatrix& effect = e.effect(i);
    sum += effect;
    const double herm = hermiticity_defect(effect);
    if (herm > tol.eps_herm)
      report.issues.push_back({"hermitian", herm,
                               "effect '" + e.outcomes().label(i) + "' deviates from Hermitian by " +
                                   std::to_string(herm)});
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(effect),
                                                        Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -tol.eps_psd)
      report.issues.push_back({"positive", -min_eig,
                               "effect '" + e.outcomes().label(i) + "' has negative eigenvalue " +
                                   std::to_string(min_eig)});
  }
  const double completeness =
      max_abs(ComplexMatrix(sum - ComplexMatrix::Identity(e.dim(), e.dim())));
  if (completeness > tol.eps_eq)
    report.issues.push_back(
        {"normalization", completeness,
         "effect sum deviates from identity by " + std::to_string(completeness)});
  return report;
}

ProbabilityVector outcome_distribution(const Observable& e, const State& t, const Tolerance& tol) {
  if (e.dim() != t.dim())
    throw DimensionMismatch("outcome_distribution: observable dim " + std::to_string(e.dim()) +
                            " vs state dim " + std::to_string(t.dim()));
  RealVector weights(static_cast<Eigen::Index>(e.num_outcomes()));
  for (std::size_t i = 0; i < e.num_outcomes(); ++i)
    weights[static_cast<Eigen::Index>(i)] = (t.matrix() * e.effect(i)).trace().real();
  return ProbabilityVector(e.outcomes(), std::move(weights), tol);
}

ComplexMatrix effect_of_subset(const Observable& e, const std::vector<std::string>& subset) {
  // Summation runs in outcome-label order regardless of how the subset is
  // listed, so equal subsets produce bitwise-identical sums.
  std::vector<bool> member(e.num_outcomes(), false);
  for (const std::string& label : subset) member[e.outcomes().index_of(label)] = true;
  ComplexMatrix sum = ComplexMatrix::Zero(e.dim(), e.dim());
  for (std::size_t i = 0; i < e.num_outcomes(); ++i)
    if (member[i]) sum += e.effect(i);
  return sum;
}

CommutativityCheck is_commutative(const Observable& e, const Tolerance& tol) {
  double worst = 0.0;
  for (std::size_t i = 0; i < e.num_outcomes(); ++i)
    for (std::size_t j = i + 1; j < e.num_outcomes(); ++j)
      worst = std::max(worst, max_abs(ComplexMatrix(e.effect(i) * e.effect(j) -
                                                    e.effect(j) * e.effect(i))));
  return {worst <= tol.eps_eq, worst};
}

bool is_sharp(const Observable& e, const Tolerance& tol) {
  for (std::size_t i = 0; i < e.num_outcomes(); ++i) {
    if (max_abs(ComplexMatrix(e.effect(i) * e.effect(i) - e.effect(i))) > tol.eps_eq) return false;
    for (std::size_t j = i + 1; j < e.num_outcomes(); ++j)
      if (max_abs(ComplexMatrix(e.effect(i) * e.effect(j))) > tol.eps_eq) return false;
  }
  return true;
}

bool is_maximally_commutative(const Observable& e, const Tolerance& tol) {
  const auto check = is_commutative(e, tol);
  if (!check.commutative) throw NotCommutative(check.max_commutator);
  const Commutant commutant = commutant_basis(e.effects(), tol);
  for (std::size_t i = 0; i < commutant.basis.size(); ++i)
    for (std::size_t j = i + 1; j < commutant.basis.size(); ++j) {
      const ComplexMatrix& x = commutant.basis[i];
      const ComplexMatrix& y = commutant.basis[j];
      if (max_abs(ComplexMatrix(x * y - y * x)) > tol.eps_eq) return false;
    }
  return true;
}

}  // namespace povmlab
