#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "povmlab/types.hpp"

namespace povmlab {

/// Finite outcome space: an ordered list of distinct labels.
class OutcomeSet {
 public:
  explicit OutcomeSet(std::vector<std::string> labels);

  /// Labels "0", "1", ..., "n-1".
  static OutcomeSet indexed(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::optional<std::size_t> find(const std::string& label) const;
  /// Throws UnknownLabel.
  std::size_t index_of(const std::string& label) const;

  friend bool operator==(const OutcomeSet& a, const OutcomeSet& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
};

/// Probability distribution over an outcome set. Weights within eps_eq below
/// zero are clamped to zero on construction; anything lower is an error.
class ProbabilityVector {
 public:
  ProbabilityVector(OutcomeSet outcomes, RealVector weights, const Tolerance& tol = {});

  const OutcomeSet& outcomes() const { return outcomes_; }
  const RealVector& weights() const { return weights_; }
  double weight(std::size_t i) const { return weights_[static_cast<Eigen::Index>(i)]; }
  std::size_t size() const { return outcomes_.size(); }

 private:
  OutcomeSet outcomes_;
  RealVector weights_;
};

/// Finite-outcome observable: one effect matrix per outcome. Construction
/// checks shapes only; validate() checks positivity and normalization.
class Observable {
 public:
  Observable(OutcomeSet outcomes, std::vector<ComplexMatrix> effects);

  const OutcomeSet& outcomes() const { return outcomes_; }
  Eigen::Index dim() const { return dim_; }
  std::size_t num_outcomes() const { return outcomes_.size(); }
  const std::vector<ComplexMatrix>& effects() const { return effects_; }
  const ComplexMatrix& effect(std::size_t i) const { return effects_.at(i); }
  const ComplexMatrix& effect(const std::string& label) const {
    return effects_[outcomes_.index_of(label)];
  }

 private:
  OutcomeSet outcomes_;
  Eigen::Index dim_;
  std::vector<ComplexMatrix> effects_;
};

/// Observable whose effects are mutually orthogonal projections. The
/// constructor verifies sharpness and throws Error otherwise.
class SharpObservable : public Observable {
 public:
  explicit SharpObservable(Observable obs, const Tolerance& tol = {});
};

/// Density operator.
class State {
 public:
  explicit State(ComplexMatrix density, const Tolerance& tol = {});

  static State pure(const ComplexVector& amplitudes, const Tolerance& tol = {});
  static State maximally_mixed(Eigen::Index dim);

  Eigen::Index dim() const { return density_.rows(); }
  const ComplexMatrix& matrix() const { return density_; }

 private:
  ComplexMatrix density_;
};

struct ValidationIssue {
  std::string invariant;  // short machine-readable name
  double magnitude;       // size of the violation
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Checks the POVM invariants: effects Hermitian, positive semidefinite, and
/// summing to the identity. Empty report iff all hold at tol.
ValidationReport validate(const Observable& e, const Tolerance& tol = {});

/// Outcome statistics weight(x) = Re tr(T E(x)).
ProbabilityVector outcome_distribution(const Observable& e, const State& t,
                                       const Tolerance& tol = {});

/// Sum of effects over a subset of outcomes.
ComplexMatrix effect_of_subset(const Observable& e, const std::vector<std::string>& subset);

struct CommutativityCheck {
  bool commutative;
  double max_commutator;  // largest entry of |E(x)E(y) - E(y)E(x)| over pairs
};

/// Pairwise effect commutation; for finite outcome sets this decides
/// commutativity of the whole observable.
CommutativityCheck is_commutative(const Observable& e, const Tolerance& tol = {});

/// True iff each effect is idempotent and pairwise products vanish.
bool is_sharp(const Observable& e, const Tolerance& tol = {});

/// True iff the commutant of the effects is abelian, i.e. the algebra they
/// generate is maximal abelian. Requires a commutative observable and throws
/// NotCommutative otherwise.
bool is_maximally_commutative(const Observable& e, const Tolerance& tol = {});

}  // namespace povmlab
