#pragma once

#include <optional>
#include <utility>

#include "povmlab/fuzzy.hpp"
#include "povmlab/observable.hpp"
#include "povmlab/types.hpp"

namespace povmlab {

/// Cartesian product outcome space. Flattened labels are "a|b" in row-major
/// order (first factor major); '|' is reserved and may not appear in factor
/// labels.
struct ProductOutcomeSet {
  ProductOutcomeSet(OutcomeSet first_, OutcomeSet second_);

  /// Recovers the factors from flattened labels; throws NotProductStructured
  /// if the labels are not a full row-major grid.
  static ProductOutcomeSet parse(const OutcomeSet& flat);

  OutcomeSet flat() const;
  std::size_t size() const { return first.size() * second.size(); }
  std::size_t index(std::size_t a, std::size_t b) const { return a * second.size() + b; }

  OutcomeSet first;
  OutcomeSet second;
};

/// Marginals of an observable on a product outcome space:
/// E1(a) = sum_b G(a,b), E2(b) = sum_a G(a,b).
std::pair<Observable, Observable> marginals(const Observable& g);

/// The product-kernel joint observable: G~(a,b) = sum_x mu_x(a) nu_x(b) G(x).
/// Its marginals are apply_kernel(G, mu) and apply_kernel(G, nu).
Observable product_joint(const Observable& g, const MarkovKernel& mu, const MarkovKernel& nu);

/// Joint observable for two observables whose effects all commute with each
/// other: both are read off the joint eigenstructure of the combined effect
/// family. Returns nullopt when the commuting test fails; this means "not
/// decided", never "proved incompatible".
std::optional<Observable> joint_for_commuting_pair(const Observable& e1, const Observable& e2,
                                                   const Tolerance& tol = {});

/// True iff the marginals of G match (E1, E2) within 10 * eps_eq entrywise.
bool verify_joint(const Observable& g, const Observable& e1, const Observable& e2,
                  const Tolerance& tol = {});

}  // namespace povmlab
