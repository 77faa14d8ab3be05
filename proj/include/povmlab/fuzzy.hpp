#pragma once

#include <optional>
#include <string>
#include <vector>

#include "povmlab/observable.hpp"
#include "povmlab/representation.hpp"
#include "povmlab/types.hpp"

namespace povmlab {

/// Outcome relabeling: a total map from one outcome set onto another,
/// i.e. the deterministic (Dirac) special case of a Markov kernel.
struct Relabeling {
  OutcomeSet from;
  OutcomeSet to;
  std::vector<std::size_t> map;  // from-index -> to-index

  const std::string& image(const std::string& label) const {
    return to.label(map[from.index_of(label)]);
  }
};

/// Row-stochastic matrix from one outcome set to another: row x is the
/// probability distribution mu_x on `to`. Entries are validated against
/// [-eps, 1+eps], clamped into [0,1], and rows are renormalized to sum
/// exactly 1.
class MarkovKernel {
 public:
  MarkovKernel(OutcomeSet from, OutcomeSet to, RealMatrix matrix, const Tolerance& tol = {});

  static MarkovKernel identity(const OutcomeSet& outcomes);
  static MarkovKernel dirac(const Relabeling& phi);

  const OutcomeSet& from() const { return from_; }
  const OutcomeSet& to() const { return to_; }
  const RealMatrix& matrix() const { return matrix_; }

  /// Composition: if *this takes F to E and `outer` takes E to D, the result
  /// takes F to D (matrix product in source-to-target order).
  MarkovKernel then(const MarkovKernel& outer) const;

 private:
  OutcomeSet from_;
  OutcomeSet to_;
  RealMatrix matrix_;
};

/// Post-processing: E(a) = sum_x mu_x(a) F(x). The result lives on mu.to().
Observable apply_kernel(const Observable& f, const MarkovKernel& mu);

/// Decides whether E is a fuzzy version of F by linear feasibility over
/// kernel entries. Returns a witness kernel or nullopt when infeasible.
std::optional<MarkovKernel> find_fuzzy_kernel(const Observable& e, const Observable& f,
                                              const Tolerance& tol = {},
                                              double slack = kDefaultFeasibilitySlack);

/// Detects a deterministic kernel: returns the relabeling iff every row has a
/// single entry >= 1 - eps_eq.
std::optional<Relabeling> is_relabeling(const MarkovKernel& mu, const Tolerance& tol = {});

/// E(a) = F(Phi^{-1}(a)); equal to apply_kernel with the Dirac kernel of Phi.
Observable relabel(const Observable& f, const Relabeling& phi);

/// The covariant kernel on Z_n: matrix[x][a] = nu(x - a mod n). Applying it
/// to the sharp position observable yields convolution_observable(m).
MarkovKernel convolution_kernel(const CyclicMeasure& m);

enum class FuzzyVerdict { NotFuzzy, Fuzzy, Unknown };

struct FuzzyClassification {
  FuzzyVerdict verdict = FuzzyVerdict::Unknown;
  /// For Fuzzy verdicts: a parent observable and the kernel taking it to E,
  /// witnessing that E is a strictly fuzzy version of the parent.
  std::optional<Observable> parent;
  std::optional<MarkovKernel> kernel;
  std::string reason;
};

/// Sharp observables are classified exactly (not fuzzy iff the generated
/// algebra is maximal abelian). A commutative non-sharp observable is tested
/// against the sharp observable of its spectral representation; when that
/// parent cannot be recovered from E by any kernel, E is strictly fuzzy.
/// Everything else is Unknown.
FuzzyClassification classify_fuzzy(const Observable& e, const Tolerance& tol = {});

}  // namespace povmlab
