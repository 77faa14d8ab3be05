#pragma once

#include <vector>

#include "povmlab/fuzzy.hpp"
#include "povmlab/generate.hpp"
#include "povmlab/observable.hpp"
#include "povmlab/types.hpp"

namespace povmlab::testing {

inline ComplexMatrix sigma_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix sigma_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline ComplexMatrix sigma_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline double max_effect_diff(const Observable& a, const Observable& b) {
  double worst = 0.0;
  for (std::size_t x = 0; x < a.num_outcomes(); ++x)
    worst = std::max(worst, max_abs(ComplexMatrix(a.effect(x) - b.effect(x))));
  return worst;
}

/// E = apply_kernel(F, kernel) for a seeded sharp F; the workhorse instance
/// family for round-trip style properties.
struct FuzzyInstance {
  SharpObservable sharp;
  MarkovKernel kernel;
  Observable observable;
};

inline FuzzyInstance random_fuzzy_instance(std::uint64_t seed, Eigen::Index max_dim = 16,
                                           std::size_t max_outcomes = 8) {
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + 1);
  const Eigen::Index dim = static_cast<Eigen::Index>(rng.uniform_index(2, static_cast<std::size_t>(max_dim)));
  const std::size_t parent_outcomes =
      rng.uniform_index(2, std::min<std::size_t>(static_cast<std::size_t>(dim), max_outcomes));
  const std::size_t target_outcomes = rng.uniform_index(2, max_outcomes);
  SharpObservable f = random_sharp(dim, parent_outcomes, rng);
  MarkovKernel kernel = random_kernel(f.outcomes(), OutcomeSet::indexed(target_outcomes), rng);
  Observable e = apply_kernel(f, kernel);
  return {std::move(f), std::move(kernel), std::move(e)};
}

}  // namespace povmlab::testing
