#pragma once

#include <cstdint>
#include <random>

#include "povmlab/fuzzy.hpp"
#include "povmlab/observable.hpp"
#include "povmlab/types.hpp"

namespace povmlab {

/// Seeded random source with platform-independent output: mt19937_64 words
/// mapped to doubles directly, Gaussian variates via Box-Muller. The standard
/// distribution adaptors are avoided because their streams are
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi].
  std::size_t uniform_index(std::size_t lo, std::size_t hi);

  double gaussian();

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-like random unitary: orthonormalization of a complex Gaussian matrix.
ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng);

/// Random sharp observable: a random unitary's columns partitioned into
/// `outcomes` nonempty groups of projectors.
SharpObservable random_sharp(Eigen::Index dim, std::size_t outcomes, Rng& rng);

/// Rows drawn uniformly from the probability simplex.
MarkovKernel random_kernel(const OutcomeSet& from, const OutcomeSet& to, Rng& rng);

ProbabilityVector random_probability_vector(const OutcomeSet& outcomes, Rng& rng);

/// Random density operator (normalized Wishart-like form G G* / tr).
State random_state(Eigen::Index dim, Rng& rng);

/// Two-outcome qubit observable {(I + t sigma_z)/2, (I - t sigma_z)/2}.
Observable smeared_qubit(double t);

/// {I/2, I/2} on the qubit.
Observable coin();

/// Sharp spin-z observable on the qubit: projections onto the z basis.
SharpObservable pauli_z_observable();

/// Sharp spin-x observable on the qubit.
SharpObservable pauli_x_observable();

/// Three coplanar unit vectors at 120 degrees: the noncommutative trine.
Observable trine_qubit();

/// Sharp position observable on Z_n (coordinate projectors).
SharpObservable position_observable(std::size_t n);

}  // namespace povmlab
