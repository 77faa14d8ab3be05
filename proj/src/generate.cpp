#include "povmlab/generate.hpp"

#include <cmath>
#include <numbers>

namespace povmlab {

std::size_t Rng::uniform_index(std::size_t lo, std::size_t hi) {
  if (hi < lo) throw Error("uniform_index: empty range");
  const std::size_t span = hi - lo + 1;
  return lo + static_cast<std::size_t>(uniform() * static_cast<double>(span)) % span;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  do {
    u = uniform();
  } while (u <= 0.0);
  const double v = uniform();
  const double r = std::sqrt(-2.0 * std::log(u));
  const double theta = 2.0 * std::numbers::pi * v;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng) {
  if (dim <= 0) throw Error("random_unitary: dimension must be positive");
  ComplexMatrix g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
  // Gram-Schmidt column by column; re-draws are unnecessary at double
  // precision for the dimensions in play.
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index k = 0; k < j; ++k) g.col(j) -= g.col(k).dot(g.col(j)) * g.col(k);
    g.col(j) /= g.col(j).norm();
  }
  return g;
}

SharpObservable random_sharp(Eigen::Index dim, std::size_t outcomes, Rng& rng) {
  if (outcomes == 0 || outcomes > static_cast<std::size_t>(dim))
    throw Error("random_sharp: need 1 <= outcomes <= dim");
  const ComplexMatrix u = random_unitary(dim, rng);

  // Random composition of dim into `outcomes` positive parts.
  std::vector<std::size_t> sizes(outcomes, 1);
  for (std::size_t extra = static_cast<std::size_t>(dim) - outcomes; extra > 0; --extra)
    ++sizes[rng.uniform_index(0, outcomes - 1)];

  std::vector<ComplexMatrix> effects;
  effects.reserve(outcomes);
  Eigen::Index col = 0;
  for (std::size_t x = 0; x < outcomes; ++x) {
    const auto block = u.middleCols(col, static_cast<Eigen::Index>(sizes[x]));
    effects.push_back(hermitian_part(block * block.adjoint()));
    col += static_cast<Eigen::Index>(sizes[x]);
  }
  return SharpObservable(Observable(OutcomeSet::indexed(outcomes), std::move(effects)));
}

ProbabilityVector random_probability_vector(const OutcomeSet& outcomes, Rng& rng) {
  RealVector w(static_cast<Eigen::Index>(outcomes.size()));
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    double u = 0.0;
    do {
      u = rng.uniform();
    } while (u <= 0.0);
    w[i] = -std::log(u);
  }
  w /= w.sum();
  return ProbabilityVector(outcomes, std::move(w));
}

MarkovKernel random_kernel(const OutcomeSet& from, const OutcomeSet& to, Rng& rng) {
  RealMatrix m(from.size(), to.size());
  for (std::size_t x = 0; x < from.size(); ++x)
    m.row(static_cast<Eigen::Index>(x)) =
        random_probability_vector(to, rng).weights().transpose();
  return MarkovKernel(from, to, std::move(m));
}

State random_state(Eigen::Index dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return State(hermitian_part(rho));
}

Observable smeared_qubit(double t) {
  if (t < 0.0 || t > 1.0) throw Error("smeared_qubit: t must lie in [0,1]");
  ComplexMatrix plus = ComplexMatrix::Zero(2, 2);
  plus(0, 0) = 0.5 * (1.0 + t);
  plus(1, 1) = 0.5 * (1.0 - t);
  ComplexMatrix minus = ComplexMatrix::Identity(2, 2) - plus;
  return Observable(OutcomeSet({"0", "1"}), {std::move(plus), std::move(minus)});
}

Observable coin() {
  const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
  return Observable(OutcomeSet({"0", "1"}), {half, half});
}

SharpObservable pauli_z_observable() {
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  ComplexMatrix p1 = ComplexMatrix::Zero(2, 2);
  p1(1, 1) = 1.0;
  return SharpObservable(Observable(OutcomeSet({"0", "1"}), {std::move(p0), std::move(p1)}));
}

SharpObservable pauli_x_observable() {
  ComplexMatrix p0(2, 2);
  p0 << 0.5, 0.5, 0.5, 0.5;
  ComplexMatrix p1(2, 2);
  p1 << 0.5, -0.5, -0.5, 0.5;
  return SharpObservable(Observable(OutcomeSet({"0", "1"}), {std::move(p0), std::move(p1)}));
}

Observable trine_qubit() {
  std::vector<ComplexMatrix> effects;
  for (int k = 0; k < 3; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / 3.0;
    // (I + cos(angle) sigma_z + sin(angle) sigma_x) / 3
    ComplexMatrix e(2, 2);
    e(0, 0) = (1.0 + std::cos(angle)) / 3.0;
    e(1, 1) = (1.0 - std::cos(angle)) / 3.0;
    e(0, 1) = std::sin(angle) / 3.0;
    e(1, 0) = std::sin(angle) / 3.0;
    effects.push_back(std::move(e));
  }
  return Observable(OutcomeSet({"0", "1", "2"}), std::move(effects));
}

SharpObservable position_observable(std::size_t n) {
  std::vector<ComplexMatrix> effects;
  effects.reserve(n);
  for (std::size_t x = 0; x < n; ++x) {
    ComplexMatrix e = ComplexMatrix::Zero(static_cast<Eigen::Index>(n),
                                          static_cast<Eigen::Index>(n));
    e(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = 1.0;
    effects.push_back(std::move(e));
  }
  return SharpObservable(Observable(OutcomeSet::indexed(n), std::move(effects)));
}

}  // namespace povmlab
