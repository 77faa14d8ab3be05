#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace povmlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Absolute thresholds on operator entries and eigenvalues. The defaults sit
/// two orders of magnitude above double-precision accumulation error at the
/// matrix sizes this library targets (d <= a few hundred).
struct Tolerance {
  double eps_herm = 1e-9;         // max |A - A*| entry for "Hermitian"
  double eps_psd = 1e-9;          // eigenvalue floor for "positive"
  double eps_eig_cluster = 1e-8;  // eigenvalue clustering / rank decisions
  double eps_eq = 1e-9;           // entrywise operator equality
};

/// Slack used when deciding linear feasibility of kernel equations. Looser
/// than eps_eq because the encoding stacks O(d^2) floating-point equalities.
inline constexpr double kDefaultFeasibilitySlack = 1e-7;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class NotCommutingFamily : public Error {
 public:
  NotCommutingFamily(std::size_t first, std::size_t second, double commutator_norm)
      : Error("matrices " + std::to_string(first) + " and " + std::to_string(second) +
              " do not commute (max commutator entry " + std::to_string(commutator_norm) + ")"),
        first_index(first),
        second_index(second),
        norm(commutator_norm) {}

  std::size_t first_index;
  std::size_t second_index;
  double norm;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownLabel : public Error {
 public:
  using Error::Error;
};

class NotCommutative : public Error {
 public:
  explicit NotCommutative(double commutator_norm)
      : Error("observable is not commutative (max commutator entry " +
              std::to_string(commutator_norm) + ")"),
        norm(commutator_norm) {}

  double norm;
};

class ClusterAmbiguity : public Error {
 public:
  using Error::Error;
};

class IndexMismatch : public Error {
 public:
  using Error::Error;
};

class OutcomeMismatch : public Error {
 public:
  using Error::Error;
};

class NotProductStructured : public Error {
 public:
  using Error::Error;
};

class NumericalBreakdown : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Largest entry magnitude, the norm used for all entrywise comparisons.
inline double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline double max_abs(const RealMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline bool all_finite(const ComplexMatrix& a) { return a.allFinite(); }

inline double hermiticity_defect(const ComplexMatrix& a) {
  return max_abs(ComplexMatrix(a - a.adjoint()));
}

inline ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  return 0.5 * (a + a.adjoint());
}

inline void require_finite(const ComplexMatrix& a, const char* what) {
  if (!a.allFinite()) throw Error(std::string(what) + ": non-finite entries");
}

inline void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols())
    throw ShapeMismatch(std::string(what) + ": expected square matrix, got " +
                        std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

}  // namespace povmlab
