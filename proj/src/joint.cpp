#include "povmlab/joint.hpp"

#include <algorithm>
#include <cmath>

#include "povmlab/linalg.hpp"
#include "povmlab/representation.hpp"

namespace povmlab {

namespace {

std::vector<std::string> product_labels(const OutcomeSet& first, const OutcomeSet& second) {
  for (const OutcomeSet* set : {&first, &second})
    for (const std::string& label : set->labels())
      if (label.find('|') != std::string::npos)
        throw Error("product outcome labels reserve '|', got '" + label + "'");
  std::vector<std::string> labels;
  labels.reserve(first.size() * second.size());
  for (const std::string& a : first.labels())
    for (const std::string& b : second.labels()) labels.push_back(a + "|" + b);
  return labels;
}

}  // namespace

ProductOutcomeSet::ProductOutcomeSet(OutcomeSet first_, OutcomeSet second_)
    : first(std::move(first_)), second(std::move(second_)) {
  product_labels(first, second);  // validates the reserved separator
}

OutcomeSet ProductOutcomeSet::flat() const { return OutcomeSet(product_labels(first, second)); }

ProductOutcomeSet ProductOutcomeSet::parse(const OutcomeSet& flat) {
  std::vector<std::string> first;
  std::vector<std::string> second;
  for (const std::string& label : flat.labels()) {
    const auto cut = label.find('|');
    if (cut == std::string::npos || label.find('|', cut + 1) != std::string::npos)
      throw NotProductStructured("outcome '" + label + "' is not of the form a|b");
    const std::string a = label.substr(0, cut);
    const std::string b = label.substr(cut + 1);
    if (first.empty() || first.back() != a) {
      if (std::find(first.begin(), first.end(), a) != first.end())
        throw NotProductStructured("outcome labels are not in row-major product order");
      first.push_back(a);
    }
    if (first.size() == 1) {
      second.push_back(b);
    }
  }
  ProductOutcomeSet product{OutcomeSet(std::move(first)), OutcomeSet(std::move(second))};
  if (!(product.flat() == flat))
    throw NotProductStructured("outcome labels do not form a full row-major product grid");
  return product;
}

std::pair<Observable, Observable> marginals(const Observable& g) {
  const ProductOutcomeSet product = ProductOutcomeSet::parse(g.outcomes());
  const Eigen::Index d = g.dim();
  std::vector<ComplexMatrix> first(product.first.size(), ComplexMatrix::Zero(d, d));
  std::vector<ComplexMatrix> second(product.second.size(), ComplexMatrix::Zero(d, d));
  for (std::size_t a = 0; a < product.first.size(); ++a)
    for (std::size_t b = 0; b < product.second.size(); ++b) {
      const ComplexMatrix& effect = g.effect(product.index(a, b));
      first[a] += effect;
      second[b] += effect;
    }
  return {Observable(product.first, std::move(first)),
          Observable(product.second, std::move(second))};
}

Observable product_joint(const Observable& g, const MarkovKernel& mu, const MarkovKernel& nu) {
  if (!(mu.from() == g.outcomes()) || !(nu.from() == g.outcomes()))
    throw OutcomeMismatch("product_joint: kernel sources must match the observable outcomes");
  const ProductOutcomeSet product{mu.to(), nu.to()};
  const Eigen::Index d = g.dim();
  std::vector<ComplexMatrix> effects(product.size(), ComplexMatrix::Zero(d, d));
  for (std::size_t x = 0; x < g.num_outcomes(); ++x) {
    const Eigen::Index xi = static_cast<Eigen::Index>(x);
    for (std::size_t a = 0; a < mu.to().size(); ++a)
      for (std::size_t b = 0; b < nu.to().size(); ++b) {
        const double lambda = mu.matrix()(xi, static_cast<Eigen::Index>(a)) *
                              nu.matrix()(xi, static_cast<Eigen::Index>(b));
        if (lambda != 0.0) effects[product.index(a, b)] += lambda * g.effect(x);
      }
  }
  return Observable(product.flat(), std::move(effects));
}

std::optional<Observable> joint_for_commuting_pair(const Observable& e1, const Observable& e2,
                                                   const Tolerance& tol) {
  if (e1.dim() != e2.dim())
    throw DimensionMismatch("joint_for_commuting_pair: observables act on different spaces");

  std::vector<ComplexMatrix> family = e1.effects();
  family.insert(family.end(), e2.effects().begin(), e2.effects().end());
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (max_abs(ComplexMatrix(family[i] * family[j] - family[j] * family[i])) > tol.eps_eq)
        return std::nullopt;  // not decided

  const JointEigenstructure eig = joint_eigenstructure(family, tol);
  const std::size_t m1 = e1.num_outcomes();
  const std::size_t m2 = e2.num_outcomes();
  const ProductOutcomeSet product{e1.outcomes(), e2.outcomes()};
  const Eigen::Index d = e1.dim();

  std::vector<ComplexMatrix> effects(product.size(), ComplexMatrix::Zero(d, d));
  for (std::size_t k = 0; k < eig.projections.size(); ++k) {
    const auto& values = eig.cluster_values[k];
    for (std::size_t a = 0; a < m1; ++a) {
      const double mu = std::clamp(values[a], 0.0, 1.0);
      if (mu == 0.0) continue;
      for (std::size_t b = 0; b < m2; ++b) {
        const double nu = std::clamp(values[m1 + b], 0.0, 1.0);
        if (nu != 0.0) effects[product.index(a, b)] += (mu * nu) * eig.projections[k];
      }
    }
  }
  return Observable(product.flat(), std::move(effects));
}

bool verify_joint(const Observable& g, const Observable& e1, const Observable& e2,
                  const Tolerance& tol) {
  const auto [m1, m2] = marginals(g);
  if (!(m1.outcomes() == e1.outcomes()) || !(m2.outcomes() == e2.outcomes()) ||
      m1.dim() != e1.dim() || m2.dim() != e2.dim())
    return false;
  double worst = 0.0;
  for (std::size_t a = 0; a < e1.num_outcomes(); ++a)
    worst = std::max(worst, max_abs(ComplexMatrix(m1.effect(a) - e1.effect(a))));
  for (std::size_t b = 0; b < e2.num_outcomes(); ++b)
    worst = std::max(worst, max_abs(ComplexMatrix(m2.effect(b) - e2.effect(b))));
  return worst <= 10.0 * tol.eps_eq;
}

}  // namespace povmlab
