#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "povmlab/feasibility.hpp"
#include "povmlab/fuzzy.hpp"
#include "povmlab/generate.hpp"
#include "povmlab/joint.hpp"
#include "povmlab/linalg.hpp"
#include "povmlab/observable.hpp"
#include "povmlab/representation.hpp"

namespace py = pybind11;
using namespace povmlab;

namespace {

std::vector<ComplexMatrix> projections_of(const SpectralRep& rep) { return rep.projections; }

std::vector<RealVector> rows_of(const SpectralRep& rep) {
  std::vector<RealVector> rows;
  rows.reserve(rep.rows.size());
  for (const ProbabilityVector& row : rep.rows) rows.push_back(row.weights());
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite-outcome POVM toolkit: representations of commutative observables, "
            "fuzzy versions via Markov kernels, and joint observables";

  py::register_exception<Error>(m, "PovmError");

  py::class_<Tolerance>(m, "Tolerance")
      .def(py::init<>())
      .def_readwrite("eps_herm", &Tolerance::eps_herm)
      .def_readwrite("eps_psd", &Tolerance::eps_psd)
      .def_readwrite("eps_eig_cluster", &Tolerance::eps_eig_cluster)
      .def_readwrite("eps_eq", &Tolerance::eps_eq);

  py::class_<OutcomeSet>(m, "OutcomeSet")
      .def(py::init<std::vector<std::string>>())
      .def_static("indexed", &OutcomeSet::indexed)
      .def_property_readonly("labels", &OutcomeSet::labels)
      .def("__len__", &OutcomeSet::size)
      .def("__eq__", [](const OutcomeSet& a, const OutcomeSet& b) { return a == b; });

  py::class_<Observable>(m, "Observable")
      .def(py::init<OutcomeSet, std::vector<ComplexMatrix>>(), py::arg("outcomes"),
           py::arg("effects"))
      .def(py::init([](const std::vector<std::string>& labels,
                       const std::vector<ComplexMatrix>& effects) {
             return Observable(OutcomeSet(labels), effects);
           }),
           py::arg("labels"), py::arg("effects"))
      .def_property_readonly("outcomes", &Observable::outcomes)
      .def_property_readonly("dim", &Observable::dim)
      .def_property_readonly("effects", &Observable::effects)
      .def("effect", [](const Observable& e, std::size_t i) { return e.effect(i); });

  py::class_<SharpObservable, Observable>(m, "SharpObservable")
      .def(py::init<Observable, const Tolerance&>(), py::arg("observable"),
           py::arg("tol") = Tolerance{});

  py::class_<State>(m, "State")
      .def(py::init<ComplexMatrix, const Tolerance&>(), py::arg("density"),
           py::arg("tol") = Tolerance{})
      .def_static("pure", &State::pure, py::arg("amplitudes"), py::arg("tol") = Tolerance{})
      .def_static("maximally_mixed", &State::maximally_mixed)
      .def_property_readonly("matrix", &State::matrix);

  py::class_<ProbabilityVector>(m, "ProbabilityVector")
      .def_property_readonly("outcomes", &ProbabilityVector::outcomes)
      .def_property_readonly("weights", &ProbabilityVector::weights);

  py::class_<ValidationIssue>(m, "ValidationIssue")
      .def_readonly("invariant", &ValidationIssue::invariant)
      .def_readonly("magnitude", &ValidationIssue::magnitude)
      .def_readonly("detail", &ValidationIssue::detail);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("issues", &ValidationReport::issues)
      .def("ok", &ValidationReport::ok);

  m.def("validate", &validate, py::arg("observable"), py::arg("tol") = Tolerance{});
  m.def("outcome_distribution",
        [](const Observable& e, const State& t, const Tolerance& tol) {
          return outcome_distribution(e, t, tol).weights();
        },
        py::arg("observable"), py::arg("state"), py::arg("tol") = Tolerance{});
  m.def("effect_of_subset", &effect_of_subset, py::arg("observable"), py::arg("subset"));
  m.def("is_commutative",
        [](const Observable& e, const Tolerance& tol) {
          const auto check = is_commutative(e, tol);
          return py::make_tuple(check.commutative, check.max_commutator);
        },
        py::arg("observable"), py::arg("tol") = Tolerance{});
  m.def("is_sharp", &is_sharp, py::arg("observable"), py::arg("tol") = Tolerance{});
  m.def("is_maximally_commutative", &is_maximally_commutative, py::arg("observable"),
        py::arg("tol") = Tolerance{});

  py::class_<SpectralRep>(m, "SpectralRep")
      .def_property_readonly("outcomes",
                             [](const SpectralRep& rep) { return rep.source_outcomes; })
      .def_property_readonly("projections", &projections_of)
      .def_property_readonly("rows", &rows_of)
      .def("__len__", &SpectralRep::size);

  py::class_<MixtureDecomposition>(m, "MixtureDecomposition")
      .def_readonly("weights", &MixtureDecomposition::weights)
      .def_readonly("components", &MixtureDecomposition::components)
      .def_property_readonly("outcomes",
                             [](const MixtureDecomposition& dec) { return dec.outcomes; });

  m.def("spectral_representation", &spectral_representation, py::arg("observable"),
        py::arg("tol") = Tolerance{});
  m.def("reconstruct_spectral", &reconstruct_spectral);
  m.def("cluster_observable", &cluster_observable, py::arg("rep"), py::arg("tol") = Tolerance{});
  m.def("mixture_decomposition", &mixture_decomposition, py::arg("rep"),
        py::arg("tol") = Tolerance{});
  m.def("reconstruct_mixture", &reconstruct_mixture);
  m.def("component_observable", &component_observable, py::arg("decomposition"), py::arg("rep"),
        py::arg("j"), py::arg("tol") = Tolerance{});

  py::class_<CyclicMeasure>(m, "CyclicMeasure")
      .def(py::init<RealVector, const Tolerance&>(), py::arg("weights"),
           py::arg("tol") = Tolerance{})
      .def_property_readonly("order", &CyclicMeasure::order)
      .def_property_readonly("weights",
                             [](const CyclicMeasure& m_) { return m_.weights.weights(); });

  m.def("convolution_observable", &convolution_observable);
  m.def("convolution_kernel", &convolution_kernel);

  py::class_<Relabeling>(m, "Relabeling")
      .def(py::init<OutcomeSet, OutcomeSet, std::vector<std::size_t>>(), py::arg("from_set"),
           py::arg("to_set"), py::arg("map"))
      .def_readonly("map", &Relabeling::map)
      .def_property_readonly("from_set", [](const Relabeling& phi) { return phi.from; })
      .def_property_readonly("to_set", [](const Relabeling& phi) { return phi.to; });

  py::class_<MarkovKernel>(m, "MarkovKernel")
      .def(py::init<OutcomeSet, OutcomeSet, RealMatrix, const Tolerance&>(), py::arg("from_set"),
           py::arg("to_set"), py::arg("matrix"), py::arg("tol") = Tolerance{})
      .def_static("identity", &MarkovKernel::identity)
      .def_static("dirac", &MarkovKernel::dirac)
      .def_property_readonly("from_set", &MarkovKernel::from)
      .def_property_readonly("to_set", &MarkovKernel::to)
      .def_property_readonly("matrix", &MarkovKernel::matrix)
      .def("then", &MarkovKernel::then);

  m.def("apply_kernel", &apply_kernel, py::arg("observable"), py::arg("kernel"));
  m.def("find_fuzzy_kernel", &find_fuzzy_kernel, py::arg("e"), py::arg("f"),
        py::arg("tol") = Tolerance{}, py::arg("slack") = kDefaultFeasibilitySlack);
  m.def("is_relabeling", &is_relabeling, py::arg("kernel"), py::arg("tol") = Tolerance{});
  m.def("relabel", &relabel, py::arg("observable"), py::arg("phi"));

  py::enum_<FuzzyVerdict>(m, "FuzzyVerdict")
      .value("NotFuzzy", FuzzyVerdict::NotFuzzy)
      .value("Fuzzy", FuzzyVerdict::Fuzzy)
      .value("Unknown", FuzzyVerdict::Unknown);

  py::class_<FuzzyClassification>(m, "FuzzyClassification")
      .def_readonly("verdict", &FuzzyClassification::verdict)
      .def_readonly("parent", &FuzzyClassification::parent)
      .def_readonly("kernel", &FuzzyClassification::kernel)
      .def_readonly("reason", &FuzzyClassification::reason);

  m.def("classify_fuzzy", &classify_fuzzy, py::arg("observable"), py::arg("tol") = Tolerance{});

  m.def("marginals", &marginals);
  m.def("product_joint", &product_joint, py::arg("observable"), py::arg("mu"), py::arg("nu"));
  m.def("joint_for_commuting_pair", &joint_for_commuting_pair, py::arg("e1"), py::arg("e2"),
        py::arg("tol") = Tolerance{});
  m.def("verify_joint", &verify_joint, py::arg("joint"), py::arg("e1"), py::arg("e2"),
        py::arg("tol") = Tolerance{});

  py::class_<Rng>(m, "Rng").def(py::init<std::uint64_t>());
  m.def("random_unitary", &random_unitary);
  m.def("random_sharp", &random_sharp);
  m.def("random_kernel", &random_kernel);
  m.def("random_state", &random_state);
  m.def("smeared_qubit", &smeared_qubit);
  m.def("coin", &coin);
  m.def("pauli_z_observable", &pauli_z_observable);
  m.def("pauli_x_observable", &pauli_x_observable);
  m.def("trine_qubit", &trine_qubit);
  m.def("position_observable", &position_observable);

  py::class_<HermitianEig>(m, "HermitianEig")
      .def_readonly("values", &HermitianEig::values)
      .def_readonly("vectors", &HermitianEig::vectors);
  m.def("hermitian_eig", &hermitian_eig, py::arg("matrix"), py::arg("tol") = Tolerance{});

  py::class_<Commutant>(m, "Commutant")
      .def_readonly("dimension", &Commutant::dimension)
      .def_readonly("basis", &Commutant::basis);
  m.def("commutant_basis", &commutant_basis, py::arg("ops"), py::arg("tol") = Tolerance{});
}
