#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "povmlab/fuzzy.hpp"
#include "povmlab/generate.hpp"
#include "povmlab/io.hpp"
#include "povmlab/joint.hpp"
#include "povmlab/observable.hpp"
#include "povmlab/representation.hpp"

namespace {

using nlohmann::json;
using namespace povmlab;

constexpr int kExitOk = 0;
constexpr int kExitNo = 1;      // domain verdict "no": invalid, infeasible, not commutative
constexpr int kExitUsage = 2;   // parse or usage errors

struct RunConfig {
  Tolerance tol;
  double slack = kDefaultFeasibilitySlack;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
};

void add_common_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--tol-eq", cfg.tol.eps_eq, "entrywise equality tolerance");
  cmd->add_option("--tol-psd", cfg.tol.eps_psd, "positive semidefiniteness tolerance");
  cmd->add_option("--tol-cluster", cfg.tol.eps_eig_cluster, "eigenvalue clustering resolution");
  cmd->add_option("--tol-herm", cfg.tol.eps_herm, "hermiticity tolerance");
  cmd->add_option("--slack", cfg.slack, "feasibility slack for kernel equations");
  cmd->add_option("--seed", cfg.seed, "seed for generators");
  cmd->add_option("--format", cfg.format, "output format: json | text")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--out", cfg.out, "output path (default: stdout)");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError("cannot parse '" + path + "': " + e.what());
  }
  return doc;
}

void emit(const RunConfig& cfg, const std::string& payload) {
  if (cfg.out.empty()) {
    std::cout << payload << "\n";
    return;
  }
  std::ofstream out(cfg.out);
  if (!out) throw Error("cannot write '" + cfg.out + "'");
  out << payload << "\n";
}

int cmd_validate(const RunConfig& cfg, const std::string& file) {
  const Observable e = observable_from_json(read_json_file(file));
  const ValidationReport report = validate(e, cfg.tol);
  if (cfg.format == "json") {
    json out;
    out["valid"] = report.ok();
    out["issues"] = json::array();
    for (const ValidationIssue& issue : report.issues)
      out["issues"].push_back(
          {{"invariant", issue.invariant}, {"magnitude", issue.magnitude}, {"detail", issue.detail}});
    emit(cfg, out.dump(2));
  } else {
    std::ostringstream text;
    text << (report.ok() ? "valid" : "invalid");
    for (const ValidationIssue& issue : report.issues) text << "\n  " << issue.detail;
    emit(cfg, text.str());
  }
  return report.ok() ? kExitOk : kExitNo;
}

double reconstruction_residual(const Observable& a, const Observable& b) {
  double worst = 0.0;
  for (std::size_t x = 0; x < a.num_outcomes(); ++x)
    worst = std::max(worst, max_abs(ComplexMatrix(a.effect(x) - b.effect(x))));
  return worst;
}

int cmd_represent(const RunConfig& cfg, const std::string& file) {
  const Observable e = observable_from_json(read_json_file(file));
  const auto commutativity = is_commutative(e, cfg.tol);
  if (!commutativity.commutative) {
    std::cerr << "not commutative: max commutator entry " << commutativity.max_commutator << "\n";
    return kExitNo;
  }
  const SpectralRep rep = spectral_representation(e, cfg.tol);
  const MixtureDecomposition dec = mixture_decomposition(rep, cfg.tol);

  json out;
  out["schema_version"] = "1";
  out["spectral"] = spectral_rep_to_json(rep);
  out["mixture"] = mixture_to_json(dec);
  out["residuals"] = {{"spectral", reconstruction_residual(reconstruct_spectral(rep), e)},
                      {"mixture", reconstruction_residual(reconstruct_mixture(dec, rep), e)}};
  if (cfg.format == "json") {
    emit(cfg, out.dump(2));
  } else {
    std::ostringstream text;
    text << rep.size() << " projections over " << e.num_outcomes() << " outcomes\n";
    for (std::size_t k = 0; k < rep.size(); ++k) {
      text << "row " << k << ":";
      for (Eigen::Index i = 0; i < rep.rows[k].weights().size(); ++i)
        text << " " << rep.rows[k].weights()[i];
      text << "\n";
    }
    text << "mixture weights:";
    for (Eigen::Index j = 0; j < dec.weights.size(); ++j) text << " " << dec.weights[j];
    text << "\nresiduals: spectral " << out["residuals"]["spectral"].get<double>() << ", mixture "
         << out["residuals"]["mixture"].get<double>();
    emit(cfg, text.str());
  }
  return kExitOk;
}

int cmd_fuzzy(const RunConfig& cfg, const std::string& e_file, const std::string& f_file) {
  const Observable e = observable_from_json(read_json_file(e_file));
  const Observable f = observable_from_json(read_json_file(f_file));
  if (e.dim() != f.dim()) {
    std::cerr << "dimension mismatch: " << e.dim() << " vs " << f.dim() << "\n";
    return kExitUsage;
  }
  const std::optional<MarkovKernel> kernel = find_fuzzy_kernel(e, f, cfg.tol, cfg.slack);
  if (!kernel) {
    emit(cfg, cfg.format == "json" ? json{{"verdict", "infeasible"}}.dump(2)
                                   : std::string("infeasible"));
    return kExitNo;
  }

  // Flag deterministic kernels. The solver's vertex may smear rows attached
  // to zero effects, so also try rounding to the nearest relabeling and keep
  // it when it still reproduces E.
  std::optional<Relabeling> phi = is_relabeling(*kernel, cfg.tol);
  MarkovKernel reported = *kernel;
  if (!phi) {
    RealMatrix rounded = RealMatrix::Zero(kernel->matrix().rows(), kernel->matrix().cols());
    for (Eigen::Index x = 0; x < rounded.rows(); ++x) {
      Eigen::Index best = 0;
      kernel->matrix().row(x).maxCoeff(&best);
      rounded(x, best) = 1.0;
    }
    MarkovKernel candidate(kernel->from(), kernel->to(), std::move(rounded), cfg.tol);
    if (reconstruction_residual(apply_kernel(f, candidate), e) <= 2.0 * cfg.slack) {
      reported = candidate;
      phi = is_relabeling(candidate, cfg.tol);
    }
  }

  if (cfg.format == "json") {
    json out;
    out["verdict"] = "feasible";
    out["kernel"] = kernel_to_json(reported);
    if (phi) {
      json map = json::object();
      for (std::size_t x = 0; x < phi->from.size(); ++x)
        map[phi->from.label(x)] = phi->to.label(phi->map[x]);
      out["relabeling"] = std::move(map);
    }
    emit(cfg, out.dump(2));
  } else {
    std::ostringstream text;
    text << "feasible";
    if (phi) {
      text << "\nrelabeling:";
      for (std::size_t x = 0; x < phi->from.size(); ++x)
        text << " " << phi->from.label(x) << "->" << phi->to.label(phi->map[x]);
    }
    for (Eigen::Index x = 0; x < reported.matrix().rows(); ++x) {
      text << "\nrow " << reported.from().label(static_cast<std::size_t>(x)) << ":";
      for (Eigen::Index a = 0; a < reported.matrix().cols(); ++a)
        text << " " << reported.matrix()(x, a);
    }
    emit(cfg, text.str());
  }
  return kExitOk;
}

int cmd_joint(const RunConfig& cfg, const std::string& e1_file, const std::string& e2_file) {
  const Observable e1 = observable_from_json(read_json_file(e1_file));
  const Observable e2 = observable_from_json(read_json_file(e2_file));
  if (e1.dim() != e2.dim()) {
    std::cerr << "dimension mismatch: " << e1.dim() << " vs " << e2.dim() << "\n";
    return kExitUsage;
  }
  const std::optional<Observable> joint = joint_for_commuting_pair(e1, e2, cfg.tol);
  if (!joint) {
    emit(cfg, cfg.format == "json" ? json{{"verdict", "not decided"}}.dump(2)
                                   : std::string("not decided"));
    return kExitNo;
  }
  const auto [m1, m2] = marginals(*joint);
  const double residual =
      std::max(reconstruction_residual(m1, e1), reconstruction_residual(m2, e2));
  json out = observable_to_json(*joint, {{"kind", "joint"}});
  out["metadata"]["marginal_residual"] = std::to_string(residual);
  emit(cfg, out.dump(2));
  return kExitOk;
}

int cmd_gen(const RunConfig& cfg, const std::string& kind, Eigen::Index dim,
            std::size_t outcomes, std::size_t parent_outcomes, double t,
            std::vector<double> nu) {
  Rng rng(cfg.seed);
  json out;
  if (kind == "coin") {
    out = observable_to_json(coin(), {{"kind", "coin"}});
  } else if (kind == "smeared-qubit") {
    if (t < 0.0 || t > 1.0) {
      std::cerr << "smeared-qubit: t must lie in [0,1]\n";
      return kExitUsage;
    }
    out = observable_to_json(smeared_qubit(t), {{"kind", "smeared-qubit"}, {"t", std::to_string(t)}});
  } else if (kind == "sharp") {
    if (dim < 1 || outcomes < 1 || outcomes > static_cast<std::size_t>(dim)) {
      std::cerr << "sharp: need 1 <= outcomes <= dim\n";
      return kExitUsage;
    }
    out = observable_to_json(random_sharp(dim, outcomes, rng), {{"kind", "sharp"}});
  } else if (kind == "convolution") {
    if (nu.empty()) {
      std::cerr << "convolution: --nu is required\n";
      return kExitUsage;
    }
    RealVector weights(static_cast<Eigen::Index>(nu.size()));
    for (std::size_t i = 0; i < nu.size(); ++i) weights[static_cast<Eigen::Index>(i)] = nu[i];
    try {
      const CyclicMeasure measure(std::move(weights), cfg.tol);
      out = observable_to_json(convolution_observable(measure), {{"kind", "convolution"}});
    } catch (const Error& e) {
      std::cerr << "convolution: " << e.what() << "\n";
      return kExitUsage;
    }
  } else if (kind == "random-fuzzy") {
    if (dim < 1 || outcomes < 1) {
      std::cerr << "random-fuzzy: need positive dim and outcomes\n";
      return kExitUsage;
    }
    if (parent_outcomes == 0)
      parent_outcomes = std::min<std::size_t>(static_cast<std::size_t>(dim), outcomes);
    if (parent_outcomes > static_cast<std::size_t>(dim)) {
      std::cerr << "random-fuzzy: parent outcomes cannot exceed dim\n";
      return kExitUsage;
    }
    const SharpObservable f = random_sharp(dim, parent_outcomes, rng);
    const MarkovKernel kernel = random_kernel(f.outcomes(), OutcomeSet::indexed(outcomes), rng);
    out["schema_version"] = "1";
    out["sharp"] = observable_to_json(f, {{"kind", "sharp"}});
    out["kernel"] = kernel_to_json(kernel);
    out["observable"] = observable_to_json(apply_kernel(f, kernel), {{"kind", "random-fuzzy"}});
  } else {
    std::cerr << "unknown generator kind '" << kind << "'\n";
    return kExitUsage;
  }
  emit(cfg, out.dump(2));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-outcome POVM toolkit: spectral and mixture representations of "
               "commutative observables, fuzzy versions via Markov kernels, joint observables"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string in_file, second_file;
  auto* validate_cmd = app.add_subcommand("validate", "check POVM invariants of a document");
  validate_cmd->add_option("file", in_file, "observable JSON document")->required();
  add_common_flags(validate_cmd, cfg);

  auto* represent_cmd =
      app.add_subcommand("represent", "spectral and mixture representation of a commutative observable");
  represent_cmd->add_option("file", in_file, "observable JSON document")->required();
  add_common_flags(represent_cmd, cfg);

  auto* fuzzy_cmd = app.add_subcommand("fuzzy", "decide whether E is a fuzzy version of F");
  fuzzy_cmd->add_option("E", in_file, "target observable document")->required();
  fuzzy_cmd->add_option("F", second_file, "source observable document")->required();
  add_common_flags(fuzzy_cmd, cfg);

  auto* joint_cmd = app.add_subcommand("joint", "joint observable of a commuting pair");
  joint_cmd->add_option("E1", in_file, "first observable document")->required();
  joint_cmd->add_option("E2", second_file, "second observable document")->required();
  add_common_flags(joint_cmd, cfg);

  std::string kind;
  Eigen::Index dim = 2;
  std::size_t outcomes = 2;
  std::size_t parent_outcomes = 0;
  double t = 0.5;
  std::vector<double> nu;
  auto* gen_cmd = app.add_subcommand("gen", "generate instance documents");
  gen_cmd->add_option("kind", kind, "sharp | smeared-qubit | convolution | random-fuzzy | coin")
      ->required();
  gen_cmd->add_option("--dim", dim, "Hilbert space dimension");
  gen_cmd->add_option("--outcomes", outcomes, "number of outcomes");
  gen_cmd->add_option("--parent-outcomes", parent_outcomes,
                      "outcomes of the sharp parent (random-fuzzy)");
  gen_cmd->add_option("--t", t, "smearing parameter for smeared-qubit");
  gen_cmd->add_option("--nu", nu, "cyclic measure weights for convolution")->delimiter(',');
  add_common_flags(gen_cmd, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(cfg, in_file);
    if (represent_cmd->parsed()) return cmd_represent(cfg, in_file);
    if (fuzzy_cmd->parsed()) return cmd_fuzzy(cfg, in_file, second_file);
    if (joint_cmd->parsed()) return cmd_joint(cfg, in_file, second_file);
    if (gen_cmd->parsed()) return cmd_gen(cfg, kind, dim, outcomes, parent_outcomes, t, nu);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotCommutative& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNo;
  } catch (const ClusterAmbiguity& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
