#include "povmlab/io.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace povmlab {

namespace {

constexpr const char* kSchemaVersion = "1";

double finite_number(const nlohmann::json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(what) + ": non-finite value");
  return v;
}

void check_schema(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("document: expected a JSON object");
  if (!doc.contains("schema_version") || !doc["schema_version"].is_string())
    throw ParseError("document: missing schema_version");
  const auto version = doc["schema_version"].get<std::string>();
  if (version != kSchemaVersion)
    throw ParseError("document: unsupported schema_version '" + version + "'");
}

std::vector<std::string> labels_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ParseError(std::string(what) + ": expected a nonempty array");
  std::vector<std::string> labels;
  for (const auto& l : j) {
    if (!l.is_string()) throw ParseError(std::string(what) + ": labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  return labels;
}

}  // namespace

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix: expected a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw ParseError("matrix: rows must be nonempty arrays");
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ParseError("matrix: ragged rows");
    for (std::size_t k = 0; k < cols; ++k) {
      const auto& entry = j[i][k];
      if (!entry.is_array() || entry.size() != 2)
        throw ParseError("matrix: entries must be [re, im] pairs");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          Complex(finite_number(entry[0], "matrix entry"), finite_number(entry[1], "matrix entry"));
    }
  }
  return m;
}

nlohmann::json observable_to_json(const Observable& e,
                                  const std::map<std::string, std::string>& metadata) {
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["dim"] = e.dim();
  doc["outcomes"] = e.outcomes().labels();
  nlohmann::json effects = nlohmann::json::array();
  for (const ComplexMatrix& effect : e.effects()) effects.push_back(matrix_to_json(effect));
  doc["effects"] = std::move(effects);
  if (!metadata.empty()) doc["metadata"] = metadata;
  return doc;
}

Observable observable_from_json(const nlohmann::json& doc) {
  check_schema(doc);
  for (const char* field : {"dim", "outcomes", "effects"})
    if (!doc.contains(field)) throw ParseError(std::string("observable: missing '") + field + "'");
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long>() <= 0)
    throw ParseError("observable: dim must be a positive integer");
  const auto dim = doc["dim"].get<Eigen::Index>();

  std::vector<std::string> labels = labels_from_json(doc["outcomes"], "observable outcomes");
  if (!doc["effects"].is_array() || doc["effects"].size() != labels.size())
    throw ParseError("observable: expected one effect per outcome");

  std::vector<ComplexMatrix> effects;
  effects.reserve(labels.size());
  for (const auto& ej : doc["effects"]) {
    ComplexMatrix m = matrix_from_json(ej);
    if (m.rows() != dim || m.cols() != dim)
      throw ParseError("observable: effect shape does not match dim");
    effects.push_back(std::move(m));
  }
  try {
    return Observable(OutcomeSet(std::move(labels)), std::move(effects));
  } catch (const Error& err) {
    throw ParseError(std::string("observable: ") + err.what());
  }
}

nlohmann::json kernel_to_json(const MarkovKernel& mu) {
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["from"] = mu.from().labels();
  doc["to"] = mu.to().labels();
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index x = 0; x < mu.matrix().rows(); ++x) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index a = 0; a < mu.matrix().cols(); ++a) row.push_back(mu.matrix()(x, a));
    rows.push_back(std::move(row));
  }
  doc["matrix"] = std::move(rows);
  return doc;
}

MarkovKernel kernel_from_json(const nlohmann::json& doc, const Tolerance& tol) {
  check_schema(doc);
  for (const char* field : {"from", "to", "matrix"})
    if (!doc.contains(field)) throw ParseError(std::string("kernel: missing '") + field + "'");
  std::vector<std::string> from = labels_from_json(doc["from"], "kernel 'from'");
  std::vector<std::string> to = labels_from_json(doc["to"], "kernel 'to'");
  const auto& mj = doc["matrix"];
  if (!mj.is_array() || mj.size() != from.size()) throw ParseError("kernel: one row per source outcome");
  RealMatrix m(static_cast<Eigen::Index>(from.size()), static_cast<Eigen::Index>(to.size()));
  for (std::size_t x = 0; x < from.size(); ++x) {
    if (!mj[x].is_array() || mj[x].size() != to.size()) throw ParseError("kernel: ragged matrix");
    for (std::size_t a = 0; a < to.size(); ++a)
      m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(a)) =
          finite_number(mj[x][a], "kernel entry");
  }
  try {
    return MarkovKernel(OutcomeSet(std::move(from)), OutcomeSet(std::move(to)), std::move(m), tol);
  } catch (const Error& err) {
    throw ParseError(std::string("kernel: ") + err.what());
  }
}

nlohmann::json spectral_rep_to_json(const SpectralRep& rep) {
  nlohmann::json doc;
  doc["outcomes"] = rep.source_outcomes.labels();
  nlohmann::json projections = nlohmann::json::array();
  for (const ComplexMatrix& pi : rep.projections) projections.push_back(matrix_to_json(pi));
  doc["projections"] = std::move(projections);
  nlohmann::json rows = nlohmann::json::array();
  for (const ProbabilityVector& row : rep.rows) {
    nlohmann::json weights = nlohmann::json::array();
    for (Eigen::Index i = 0; i < row.weights().size(); ++i) weights.push_back(row.weights()[i]);
    rows.push_back(std::move(weights));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

nlohmann::json mixture_to_json(const MixtureDecomposition& dec) {
  nlohmann::json doc;
  nlohmann::json weights = nlohmann::json::array();
  for (Eigen::Index j = 0; j < dec.weights.size(); ++j) weights.push_back(dec.weights[j]);
  doc["weights"] = std::move(weights);
  nlohmann::json components = nlohmann::json::array();
  for (const auto& map : dec.components) {
    nlohmann::json images = nlohmann::json::array();
    for (std::size_t k : map) images.push_back(dec.outcomes.label(k));
    components.push_back(std::move(images));
  }
  doc["components"] = std::move(components);
  return doc;
}

}  // namespace povmlab
