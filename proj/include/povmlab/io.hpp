#pragma once

#include <map>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "povmlab/fuzzy.hpp"
#include "povmlab/observable.hpp"
#include "povmlab/representation.hpp"

namespace povmlab {

/// Observable interchange document, schema_version "1". Complex entries are
/// [re, im] pairs of finite doubles; effects are row-major dim x dim arrays.
nlohmann::json observable_to_json(const Observable& e,
                                  const std::map<std::string, std::string>& metadata = {});

/// Throws ParseError on any structural defect (wrong schema version, ragged
/// or non-square effects, non-finite numbers, missing fields).
Observable observable_from_json(const nlohmann::json& doc);

nlohmann::json kernel_to_json(const MarkovKernel& mu);
MarkovKernel kernel_from_json(const nlohmann::json& doc, const Tolerance& tol = {});

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json spectral_rep_to_json(const SpectralRep& rep);
nlohmann::json mixture_to_json(const MixtureDecomposition& dec);

}  // namespace povmlab
