#include <doctest.h>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "povmlab/io.hpp"

using namespace povmlab;
using namespace povmlab::testing;
using nlohmann::json;

TEST_CASE("observable documents round trip bit-exactly") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const FuzzyInstance instance = random_fuzzy_instance(seed, 6, 4);
    const json doc = observable_to_json(instance.observable, {{"origin", "test"}});
    const json reparsed = json::parse(doc.dump());
    const Observable back = observable_from_json(reparsed);
    CHECK(back.outcomes() == instance.observable.outcomes());
    CHECK(max_effect_diff(back, instance.observable) == 0.0);
  }
}

TEST_CASE("kernel documents round trip") {
  Rng rng(2);
  const MarkovKernel k = random_kernel(OutcomeSet({"a", "b", "c"}), OutcomeSet({"x", "y"}), rng);
  const MarkovKernel back = kernel_from_json(json::parse(kernel_to_json(k).dump()));
  CHECK(max_abs(RealMatrix(back.matrix() - k.matrix())) == 0.0);
  CHECK(back.from() == k.from());
  CHECK(back.to() == k.to());
}

TEST_CASE("unknown schema versions are rejected") {
  json doc = observable_to_json(coin());
  doc["schema_version"] = "2";
  CHECK_THROWS_AS(observable_from_json(doc), ParseError);
  doc.erase("schema_version");
  CHECK_THROWS_AS(observable_from_json(doc), ParseError);
}

TEST_CASE("malformed observable documents are parse errors") {
  json doc = observable_to_json(coin());

  json missing = doc;
  missing.erase("effects");
  CHECK_THROWS_AS(observable_from_json(missing), ParseError);

  json ragged = doc;
  ragged["effects"][0][0].erase(1);
  CHECK_THROWS_AS(observable_from_json(ragged), ParseError);

  json wrong_count = doc;
  wrong_count["outcomes"].push_back("extra");
  CHECK_THROWS_AS(observable_from_json(wrong_count), ParseError);

  json bad_entry = doc;
  bad_entry["effects"][0][0][0] = {"not", "numbers"};
  CHECK_THROWS_AS(observable_from_json(bad_entry), ParseError);

  json null_entry = json::parse(R"({
    "schema_version": "1", "dim": 1, "outcomes": ["0"],
    "effects": [[[[null, 0.0]]]]
  })");
  CHECK_THROWS_AS(observable_from_json(null_entry), ParseError);

  json dim_mismatch = doc;
  dim_mismatch["dim"] = 3;
  CHECK_THROWS_AS(observable_from_json(dim_mismatch), ParseError);

  json duplicate_labels = doc;
  duplicate_labels["outcomes"] = {"same", "same"};
  CHECK_THROWS_AS(observable_from_json(duplicate_labels), ParseError);
}

TEST_CASE("spectral and mixture serializations carry the canonical data") {
  const SpectralRep rep = spectral_representation(smeared_qubit(0.5));
  const json spectral = spectral_rep_to_json(rep);
  CHECK(spectral["rows"].size() == 2);
  CHECK(spectral["rows"][0][0].get<double>() == doctest::Approx(0.25));

  const json mixture = mixture_to_json(mixture_decomposition(rep));
  CHECK(mixture["weights"].size() == 2);
  CHECK(mixture["weights"][0].get<double>() == doctest::Approx(0.75));
  CHECK(mixture["components"][0].size() == 2);
}
