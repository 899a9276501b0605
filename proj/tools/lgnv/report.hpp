#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "lgnv/driver.hpp"
#include "lgnv/ingest.hpp"
#include "lgnv/netlist.hpp"
#include "lgnv/schema.hpp"
#include "lgnv/verdict.hpp"

namespace lgnv::cli {

using Json = nlohmann::ordered_json;

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

Json rational_json(const Rational& r);
Json prediction_json(const Prediction& p);
Json input_json(const FeatureSchema& schema, BitSpan bits);
Json witness_json(const FeatureSchema& schema, const Witness& w);
Json stats_json(const SolveStats& s);
Json verdict_json(const FeatureSchema& schema, const Verdict& v);
Json attainability_json(const FeatureSchema& schema, const AttainabilityResult& a);
Json search_json(const FeatureSchema& schema, const KappaSearchResult& r);

}  // namespace lgnv::cli
