#include "report.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <memory>

#include <openssl/evp.h>

#include "lgnv/error.hpp"

namespace lgnv::cli {

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::array<char, 1 << 14> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

Json rational_json(const Rational& r) {
  return Json{{"exact", to_string(r)}, {"approx", to_double(r)}};
}

Json prediction_json(const Prediction& p) {
  Json j;
  j["class"] = p.cls;
  j["scores"] = p.scores.scores;
  j["confidence"] = rational_json(p.confidence);
  j["degenerate_confidence"] = p.degenerate;
  return j;
}

Json input_json(const FeatureSchema& schema, BitSpan bits) {
  std::string bitstr;
  for (auto b : bits) bitstr.push_back(b ? '1' : '0');
  Json features = Json::array();
  auto decoded = decode_bits(schema, bits);
  for (std::size_t i = 0; i < schema.size(); ++i) {
    Json f;
    f["name"] = schema.name(i);
    if (schema.is_numeric(i)) {
      f["kind"] = "num";
      f["bucket"] = decoded[i].value;
      auto bound = [](double v) -> Json {
        if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
        return v;
      };
      f["interval"] = Json::array({bound(decoded[i].lower), bound(decoded[i].upper)});
    } else {
      const auto& cat = std::get<CategoricalFeature>(schema[i]);
      f["kind"] = "cat";
      f["category"] = decoded[i].value;
      if (!cat.values.empty()) f["label"] = cat.values[decoded[i].value];
      f["sensitive"] = cat.sensitive;
    }
    features.push_back(std::move(f));
  }
  return Json{{"bits", bitstr}, {"features", std::move(features)}};
}

Json witness_json(const FeatureSchema& schema, const Witness& w) {
  Json x = input_json(schema, w.x);
  x["prediction"] = prediction_json(w.prediction);
  Json xp = input_json(schema, w.x_prime);
  xp["prediction"] = prediction_json(w.prediction_prime);
  return Json{{"x", std::move(x)}, {"x_prime", std::move(xp)}};
}

Json stats_json(const SolveStats& s) {
  return Json{{"seconds", s.seconds}, {"vars", s.num_vars}, {"clauses", s.num_clauses}};
}

Json verdict_json(const FeatureSchema& schema, const Verdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["stats"] = stats_json(v.stats);
  if (v.witness) j["witness"] = witness_json(schema, *v.witness);
  return j;
}

Json attainability_json(const FeatureSchema& schema, const AttainabilityResult& a) {
  Json j;
  j["attainable"] = a.attainable;
  j["unknown"] = a.unknown;
  j["stats"] = stats_json(a.stats);
  if (a.attainable) {
    Json x = input_json(schema, a.input);
    x["prediction"] = prediction_json(a.prediction);
    j["witness"] = std::move(x);
  }
  return j;
}

Json search_json(const FeatureSchema& schema, const KappaSearchResult& r) {
  Json j;
  j["kappa_star"] = rational_json(r.kappa_star);
  j["converged"] = r.converged;
  j["unsafe_everywhere"] = r.unsafe_everywhere;
  j["search_bracket"] = Json::array({to_string(r.bracket_lo), to_string(r.bracket_hi)});
  j["last_counterexample_kappa"] =
      r.last_counterexample ? rational_json(*r.last_counterexample) : Json();
  j["attainability"] =
      r.attainability ? attainability_json(schema, *r.attainability) : Json();
  Json probes = Json::array();
  for (const auto& q : r.queries)
    probes.push_back(Json{{"kappa", rational_json(q.kappa)},
                          {"status", to_string(q.status)},
                          {"stats", stats_json(q.stats)}});
  j["queries"] = std::move(probes);
  j["total_seconds"] = r.total_seconds;
  return j;
}

}  // namespace lgnv::cli
