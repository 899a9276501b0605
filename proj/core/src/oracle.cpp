#include "lgnv/oracle.hpp"

#include <algorithm>

#include "lgnv/error.hpp"
#include "lgnv/evaluator.hpp"

namespace lgnv {
namespace {

struct Table {
  std::vector<Bits> inputs;
  std::vector<Prediction> predictions;
};

Table tabulate(const Netlist& netlist, const FeatureSchema& schema) {
  if (schema.width() != netlist.input_width)
    throw InvalidInput("schema width does not match netlist input_width");
  Table t;
  t.inputs = enumerate_inputs(schema);
  t.predictions.reserve(t.inputs.size());
  for (const auto& x : t.inputs) t.predictions.push_back(predict(netlist, x));
  return t;
}

}  // namespace

std::vector<Bits> enumerate_inputs(const FeatureSchema& schema) {
  const std::uint64_t count = schema.num_inputs();
  if (count > kOracleMaxInputs)
    throw InstanceTooLarge("brute force needs " + std::to_string(count) +
                           " inputs, guard is " + std::to_string(kOracleMaxInputs));
  std::vector<Bits> out;
  out.reserve(count);
  std::vector<std::uint32_t> values(schema.size(), 0);
  while (true) {
    out.push_back(encode_values(schema, values));
    // Odometer increment, last feature fastest.
    std::size_t i = schema.size();
    while (i > 0) {
      --i;
      if (++values[i] < schema.num_values(i)) break;
      values[i] = 0;
      if (i == 0) return out;
    }
    if (schema.size() == 0) return out;
  }
}

Verdict brute_force_verify(const Netlist& netlist, const FeatureSchema& schema,
                           Mode mode, std::uint32_t eps, const Rational& kappa) {
  const Table t = tabulate(netlist, schema);
  Verdict verdict;
  verdict.status = Status::Holds;
  for (std::size_t i = 0; i < t.inputs.size(); ++i) {
    const Prediction& p = t.predictions[i];
    if (!(p.confidence > kappa)) continue;
    for (std::size_t j = 0; j < t.inputs.size(); ++j) {
      const Prediction& q = t.predictions[j];
      if (p.cls == q.cls) continue;
      if (!check_phi(t.inputs[i], t.inputs[j], schema, eps, mode)) continue;
      verdict.status = Status::Counterexample;
      verdict.witness = Witness{t.inputs[i],
                                t.inputs[j],
                                decode_values(schema, t.inputs[i]),
                                decode_values(schema, t.inputs[j]),
                                p,
                                q};
      return verdict;
    }
  }
  return verdict;
}

Rational brute_force_min_kappa(const Netlist& netlist,
                               const FeatureSchema& schema, Mode mode,
                               std::uint32_t eps) {
  const Table t = tabulate(netlist, schema);
  Rational best(1, netlist.num_classes);
  for (std::size_t i = 0; i < t.inputs.size(); ++i) {
    const Prediction& p = t.predictions[i];
    if (p.confidence <= best) continue;
    for (std::size_t j = 0; j < t.inputs.size(); ++j) {
      if (p.cls == t.predictions[j].cls) continue;
      if (!check_phi(t.inputs[i], t.inputs[j], schema, eps, mode)) continue;
      best = p.confidence;
      break;
    }
  }
  return best;
}

bool brute_force_attainable(const Netlist& netlist,
                            const FeatureSchema& schema, const Rational& kappa) {
  const Table t = tabulate(netlist, schema);
  return std::any_of(t.predictions.begin(), t.predictions.end(),
                     [&](const Prediction& p) {
                       return !p.degenerate && p.confidence > kappa;
                     });
}

}  // namespace lgnv
