#include "lgnv/evaluator.hpp"

#include "lgnv/error.hpp"
#include "lgnv/verdict.hpp"

namespace lgnv {

Bits evaluate_gates(const Netlist& netlist, BitSpan input) {
  if (input.size() != netlist.input_width)
    throw InvalidInput("input has " + std::to_string(input.size()) +
                       " bits, netlist expects " +
                       std::to_string(netlist.input_width));
  Bits values;
  values.reserve(netlist.num_gates());
  auto resolve = [&](const NodeRef& ref) -> bool {
    return ref.is_input() ? input[ref.index] != 0 : values[ref.index] != 0;
  };
  for (const auto& layer : netlist.layers)
    for (const auto& gate : layer)
      values.push_back(gate.op(resolve(gate.a), resolve(gate.b)) ? 1 : 0);
  return values;
}

Bits forward(const Netlist& netlist, BitSpan input) {
  Bits values = evaluate_gates(netlist, input);
  const std::size_t first = values.size() - netlist.layers.back().size();
  return Bits(values.begin() + static_cast<std::ptrdiff_t>(first), values.end());
}

std::uint32_t ScoreVector::total() const {
  std::uint32_t t = 0;
  for (auto s : scores) t += s;
  return t;
}

ScoreVector score_outputs(BitSpan outputs, std::uint32_t num_classes,
                          std::uint32_t block_size) {
  if (outputs.size() != std::size_t(num_classes) * block_size)
    throw InvalidInput("output vector size does not match C*L");
  ScoreVector sv;
  sv.scores.assign(num_classes, 0);
  for (std::uint32_t c = 0; c < num_classes; ++c)
    for (std::uint32_t k = 0; k < block_size; ++k)
      sv.scores[c] += outputs[std::size_t(c) * block_size + k] ? 1 : 0;
  return sv;
}

Prediction predict_from_scores(const ScoreVector& scores) {
  if (scores.scores.size() < 2) throw InvalidInput("need at least two classes");
  Prediction p;
  p.scores = scores;
  const auto num_classes = static_cast<std::uint32_t>(scores.scores.size());
  for (std::uint32_t c = 1; c < num_classes; ++c)
    if (scores.scores[c] >= scores.scores[p.cls]) p.cls = c;
  const std::uint32_t total = scores.total();
  if (total == 0) {
    p.degenerate = true;
    p.confidence = Rational(1, num_classes);
  } else {
    p.confidence = Rational(scores.scores[p.cls], total);
  }
  return p;
}

Prediction predict(const Netlist& netlist, BitSpan input) {
  Bits out = forward(netlist, input);
  return predict_from_scores(
      score_outputs(out, netlist.num_classes, netlist.block_size));
}

const char* to_string(Mode mode) {
  return mode == Mode::Fair ? "fair" : "robust";
}

Mode parse_mode(std::string_view text) {
  if (text == "fair") return Mode::Fair;
  if (text == "robust") return Mode::Robust;
  throw InvalidInput("unknown mode '" + std::string(text) +
                     "' (expected fair or robust)");
}

const char* to_string(Status status) {
  switch (status) {
    case Status::Holds: return "holds";
    case Status::Counterexample: return "counterexample";
    case Status::Unknown: break;
  }
  return "unknown";
}

bool check_phi(BitSpan x, BitSpan x_prime, const FeatureSchema& schema,
               std::uint32_t eps, Mode mode) {
  auto v = decode_values(schema, x);
  auto w = decode_values(schema, x_prime);
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (schema.is_numeric(i)) {
      // Thermometer bit distance is the difference of bucket indices.
      std::uint32_t dist = v[i] > w[i] ? v[i] - w[i] : w[i] - v[i];
      if (dist > eps) return false;
    } else if (mode == Mode::Fair && schema.is_sensitive(i)) {
      if (v[i] == w[i]) return false;
    } else if (v[i] != w[i]) {
      return false;
    }
  }
  return true;
}

}  // namespace lgnv
