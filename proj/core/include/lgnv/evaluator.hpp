#pragma once

#include <cstdint>
#include <vector>

#include "lgnv/netlist.hpp"
#include "lgnv/rational.hpp"
#include "lgnv/schema.hpp"

namespace lgnv {

/// Concrete forward pass. Returns the final-layer bits in block order.
/// Throws InvalidInput if input.size() != netlist.input_width.
Bits forward(const Netlist& netlist, BitSpan input);

/// Values of every gate, indexed by global gate id.
Bits evaluate_gates(const Netlist& netlist, BitSpan input);

struct ScoreVector {
  std::vector<std::uint32_t> scores;

  std::uint32_t total() const;
};

/// Per-class popcounts of an output vector of num_classes * block_size bits.
ScoreVector score_outputs(BitSpan outputs, std::uint32_t num_classes,
                          std::uint32_t block_size);

struct Prediction {
  std::uint32_t cls = 0;
  ScoreVector scores;
  Rational confidence{0};
  // True when every output bit is zero; the confidence is then 1/C.
  bool degenerate = false;
};

/// Winner = largest class index attaining the maximal score, which is the
/// unique class whose winner flag the CNF winning condition admits
/// (>= against lower classes, strict > against higher ones). Confidence is
/// score(winner) / total, or 1/C when total is zero.
Prediction predict_from_scores(const ScoreVector& scores);

Prediction predict(const Netlist& netlist, BitSpan input);

enum class Mode { Fair, Robust };

const char* to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// Similarity condition over an input pair. Non-sensitive numerical features
/// may differ by at most eps thermometer bits, non-sensitive categorical
/// features must be equal, and in fair mode every sensitive categorical
/// feature must differ. Robust mode treats every feature as non-sensitive.
/// Throws InvalidInput on ill-formed inputs.
bool check_phi(BitSpan x, BitSpan x_prime, const FeatureSchema& schema,
               std::uint32_t eps, Mode mode);

}  // namespace lgnv
