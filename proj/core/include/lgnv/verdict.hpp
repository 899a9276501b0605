#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lgnv/evaluator.hpp"

namespace lgnv {

enum class Status { Holds, Counterexample, Unknown };

const char* to_string(Status status);

/// A violating pair (x, x') with decoded feature values and predictions.
struct Witness {
  Bits x;
  Bits x_prime;
  std::vector<std::uint32_t> values;
  std::vector<std::uint32_t> values_prime;
  Prediction prediction;
  Prediction prediction_prime;
};

struct SolveStats {
  double seconds = 0.0;
  std::uint64_t num_vars = 0;
  std::uint64_t num_clauses = 0;
};

struct Verdict {
  Status status = Status::Unknown;
  std::optional<Witness> witness;  // present iff Counterexample
  SolveStats stats;
};

}  // namespace lgnv
