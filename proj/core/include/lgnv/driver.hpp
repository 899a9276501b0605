#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lgnv/evaluator.hpp"
#include "lgnv/netlist.hpp"
#include "lgnv/rational.hpp"
#include "lgnv/schema.hpp"
#include "lgnv/solver.hpp"
#include "lgnv/verdict.hpp"

namespace lgnv {

/// One solver invocation at a fixed threshold.
Verdict verify_at(const Netlist& netlist, const FeatureSchema& schema,
                  Mode mode, std::uint32_t eps, const Rational& kappa,
                  const SolverConfig& config = {});

struct AttainabilityResult {
  bool attainable = false;
  Bits input;             // set when attainable
  Prediction prediction;  // of `input`
  SolveStats stats;
  bool unknown = false;   // solver timed out
};

/// Is there a well-formed x with a nonzero output and conf(f(x)) > kappa?
AttainabilityResult check_attainable(const Netlist& netlist,
                                     const FeatureSchema& schema,
                                     const Rational& kappa,
                                     const SolverConfig& config = {});

struct ProbeRecord {
  Rational kappa{0};
  Status status = Status::Unknown;
  SolveStats stats;
};

struct KappaSearchResult {
  Rational kappa_star{1};
  Rational bracket_lo{0};
  Rational bracket_hi{1};
  // Largest probed threshold that produced a counterexample.
  std::optional<Rational> last_counterexample;
  bool converged = false;
  // A counterexample exists even at kappa = 1.
  bool unsafe_everywhere = false;
  std::optional<AttainabilityResult> attainability;
  std::vector<ProbeRecord> queries;
  double total_seconds = 0.0;
};

inline const Rational kDefaultTolerance{1, 20};

/// Binary search for the smallest safe threshold over [1/C, 1]. Probes 1 and
/// then 1/C; afterwards bisects until hi - lo <= tolerance and reports hi.
/// An Unknown probe stops the search with converged == false. When
/// `check_attainability` is set, a converged search also checks
/// attainability at kappa_star.
KappaSearchResult search_min_kappa(const Netlist& netlist,
                                   const FeatureSchema& schema, Mode mode,
                                   std::uint32_t eps,
                                   const Rational& tolerance = kDefaultTolerance,
                                   const SolverConfig& config = {},
                                   bool check_attainability = true);

struct SweepRow {
  Rational kappa{0};
  Verdict verdict;
};

/// verify_at per threshold, in the given order. Throws InvalidInput on an
/// empty list.
std::vector<SweepRow> sweep(const Netlist& netlist, const FeatureSchema& schema,
                            Mode mode, std::uint32_t eps,
                            std::span<const Rational> kappas,
                            const SolverConfig& config = {});

/// No Holds at kappa1 together with a Counterexample at some kappa2 > kappa1.
/// Unknown entries are ignored.
bool is_monotone_in_kappa(std::span<const ProbeRecord> probes);

}  // namespace lgnv
