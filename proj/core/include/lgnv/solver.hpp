#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lgnv/cnf.hpp"
#include "lgnv/property.hpp"
#include "lgnv/verdict.hpp"

namespace lgnv {

struct SolverConfig {
  // Empty: LGNV_SOLVER from the environment, then `kissat` on PATH, then the
  // bundled lgnv-sat (build tree, next to the running binary, then PATH).
  std::string executable;
  double timeout_seconds = 3600.0;
  std::vector<std::string> extra_args;
  // Empty: the system temp directory.
  std::filesystem::path work_dir;
  bool keep_files = false;
};

/// Resolved solver executable path. Throws SolverError if nothing is found.
std::string resolve_solver(const SolverConfig& config);

enum class SolveStatus { Sat, Unsat, Unknown };

const char* to_string(SolveStatus status);

struct SolveOutcome {
  SolveStatus status = SolveStatus::Unknown;
  // model[v] for v in 1..num_vars; index 0 unused. Empty unless Sat.
  std::vector<std::uint8_t> model;
  double seconds = 0.0;
  int exit_code = -1;
  bool timed_out = false;
  std::vector<std::string> stats_lines;

  bool value(Lit lit) const {
    return (model.at(lit.var()) != 0) != lit.negative();
  }
};

/// Writes DIMACS to a temp file named after the formula hash, runs the
/// solver and interprets exit code 10 as SAT (model from `v` lines) and 20 as
/// UNSAT. Timeouts and other exit codes give Unknown. Throws SolverError
/// when the solver cannot be started or its output is unparsable.
SolveOutcome solve(const CnfFormula& formula, const SolverConfig& config);

/// Parses solver stdout (s-line and v-lines) for a formula of num_vars
/// variables. Exposed for testing.
SolveOutcome parse_solver_output(const std::string& stdout_text,
                                 int exit_code, std::uint32_t num_vars);

/// Extracts the input pair from a SAT model of a fair/robust query and
/// re-checks it concretely (phi, differing classes, conf > kappa, model
/// outputs equal to the forward pass). Throws InternalConsistencyError if any
/// check fails.
Witness decode_counterexample(const SolveOutcome& outcome,
                              const VarMap& varmap, const PropertyQuery& query);

/// Same for an attainability model: returns the input bits after checking
/// well-formedness, a nonzero output and conf > kappa.
Bits decode_attainable(const SolveOutcome& outcome, const VarMap& varmap,
                       const PropertyQuery& query);

}  // namespace lgnv
