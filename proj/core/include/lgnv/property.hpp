#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lgnv/cnf.hpp"
#include "lgnv/evaluator.hpp"
#include "lgnv/netlist.hpp"
#include "lgnv/rational.hpp"
#include "lgnv/schema.hpp"

namespace lgnv {

enum class QueryMode { Fair, Robust, Attainable };

const char* to_string(QueryMode mode);
QueryMode to_query_mode(Mode mode);

struct PropertyQuery {
  const Netlist* netlist = nullptr;
  const FeatureSchema* schema = nullptr;
  QueryMode mode = QueryMode::Robust;
  std::uint32_t eps = 0;
  Rational kappa{1, 2};
};

/// Literals of one network copy, grouped by role.
struct CopyVars {
  std::vector<Lit> inputs;
  std::vector<Lit> gates;
  std::vector<std::vector<Lit>> blocks;         // raw output blocks
  std::vector<std::vector<Lit>> sorted_blocks;  // per-block unary sort
  std::vector<Lit> total_sorted;                // empty for the primed copy
  std::vector<Lit> winners;
};

/// Clause and variable contribution of one emitted component.
struct ComponentStats {
  std::string name;
  std::uint64_t clauses = 0;
  std::uint64_t vars = 0;
};

struct VarMap {
  CopyVars x;
  CopyVars x_prime;  // unused for attainability queries
  std::vector<ComponentStats> components;
};

/// Role -> literal list, one line per role (debugging sidecar).
std::string serialize_varmap(const VarMap& varmap);

// Component emitters. Each appends clauses to `cnf`.

/// Thermometer monotonicity and one-hot exactly-one per feature.
void emit_well_formed(CnfBuilder& cnf, const FeatureSchema& schema,
                      std::span<const Lit> inputs);

/// For k = eps..B-1: (t[k] -> u[k-eps]) and (u[k] -> t[k-eps]).
void emit_prox(CnfBuilder& cnf, std::uint32_t eps, std::span<const Lit> t,
               std::span<const Lit> u);

void emit_same_cat(CnfBuilder& cnf, std::span<const Lit> c,
                   std::span<const Lit> c_prime);

/// sel_b <-> (c[b] & !c'[b]) per position plus the clause OR_b sel_b.
void emit_diff_cat(CnfBuilder& cnf, std::span<const Lit> c,
                   std::span<const Lit> c_prime);

/// Winner flags w_c with
///   w_c -> AND_{d<c} AND_k (s_d[k] -> s_c[k])
///        & AND_{d>c} OR_k (s_c[k] & !s_d[k])
/// plus the at-least-one clause OR_c w_c.
std::vector<Lit> emit_winning(CnfBuilder& cnf,
                              std::span<const std::vector<Lit>> sorted_blocks);

/// !w_c | !w'_c for every class.
void emit_diff_class(CnfBuilder& cnf, std::span<const Lit> w,
                     std::span<const Lit> w_prime);

/// For i = 1..C*L: total_sorted[i-1] -> OR_c sorted_blocks[c][floor(i*kappa)],
/// where an index >= L reads as FALSE. Throws InvalidInput unless
/// 0 <= kappa <= 1.
void emit_confidence_gt(CnfBuilder& cnf, const Rational& kappa,
                        std::span<const std::vector<Lit>> sorted_blocks,
                        std::span<const Lit> total_sorted);

struct EncodedQuery {
  CnfFormula formula;
  VarMap varmap;
};

/// Fair/robust: both copies are well-formed networks, x has a nonzero output
/// with confidence > kappa, the predicted classes differ, and the similarity
/// condition holds. Attainable: a single well-formed copy with a nonzero
/// output whose confidence exceeds kappa.
/// Throws InvalidInput on width mismatch or fair mode without a sensitive
/// feature.
EncodedQuery build_query(const PropertyQuery& query);

}  // namespace lgnv
