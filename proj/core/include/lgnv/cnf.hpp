#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lgnv/netlist.hpp"

namespace lgnv {

/// DIMACS-style literal: nonzero signed variable id, negative = negated.
class Lit {
 public:
  constexpr Lit() = default;
  constexpr explicit Lit(std::int32_t dimacs) : value_(dimacs) {}

  constexpr std::int32_t dimacs() const { return value_; }
  constexpr std::uint32_t var() const {
    return static_cast<std::uint32_t>(value_ < 0 ? -value_ : value_);
  }
  constexpr bool negative() const { return value_ < 0; }
  constexpr bool valid() const { return value_ != 0; }

  constexpr Lit operator~() const { return Lit(-value_); }

  friend constexpr auto operator<=>(Lit, Lit) = default;

 private:
  std::int32_t value_ = 0;
};

using Clause = std::vector<Lit>;

/// Variable 1 is the constant TRUE, asserted by a unit clause.
inline constexpr Lit kTrueLit{1};
inline constexpr Lit kFalseLit{-1};

struct CnfFormula {
  std::uint32_t num_vars = 0;
  std::vector<Clause> clauses;
};

/// Single-writer formula under construction. Variables are allocated
/// contiguously. Clauses are normalized on insertion: duplicate literals and
/// FALSE are dropped, clauses containing TRUE or a complementary pair are
/// elided, and an emptied clause becomes the unit [FALSE].
class CnfBuilder {
 public:
  CnfBuilder();

  Lit new_var();
  std::vector<Lit> new_vars(std::size_t n);

  void add_clause(std::span<const Lit> lits);
  void add_clause(std::initializer_list<Lit> lits) {
    add_clause(std::span<const Lit>(lits.begin(), lits.size()));
  }

  /// Value of a literal if it is the constant TRUE or FALSE.
  static std::optional<bool> constant(Lit lit) {
    if (lit.var() == 1) return !lit.negative();
    return std::nullopt;
  }

  std::uint32_t num_vars() const { return formula_.num_vars; }
  std::size_t num_clauses() const { return formula_.clauses.size(); }
  const CnfFormula& formula() const { return formula_; }
  CnfFormula release() { return std::move(formula_); }

 private:
  CnfFormula formula_;
  std::vector<Lit> scratch_;
};

/// Literal o with o <-> op(a, b). Constant and single-input ops, and any op
/// whose inputs are constant, equal or complementary, fold to an existing
/// literal without new variables. Otherwise emits 3 clauses (AND/OR shapes)
/// or 4 clauses (XOR/XNOR).
Lit encode_gate(CnfBuilder& cnf, GateOp op, Lit a, Lit b);

struct NetworkEncoding {
  std::vector<Lit> gates;    // by global gate id
  std::vector<Lit> outputs;  // final layer, block order
};

NetworkEncoding encode_network(CnfBuilder& cnf, const Netlist& netlist,
                               std::span<const Lit> inputs);

/// Unary sort, descending: result[k] is true iff at least k+1 inputs are
/// true. Batcher odd-even merge network over the input padded with FALSE to
/// a power of two; each comparator is (a|b, a&b) with full equivalence.
std::vector<Lit> sort_block(CnfBuilder& cnf, std::span<const Lit> lits);

/// "p cnf V C" header then one zero-terminated clause per line.
std::string to_dimacs(const CnfFormula& formula);

}  // namespace lgnv
