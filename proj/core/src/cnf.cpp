#include "lgnv/cnf.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

#include "lgnv/error.hpp"

namespace lgnv {

CnfBuilder::CnfBuilder() {
  formula_.num_vars = 1;
  formula_.clauses.push_back({kTrueLit});
}

Lit CnfBuilder::new_var() {
  return Lit(static_cast<std::int32_t>(++formula_.num_vars));
}

std::vector<Lit> CnfBuilder::new_vars(std::size_t n) {
  std::vector<Lit> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(new_var());
  return out;
}

void CnfBuilder::add_clause(std::span<const Lit> lits) {
  scratch_.clear();
  for (Lit l : lits) {
    if (!l.valid() || l.var() > formula_.num_vars)
      throw InvalidInput("clause literal " + std::to_string(l.dimacs()) +
                         " is not an allocated variable");
    if (auto c = constant(l)) {
      if (*c) return;  // satisfied
      continue;        // FALSE literal
    }
    scratch_.push_back(l);
  }
  std::sort(scratch_.begin(), scratch_.end(), [](Lit x, Lit y) {
    return x.var() != y.var() ? x.var() < y.var() : x.dimacs() < y.dimacs();
  });
  scratch_.erase(std::unique(scratch_.begin(), scratch_.end()), scratch_.end());
  for (std::size_t i = 1; i < scratch_.size(); ++i)
    if (scratch_[i].var() == scratch_[i - 1].var()) return;  // tautology
  if (scratch_.empty()) {
    formula_.clauses.push_back({kFalseLit});
    return;
  }
  formula_.clauses.emplace_back(scratch_.begin(), scratch_.end());
}

namespace {

// Literal for a one-input function with truth values (f(0), f(1)).
Lit unary(bool f0, bool f1, Lit x) {
  if (f0 == f1) return f0 ? kTrueLit : kFalseLit;
  return f1 ? x : ~x;
}

Lit encode_and(CnfBuilder& cnf, Lit a, Lit b) {
  Lit o = cnf.new_var();
  cnf.add_clause({~o, a});
  cnf.add_clause({~o, b});
  cnf.add_clause({o, ~a, ~b});
  return o;
}

Lit encode_xor(CnfBuilder& cnf, Lit a, Lit b) {
  Lit o = cnf.new_var();
  cnf.add_clause({~o, a, b});
  cnf.add_clause({~o, ~a, ~b});
  cnf.add_clause({o, ~a, b});
  cnf.add_clause({o, a, ~b});
  return o;
}

}  // namespace

Lit encode_gate(CnfBuilder& cnf, GateOp op, Lit a, Lit b) {
  if (auto ca = CnfBuilder::constant(a))
    return unary(op(*ca, false), op(*ca, true), b);
  if (auto cb = CnfBuilder::constant(b))
    return unary(op(false, *cb), op(true, *cb), a);
  if (a == b) return unary(op(false, false), op(true, true), a);
  if (a == ~b) return unary(op(false, true), op(true, false), a);

  const bool depends_on_a = op(false, false) != op(true, false) ||
                            op(false, true) != op(true, true);
  const bool depends_on_b = op(false, false) != op(false, true) ||
                            op(true, false) != op(true, true);
  if (!depends_on_a) return unary(op(false, false), op(false, true), b);
  if (!depends_on_b) return unary(op(false, false), op(true, false), a);

  const int ones = std::popcount(op.code());
  if (ones == 2) {
    // Only XOR (6) and XNOR (9) depend on both inputs with two minterms.
    Lit x = encode_xor(cnf, a, b);
    return op.code() == GateOp::kXor.code() ? x : ~x;
  }
  // One distinguished minterm (alpha, beta): the only true row when ones == 1,
  // the only false row when ones == 3.
  const bool target = ones == 1;
  for (unsigned row = 0; row < 4; ++row) {
    const bool alpha = (row >> 1) & 1u;
    const bool beta = row & 1u;
    if (op(alpha, beta) != target) continue;
    Lit m = encode_and(cnf, alpha ? a : ~a, beta ? b : ~b);
    return target ? m : ~m;
  }
  return kFalseLit;  // unreachable: every remaining op has such a row
}

NetworkEncoding encode_network(CnfBuilder& cnf, const Netlist& netlist,
                               std::span<const Lit> inputs) {
  if (inputs.size() != netlist.input_width)
    throw InvalidInput("encode_network: " + std::to_string(inputs.size()) +
                       " input literals for input_width " +
                       std::to_string(netlist.input_width));
  NetworkEncoding enc;
  enc.gates.reserve(netlist.num_gates());
  auto resolve = [&](const NodeRef& ref) {
    return ref.is_input() ? inputs[ref.index] : enc.gates[ref.index];
  };
  for (const auto& layer : netlist.layers)
    for (const auto& gate : layer)
      enc.gates.push_back(encode_gate(cnf, gate.op, resolve(gate.a), resolve(gate.b)));
  const std::size_t first = enc.gates.size() - netlist.layers.back().size();
  enc.outputs.assign(enc.gates.begin() + static_cast<std::ptrdiff_t>(first),
                     enc.gates.end());
  return enc;
}

std::vector<Lit> sort_block(CnfBuilder& cnf, std::span<const Lit> lits) {
  const std::size_t n = lits.size();
  if (n == 0) return {};
  const std::size_t padded = std::bit_ceil(n);
  std::vector<Lit> wires(lits.begin(), lits.end());
  wires.resize(padded, kFalseLit);

  auto compare = [&](std::size_t hi, std::size_t lo) {
    Lit a = wires[hi];
    Lit b = wires[lo];
    wires[hi] = encode_gate(cnf, GateOp::kOr, a, b);
    wires[lo] = encode_gate(cnf, GateOp::kAnd, a, b);
  };

  // Batcher's odd-even merge sort, iterative form.
  for (std::size_t p = 1; p < padded; p <<= 1)
    for (std::size_t k = p; k >= 1; k >>= 1)
      for (std::size_t j = k % p; j + k < padded; j += 2 * k)
        for (std::size_t i = 0; i < std::min(k, padded - j - k); ++i)
          if ((i + j) / (2 * p) == (i + j + k) / (2 * p)) compare(i + j, i + j + k);

  wires.resize(n);
  return wires;
}

std::string to_dimacs(const CnfFormula& formula) {
  std::string out = "p cnf " + std::to_string(formula.num_vars) + " " +
                    std::to_string(formula.clauses.size()) + "\n";
  char buf[16];
  for (const auto& clause : formula.clauses) {
    for (Lit l : clause) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), l.dimacs());
      out.append(buf, ptr);
      out.push_back(' ');
    }
    out.append("0\n");
  }
  return out;
}

}  // namespace lgnv
