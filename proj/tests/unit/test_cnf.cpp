#include <gtest/gtest.h>

#include <bit>

#include "fixtures.hpp"
#include "lgnv/cnf.hpp"
#include "lgnv/evaluator.hpp"
#include "tiny_sat.hpp"

using namespace lgnv;
using test::TinySat;

TEST(Builder, StartsWithTrueUnit) {
  CnfBuilder b;
  EXPECT_EQ(b.num_vars(), 1u);
  EXPECT_EQ(to_dimacs(b.formula()), "p cnf 1 1\n1 0\n");
}

TEST(Builder, Normalization) {
  CnfBuilder b;
  Lit x = b.new_var(), y = b.new_var();
  b.add_clause({x, kTrueLit});       // elided
  b.add_clause({x, ~x});             // elided
  b.add_clause({x, kFalseLit, x, y});  // -> x y
  EXPECT_EQ(b.num_clauses(), 2u);
  EXPECT_EQ(b.formula().clauses[1], (Clause{x, y}));
  b.add_clause({kFalseLit});
  EXPECT_EQ(b.formula().clauses.back(), (Clause{kFalseLit}));
  EXPECT_FALSE(TinySat(b.formula()).satisfiable());
}

TEST(Dimacs, ByteStable) {
  auto build = [] {
    CnfBuilder b;
    Lit x = b.new_var(), y = b.new_var();
    b.add_clause({x, ~y});
    b.add_clause({~x});
    return to_dimacs(b.formula());
  };
  EXPECT_EQ(build(), build());
  EXPECT_EQ(build(), "p cnf 3 3\n1 0\n2 -3 0\n-2 0\n");
}

TEST(EncodeGate, AndClauses) {
  CnfBuilder b;
  Lit a = b.new_var(), c = b.new_var();
  const std::size_t before = b.num_clauses();
  Lit o = encode_gate(b, GateOp::kAnd, a, c);
  EXPECT_EQ(b.num_clauses() - before, 3u);
  TinySat s(b.formula());
  Lit assume[] = {a, c, ~o};
  EXPECT_FALSE(s.satisfiable(assume));
}

TEST(EncodeGate, Folding) {
  CnfBuilder b;
  Lit a = b.new_var(), c = b.new_var();
  const auto vars = b.num_vars();
  const auto clauses = b.num_clauses();
  EXPECT_EQ(encode_gate(b, GateOp::kPassA, a, c), a);
  EXPECT_EQ(encode_gate(b, GateOp::kPassB, a, c), c);
  EXPECT_EQ(encode_gate(b, GateOp::kNotA, a, c), ~a);
  EXPECT_EQ(encode_gate(b, GateOp::kNotB, a, c), ~c);
  EXPECT_EQ(encode_gate(b, GateOp::kTrue, a, c), kTrueLit);
  EXPECT_EQ(encode_gate(b, GateOp::kFalse, a, c), kFalseLit);
  EXPECT_EQ(encode_gate(b, GateOp::kAnd, a, kTrueLit), a);
  EXPECT_EQ(encode_gate(b, GateOp::kAnd, a, kFalseLit), kFalseLit);
  EXPECT_EQ(encode_gate(b, GateOp::kXor, a, a), kFalseLit);
  EXPECT_EQ(encode_gate(b, GateOp::kXor, a, ~a), kTrueLit);
  EXPECT_EQ(encode_gate(b, GateOp::kOr, a, a), a);
  EXPECT_EQ(b.num_vars(), vars);
  EXPECT_EQ(b.num_clauses(), clauses);
}

// Every op x every input assignment, both with free variables pinned by
// assumptions and with constant inputs, must force exactly gate_truth.
TEST(EncodeGate, Exhaustive) {
  int checked = 0;
  for (unsigned code = 0; code < 16; ++code) {
    for (int av = 0; av < 2; ++av)
      for (int bv = 0; bv < 2; ++bv) {
        const bool want = gate_truth(GateOp(code), av, bv);
        {
          CnfBuilder b;
          Lit a = b.new_var(), c = b.new_var();
          const std::size_t before = b.num_clauses();
          Lit o = encode_gate(b, GateOp(code), a, c);
          EXPECT_LE(b.num_clauses() - before, 4u);
          TinySat s(b.formula());
          Lit good[] = {av ? a : ~a, bv ? c : ~c, want ? o : ~o};
          Lit bad[] = {av ? a : ~a, bv ? c : ~c, want ? ~o : o};
          EXPECT_TRUE(s.satisfiable(good)) << code;
          EXPECT_FALSE(s.satisfiable(bad)) << code;
        }
        {
          CnfBuilder b;
          Lit o = encode_gate(b, GateOp(code), av ? kTrueLit : kFalseLit,
                              bv ? kTrueLit : kFalseLit);
          EXPECT_EQ(CnfBuilder::constant(o), std::optional<bool>(want)) << code;
        }
        ++checked;
      }
  }
  EXPECT_EQ(checked, 64);
}

TEST(EncodeNetwork, ConstantNet) {
  CnfBuilder b;
  auto in = b.new_vars(3);
  const auto clauses = b.num_clauses();
  auto enc = encode_network(b, test::constant_netlist(3, 2, 2), in);
  EXPECT_EQ(b.num_clauses(), clauses);
  for (Lit l : enc.outputs) EXPECT_EQ(l, kTrueLit);
}

TEST(EncodeNetwork, MatchesForward) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::uint32_t d = 2 + seed % 7;  // up to 8
    const Netlist n = random_netlist(d, {6, 6, 4}, 2, 2, seed);
    CnfBuilder b;
    auto in = b.new_vars(d);
    auto enc = encode_network(b, n, in);
    EXPECT_LE(b.num_clauses(), 4 * n.num_gates() + 1);
    TinySat s(b.formula());
    for (std::uint64_t m = 0; m < (1u << d); ++m) {
      std::vector<Lit> assume;
      Bits x(d);
      for (std::uint32_t i = 0; i < d; ++i) {
        x[i] = (m >> i) & 1u;
        assume.push_back(x[i] ? in[i] : ~in[i]);
      }
      auto model = s.solve(assume);
      ASSERT_TRUE(model);
      const Bits want = forward(n, x);
      for (std::size_t k = 0; k < want.size(); ++k) {
        const Lit o = enc.outputs[k];
        const bool got = ((*model)[o.var()] != 0) != o.negative();
        ASSERT_EQ(got, want[k] != 0) << "seed " << seed << " input " << m << " out " << k;
        // Full equivalence: the opposite output value is refuted.
        std::vector<Lit> flip = assume;
        flip.push_back(want[k] ? ~o : o);
        if (!CnfBuilder::constant(o)) ASSERT_FALSE(s.satisfiable(flip));
      }
    }
  }
}

TEST(SortBlock, Identity) {
  CnfBuilder b;
  Lit x = b.new_var();
  std::vector<Lit> in{x};
  EXPECT_EQ(sort_block(b, in), in);
}

TEST(SortBlock, ConstantsFold) {
  CnfBuilder b;
  std::vector<Lit> in(5, kTrueLit);
  for (Lit l : sort_block(b, in)) EXPECT_EQ(l, kTrueLit);
  std::vector<Lit> mixed{kFalseLit, kTrueLit, kFalseLit};
  auto out = sort_block(b, mixed);
  EXPECT_EQ(out, (std::vector<Lit>{kTrueLit, kFalseLit, kFalseLit}));
}

TEST(SortBlock, ExhaustiveUpToEight) {
  for (std::uint32_t n = 1; n <= 8; ++n) {
    CnfBuilder b;
    auto in = b.new_vars(n);
    auto out = sort_block(b, in);
    ASSERT_EQ(out.size(), n);
    TinySat s(b.formula());
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      std::vector<Lit> assume;
      for (std::uint32_t i = 0; i < n; ++i) assume.push_back(((m >> i) & 1u) ? in[i] : ~in[i]);
      auto model = s.solve(assume);
      ASSERT_TRUE(model);
      const int ones = std::popcount(m);
      for (std::uint32_t k = 0; k < n; ++k) {
        const Lit o = out[k];
        const bool got = ((*model)[o.var()] != 0) != o.negative();
        ASSERT_EQ(got, int(k) < ones) << "n=" << n << " m=" << m << " k=" << k;
        std::vector<Lit> flip = assume;
        flip.push_back(got ? ~o : o);
        if (!CnfBuilder::constant(o)) ASSERT_FALSE(s.satisfiable(flip));
      }
    }
  }
}
