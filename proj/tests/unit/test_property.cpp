#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lgnv/error.hpp"
#include "lgnv/evaluator.hpp"
#include "lgnv/property.hpp"
#include "tiny_sat.hpp"

using namespace lgnv;
using test::TinySat;

namespace {

FeatureSchema thermo(std::uint32_t bits) {
  return FeatureSchema({NumericFeature{"t", bits, equal_width_thresholds(0, 1, bits), 0.0, 1.0}});
}

FeatureSchema onehot(std::uint32_t m) {
  return FeatureSchema({CategoricalFeature{"c", m, false, {}}});
}

std::vector<Lit> assume_bits(std::span<const Lit> vars, const Bits& bits) {
  std::vector<Lit> out;
  for (std::size_t i = 0; i < vars.size(); ++i) out.push_back(bits[i] ? vars[i] : ~vars[i]);
  return out;
}

bool lit_true(const std::vector<std::int8_t>& model, Lit l) {
  return (model[l.var()] != 0) != l.negative();
}

}  // namespace

TEST(WellFormed, ThermometerExample) {
  CnfBuilder b;
  auto t = b.new_vars(3);
  emit_well_formed(b, thermo(3), t);
  EXPECT_EQ(b.num_clauses(), 1u + 2u);
  TinySat s(b.formula());
  EXPECT_EQ(s.count_projected(t), 4u);
  for (const Bits& ok : {Bits{0, 0, 0}, Bits{1, 0, 0}, Bits{1, 1, 0}, Bits{1, 1, 1}})
    EXPECT_TRUE(s.satisfiable(assume_bits(t, ok)));
}

TEST(WellFormed, SingleBitHasNoClauses) {
  CnfBuilder b;
  auto t = b.new_vars(1);
  emit_well_formed(b, thermo(1), t);
  EXPECT_EQ(b.num_clauses(), 1u);
  EXPECT_EQ(TinySat(b.formula()).count_projected(t), 2u);
}

TEST(WellFormed, OneHotArityThree) {
  CnfBuilder b;
  auto c = b.new_vars(3);
  emit_well_formed(b, onehot(3), c);
  EXPECT_EQ(TinySat(b.formula()).count_projected(c), 3u);
}

TEST(WellFormed, ModelsMatchPredicate) {
  FeatureSchema s({NumericFeature{"a", 3, {0.1, 0.2, 0.3}, std::nullopt, std::nullopt},
                   CategoricalFeature{"b", 3, true, {}},
                   NumericFeature{"c", 2, {0.1, 0.2}, std::nullopt, std::nullopt}});
  CnfBuilder b;
  auto x = b.new_vars(s.width());
  emit_well_formed(b, s, x);
  TinySat sat(b.formula());
  for (std::uint32_t m = 0; m < (1u << s.width()); ++m) {
    Bits bits(s.width());
    for (std::uint32_t i = 0; i < s.width(); ++i) bits[i] = (m >> i) & 1u;
    EXPECT_EQ(sat.satisfiable(assume_bits(x, bits)), is_well_formed(s, bits)) << m;
  }
}

TEST(Prox, EpsZeroIsEquivalence) {
  CnfBuilder b;
  auto t = b.new_vars(3), u = b.new_vars(3);
  emit_prox(b, 0, t, u);
  TinySat s(b.formula());
  for (std::size_t k = 0; k < 3; ++k) {
    Lit a[] = {t[k], ~u[k]};
    Lit c[] = {~t[k], u[k]};
    EXPECT_FALSE(s.satisfiable(a));
    EXPECT_FALSE(s.satisfiable(c));
  }
}

TEST(Prox, ClauseLevelExample) {
  const auto schema = thermo(5);
  for (std::uint32_t eps : {1u, 2u}) {
    CnfBuilder b;
    auto t = b.new_vars(5), u = b.new_vars(5);
    emit_prox(b, eps, t, u);
    std::uint32_t v3[] = {3}, v5[] = {5};
    auto a = assume_bits(t, encode_values(schema, v3));
    auto c = assume_bits(u, encode_values(schema, v5));
    a.insert(a.end(), c.begin(), c.end());
    EXPECT_EQ(TinySat(b.formula()).satisfiable(a), eps == 2);
  }
}

TEST(Prox, VacuousWhenEpsCoversBlock) {
  CnfBuilder b;
  auto t = b.new_vars(3), u = b.new_vars(3);
  emit_prox(b, 3, t, u);
  EXPECT_EQ(b.num_clauses(), 1u);
}

TEST(Prox, ExhaustiveAgainstPhi) {
  for (std::uint32_t bits = 1; bits <= 6; ++bits) {
    const auto schema = thermo(bits);
    for (std::uint32_t eps = 0; eps <= 3; ++eps) {
      CnfBuilder b;
      auto t = b.new_vars(bits), u = b.new_vars(bits);
      emit_prox(b, eps, t, u);
      TinySat s(b.formula());
      for (std::uint32_t v = 0; v <= bits; ++v)
        for (std::uint32_t w = 0; w <= bits; ++w) {
          std::uint32_t va[] = {v}, wa[] = {w};
          const Bits x = encode_values(schema, va), y = encode_values(schema, wa);
          auto a = assume_bits(t, x);
          auto c = assume_bits(u, y);
          a.insert(a.end(), c.begin(), c.end());
          ASSERT_EQ(s.satisfiable(a), check_phi(x, y, schema, eps, Mode::Robust))
              << "B=" << bits << " eps=" << eps << " v=" << v << " v'=" << w;
        }
    }
  }
}

TEST(Categorical, SameAndDiffExamples) {
  for (bool diff : {false, true}) {
    CnfBuilder b;
    auto c = b.new_vars(2), d = b.new_vars(2);
    if (diff)
      emit_diff_cat(b, c, d);
    else
      emit_same_cat(b, c, d);
    TinySat s(b.formula());
    Lit differ[] = {c[0], ~c[1], ~d[0], d[1]};
    Lit equal[] = {c[0], ~c[1], d[0], ~d[1]};
    EXPECT_EQ(s.satisfiable(differ), diff);
    EXPECT_EQ(s.satisfiable(equal), !diff);
  }
}

TEST(Categorical, DiffModelCount) {
  for (std::uint32_t m = 2; m <= 4; ++m) {
    CnfBuilder b;
    auto c = b.new_vars(m), d = b.new_vars(m);
    emit_well_formed(b, onehot(m), c);
    emit_well_formed(b, onehot(m), d);
    CnfBuilder same = b;
    emit_diff_cat(b, c, d);
    emit_same_cat(same, c, d);
    std::vector<Lit> both = c;
    both.insert(both.end(), d.begin(), d.end());
    EXPECT_EQ(TinySat(b.formula()).count_projected(both), std::uint64_t(m) * (m - 1));
    EXPECT_EQ(TinySat(same.formula()).count_projected(both), m);
  }
}

namespace {

struct WinningSetup {
  CnfBuilder b;
  std::vector<std::vector<Lit>> raw;
  std::vector<Lit> winners;
  std::vector<std::vector<Lit>> sorted;
};

void build_winning(WinningSetup& w, std::uint32_t classes, std::uint32_t block) {
  for (std::uint32_t c = 0; c < classes; ++c) {
    w.raw.push_back(w.b.new_vars(block));
    w.sorted.push_back(sort_block(w.b, w.raw.back()));
  }
  w.winners = emit_winning(w.b, w.sorted);
}

std::vector<Lit> assume_scores(const WinningSetup& w, const std::vector<std::uint32_t>& scores) {
  std::vector<Lit> a;
  for (std::size_t c = 0; c < scores.size(); ++c)
    for (std::size_t k = 0; k < w.raw[c].size(); ++k)
      a.push_back(k < scores[c] ? w.raw[c][k] : ~w.raw[c][k]);
  return a;
}

}  // namespace

TEST(Winning, StrictLeader) {
  WinningSetup w;
  build_winning(w, 2, 2);
  TinySat s(w.b.formula());
  auto a = assume_scores(w, {2, 1});
  auto model = s.solve(a);
  ASSERT_TRUE(model);
  EXPECT_TRUE(lit_true(*model, w.winners[0]));
  EXPECT_FALSE(lit_true(*model, w.winners[1]));
  a.push_back(w.winners[1]);
  EXPECT_FALSE(s.satisfiable(a));
}

TEST(Winning, TieForcesLastIndex) {
  WinningSetup w;
  build_winning(w, 2, 1);
  TinySat s(w.b.formula());
  auto a = assume_scores(w, {1, 1});
  auto with_first = a;
  with_first.push_back(w.winners[0]);
  EXPECT_FALSE(s.satisfiable(with_first));
  auto model = s.solve(a);
  ASSERT_TRUE(model);
  EXPECT_TRUE(lit_true(*model, w.winners[1]));
}

TEST(Winning, ExactlyOneWinnerMatchesPredict) {
  for (std::uint32_t classes = 2; classes <= 3; ++classes)
    for (std::uint32_t block = 1; block <= (classes == 2 ? 3u : 2u); ++block) {
      WinningSetup w;
      build_winning(w, classes, block);
      TinySat s(w.b.formula());
      std::vector<std::uint32_t> scores(classes, 0);
      for (;;) {
        const auto a = assume_scores(w, scores);
        const std::uint32_t want = predict_from_scores({scores}).cls;
        for (std::uint32_t c = 0; c < classes; ++c) {
          auto with = a;
          with.push_back(w.winners[c]);
          EXPECT_EQ(s.satisfiable(with), c == want);
        }
        std::size_t i = 0;
        while (i < classes && ++scores[i] > block) scores[i++] = 0;
        if (i == classes) break;
      }
    }
}

TEST(DiffClass, Examples) {
  CnfBuilder b;
  auto w = b.new_vars(2), v = b.new_vars(2);
  emit_diff_class(b, w, v);
  TinySat s(b.formula());
  Lit same[] = {w[0], ~w[1], v[0], ~v[1]};
  Lit diff[] = {w[0], ~w[1], ~v[0], v[1]};
  EXPECT_FALSE(s.satisfiable(same));
  EXPECT_TRUE(s.satisfiable(diff));
}

TEST(DiffClass, ModelsAreDifferentPredictions) {
  const std::uint32_t classes = 3, block = 1;
  WinningSetup x, y;
  build_winning(x, classes, block);
  // Second copy in the same builder.
  for (std::uint32_t c = 0; c < classes; ++c) {
    y.raw.push_back(x.b.new_vars(block));
    y.sorted.push_back(sort_block(x.b, y.raw.back()));
  }
  y.winners = emit_winning(x.b, y.sorted);
  emit_diff_class(x.b, x.winners, y.winners);
  TinySat s(x.b.formula());
  for (std::uint32_t m = 0; m < 64; ++m) {
    std::vector<std::uint32_t> sx, sy;
    for (std::uint32_t c = 0; c < classes; ++c) {
      sx.push_back((m >> c) & 1u);
      sy.push_back((m >> (c + 3)) & 1u);
    }
    auto a = assume_scores(x, sx);
    auto c = assume_scores(y, sy);
    a.insert(a.end(), c.begin(), c.end());
    EXPECT_EQ(s.satisfiable(a), predict_from_scores({sx}).cls != predict_from_scores({sy}).cls);
  }
}

TEST(Confidence, HighestNonUnitConfidence) {
  auto run = [](const Rational& kappa) {
    CnfBuilder b;
    std::vector<std::vector<Lit>> blocks{std::vector<Lit>(150, kTrueLit),
                                         std::vector<Lit>(150, kFalseLit)};
    blocks[1][0] = kTrueLit;
    std::vector<Lit> all;
    std::vector<std::vector<Lit>> sorted;
    for (auto& blk : blocks) {
      sorted.push_back(sort_block(b, blk));
      all.insert(all.end(), blk.begin(), blk.end());
    }
    auto total = sort_block(b, all);
    emit_confidence_gt(b, kappa, sorted, total);
    return TinySat(b.formula()).satisfiable();
  };
  EXPECT_TRUE(run(Rational(99, 100)));
  EXPECT_TRUE(run(Rational(149, 151)));
  EXPECT_FALSE(run(Rational(150, 151)));
  EXPECT_FALSE(run(Rational(1)));
}

TEST(Confidence, RejectsKappaOutsideUnitInterval) {
  CnfBuilder b;
  std::vector<std::vector<Lit>> sorted{{kTrueLit}, {kFalseLit}};
  std::vector<Lit> total{kTrueLit, kFalseLit};
  EXPECT_THROW(emit_confidence_gt(b, Rational(3, 2), sorted, total), InvalidInput);
  EXPECT_THROW(emit_confidence_gt(b, Rational(-1, 2), sorted, total), InvalidInput);
}

TEST(Confidence, ExhaustiveTwoClasses) {
  for (std::uint32_t block = 1; block <= 3; ++block) {
    CnfBuilder base;
    std::vector<std::vector<Lit>> raw, sorted;
    std::vector<Lit> all;
    for (int c = 0; c < 2; ++c) {
      raw.push_back(base.new_vars(block));
      sorted.push_back(sort_block(base, raw.back()));
      all.insert(all.end(), raw.back().begin(), raw.back().end());
    }
    auto total = sort_block(base, all);
    for (int k = 0; k <= 8; ++k) {
      const Rational kappa(k, 8);
      CnfBuilder b = base;
      emit_confidence_gt(b, kappa, sorted, total);
      TinySat s(b.formula());
      for (std::uint32_t m = 0; m < (1u << (2 * block)); ++m) {
        Bits out(2 * block);
        for (std::uint32_t i = 0; i < 2 * block; ++i) out[i] = (m >> i) & 1u;
        const Prediction p = predict_from_scores(score_outputs(out, 2, block));
        const bool sat = s.satisfiable(assume_bits(all, out));
        if (p.degenerate)
          EXPECT_TRUE(sat);  // vacuous on the all-zero output
        else
          EXPECT_EQ(sat, p.confidence > kappa) << "L=" << block << " m=" << m << " k=" << k;
      }
    }
  }
}

TEST(BuildQuery, ConstantNetIsUnsat) {
  const auto s = test::sensitive_only_schema();
  const Netlist n = test::constant_netlist(2, 2, 1);
  for (QueryMode m : {QueryMode::Fair, QueryMode::Robust})
    for (Rational k : {Rational(1, 2), Rational(3, 4)}) {
      auto q = build_query({&n, &s, m, 0, k});
      EXPECT_FALSE(TinySat(q.formula).satisfiable());
    }
}

TEST(BuildQuery, FlipNetFairIsSat) {
  const auto s = test::sensitive_only_schema();
  const Netlist n = test::flip_netlist();
  auto q = build_query({&n, &s, QueryMode::Fair, 0, Rational(1, 2)});
  auto model = TinySat(q.formula).solve();
  ASSERT_TRUE(model);
  Bits x, y;
  for (Lit l : q.varmap.x.inputs) x.push_back(lit_true(*model, l));
  for (Lit l : q.varmap.x_prime.inputs) y.push_back(lit_true(*model, l));
  EXPECT_NE(x, y);
  EXPECT_NE(predict(n, x).cls, predict(n, y).cls);
  EXPECT_FALSE(TinySat(build_query({&n, &s, QueryMode::Robust, 0, Rational(1, 2)}).formula)
                   .satisfiable());
}

TEST(BuildQuery, ComponentStatsSumToTotals) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 10; ++it) {
    auto inst = test::random_instance(rng);
    for (QueryMode m : {QueryMode::Fair, QueryMode::Robust, QueryMode::Attainable}) {
      auto q = build_query({&inst.netlist, &inst.schema, m, 1, Rational(3, 4)});
      std::uint64_t clauses = 0, vars = 0;
      for (const auto& c : q.varmap.components) {
        clauses += c.clauses;
        vars += c.vars;
      }
      EXPECT_EQ(clauses, q.formula.clauses.size());
      EXPECT_EQ(vars, q.formula.num_vars);
      EXPECT_FALSE(serialize_varmap(q.varmap).empty());
    }
  }
}

TEST(BuildQuery, Errors) {
  const Netlist n = test::flip_netlist();
  FeatureSchema plain({CategoricalFeature{"c", 2, false, {}}});
  EXPECT_THROW(build_query({&n, &plain, QueryMode::Fair, 0, Rational(1, 2)}), InvalidInput);
  EXPECT_NO_THROW(build_query({&n, &plain, QueryMode::Robust, 0, Rational(1, 2)}));
  FeatureSchema wide({CategoricalFeature{"c", 3, true, {}}});
  EXPECT_THROW(build_query({&n, &wide, QueryMode::Fair, 0, Rational(1, 2)}), InvalidInput);
  auto s = test::sensitive_only_schema();
  EXPECT_THROW(build_query({&n, &s, QueryMode::Fair, 0, Rational(2)}), InvalidInput);
}

TEST(BuildQuery, AttainableExcludesAllZero) {
  const auto s = test::sensitive_only_schema();
  const Netlist zero = test::constant_netlist(2, 2, 1, GateOp::kFalse);
  EXPECT_FALSE(TinySat(build_query({&zero, &s, QueryMode::Attainable, 0, Rational(0)}).formula)
                   .satisfiable());
  const Netlist flip = test::flip_netlist();
  EXPECT_TRUE(TinySat(build_query({&flip, &s, QueryMode::Attainable, 0, Rational(99, 100)}).formula)
                  .satisfiable());
}
