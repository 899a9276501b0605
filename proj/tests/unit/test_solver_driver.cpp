#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "lgnv/driver.hpp"
#include "lgnv/error.hpp"
#include "lgnv/evaluator.hpp"
#include "lgnv/oracle.hpp"
#include "lgnv/property.hpp"
#include "lgnv/solver.hpp"

using namespace lgnv;
namespace fs = std::filesystem;

namespace {

// Shell script standing in for a solver.
std::string fake_solver(const std::string& name, const std::string& body) {
  const fs::path p = fs::temp_directory_path() / ("lgnv_fake_" + name + ".sh");
  std::ofstream(p) << "#!/bin/sh\n" << body << "\n";
  fs::permissions(p, fs::perms::owner_all);
  return p.string();
}

CnfFormula small_formula(bool sat) {
  CnfBuilder b;
  Lit x = b.new_var(), y = b.new_var();
  b.add_clause({x, y});
  b.add_clause({~x, y});
  b.add_clause({sat ? x : ~y});
  return b.release();
}

}  // namespace

TEST(ParseOutput, Sat) {
  auto o = parse_solver_output("c hi\ns SATISFIABLE\nv 1 -2\nv 3 0\n", 10, 3);
  EXPECT_EQ(o.status, SolveStatus::Sat);
  EXPECT_TRUE(o.value(Lit(1)));
  EXPECT_TRUE(o.value(Lit(-2)));
  EXPECT_TRUE(o.value(Lit(3)));
}

TEST(ParseOutput, UnsatAndUnknown) {
  EXPECT_EQ(parse_solver_output("s UNSATISFIABLE\n", 20, 3).status, SolveStatus::Unsat);
  EXPECT_EQ(parse_solver_output("s UNKNOWN\n", 0, 3).status, SolveStatus::Unknown);
  EXPECT_EQ(parse_solver_output("", 137, 3).status, SolveStatus::Unknown);
}

TEST(ParseOutput, Malformed) {
  EXPECT_THROW(parse_solver_output("s UNSATISFIABLE\n", 10, 1), SolverError);
  EXPECT_THROW(parse_solver_output("s SATISFIABLE\nv 1\n", 10, 1), SolverError);
  EXPECT_THROW(parse_solver_output("s SATISFIABLE\nv 1 0\n", 10, 2), SolverError);
  EXPECT_THROW(parse_solver_output("s SATISFIABLE\nv 1 x 0\n", 10, 1), SolverError);
  EXPECT_THROW(parse_solver_output("s SATISFIABLE\nv 5 0\n", 10, 1), SolverError);
  EXPECT_THROW(parse_solver_output("s SATISFIABLE\n", 20, 1), SolverError);
}

TEST(Solve, BundledSolverRoundTrip) {
  auto sat = solve(small_formula(true), {});
  ASSERT_EQ(sat.status, SolveStatus::Sat);
  EXPECT_TRUE(sat.value(Lit(2)));
  EXPECT_TRUE(sat.value(Lit(3)));
  EXPECT_EQ(solve(small_formula(false), {}).status, SolveStatus::Unsat);
}

TEST(Solve, KeepFiles) {
  const fs::path dir = fs::temp_directory_path() / "lgnv_keep_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  SolverConfig cfg;
  cfg.work_dir = dir;
  cfg.keep_files = true;
  solve(small_formula(true), cfg);
  EXPECT_GE(std::distance(fs::directory_iterator(dir), fs::directory_iterator()), 1);
  cfg.keep_files = false;
  fs::remove_all(dir);
  fs::create_directories(dir);
  solve(small_formula(true), cfg);
  EXPECT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator()), 0);
  fs::remove_all(dir);
}

TEST(Solve, TimeoutGivesUnknown) {
  SolverConfig cfg;
  cfg.executable = fake_solver("sleep", "sleep 5");
  cfg.timeout_seconds = 0.2;
  auto o = solve(small_formula(true), cfg);
  EXPECT_EQ(o.status, SolveStatus::Unknown);
  EXPECT_TRUE(o.timed_out);
  EXPECT_LT(o.seconds, 3.0);
}

TEST(Solve, CrashGivesUnknown) {
  SolverConfig cfg;
  cfg.executable = fake_solver("crash", "exit 3");
  EXPECT_EQ(solve(small_formula(true), cfg).status, SolveStatus::Unknown);
}

TEST(Solve, LyingSolverIsAnError) {
  SolverConfig cfg;
  cfg.executable = fake_solver("liar", "echo 's UNSATISFIABLE'; exit 10");
  EXPECT_THROW(solve(small_formula(true), cfg), SolverError);
}

TEST(Solve, MissingSolver) {
  SolverConfig cfg;
  cfg.executable = "/nonexistent/solver";
  EXPECT_THROW(solve(small_formula(true), cfg), SolverError);
}

TEST(Decode, TamperedModelIsRejected) {
  const auto s = test::sensitive_only_schema();
  const Netlist n = test::flip_netlist();
  PropertyQuery q{&n, &s, QueryMode::Fair, 0, Rational(1, 2)};
  auto enc = build_query(q);
  auto out = solve(enc.formula, {});
  ASSERT_EQ(out.status, SolveStatus::Sat);
  EXPECT_NO_THROW(decode_counterexample(out, enc.varmap, q));
  // Make x' equal to x without touching the gate variables.
  for (std::size_t i = 0; i < enc.varmap.x.inputs.size(); ++i) {
    const Lit a = enc.varmap.x.inputs[i], b = enc.varmap.x_prime.inputs[i];
    out.model[b.var()] = std::uint8_t(out.value(a) != b.negative());
  }
  EXPECT_THROW(decode_counterexample(out, enc.varmap, q), InternalConsistencyError);
}

TEST(Driver, FlipNetCounterexample) {
  const auto s = test::sensitive_only_schema();
  const Netlist n = test::flip_netlist();
  const Verdict v = verify_at(n, s, Mode::Fair, 0, Rational(1, 2));
  ASSERT_EQ(v.status, Status::Counterexample);
  ASSERT_TRUE(v.witness);
  EXPECT_NE(v.witness->x, v.witness->x_prime);
  EXPECT_EQ(v.witness->prediction.confidence, Rational(1));
  EXPECT_LT(v.stats.seconds, 1.0);
  EXPECT_GT(v.stats.num_clauses, 0u);
  EXPECT_EQ(verify_at(n, s, Mode::Robust, 0, Rational(1, 2)).status, Status::Holds);
}

TEST(Driver, ConstantNetSearch) {
  const auto s = test::sensitive_only_schema();
  const Netlist n = test::constant_netlist(2, 2, 1);
  auto r = search_min_kappa(n, s, Mode::Robust, 0);
  EXPECT_TRUE(r.converged);
  EXPECT_FALSE(r.unsafe_everywhere);
  EXPECT_EQ(r.kappa_star, Rational(1, 2));
  ASSERT_TRUE(r.attainability);
  EXPECT_FALSE(r.attainability->attainable);  // constant confidence 1/2 is not > 1/2
  EXPECT_EQ(verify_at(n, s, Mode::Robust, 0, Rational(1, 2)).status, Status::Holds);
}

TEST(Driver, FlipNetSearchPinsNearOne) {
  const auto s = test::sensitive_only_schema();
  const Netlist n = test::flip_netlist();
  auto r = search_min_kappa(n, s, Mode::Fair, 0);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(Rational(1) - r.kappa_star, Rational(1, 20));
  ASSERT_TRUE(r.last_counterexample);
  EXPECT_LT(*r.last_counterexample, r.kappa_star);
  EXPECT_TRUE(is_monotone_in_kappa(r.queries));
  ASSERT_TRUE(r.attainability);
  // Every probe below 1 fails, so the search ends at 1 where nothing is attainable.
  EXPECT_EQ(r.kappa_star, Rational(1));
  EXPECT_FALSE(r.attainability->attainable);
}

TEST(Driver, SweepFlipNet) {
  const auto s = test::sensitive_only_schema();
  const Netlist n = test::flip_netlist();
  std::vector<Rational> ks{Rational(1, 2), Rational(99, 100)};
  auto rows = sweep(n, s, Mode::Fair, 0, ks);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].verdict.status, Status::Counterexample);
  EXPECT_EQ(rows[1].verdict.status, Status::Counterexample);
  EXPECT_THROW(sweep(n, s, Mode::Fair, 0, {}), InvalidInput);
}

TEST(Driver, UnknownStopsSearch) {
  const auto s = test::sensitive_only_schema();
  SolverConfig cfg;
  cfg.executable = fake_solver("sleep2", "sleep 5");
  cfg.timeout_seconds = 0.1;
  auto r = search_min_kappa(test::flip_netlist(), s, Mode::Fair, 0, kDefaultTolerance, cfg);
  EXPECT_FALSE(r.converged);
  ASSERT_EQ(r.queries.size(), 1u);
  EXPECT_EQ(r.queries[0].status, Status::Unknown);
}

TEST(Driver, AttainabilityAgreesWithEnumeration) {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 15; ++it) {
    auto inst = test::random_instance(rng);
    for (Rational k : {Rational(1, 2), Rational(3, 4), Rational(9, 10)}) {
      auto r = check_attainable(inst.netlist, inst.schema, k);
      EXPECT_EQ(r.attainable, brute_force_attainable(inst.netlist, inst.schema, k));
      if (r.attainable) EXPECT_GT(r.prediction.confidence, k);
    }
  }
}

TEST(Driver, MonotoneCheck) {
  std::vector<ProbeRecord> ok{{Rational(1, 2), Status::Counterexample, {}},
                              {Rational(3, 4), Status::Holds, {}},
                              {Rational(7, 8), Status::Unknown, {}}};
  EXPECT_TRUE(is_monotone_in_kappa(ok));
  ok.push_back({Rational(9, 10), Status::Counterexample, {}});
  EXPECT_FALSE(is_monotone_in_kappa(ok));
}
