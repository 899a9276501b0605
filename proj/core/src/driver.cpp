#include "lgnv/driver.hpp"

#include "lgnv/error.hpp"
#include "lgnv/property.hpp"

namespace lgnv {
namespace {

SolveStats stats_of(const CnfFormula& formula, const SolveOutcome& outcome) {
  return {outcome.seconds, formula.num_vars, formula.clauses.size()};
}

}  // namespace

Verdict verify_at(const Netlist& netlist, const FeatureSchema& schema,
                  Mode mode, std::uint32_t eps, const Rational& kappa,
                  const SolverConfig& config) {
  PropertyQuery query{&netlist, &schema, to_query_mode(mode), eps, kappa};
  EncodedQuery encoded = build_query(query);
  SolveOutcome outcome = solve(encoded.formula, config);

  Verdict verdict;
  verdict.stats = stats_of(encoded.formula, outcome);
  switch (outcome.status) {
    case SolveStatus::Unsat:
      verdict.status = Status::Holds;
      break;
    case SolveStatus::Sat:
      verdict.status = Status::Counterexample;
      verdict.witness = decode_counterexample(outcome, encoded.varmap, query);
      break;
    case SolveStatus::Unknown:
      verdict.status = Status::Unknown;
      break;
  }
  return verdict;
}

AttainabilityResult check_attainable(const Netlist& netlist,
                                     const FeatureSchema& schema,
                                     const Rational& kappa,
                                     const SolverConfig& config) {
  PropertyQuery query{&netlist, &schema, QueryMode::Attainable, 0, kappa};
  EncodedQuery encoded = build_query(query);
  SolveOutcome outcome = solve(encoded.formula, config);

  AttainabilityResult result;
  result.stats = stats_of(encoded.formula, outcome);
  result.unknown = outcome.status == SolveStatus::Unknown;
  if (outcome.status == SolveStatus::Sat) {
    result.attainable = true;
    result.input = decode_attainable(outcome, encoded.varmap, query);
    result.prediction = predict(netlist, result.input);
  }
  return result;
}

KappaSearchResult search_min_kappa(const Netlist& netlist,
                                   const FeatureSchema& schema, Mode mode,
                                   std::uint32_t eps, const Rational& tolerance,
                                   const SolverConfig& config,
                                   bool check_attainability) {
  if (!(tolerance > Rational(0))) throw InvalidInput("tolerance must be > 0");

  KappaSearchResult result;
  Rational lo(1, netlist.num_classes);
  Rational hi(1);
  result.bracket_lo = lo;
  result.bracket_hi = hi;

  auto probe = [&](const Rational& kappa) {
    Verdict v = verify_at(netlist, schema, mode, eps, kappa, config);
    result.queries.push_back({kappa, v.status, v.stats});
    result.total_seconds += v.stats.seconds;
    if (v.status == Status::Counterexample) result.last_counterexample = kappa;
    return v.status;
  };

  auto finish = [&](bool converged) {
    result.converged = converged;
    result.bracket_lo = lo;
    result.bracket_hi = hi;
    if (converged && check_attainability && !result.unsafe_everywhere)
      result.attainability = check_attainable(netlist, schema, result.kappa_star, config);
    return result;
  };

  Status at_hi = probe(hi);
  if (at_hi == Status::Unknown) return finish(false);
  if (at_hi == Status::Counterexample) {
    result.unsafe_everywhere = true;
    result.kappa_star = hi;
    return finish(true);
  }
  result.kappa_star = hi;

  Status at_lo = probe(lo);
  if (at_lo == Status::Unknown) return finish(false);
  if (at_lo == Status::Holds) {
    hi = lo;
    result.kappa_star = lo;
    return finish(true);
  }

  while (hi - lo > tolerance) {
    Rational mid = (lo + hi) / 2;
    Status s = probe(mid);
    if (s == Status::Unknown) return finish(false);
    if (s == Status::Holds)
      hi = mid;
    else
      lo = mid;
    result.kappa_star = hi;
  }
  return finish(true);
}

std::vector<SweepRow> sweep(const Netlist& netlist, const FeatureSchema& schema,
                            Mode mode, std::uint32_t eps,
                            std::span<const Rational> kappas,
                            const SolverConfig& config) {
  if (kappas.empty()) throw InvalidInput("sweep needs at least one threshold");
  std::vector<SweepRow> rows;
  rows.reserve(kappas.size());
  for (const auto& kappa : kappas)
    rows.push_back({kappa, verify_at(netlist, schema, mode, eps, kappa, config)});
  return rows;
}

bool is_monotone_in_kappa(std::span<const ProbeRecord> probes) {
  for (const auto& a : probes) {
    if (a.status != Status::Holds) continue;
    for (const auto& b : probes)
      if (b.status == Status::Counterexample && b.kappa >= a.kappa) return false;
  }
  return true;
}

}  // namespace lgnv
