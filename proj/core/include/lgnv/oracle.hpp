#pragma once

#include <cstdint>
#include <vector>

#include "lgnv/netlist.hpp"
#include "lgnv/rational.hpp"
#include "lgnv/schema.hpp"
#include "lgnv/verdict.hpp"

namespace lgnv {

/// Largest W (number of well-formed inputs) with W * W <= 1e8.
inline constexpr std::uint64_t kOracleMaxInputs = 10000;

/// All well-formed inputs in lexicographic order of their feature values
/// (first feature most significant). Throws InstanceTooLarge above the guard.
std::vector<Bits> enumerate_inputs(const FeatureSchema& schema);

/// Exhaustive check of
///   phi(x, x', eps) && conf(f(x)) > kappa  ==>  f(x) == f(x').
/// Returns the lexicographically first violating pair, or Holds.
Verdict brute_force_verify(const Netlist& netlist, const FeatureSchema& schema,
                           Mode mode, std::uint32_t eps, const Rational& kappa);

/// Max confidence of f(x) over all pairs with phi and differing classes;
/// the property holds exactly for kappa >= that value. 1/C if no such pair.
Rational brute_force_min_kappa(const Netlist& netlist,
                               const FeatureSchema& schema, Mode mode,
                               std::uint32_t eps);

/// Whether some well-formed x with a nonzero output has conf(f(x)) > kappa.
bool brute_force_attainable(const Netlist& netlist,
                            const FeatureSchema& schema, const Rational& kappa);

}  // namespace lgnv
