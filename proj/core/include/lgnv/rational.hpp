#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace lgnv {

/// Exact rational used for confidences and thresholds. Confidence comparisons
/// never go through floating point.
using Rational = boost::rational<std::int64_t>;

/// Parses "P/Q", an integer, or a finite decimal such as "0.99" into an exact
/// rational. Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// "p/q" (or "p" when q == 1).
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// floor(n * r) for n >= 0 and r >= 0, computed in integer arithmetic.
std::int64_t floor_mul(std::int64_t n, const Rational& r);

}  // namespace lgnv
