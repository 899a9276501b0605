#include "lgnv/rational.hpp"

#include <cctype>
#include <charconv>
#include <limits>

#include "lgnv/error.hpp"

namespace lgnv {
namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParseError("invalid rational '" + std::string(whole) + "'", 0, 1);
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_int(text.substr(0, slash), whole);
    auto den = parse_int(text.substr(slash + 1), whole);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(whole) + "'", slash + 1, 1);
    return Rational(num, den);
  }

  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_int(text, whole));

  bool negative = !text.empty() && text.front() == '-';
  std::string_view int_part = text.substr(negative ? 1 : 0, dot - (negative ? 1 : 0));
  std::string_view frac_part = text.substr(dot + 1);
  if ((int_part.empty() && frac_part.empty()) || frac_part.size() > 15)
    throw ParseError("invalid rational '" + std::string(whole) + "'", 0, 1);
  for (char c : frac_part)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("invalid rational '" + std::string(whole) + "'", 0, 1);

  std::int64_t num = int_part.empty() ? 0 : parse_int(int_part, whole);
  std::int64_t den = 1;
  for (char c : frac_part) {
    if (num > (std::numeric_limits<std::int64_t>::max() - 9) / 10)
      throw ParseError("rational out of range '" + std::string(whole) + "'", 0, 1);
    num = num * 10 + (c - '0');
    den *= 10;
  }
  return Rational(negative ? -num : num, den);
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

std::int64_t floor_mul(std::int64_t n, const Rational& r) {
  // Non-negative operands, so integer division already floors.
  __int128 num = static_cast<__int128>(n) * r.numerator();
  return static_cast<std::int64_t>(num / r.denominator());
}

}  // namespace lgnv
