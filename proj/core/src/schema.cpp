#include "lgnv/schema.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "lgnv/error.hpp"

namespace lgnv {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void check_feature(NumericFeature& f) {
  if (f.name.empty()) throw InvalidInput("numerical feature without a name");
  if (f.bits < 1)
    throw InvalidInput("feature '" + f.name + "': bits must be >= 1");
  if (f.thresholds.empty()) {
    if (!f.lo || !f.hi)
      throw InvalidInput("feature '" + f.name +
                         "': needs lo/hi or explicit thresholds");
    f.thresholds = equal_width_thresholds(*f.lo, *f.hi, f.bits);
  }
  if (f.thresholds.size() != f.bits)
    throw InvalidInput("feature '" + f.name + "': " +
                       std::to_string(f.thresholds.size()) +
                       " thresholds for " + std::to_string(f.bits) + " bits");
  for (std::size_t k = 1; k < f.thresholds.size(); ++k)
    if (!(f.thresholds[k - 1] < f.thresholds[k]))
      throw InvalidInput("feature '" + f.name +
                         "': thresholds must be strictly increasing");
}

void check_feature(CategoricalFeature& f) {
  if (f.name.empty()) throw InvalidInput("categorical feature without a name");
  if (f.arity < 2)
    throw InvalidInput("feature '" + f.name + "': arity must be >= 2");
  if (!f.values.empty() && f.values.size() != f.arity)
    throw InvalidInput("feature '" + f.name + "': " +
                       std::to_string(f.values.size()) + " value labels for arity " +
                       std::to_string(f.arity));
}

const std::string& feature_name(const Feature& f) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, f);
}

}  // namespace

FeatureSchema::FeatureSchema(std::vector<Feature> features)
    : features_(std::move(features)) {
  std::set<std::string> names;
  for (auto& f : features_) {
    std::visit([](auto& x) { check_feature(x); }, f);
    if (!names.insert(feature_name(f)).second)
      throw InvalidInput("duplicate feature name '" + feature_name(f) + "'");
    std::uint32_t w = std::visit([](const auto& x) { return x.width(); }, f);
    ranges_.push_back({width_, w});
    width_ += w;
  }
}

const std::string& FeatureSchema::name(std::size_t i) const {
  return feature_name(features_[i]);
}

std::uint32_t FeatureSchema::num_values(std::size_t i) const {
  return std::visit([](const auto& x) { return x.num_values(); }, features_[i]);
}

bool FeatureSchema::is_numeric(std::size_t i) const {
  return std::holds_alternative<NumericFeature>(features_[i]);
}

bool FeatureSchema::is_sensitive(std::size_t i) const {
  auto* cat = std::get_if<CategoricalFeature>(&features_[i]);
  return cat != nullptr && cat->sensitive;
}

bool FeatureSchema::has_sensitive() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (is_sensitive(i)) return true;
  return false;
}

std::uint64_t FeatureSchema::num_inputs() const {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < size(); ++i) {
    std::uint64_t v = num_values(i);
    if (n > std::numeric_limits<std::uint64_t>::max() / v)
      return std::numeric_limits<std::uint64_t>::max();
    n *= v;
  }
  return n;
}

bool operator==(const FeatureSchema& a, const FeatureSchema& b) {
  return serialize_schema(a) == serialize_schema(b);
}

std::vector<double> equal_width_thresholds(double lo, double hi,
                                           std::uint32_t bits) {
  if (!(lo < hi)) throw InvalidInput("numerical range needs lo < hi");
  std::vector<double> t;
  t.reserve(bits);
  for (std::uint32_t k = 1; k <= bits; ++k)
    t.push_back(lo + (hi - lo) * double(k) / double(bits + 1));
  return t;
}

bool is_well_formed(const FeatureSchema& schema, BitSpan bits) {
  if (bits.size() != schema.width()) return false;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    auto r = schema.range(i);
    auto block = bits.subspan(r.offset, r.width);
    if (schema.is_numeric(i)) {
      for (std::size_t k = 1; k < block.size(); ++k)
        if (block[k] && !block[k - 1]) return false;
    } else {
      std::size_t ones = 0;
      for (auto b : block) ones += b ? 1 : 0;
      if (ones != 1) return false;
    }
  }
  return true;
}

Bits encode_values(const FeatureSchema& schema,
                   std::span<const std::uint32_t> values) {
  if (values.size() != schema.size())
    throw InvalidInput("expected " + std::to_string(schema.size()) +
                       " feature values, got " + std::to_string(values.size()));
  Bits bits(schema.width(), 0);
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (values[i] >= schema.num_values(i))
      throw InvalidInput("feature '" + schema.name(i) + "': value " +
                         std::to_string(values[i]) + " out of range 0.." +
                         std::to_string(schema.num_values(i) - 1));
    auto r = schema.range(i);
    if (schema.is_numeric(i)) {
      for (std::uint32_t k = 0; k < values[i]; ++k) bits[r.offset + k] = 1;
    } else {
      bits[r.offset + values[i]] = 1;
    }
  }
  return bits;
}

std::vector<std::uint32_t> decode_values(const FeatureSchema& schema,
                                         BitSpan bits) {
  if (bits.size() != schema.width())
    throw InvalidInput("expected " + std::to_string(schema.width()) +
                       " input bits, got " + std::to_string(bits.size()));
  std::vector<std::uint32_t> values;
  values.reserve(schema.size());
  for (std::size_t i = 0; i < schema.size(); ++i) {
    auto r = schema.range(i);
    auto block = bits.subspan(r.offset, r.width);
    if (schema.is_numeric(i)) {
      std::uint32_t v = 0;
      while (v < block.size() && block[v]) ++v;
      for (std::size_t k = v; k < block.size(); ++k)
        if (block[k])
          throw InvalidInput("feature '" + schema.name(i) +
                             "': thermometer bits are not monotone");
      values.push_back(v);
    } else {
      std::uint32_t hot = 0;
      std::size_t ones = 0;
      for (std::uint32_t k = 0; k < block.size(); ++k)
        if (block[k]) {
          hot = k;
          ++ones;
        }
      if (ones != 1)
        throw InvalidInput("feature '" + schema.name(i) +
                           "': one-hot block has " + std::to_string(ones) +
                           " bits set");
      values.push_back(hot);
    }
  }
  return values;
}

namespace {

struct LineParser {
  std::string_view line;
  std::size_t line_offset;
  std::size_t line_no;

  [[noreturn]] void fail(const std::string& msg, std::string_view at) const {
    std::size_t col = at.data() >= line.data() ? std::size_t(at.data() - line.data()) : 0;
    throw ParseError(msg, line_offset + col, line_no);
  }

  double to_double(std::string_view text) const {
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
      fail("invalid number '" + std::string(text) + "'", text);
    return v;
  }

  std::uint32_t to_uint(std::string_view text) const {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
      fail("invalid integer '" + std::string(text) + "'", text);
    return v;
  }
};

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace

FeatureSchema parse_schema(std::string_view text) {
  std::vector<Feature> features;
  std::size_t offset = 0;
  std::size_t line_no = 0;
  while (offset <= text.size()) {
    ++line_no;
    auto eol = text.find('\n', offset);
    std::string_view line = text.substr(offset, eol == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : eol - offset);
    LineParser lp{line, offset, line_no};
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    auto toks = tokens(line);
    if (!toks.empty()) {
      if (toks.size() < 2) lp.fail("feature line needs a kind and a name", toks[0]);
      std::string_view kind = toks[0];
      std::string name(toks[1]);
      std::vector<std::pair<std::string_view, std::string_view>> kv;
      std::set<std::string_view> seen;
      for (std::size_t t = 2; t < toks.size(); ++t) {
        auto eq = toks[t].find('=');
        if (eq == std::string_view::npos) lp.fail("expected key=value", toks[t]);
        auto key = toks[t].substr(0, eq);
        if (!seen.insert(key).second)
          lp.fail("duplicate key '" + std::string(key) + "'", toks[t]);
        kv.emplace_back(key, toks[t].substr(eq + 1));
      }

      try {
        if (kind == "num") {
          NumericFeature f;
          f.name = name;
          bool has_bits = false;
          for (auto [key, value] : kv) {
            if (key == "bits") {
              f.bits = lp.to_uint(value);
              has_bits = true;
            } else if (key == "lo") {
              f.lo = lp.to_double(value);
            } else if (key == "hi") {
              f.hi = lp.to_double(value);
            } else if (key == "thresholds") {
              for (auto part : split(value, ','))
                f.thresholds.push_back(lp.to_double(part));
            } else {
              lp.fail("unknown key '" + std::string(key) + "' for num feature", key);
            }
          }
          if (!has_bits) lp.fail("num feature needs bits=<B>", toks[0]);
          if (!f.thresholds.empty() && (f.lo || f.hi))
            lp.fail("give either lo/hi or thresholds, not both", toks[0]);
          check_feature(f);
          features.emplace_back(std::move(f));
        } else if (kind == "cat") {
          CategoricalFeature f;
          f.name = name;
          bool has_arity = false;
          bool has_sensitive = false;
          for (auto [key, value] : kv) {
            if (key == "arity") {
              f.arity = lp.to_uint(value);
              has_arity = true;
            } else if (key == "sensitive") {
              if (value != "0" && value != "1")
                lp.fail("sensitive must be 0 or 1", value);
              f.sensitive = value == "1";
              has_sensitive = true;
            } else if (key == "values") {
              for (auto part : split(value, '|')) f.values.emplace_back(part);
            } else {
              lp.fail("unknown key '" + std::string(key) + "' for cat feature", key);
            }
          }
          if (!has_arity || !has_sensitive)
            lp.fail("cat feature needs arity=<m> and sensitive=<0|1>", toks[0]);
          check_feature(f);
          features.emplace_back(std::move(f));
        } else {
          lp.fail("unknown feature kind '" + std::string(kind) + "'", kind);
        }
      } catch (const InvalidInput& e) {
        lp.fail(e.what(), toks[0]);
      }
    }
    if (eol == std::string_view::npos) break;
    offset = eol + 1;
  }
  try {
    return FeatureSchema(std::move(features));
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), text.size(), line_no);
  }
}

std::string serialize_schema(const FeatureSchema& schema) {
  std::ostringstream out;
  for (const auto& feature : schema.features()) {
    std::visit(Overloaded{
                   [&](const NumericFeature& f) {
                     out << "num " << f.name << " bits=" << f.bits;
                     if (f.lo && f.hi) {
                       out << " lo=" << format_double(*f.lo)
                           << " hi=" << format_double(*f.hi);
                     } else {
                       out << " thresholds=";
                       for (std::size_t k = 0; k < f.thresholds.size(); ++k)
                         out << (k ? "," : "") << format_double(f.thresholds[k]);
                     }
                   },
                   [&](const CategoricalFeature& f) {
                     out << "cat " << f.name << " arity=" << f.arity
                         << " sensitive=" << (f.sensitive ? 1 : 0);
                     if (!f.values.empty()) {
                       out << " values=";
                       for (std::size_t k = 0; k < f.values.size(); ++k)
                         out << (k ? "|" : "") << f.values[k];
                     }
                   },
               },
               feature);
    out << '\n';
  }
  return out.str();
}

FeatureSchema load_schema(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open schema file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_schema(buf.str());
}

}  // namespace lgnv
