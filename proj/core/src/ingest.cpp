#include "lgnv/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <boost/tokenizer.hpp>

#include "lgnv/error.hpp"
#include "lgnv/evaluator.hpp"

namespace lgnv {

std::uint32_t bucket_of(const NumericFeature& feature, double value) {
  if (!std::isfinite(value))
    throw InvalidInput("feature '" + feature.name + "': non-finite value");
  if ((feature.lo && value < *feature.lo) || (feature.hi && value > *feature.hi))
    throw InvalidInput("feature '" + feature.name + "': value " +
                       std::to_string(value) + " outside declared range");
  auto it = std::upper_bound(feature.thresholds.begin(), feature.thresholds.end(), value);
  return static_cast<std::uint32_t>(it - feature.thresholds.begin());
}

NumericFeature numeric_feature_for_range(std::string name, double lo, double hi,
                                         bool integer_valued,
                                         std::uint32_t max_buckets) {
  if (!(lo < hi)) throw InvalidInput("numerical range needs lo < hi");
  if (max_buckets < 2) throw InvalidInput("max_buckets must be >= 2");
  std::uint32_t buckets = max_buckets;
  if (integer_valued) {
    const double card = std::floor(hi) - std::ceil(lo) + 1;
    if (card < 2) throw InvalidInput("integer range holds fewer than two values");
    if (card < buckets) buckets = static_cast<std::uint32_t>(card);
  }
  NumericFeature f;
  f.name = std::move(name);
  f.bits = buckets - 1;
  f.lo = lo;
  f.hi = hi;
  f.thresholds = equal_width_thresholds(lo, hi, f.bits);
  return f;
}

namespace {

double parse_double(const std::string& cell, const std::string& feature) {
  double v = 0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last)
    throw InvalidInput("feature '" + feature + "': not a number: '" + cell + "'");
  return v;
}

std::uint32_t category_of(const CategoricalFeature& f, const std::string& cell) {
  if (!f.values.empty()) {
    auto it = std::find(f.values.begin(), f.values.end(), cell);
    if (it == f.values.end())
      throw InvalidInput("feature '" + f.name + "': unknown category '" + cell + "'");
    return static_cast<std::uint32_t>(it - f.values.begin());
  }
  std::uint32_t idx = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), idx);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty() ||
      idx >= f.arity)
    throw InvalidInput("feature '" + f.name + "': unknown category '" + cell + "'");
  return idx;
}

std::vector<std::uint32_t> row_values(const FeatureSchema& schema,
                                      std::span<const std::string> raw) {
  if (raw.size() != schema.size())
    throw InvalidInput("expected " + std::to_string(schema.size()) +
                       " raw values, got " + std::to_string(raw.size()));
  std::vector<std::uint32_t> values;
  values.reserve(raw.size());
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (raw[i].empty())
      throw InvalidInput("feature '" + schema.name(i) + "': missing value");
    if (const auto* num = std::get_if<NumericFeature>(&schema[i]))
      values.push_back(bucket_of(*num, parse_double(raw[i], num->name)));
    else
      values.push_back(category_of(std::get<CategoricalFeature>(schema[i]), raw[i]));
  }
  return values;
}

}  // namespace

Bits encode_row(const FeatureSchema& schema, std::span<const std::string> raw_values) {
  return encode_values(schema, row_values(schema, raw_values));
}

std::vector<DecodedFeature> decode_bits(const FeatureSchema& schema, BitSpan bits) {
  auto values = decode_values(schema, bits);
  std::vector<DecodedFeature> out;
  out.reserve(values.size());
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < schema.size(); ++i) {
    DecodedFeature d{values[i], 0.0, 0.0};
    if (const auto* num = std::get_if<NumericFeature>(&schema[i])) {
      const auto v = values[i];
      d.lower = v == 0 ? num->lo.value_or(-inf) : num->thresholds[v - 1];
      d.upper = v == num->bits ? num->hi.value_or(inf) : num->thresholds[v];
    }
    out.push_back(d);
  }
  return out;
}

Dataset parse_csv(std::string_view text, const FeatureSchema& schema,
                  const std::string& label_column, std::uint32_t num_classes) {
  using Tokenizer = boost::tokenizer<boost::escaped_list_separator<char>>;
  Dataset ds;
  ds.schema = schema;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::size_t offset = 0;
  std::vector<std::size_t> feature_cols;
  std::size_t label_col = 0;
  std::size_t num_cols = 0;
  bool header_done = false;

  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t line_offset = offset;
    offset += line.size() + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<std::string> cells;
    try {
      Tokenizer tok(line);
      cells.assign(tok.begin(), tok.end());
    } catch (const boost::escaped_list_error& e) {
      throw ParseError(std::string("malformed CSV: ") + e.what(), line_offset, line_no);
    }

    if (!header_done) {
      num_cols = cells.size();
      auto column = [&](const std::string& name) {
        auto it = std::find(cells.begin(), cells.end(), name);
        if (it == cells.end())
          throw ParseError("CSV header has no column '" + name + "'", line_offset, line_no);
        return static_cast<std::size_t>(it - cells.begin());
      };
      for (std::size_t i = 0; i < schema.size(); ++i)
        feature_cols.push_back(column(schema.name(i)));
      label_col = column(label_column);
      header_done = true;
      continue;
    }

    if (cells.size() != num_cols)
      throw ParseError("row has " + std::to_string(cells.size()) + " cells, header has " +
                           std::to_string(num_cols),
                       line_offset, line_no);
    try {
      std::vector<std::string> raw;
      raw.reserve(feature_cols.size());
      for (auto col : feature_cols) raw.push_back(cells[col]);
      Row row;
      row.values = row_values(schema, raw);
      row.bits = encode_values(schema, row.values);
      const std::string& label = cells[label_col];
      auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), row.label);
      if (ec != std::errc() || ptr != label.data() + label.size() || label.empty() ||
          row.label >= num_classes)
        throw InvalidInput("label '" + label + "' is not a class index below " +
                           std::to_string(num_classes));
      ds.rows.push_back(std::move(row));
    } catch (const InvalidInput& e) {
      throw ParseError(e.what(), line_offset, line_no);
    }
  }
  if (!header_done) throw ParseError("CSV has no header row", 0, 1);
  return ds;
}

Dataset load_csv(const std::string& path, const FeatureSchema& schema,
                 const std::string& label_column, std::uint32_t num_classes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open CSV file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  Dataset ds = parse_csv(buf.str(), schema, label_column, num_classes);
  ds.provenance = path;
  return ds;
}

double accuracy(const Netlist& netlist, const Dataset& dataset) {
  if (dataset.rows.empty()) throw InvalidInput("accuracy of an empty dataset");
  if (dataset.schema.width() != netlist.input_width)
    throw InvalidInput("dataset schema width does not match netlist input_width");
  std::size_t correct = 0;
  for (const auto& row : dataset.rows)
    if (predict(netlist, row.bits).cls == row.label) ++correct;
  return double(correct) / double(dataset.rows.size());
}

}  // namespace lgnv
