#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lgnv/netlist.hpp"
#include "lgnv/schema.hpp"

namespace lgnv {

struct Row {
  std::vector<std::uint32_t> values;  // bucket / category index per feature
  Bits bits;
  std::uint32_t label = 0;
};

struct Dataset {
  FeatureSchema schema;
  std::vector<Row> rows;
  std::string provenance;
};

/// Bucket index of a raw numerical value: the number of thresholds <= value.
/// Throws InvalidInput when value lies outside [lo, hi] (if declared).
std::uint32_t bucket_of(const NumericFeature& feature, double value);

/// Numerical feature for values in [lo, hi]. Uses min(max_buckets,
/// hi - lo + 1) buckets for integer ranges and max_buckets otherwise;
/// a feature with n buckets has n - 1 thermometer bits.
NumericFeature numeric_feature_for_range(std::string name, double lo,
                                         double hi, bool integer_valued,
                                         std::uint32_t max_buckets);

/// Raw CSV cells (one per feature, schema order) to input bits. Categorical
/// cells are matched against the declared value labels, or parsed as a
/// 0-based index when the feature has none.
Bits encode_row(const FeatureSchema& schema,
                std::span<const std::string> raw_values);

struct DecodedFeature {
  std::uint32_t value = 0;
  // Numerical features: raw-value interval [lower, upper) of the bucket;
  // infinite at the open ends.
  double lower = 0.0;
  double upper = 0.0;
};

/// Throws InvalidInput on ill-formed bits.
std::vector<DecodedFeature> decode_bits(const FeatureSchema& schema,
                                        BitSpan bits);

/// Reads a CSV with a header row. Feature columns are looked up by schema
/// feature name; `label_column` holds 0-based class indices < num_classes.
/// Empty cells are rejected.
Dataset load_csv(const std::string& path, const FeatureSchema& schema,
                 const std::string& label_column, std::uint32_t num_classes);
Dataset parse_csv(std::string_view text, const FeatureSchema& schema,
                  const std::string& label_column, std::uint32_t num_classes);

/// Fraction of rows whose prediction equals the label.
double accuracy(const Netlist& netlist, const Dataset& dataset);

}  // namespace lgnv
