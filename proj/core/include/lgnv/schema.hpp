#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lgnv {

using Bits = std::vector<std::uint8_t>;
using BitSpan = std::span<const std::uint8_t>;

/// Thermometer-encoded numerical feature. A value in bucket v (0..bits) sets
/// the first v bits. thresholds[k] is the smallest raw value that lands in
/// bucket k+1.
struct NumericFeature {
  std::string name;
  std::uint32_t bits = 1;
  std::vector<double> thresholds;
  // Set when the thresholds were derived as equal-width over [lo, hi].
  std::optional<double> lo;
  std::optional<double> hi;

  std::uint32_t width() const { return bits; }
  std::uint32_t num_values() const { return bits + 1; }
};

/// One-hot categorical feature. Only categorical features can be sensitive.
struct CategoricalFeature {
  std::string name;
  std::uint32_t arity = 2;
  bool sensitive = false;
  // Optional category labels used when reading CSV rows.
  std::vector<std::string> values;

  std::uint32_t width() const { return arity; }
  std::uint32_t num_values() const { return arity; }
};

using Feature = std::variant<NumericFeature, CategoricalFeature>;

struct BitRange {
  std::uint32_t offset = 0;
  std::uint32_t width = 0;
};

/// Ordered binarization plan: the features' bit blocks are concatenated in
/// declaration order.
class FeatureSchema {
 public:
  FeatureSchema() = default;
  /// Throws InvalidInput if a feature violates its invariants.
  explicit FeatureSchema(std::vector<Feature> features);

  const std::vector<Feature>& features() const { return features_; }
  std::size_t size() const { return features_.size(); }
  const Feature& operator[](std::size_t i) const { return features_[i]; }

  std::uint32_t width() const { return width_; }
  BitRange range(std::size_t i) const { return ranges_[i]; }
  const std::string& name(std::size_t i) const;
  std::uint32_t num_values(std::size_t i) const;
  bool is_numeric(std::size_t i) const;
  bool is_sensitive(std::size_t i) const;
  bool has_sensitive() const;

  /// Number of well-formed inputs (product of per-feature value counts),
  /// saturating at UINT64_MAX.
  std::uint64_t num_inputs() const;

  friend bool operator==(const FeatureSchema& a, const FeatureSchema& b);

 private:
  std::vector<Feature> features_;
  std::vector<BitRange> ranges_;
  std::uint32_t width_ = 0;
};

/// Equal-width thresholds splitting [lo, hi] into bits+1 buckets.
std::vector<double> equal_width_thresholds(double lo, double hi,
                                           std::uint32_t bits);

/// Well-formedness: thermometer blocks are monotone (t[k] implies t[k-1])
/// and one-hot blocks have exactly one bit set. This is the single validity
/// predicate shared by the encoder, the oracle and ingestion.
bool is_well_formed(const FeatureSchema& schema, BitSpan bits);

/// Per-feature values (bucket index or category index) to input bits.
/// Throws InvalidInput when a value is out of range.
Bits encode_values(const FeatureSchema& schema,
                   std::span<const std::uint32_t> values);

/// Inverse of encode_values. Throws InvalidInput on ill-formed bits.
std::vector<std::uint32_t> decode_values(const FeatureSchema& schema,
                                         BitSpan bits);

/// Schema text format, one feature per line:
///   num <name> bits=<B> lo=<f> hi=<f>
///   num <name> bits=<B> thresholds=<f>,<f>,...
///   cat <name> arity=<m> sensitive=<0|1> [values=<a>|<b>|...]
/// '#' starts a comment.
FeatureSchema parse_schema(std::string_view text);
std::string serialize_schema(const FeatureSchema& schema);

FeatureSchema load_schema(const std::string& path);

}  // namespace lgnv
