#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lgnv {

class FeatureSchema;

/// Two-input Boolean function stored as a 4-bit truth table: the output for
/// inputs (a, b) is bit 2a+b of the code.
class GateOp {
 public:
  static constexpr unsigned kNumOps = 16;

  static const GateOp kFalse;
  static const GateOp kNor;
  static const GateOp kAnd;
  static const GateOp kXor;
  static const GateOp kNand;
  static const GateOp kOr;
  static const GateOp kTrue;
  static const GateOp kPassA;
  static const GateOp kPassB;
  static const GateOp kNotA;
  static const GateOp kNotB;

  /// Throws InvalidInput if code > 15.
  explicit GateOp(unsigned code);

  constexpr unsigned code() const noexcept { return code_; }

  constexpr bool operator()(bool a, bool b) const noexcept {
    return ((code_ >> (2u * unsigned(a) + unsigned(b))) & 1u) != 0;
  }

  friend constexpr bool operator==(GateOp, GateOp) = default;

 private:
  struct Raw {};
  constexpr GateOp(Raw, std::uint8_t code) : code_(code) {}
  std::uint8_t code_;
};

inline constexpr GateOp GateOp::kFalse{Raw{}, 0};
inline constexpr GateOp GateOp::kNor{Raw{}, 1};
inline constexpr GateOp GateOp::kXor{Raw{}, 6};
inline constexpr GateOp GateOp::kNand{Raw{}, 7};
inline constexpr GateOp GateOp::kAnd{Raw{}, 8};
inline constexpr GateOp GateOp::kNotB{Raw{}, 5};
inline constexpr GateOp GateOp::kPassB{Raw{}, 10};
inline constexpr GateOp GateOp::kNotA{Raw{}, 3};
inline constexpr GateOp GateOp::kPassA{Raw{}, 12};
inline constexpr GateOp GateOp::kOr{Raw{}, 14};
inline constexpr GateOp GateOp::kTrue{Raw{}, 15};

inline bool gate_truth(GateOp op, bool a, bool b) { return op(a, b); }

/// Gate input: either an input bit position or a global gate id.
struct NodeRef {
  enum class Kind : std::uint8_t { Input, Gate };

  Kind kind = Kind::Input;
  std::uint32_t index = 0;

  static constexpr NodeRef input(std::uint32_t k) { return {Kind::Input, k}; }
  static constexpr NodeRef gate(std::uint32_t k) { return {Kind::Gate, k}; }

  bool is_input() const { return kind == Kind::Input; }

  friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

std::string to_string(const NodeRef& ref);

struct Gate {
  GateOp op;
  NodeRef a;
  NodeRef b;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Layered logic gate network. Gates are numbered globally in layer order.
/// The final layer holds num_classes blocks of block_size gates each; output
/// bit k of class j is final-layer gate j * block_size + k.
struct Netlist {
  std::uint32_t input_width = 0;
  std::uint32_t num_classes = 0;
  std::uint32_t block_size = 0;
  std::vector<std::vector<Gate>> layers;

  std::size_t num_gates() const;
  std::size_t num_outputs() const {
    return std::size_t(num_classes) * block_size;
  }
  /// Global id of the first gate of `layer`.
  std::size_t layer_offset(std::size_t layer) const;
  /// Global id of the gate producing output bit `bit` of class `cls`.
  std::size_t output_gate(std::size_t cls, std::size_t bit) const;

  friend bool operator==(const Netlist&, const Netlist&) = default;
};

struct Violation {
  std::string location;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate(const Netlist& netlist);
ValidationReport validate(const Netlist& netlist, const FeatureSchema& schema);

/// Throws InvalidInput carrying the report summary if validation fails.
void require_valid(const Netlist& netlist);

/// Parses the text netlist format. Throws ParseError on syntax errors (with
/// offset) and InvalidInput when the parsed netlist violates an invariant.
Netlist parse_netlist(std::string_view text);
std::string serialize_netlist(const Netlist& netlist);

Netlist load_netlist(const std::string& path);
void save_netlist(const Netlist& netlist, const std::string& path);

/// Random network with uniformly drawn ops; every gate input is drawn
/// uniformly from the previous layer (input bits for the first layer).
/// `layer_sizes.back()` must equal num_classes * block_size.
Netlist random_netlist(std::uint32_t input_width,
                       const std::vector<std::uint32_t>& layer_sizes,
                       std::uint32_t num_classes, std::uint32_t block_size,
                       std::uint64_t seed);

}  // namespace lgnv
