#include "lgnv/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

#include "lgnv/error.hpp"
#include "lgnv/schema.hpp"

namespace lgnv {

GateOp::GateOp(unsigned code) : code_(static_cast<std::uint8_t>(code)) {
  if (code >= kNumOps)
    throw InvalidInput("gate op code " + std::to_string(code) +
                       " out of range 0..15");
}

std::string to_string(const NodeRef& ref) {
  return (ref.is_input() ? "i" : "g") + std::to_string(ref.index);
}

std::size_t Netlist::num_gates() const {
  std::size_t n = 0;
  for (const auto& layer : layers) n += layer.size();
  return n;
}

std::size_t Netlist::layer_offset(std::size_t layer) const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < layer; ++l) n += layers[l].size();
  return n;
}

std::size_t Netlist::output_gate(std::size_t cls, std::size_t bit) const {
  return layer_offset(layers.size() - 1) + cls * block_size + bit;
}

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.location + ": " + v.message;
  }
  return out;
}

ValidationReport validate(const Netlist& netlist) {
  ValidationReport report;
  auto add = [&](std::string location, std::string message) {
    report.violations.push_back({std::move(location), std::move(message)});
  };

  if (netlist.input_width < 1) add("header", "input_width must be >= 1");
  if (netlist.num_classes < 2) add("header", "num_classes must be >= 2");
  if (netlist.block_size < 1) add("header", "block_size must be >= 1");
  if (netlist.layers.empty()) {
    add("layers", "netlist has no layers");
    return report;
  }

  std::size_t first_id = 0;
  for (std::size_t l = 0; l < netlist.layers.size(); ++l) {
    const auto& layer = netlist.layers[l];
    if (layer.empty()) add("layer " + std::to_string(l), "empty layer");
    for (std::size_t g = 0; g < layer.size(); ++g) {
      const std::string where = "layer " + std::to_string(l) + " gate g" +
                                std::to_string(first_id + g);
      for (const NodeRef& ref : {layer[g].a, layer[g].b}) {
        if (ref.is_input()) {
          if (ref.index >= netlist.input_width)
            add(where, "input reference " + to_string(ref) +
                           " exceeds input_width " +
                           std::to_string(netlist.input_width));
        } else if (ref.index >= first_id) {
          add(where, "forward/self reference " + to_string(ref) +
                         " (gates of layer " + std::to_string(l) +
                         " start at g" + std::to_string(first_id) + ")");
        }
      }
    }
    first_id += layer.size();
  }

  const std::size_t outputs = netlist.layers.back().size();
  if (outputs != netlist.num_outputs())
    add("layer " + std::to_string(netlist.layers.size() - 1),
        "output count " + std::to_string(outputs) + " != C*L = " +
            std::to_string(netlist.num_outputs()));
  return report;
}

ValidationReport validate(const Netlist& netlist, const FeatureSchema& schema) {
  ValidationReport report = validate(netlist);
  if (schema.size() == 0)
    report.violations.push_back({"schema", "schema has no features"});
  if (schema.width() != netlist.input_width)
    report.violations.push_back(
        {"schema", "schema width " + std::to_string(schema.width()) +
                       " != input_width " +
                       std::to_string(netlist.input_width)});
  return report;
}

void require_valid(const Netlist& netlist) {
  auto report = validate(netlist);
  if (!report.ok()) throw InvalidInput("invalid netlist: " + report.summary());
}

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  struct Token {
    std::string_view text;
    std::size_t offset = 0;
    std::size_t line = 1;
  };

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  Token next(const char* expected) {
    skip();
    if (pos_ >= text_.size())
      throw ParseError(std::string("unexpected end of input, expected ") + expected,
                       pos_, line_);
    Token tok{{}, pos_, line_};
    char c = text_[pos_];
    if (c == '(' || c == ')' || c == ',') {
      tok.text = text_.substr(pos_++, 1);
      return tok;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_' || text_[pos_] == '-'))
      ++pos_;
    if (start == pos_)
      throw ParseError(std::string("unexpected character '") + c + "'", pos_, line_);
    tok.text = text_.substr(start, pos_ - start);
    return tok;
  }

  void expect(std::string_view word) {
    Token tok = next(std::string(word).c_str());
    if (tok.text != word)
      throw ParseError("expected '" + std::string(word) + "', got '" +
                           std::string(tok.text) + "'",
                       tok.offset, tok.line);
  }

  std::uint32_t number(const char* what) {
    Token tok = next(what);
    return to_number(tok, tok.text, what);
  }

  static std::uint32_t to_number(const Token& tok, std::string_view digits,
                                 const char* what) {
    std::uint32_t value = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
      throw ParseError(std::string("expected ") + what + ", got '" +
                           std::string(tok.text) + "'",
                       tok.offset, tok.line);
    return value;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        if (c == '\n') ++line_;
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

NodeRef parse_ref(Lexer& lex) {
  auto tok = lex.next("node reference");
  if (tok.text.size() < 2 || (tok.text[0] != 'i' && tok.text[0] != 'g'))
    throw ParseError("expected node reference i<k> or g<k>, got '" +
                         std::string(tok.text) + "'",
                     tok.offset, tok.line);
  auto index = Lexer::to_number(tok, tok.text.substr(1), "node reference");
  return tok.text[0] == 'i' ? NodeRef::input(index) : NodeRef::gate(index);
}

}  // namespace

Netlist parse_netlist(std::string_view text) {
  Lexer lex(text);
  Netlist net;
  lex.expect("input_width");
  net.input_width = lex.number("input_width value");
  lex.expect("num_classes");
  net.num_classes = lex.number("num_classes value");
  lex.expect("block_size");
  net.block_size = lex.number("block_size value");

  while (true) {
    auto tok = lex.next("'layer' or 'end'");
    if (tok.text == "end") break;
    if (tok.text != "layer")
      throw ParseError("expected 'layer' or 'end', got '" + std::string(tok.text) + "'",
                       tok.offset, tok.line);
    std::uint32_t count = lex.number("layer gate count");
    auto& layer = net.layers.emplace_back();
    layer.reserve(std::min<std::uint32_t>(count, 1u << 16));
    for (std::uint32_t g = 0; g < count; ++g) {
      lex.expect("(");
      auto op_tok = lex.next("op code");
      auto code = Lexer::to_number(op_tok, op_tok.text, "op code");
      if (code >= GateOp::kNumOps)
        throw ParseError("op code " + std::to_string(code) + " out of range 0..15",
                         op_tok.offset, op_tok.line);
      lex.expect(",");
      NodeRef a = parse_ref(lex);
      lex.expect(",");
      NodeRef b = parse_ref(lex);
      lex.expect(")");
      layer.push_back({GateOp(code), a, b});
    }
  }
  if (!lex.at_end()) {
    auto tok = lex.next("end of input");
    throw ParseError("trailing content after 'end'", tok.offset, tok.line);
  }

  require_valid(net);
  return net;
}

std::string serialize_netlist(const Netlist& netlist) {
  std::ostringstream out;
  out << "input_width " << netlist.input_width << '\n'
      << "num_classes " << netlist.num_classes << '\n'
      << "block_size " << netlist.block_size << '\n';
  for (const auto& layer : netlist.layers) {
    out << "layer " << layer.size() << '\n';
    for (const auto& gate : layer)
      out << '(' << gate.op.code() << ", " << to_string(gate.a) << ", "
          << to_string(gate.b) << ")\n";
  }
  out << "end\n";
  return out.str();
}

Netlist load_netlist(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open netlist file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_netlist(buf.str());
}

void save_netlist(const Netlist& netlist, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write netlist file '" + path + "'");
  out << serialize_netlist(netlist);
}

Netlist random_netlist(std::uint32_t input_width,
                       const std::vector<std::uint32_t>& layer_sizes,
                       std::uint32_t num_classes, std::uint32_t block_size,
                       std::uint64_t seed) {
  if (input_width < 1) throw InvalidInput("input_width must be >= 1");
  if (num_classes < 2 || block_size < 1)
    throw InvalidInput("need num_classes >= 2 and block_size >= 1");
  if (layer_sizes.empty() ||
      layer_sizes.back() != std::uint64_t(num_classes) * block_size)
    throw InvalidInput("last layer size must equal num_classes * block_size");
  for (auto size : layer_sizes)
    if (size == 0) throw InvalidInput("layer sizes must be positive");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned> op_dist(0, GateOp::kNumOps - 1);

  Netlist net;
  net.input_width = input_width;
  net.num_classes = num_classes;
  net.block_size = block_size;

  std::uint32_t prev_first = 0;
  std::uint32_t prev_size = input_width;
  bool prev_is_input = true;
  std::uint32_t next_id = 0;
  for (auto size : layer_sizes) {
    std::uniform_int_distribution<std::uint32_t> src(0, prev_size - 1);
    auto pick = [&] {
      std::uint32_t k = src(rng);
      return prev_is_input ? NodeRef::input(k) : NodeRef::gate(prev_first + k);
    };
    auto& layer = net.layers.emplace_back();
    layer.reserve(size);
    for (std::uint32_t g = 0; g < size; ++g) {
      GateOp op(op_dist(rng));
      NodeRef a = pick();
      NodeRef b = pick();
      layer.push_back({op, a, b});
    }
    prev_first = next_id;
    prev_size = size;
    prev_is_input = false;
    next_id += size;
  }
  return net;
}

}  // namespace lgnv
