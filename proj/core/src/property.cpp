#include "lgnv/property.hpp"

#include <algorithm>
#include <sstream>
#include <type_traits>

#include "lgnv/error.hpp"

namespace lgnv {

const char* to_string(QueryMode mode) {
  switch (mode) {
    case QueryMode::Fair: return "fair";
    case QueryMode::Robust: return "robust";
    case QueryMode::Attainable: break;
  }
  return "attainable";
}

QueryMode to_query_mode(Mode mode) {
  return mode == Mode::Fair ? QueryMode::Fair : QueryMode::Robust;
}

void emit_well_formed(CnfBuilder& cnf, const FeatureSchema& schema,
                      std::span<const Lit> inputs) {
  if (inputs.size() != schema.width())
    throw InvalidInput("emit_well_formed: width mismatch");
  for (std::size_t i = 0; i < schema.size(); ++i) {
    auto r = schema.range(i);
    auto block = inputs.subspan(r.offset, r.width);
    if (schema.is_numeric(i)) {
      for (std::size_t k = 1; k < block.size(); ++k)
        cnf.add_clause({~block[k], block[k - 1]});
    } else {
      cnf.add_clause(block);
      for (std::size_t a = 0; a < block.size(); ++a)
        for (std::size_t b = a + 1; b < block.size(); ++b)
          cnf.add_clause({~block[a], ~block[b]});
    }
  }
}

void emit_prox(CnfBuilder& cnf, std::uint32_t eps, std::span<const Lit> t,
               std::span<const Lit> u) {
  if (t.size() != u.size()) throw InvalidInput("emit_prox: block size mismatch");
  for (std::size_t k = eps; k < t.size(); ++k) {
    cnf.add_clause({~t[k], u[k - eps]});
    cnf.add_clause({~u[k], t[k - eps]});
  }
}

void emit_same_cat(CnfBuilder& cnf, std::span<const Lit> c,
                   std::span<const Lit> c_prime) {
  if (c.size() != c_prime.size())
    throw InvalidInput("emit_same_cat: block size mismatch");
  for (std::size_t b = 0; b < c.size(); ++b) {
    cnf.add_clause({~c[b], c_prime[b]});
    cnf.add_clause({c[b], ~c_prime[b]});
  }
}

void emit_diff_cat(CnfBuilder& cnf, std::span<const Lit> c,
                   std::span<const Lit> c_prime) {
  if (c.size() != c_prime.size())
    throw InvalidInput("emit_diff_cat: block size mismatch");
  std::vector<Lit> selectors;
  selectors.reserve(c.size());
  // sel_b <-> c[b] & !c'[b]; code 4 is a & !b.
  for (std::size_t b = 0; b < c.size(); ++b)
    selectors.push_back(encode_gate(cnf, GateOp(4), c[b], c_prime[b]));
  cnf.add_clause(selectors);
}

std::vector<Lit> emit_winning(CnfBuilder& cnf,
                              std::span<const std::vector<Lit>> sorted_blocks) {
  const std::size_t num_classes = sorted_blocks.size();
  std::vector<Lit> winners = cnf.new_vars(num_classes);
  std::vector<Lit> clause;
  for (std::size_t c = 0; c < num_classes; ++c) {
    const auto& sc = sorted_blocks[c];
    for (std::size_t d = 0; d < num_classes; ++d) {
      if (d == c) continue;
      const auto& sd = sorted_blocks[d];
      if (sd.size() != sc.size()) throw InvalidInput("emit_winning: ragged blocks");
      if (d < c) {
        // score(c) >= score(d)
        for (std::size_t k = 0; k < sc.size(); ++k)
          cnf.add_clause({~winners[c], ~sd[k], sc[k]});
      } else {
        // score(c) > score(d): some position where c has a one and d a zero.
        clause.assign({~winners[c]});
        for (std::size_t k = 0; k < sc.size(); ++k)
          clause.push_back(encode_gate(cnf, GateOp(4), sc[k], sd[k]));
        cnf.add_clause(clause);
      }
    }
  }
  cnf.add_clause(winners);
  return winners;
}

void emit_diff_class(CnfBuilder& cnf, std::span<const Lit> w,
                     std::span<const Lit> w_prime) {
  if (w.size() != w_prime.size())
    throw InvalidInput("emit_diff_class: class count mismatch");
  for (std::size_t c = 0; c < w.size(); ++c) cnf.add_clause({~w[c], ~w_prime[c]});
}

void emit_confidence_gt(CnfBuilder& cnf, const Rational& kappa,
                        std::span<const std::vector<Lit>> sorted_blocks,
                        std::span<const Lit> total_sorted) {
  if (kappa < Rational(0) || kappa > Rational(1))
    throw InvalidInput("confidence threshold " + to_string(kappa) +
                       " outside [0, 1]");
  if (sorted_blocks.empty()) throw InvalidInput("emit_confidence_gt: no classes");
  const std::size_t block_size = sorted_blocks.front().size();
  std::vector<Lit> clause;
  for (std::size_t i = 1; i <= total_sorted.size(); ++i) {
    const auto idx = static_cast<std::size_t>(
        floor_mul(static_cast<std::int64_t>(i), kappa));
    clause.assign({~total_sorted[i - 1]});
    if (idx < block_size)
      for (const auto& block : sorted_blocks) clause.push_back(block[idx]);
    cnf.add_clause(clause);
  }
}

namespace {

class ComponentMeter {
 public:
  ComponentMeter(CnfBuilder& cnf, VarMap& vm) : cnf_(cnf), vm_(vm) {}

  template <class F>
  auto operator()(const char* name, F&& emit) {
    const auto clauses = cnf_.num_clauses();
    const auto vars = cnf_.num_vars();
    auto record = [&] {
      auto it = std::find_if(vm_.components.begin(), vm_.components.end(),
                             [&](const ComponentStats& s) { return s.name == name; });
      if (it == vm_.components.end())
        it = vm_.components.insert(vm_.components.end(), ComponentStats{name, 0, 0});
      it->clauses += cnf_.num_clauses() - clauses;
      it->vars += cnf_.num_vars() - vars;
    };
    if constexpr (std::is_void_v<decltype(emit())>) {
      emit();
      record();
    } else {
      auto result = emit();
      record();
      return result;
    }
  }

 private:
  CnfBuilder& cnf_;
  VarMap& vm_;
};

std::vector<std::vector<Lit>> split_blocks(const std::vector<Lit>& outputs,
                                           std::uint32_t num_classes,
                                           std::uint32_t block_size) {
  std::vector<std::vector<Lit>> blocks(num_classes);
  for (std::uint32_t c = 0; c < num_classes; ++c)
    blocks[c].assign(outputs.begin() + std::ptrdiff_t(c) * block_size,
                     outputs.begin() + std::ptrdiff_t(c + 1) * block_size);
  return blocks;
}

void encode_copy(CnfBuilder& cnf, ComponentMeter& meter, const Netlist& net,
                 const FeatureSchema& schema, CopyVars& copy) {
  copy.inputs = meter("inputs", [&] { return cnf.new_vars(net.input_width); });
  meter("well_formed", [&] { emit_well_formed(cnf, schema, copy.inputs); });
  auto enc = meter("network", [&] { return encode_network(cnf, net, copy.inputs); });
  copy.gates = std::move(enc.gates);
  copy.blocks = split_blocks(enc.outputs, net.num_classes, net.block_size);
  meter("sort_blocks", [&] {
    for (const auto& block : copy.blocks)
      copy.sorted_blocks.push_back(sort_block(cnf, block));
  });
}

std::vector<Lit> all_outputs(const CopyVars& copy) {
  std::vector<Lit> out;
  for (const auto& block : copy.blocks) out.insert(out.end(), block.begin(), block.end());
  return out;
}

}  // namespace

EncodedQuery build_query(const PropertyQuery& query) {
  if (query.netlist == nullptr || query.schema == nullptr)
    throw InvalidInput("build_query: netlist and schema are required");
  const Netlist& net = *query.netlist;
  const FeatureSchema& schema = *query.schema;
  if (auto report = validate(net, schema); !report.ok())
    throw InvalidInput("build_query: " + report.summary());
  if (query.mode == QueryMode::Fair && !schema.has_sensitive())
    throw InvalidInput("fair mode needs at least one sensitive feature");
  if (query.kappa < Rational(0) || query.kappa > Rational(1))
    throw InvalidInput("confidence threshold " + to_string(query.kappa) +
                       " outside [0, 1]");

  CnfBuilder cnf;
  EncodedQuery out;
  VarMap& vm = out.varmap;
  vm.components.push_back({"constant_true", 1, 1});
  ComponentMeter meter(cnf, vm);

  encode_copy(cnf, meter, net, schema, vm.x);
  vm.x.total_sorted = meter("sort_total", [&] {
    auto outputs = all_outputs(vm.x);
    return sort_block(cnf, outputs);
  });
  meter("confidence", [&] {
    emit_confidence_gt(cnf, query.kappa, vm.x.sorted_blocks, vm.x.total_sorted);
  });
  // The confidence constraint is vacuous on the all-zero output, which scores
  // as confidence 1/C; require some output bit of x to be set.
  meter("nonempty_output", [&] { cnf.add_clause(all_outputs(vm.x)); });

  if (query.mode != QueryMode::Attainable) {
    encode_copy(cnf, meter, net, schema, vm.x_prime);
    meter("winning", [&] {
      vm.x.winners = emit_winning(cnf, vm.x.sorted_blocks);
      vm.x_prime.winners = emit_winning(cnf, vm.x_prime.sorted_blocks);
    });
    meter("diff_class",
          [&] { emit_diff_class(cnf, vm.x.winners, vm.x_prime.winners); });
    meter("similarity", [&] {
      for (std::size_t i = 0; i < schema.size(); ++i) {
        auto r = schema.range(i);
        auto a = std::span<const Lit>(vm.x.inputs).subspan(r.offset, r.width);
        auto b = std::span<const Lit>(vm.x_prime.inputs).subspan(r.offset, r.width);
        if (schema.is_numeric(i))
          emit_prox(cnf, query.eps, a, b);
        else if (query.mode == QueryMode::Fair && schema.is_sensitive(i))
          emit_diff_cat(cnf, a, b);
        else
          emit_same_cat(cnf, a, b);
      }
    });
  }

  out.formula = cnf.release();
  return out;
}

namespace {

void write_role(std::ostringstream& out, const std::string& role,
                std::span<const Lit> lits) {
  if (lits.empty()) return;
  out << role;
  for (Lit l : lits) out << ' ' << l.dimacs();
  out << '\n';
}

void write_copy(std::ostringstream& out, const std::string& prefix,
                const CopyVars& copy) {
  write_role(out, prefix + ".in", copy.inputs);
  write_role(out, prefix + ".gates", copy.gates);
  for (std::size_t c = 0; c < copy.blocks.size(); ++c)
    write_role(out, prefix + ".out[" + std::to_string(c) + "]", copy.blocks[c]);
  for (std::size_t c = 0; c < copy.sorted_blocks.size(); ++c)
    write_role(out, prefix + ".sorted[" + std::to_string(c) + "]",
               copy.sorted_blocks[c]);
  write_role(out, prefix + ".total_sorted", copy.total_sorted);
  write_role(out, prefix + ".winners", copy.winners);
}

}  // namespace

std::string serialize_varmap(const VarMap& varmap) {
  std::ostringstream out;
  out << "true 1\n";
  write_copy(out, "x", varmap.x);
  write_copy(out, "x'", varmap.x_prime);
  for (const auto& c : varmap.components)
    out << "# component " << c.name << " clauses=" << c.clauses
        << " vars=" << c.vars << '\n';
  return out.str();
}

}  // namespace lgnv
