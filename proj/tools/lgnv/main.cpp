// lgnv command-line tool. One JSON report on stdout, log lines on stderr.
//
// Exit codes: 0 holds/ok, 1 counterexample, 2 invalid input,
//             3 usage or environment error, 4 unknown (solver timeout).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lgnv/cnf.hpp"
#include "lgnv/driver.hpp"
#include "lgnv/error.hpp"
#include "lgnv/ingest.hpp"
#include "lgnv/netlist.hpp"
#include "lgnv/property.hpp"
#include "lgnv/schema.hpp"
#include "report.hpp"

namespace lgnv::cli {
namespace {

enum Exit : int {
  kHolds = 0,
  kCounterexample = 1,
  kInvalidInput = 2,
  kUsage = 3,
  kUnknown = 4,
};

struct CommonArgs {
  std::string netlist;
  std::string schema;
  std::string solver;
  double timeout = 3600.0;
  std::string work_dir;
  bool keep_files = false;
};

struct QueryArgs {
  std::string mode = "robust";
  std::uint32_t eps = 0;
  std::string kappa;
};

SolverConfig solver_config(const CommonArgs& c) {
  SolverConfig cfg;
  cfg.executable = c.solver;
  cfg.timeout_seconds = c.timeout;
  cfg.work_dir = c.work_dir;
  cfg.keep_files = c.keep_files;
  return cfg;
}

class Reporter {
 public:
  Reporter(int argc, char** argv) {
    report_["tool"] = "lgnv";
    report_["version"] = LGNV_VERSION;
    Json cmd = Json::array();
    for (int i = 0; i < argc; ++i) cmd.push_back(argv[i]);
    report_["command"] = std::move(cmd);
    report_["inputs"] = Json::object();
  }

  void input(const std::string& role, const std::string& path) {
    report_["inputs"][role] = Json{{"path", path}, {"sha256", sha256_file(path)}};
  }

  Json& operator[](const char* key) { return report_[key]; }

  void emit() const { std::cout << report_.dump(2) << '\n'; }

 private:
  Json report_;
};

Netlist read_netlist(Reporter& rep, const CommonArgs& c) {
  rep.input("netlist", c.netlist);
  return load_netlist(c.netlist);
}

FeatureSchema read_schema(Reporter& rep, const CommonArgs& c, const Netlist& net) {
  rep.input("schema", c.schema);
  FeatureSchema schema = load_schema(c.schema);
  if (auto report = validate(net, schema); !report.ok())
    throw InvalidInput(report.summary());
  return schema;
}

int exit_for(Status s) {
  switch (s) {
    case Status::Holds: return kHolds;
    case Status::Counterexample: return kCounterexample;
    case Status::Unknown: break;
  }
  return kUnknown;
}

std::vector<std::uint32_t> parse_uint_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw InvalidInput("not an unsigned integer: '" + item + "'");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

std::vector<std::string> split_cells(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

void log(const std::string& msg) { std::cerr << "lgnv: " << msg << '\n'; }

void add_common(CLI::App* cmd, CommonArgs& c, bool needs_schema) {
  cmd->add_option("netlist", c.netlist, "Netlist file")->required();
  auto* schema = cmd->add_option("--schema,-s", c.schema, "Feature schema file");
  if (needs_schema) schema->required();
}

void add_solver(CLI::App* cmd, CommonArgs& c) {
  cmd->add_option("--solver", c.solver,
                  "SAT solver executable (default: $LGNV_SOLVER, kissat, lgnv-sat)");
  cmd->add_option("--timeout", c.timeout, "Per-query timeout in seconds")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--work-dir", c.work_dir, "Directory for temporary DIMACS files");
  cmd->add_flag("--keep-files", c.keep_files, "Keep DIMACS and solver output files");
}

void add_query(CLI::App* cmd, QueryArgs& q, bool with_kappa) {
  cmd->add_option("--mode,-m", q.mode, "fair or robust")
      ->required()
      ->check(CLI::IsMember({"fair", "robust"}));
  cmd->add_option("--eps,-e", q.eps, "Numerical tolerance in thermometer bits")->required();
  if (with_kappa)
    cmd->add_option("--kappa,-k", q.kappa, "Confidence threshold as P/Q or exact decimal")
        ->required();
}

Rational read_kappa(const std::string& text) {
  Rational k = parse_rational(text);
  if (k < Rational(0) || k > Rational(1))
    throw InvalidInput("kappa " + to_string(k) + " outside [0, 1]");
  return k;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"lgnv: SAT-based global robustness and fairness verification for logic gate networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LGNV_VERSION);

  CommonArgs common;
  QueryArgs query;

  auto* validate_cmd = app.add_subcommand("validate", "Check netlist (and schema) invariants");
  add_common(validate_cmd, common, false);

  auto* verify_cmd = app.add_subcommand("verify", "Verify the property at one threshold");
  add_common(verify_cmd, common, true);
  add_query(verify_cmd, query, true);
  add_solver(verify_cmd, common);

  std::string tol_text = "0.05";
  bool skip_attainable = false;
  auto* search_cmd = app.add_subcommand("search-kappa", "Binary search for the smallest safe threshold");
  add_common(search_cmd, common, true);
  add_query(search_cmd, query, false);
  add_solver(search_cmd, common);
  search_cmd->add_option("--tol", tol_text, "Convergence tolerance (P/Q or decimal)");
  search_cmd->add_flag("--no-attainable", skip_attainable, "Skip the attainability check");

  std::string kappa_list;
  auto* sweep_cmd = app.add_subcommand("sweep", "Verify at a list of thresholds");
  add_common(sweep_cmd, common, true);
  add_query(sweep_cmd, query, false);
  add_solver(sweep_cmd, common);
  sweep_cmd->add_option("--kappas", kappa_list, "Comma-separated thresholds")->required();

  std::string output_path;
  std::string varmap_path;
  std::string encode_mode = "robust";
  auto* encode_cmd = app.add_subcommand("encode", "Write the query as DIMACS CNF");
  add_common(encode_cmd, common, true);
  encode_cmd->add_option("--mode,-m", encode_mode, "fair, robust or attainable")
      ->check(CLI::IsMember({"fair", "robust", "attainable"}));
  encode_cmd->add_option("--eps,-e", query.eps, "Numerical tolerance");
  encode_cmd->add_option("--kappa,-k", query.kappa, "Confidence threshold")->required();
  encode_cmd->add_option("--output,-o", output_path, "DIMACS output file (default stdout)");
  encode_cmd->add_option("--varmap", varmap_path, "Variable-map sidecar output file");

  auto* attain_cmd = app.add_subcommand("attainable", "Is some input more confident than kappa?");
  add_common(attain_cmd, common, true);
  attain_cmd->add_option("--kappa,-k", query.kappa, "Confidence threshold")->required();
  add_solver(attain_cmd, common);

  std::uint32_t gen_inputs = 0, gen_classes = 2, gen_block = 1;
  std::string gen_layers;
  std::uint64_t gen_seed = 0;
  std::string gen_schema;
  auto* gen_cmd = app.add_subcommand("gen-random", "Generate a random netlist");
  gen_cmd->add_option("--inputs,-d", gen_inputs, "Input width");
  gen_cmd->add_option("--schema,-s", gen_schema, "Take the input width from a schema");
  gen_cmd->add_option("--layers", gen_layers, "Hidden layer sizes, comma-separated")->required();
  gen_cmd->add_option("--classes,-C", gen_classes, "Number of classes")->required();
  gen_cmd->add_option("--block,-L", gen_block, "Output bits per class")->required();
  gen_cmd->add_option("--seed", gen_seed, "RNG seed");
  gen_cmd->add_option("--output,-o", output_path, "Netlist output file (default stdout)");

  std::string eval_values, eval_bits, eval_row;
  auto* eval_cmd = app.add_subcommand("eval", "Predict class and confidence for one input");
  add_common(eval_cmd, common, true);
  auto* ev_values = eval_cmd->add_option("--values", eval_values, "Bucket/category index per feature");
  auto* ev_bits = eval_cmd->add_option("--bits", eval_bits, "Raw input bits, e.g. 0110");
  auto* ev_row = eval_cmd->add_option("--row", eval_row, "Raw CSV cells, one per feature");
  ev_values->excludes(ev_bits)->excludes(ev_row);
  ev_bits->excludes(ev_row);

  std::string csv_path, label_column = "label";
  auto* acc_cmd = app.add_subcommand("accuracy", "Dataset accuracy of a netlist");
  add_common(acc_cmd, common, true);
  acc_cmd->add_option("--csv", csv_path, "CSV file with a header row")->required();
  acc_cmd->add_option("--label", label_column, "Label column (0-based class index)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  Reporter rep(argc, argv);
  try {
    if (*validate_cmd) {
      rep.input("netlist", common.netlist);
      std::ifstream in(common.netlist, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      Json result;
      std::optional<Netlist> net;
      try {
        net = parse_netlist(buf.str());
      } catch (const Error& e) {
        result["ok"] = false;
        result["violations"] = Json::array({Json{{"location", "file"}, {"message", e.what()}}});
        rep["result"] = std::move(result);
        rep.emit();
        log(e.what());
        return kInvalidInput;
      }
      ValidationReport report;
      if (!common.schema.empty()) {
        rep.input("schema", common.schema);
        report = validate(*net, load_schema(common.schema));
      } else {
        report = validate(*net);
      }
      result["ok"] = report.ok();
      Json violations = Json::array();
      for (const auto& v : report.violations)
        violations.push_back(Json{{"location", v.location}, {"message", v.message}});
      result["violations"] = std::move(violations);
      result["gates"] = net->num_gates();
      result["layers"] = net->layers.size();
      rep["result"] = std::move(result);
      rep.emit();
      if (!report.ok()) log(report.summary());
      return report.ok() ? kHolds : kInvalidInput;
    }

    if (*verify_cmd) {
      Netlist net = read_netlist(rep, common);
      FeatureSchema schema = read_schema(rep, common, net);
      Mode mode = parse_mode(query.mode);
      Rational kappa = read_kappa(query.kappa);
      rep["query"] = Json{{"mode", query.mode}, {"eps", query.eps}, {"kappa", rational_json(kappa)}};
      Verdict v = verify_at(net, schema, mode, query.eps, kappa, solver_config(common));
      rep["result"] = verdict_json(schema, v);
      rep.emit();
      log(std::string("verdict: ") + to_string(v.status));
      return exit_for(v.status);
    }

    if (*search_cmd) {
      Netlist net = read_netlist(rep, common);
      FeatureSchema schema = read_schema(rep, common, net);
      Mode mode = parse_mode(query.mode);
      Rational tol = parse_rational(tol_text);
      rep["query"] = Json{{"mode", query.mode}, {"eps", query.eps}, {"tolerance", rational_json(tol)}};
      auto result = search_min_kappa(net, schema, mode, query.eps, tol,
                                     solver_config(common), !skip_attainable);
      rep["result"] = search_json(schema, result);
      rep.emit();
      log("kappa* = " + to_string(result.kappa_star) +
          (result.converged ? "" : " (not converged)"));
      if (!result.converged) return kUnknown;
      return result.unsafe_everywhere ? kCounterexample : kHolds;
    }

    if (*sweep_cmd) {
      Netlist net = read_netlist(rep, common);
      FeatureSchema schema = read_schema(rep, common, net);
      Mode mode = parse_mode(query.mode);
      std::vector<Rational> kappas;
      for (const auto& cell : split_cells(kappa_list)) kappas.push_back(read_kappa(cell));
      rep["query"] = Json{{"mode", query.mode}, {"eps", query.eps}};
      auto rows = sweep(net, schema, mode, query.eps, kappas, solver_config(common));
      Json table = Json::array();
      std::vector<ProbeRecord> probes;
      int code = kHolds;
      for (const auto& row : rows) {
        Json r = verdict_json(schema, row.verdict);
        r["kappa"] = rational_json(row.kappa);
        table.push_back(std::move(r));
        probes.push_back({row.kappa, row.verdict.status, row.verdict.stats});
        if (row.verdict.status == Status::Unknown) code = kUnknown;
        else if (row.verdict.status == Status::Counterexample && code == kHolds)
          code = kCounterexample;
      }
      rep["result"] = Json{{"rows", std::move(table)},
                           {"monotone_in_kappa", is_monotone_in_kappa(probes)}};
      rep.emit();
      return code;
    }

    if (*encode_cmd) {
      Netlist net = read_netlist(rep, common);
      FeatureSchema schema = read_schema(rep, common, net);
      QueryMode qm = encode_mode == "fair"     ? QueryMode::Fair
                     : encode_mode == "robust" ? QueryMode::Robust
                                               : QueryMode::Attainable;
      PropertyQuery q{&net, &schema, qm, query.eps, read_kappa(query.kappa)};
      EncodedQuery enc = build_query(q);
      const std::string dimacs = to_dimacs(enc.formula);
      if (output_path.empty()) {
        std::cout << dimacs;
      } else {
        std::ofstream out(output_path, std::ios::binary);
        if (!out) throw FileError("cannot write '" + output_path + "'");
        out << dimacs;
      }
      if (!varmap_path.empty()) {
        std::ofstream out(varmap_path, std::ios::binary);
        if (!out) throw FileError("cannot write '" + varmap_path + "'");
        out << serialize_varmap(enc.varmap);
      }
      log("encoded " + std::to_string(enc.formula.num_vars) + " vars, " +
          std::to_string(enc.formula.clauses.size()) + " clauses");
      return kHolds;
    }

    if (*attain_cmd) {
      Netlist net = read_netlist(rep, common);
      FeatureSchema schema = read_schema(rep, common, net);
      Rational kappa = read_kappa(query.kappa);
      rep["query"] = Json{{"kappa", rational_json(kappa)}};
      auto result = check_attainable(net, schema, kappa, solver_config(common));
      rep["result"] = attainability_json(schema, result);
      rep.emit();
      if (result.unknown) return kUnknown;
      return result.attainable ? kHolds : kCounterexample;
    }

    if (*gen_cmd) {
      if (!gen_schema.empty()) {
        rep.input("schema", gen_schema);
        gen_inputs = load_schema(gen_schema).width();
      }
      if (gen_inputs == 0) throw InvalidInput("give --inputs or --schema");
      auto sizes = parse_uint_list(gen_layers);
      sizes.push_back(gen_classes * gen_block);
      Netlist net = random_netlist(gen_inputs, sizes, gen_classes, gen_block, gen_seed);
      if (output_path.empty()) {
        std::cout << serialize_netlist(net);
      } else {
        save_netlist(net, output_path);
        log("wrote " + output_path);
      }
      return kHolds;
    }

    if (*eval_cmd) {
      Netlist net = read_netlist(rep, common);
      FeatureSchema schema = read_schema(rep, common, net);
      Bits bits;
      if (!eval_bits.empty()) {
        for (char ch : eval_bits) {
          if (ch != '0' && ch != '1') throw InvalidInput("--bits takes 0/1 characters");
          bits.push_back(ch == '1' ? 1 : 0);
        }
        if (!is_well_formed(schema, bits)) throw InvalidInput("input bits are not well-formed");
      } else if (!eval_values.empty()) {
        bits = encode_values(schema, parse_uint_list(eval_values));
      } else if (!eval_row.empty()) {
        bits = encode_row(schema, split_cells(eval_row));
      } else {
        throw InvalidInput("give one of --values, --bits, --row");
      }
      Json x = input_json(schema, bits);
      x["prediction"] = prediction_json(predict(net, bits));
      rep["result"] = std::move(x);
      rep.emit();
      return kHolds;
    }

    if (*acc_cmd) {
      Netlist net = read_netlist(rep, common);
      FeatureSchema schema = read_schema(rep, common, net);
      rep.input("csv", csv_path);
      Dataset ds = load_csv(csv_path, schema, label_column, net.num_classes);
      const double acc = accuracy(net, ds);
      rep["result"] = Json{{"rows", ds.rows.size()}, {"accuracy", acc}};
      rep.emit();
      return kHolds;
    }
  } catch (const FileError& e) {
    log(e.what());
    return kUsage;
  } catch (const SolverError& e) {
    log(std::string("solver: ") + e.what());
    return kUsage;
  } catch (const InternalConsistencyError& e) {
    log(std::string("internal consistency error: ") + e.what());
    return kUsage;
  } catch (const Error& e) {
    log(e.what());
    return kInvalidInput;
  }
  return kUsage;
}

}  // namespace lgnv::cli

int main(int argc, char** argv) { return lgnv::cli::run(argc, argv); }
