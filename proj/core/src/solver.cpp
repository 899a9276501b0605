#include "lgnv/solver.hpp"

#include <atomic>
#include <cerrno>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include "lgnv/error.hpp"

extern char** environ;

namespace lgnv {
namespace {

namespace fs = std::filesystem;

std::string find_executable(const std::string& name) {
  if (name.find('/') != std::string::npos)
    return ::access(name.c_str(), X_OK) == 0 ? name : std::string();
  const char* path = std::getenv("PATH");
  if (path == nullptr) return {};
  std::string_view dirs(path);
  while (!dirs.empty()) {
    auto colon = dirs.find(':');
    std::string dir(dirs.substr(0, colon));
    if (dir.empty()) dir = ".";
    std::string candidate = dir + "/" + name;
    if (::access(candidate.c_str(), X_OK) == 0) return candidate;
    if (colon == std::string_view::npos) break;
    dirs.remove_prefix(colon + 1);
  }
  return {};
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 15];
  return s;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct ChildResult {
  int exit_code = -1;
  bool timed_out = false;
};

ChildResult run_child(const std::string& exe, const std::vector<std::string>& args,
                      const fs::path& stdout_path, double timeout_seconds) {
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, stdout_path.c_str(),
                                   O_WRONLY | O_CREAT | O_TRUNC, 0644);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, "/dev/null", O_WRONLY, 0);

  std::vector<std::string> storage;
  storage.push_back(exe);
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  argv.push_back(nullptr);

  pid_t pid = 0;
  int rc = posix_spawn(&pid, exe.c_str(), &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0)
    throw SolverError("cannot start solver '" + exe + "': " + std::strerror(rc));

  using Clock = std::chrono::steady_clock;
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(timeout_seconds));
  auto pause = std::chrono::microseconds(20);
  ChildResult result;
  int status = 0;
  while (true) {
    pid_t done = ::waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (done < 0 && errno != EINTR)
      throw SolverError(std::string("waitpid failed: ") + std::strerror(errno));
    if (Clock::now() >= deadline) {
      ::kill(pid, SIGKILL);
      while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
      }
      result.timed_out = true;
      return result;
    }
    std::this_thread::sleep_for(pause);
    pause = std::min(pause * 2, std::chrono::microseconds(2000));
  }
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

std::atomic<std::uint64_t> g_file_counter{0};

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::Unknown: break;
  }
  return "unknown";
}

std::string resolve_solver(const SolverConfig& config) {
  if (!config.executable.empty()) {
    auto found = find_executable(config.executable);
    if (found.empty())
      throw SolverError("solver '" + config.executable + "' not found");
    return found;
  }
  if (const char* env = std::getenv("LGNV_SOLVER"); env != nullptr && *env) {
    auto found = find_executable(env);
    if (found.empty())
      throw SolverError(std::string("solver '") + env + "' (LGNV_SOLVER) not found");
    return found;
  }
  if (auto kissat = find_executable("kissat"); !kissat.empty()) return kissat;
#ifdef LGNV_BUNDLED_SOLVER
  if (::access(LGNV_BUNDLED_SOLVER, X_OK) == 0) return LGNV_BUNDLED_SOLVER;
#endif
  std::error_code ec;
  const fs::path self = fs::read_symlink("/proc/self/exe", ec);
  if (!ec) {
    const fs::path sibling = self.parent_path() / "lgnv-sat";
    if (::access(sibling.c_str(), X_OK) == 0) return sibling.string();
  }
  if (auto bundled = find_executable("lgnv-sat"); !bundled.empty()) return bundled;
  throw SolverError("no SAT solver found (tried LGNV_SOLVER, kissat, lgnv-sat)");
}

SolveOutcome parse_solver_output(const std::string& text, int exit_code,
                                 std::uint32_t num_vars) {
  SolveOutcome out;
  out.exit_code = exit_code;
  std::string s_line;
  std::vector<std::uint8_t> model(std::size_t(num_vars) + 1, 0);
  std::vector<std::uint8_t> assigned(std::size_t(num_vars) + 1, 0);
  bool saw_terminator = false;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("s ", 0) == 0) {
      s_line = line.substr(2);
    } else if (line.rfind("v", 0) == 0 && exit_code == 10) {
      std::istringstream tokens(line.substr(1));
      std::string tok;
      while (tokens >> tok) {
        long long lit = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), lit);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
          throw SolverError("unparsable model literal '" + tok + "'");
        if (lit == 0) {
          saw_terminator = true;
          continue;
        }
        auto var = static_cast<std::uint64_t>(lit < 0 ? -lit : lit);
        if (var > num_vars)
          throw SolverError("model literal " + tok + " exceeds " +
                            std::to_string(num_vars) + " variables");
        model[var] = lit > 0 ? 1 : 0;
        assigned[var] = 1;
      }
    } else if (line.rfind("c ", 0) == 0 && out.stats_lines.size() < 200) {
      out.stats_lines.push_back(line);
    }
  }

  if (exit_code == 10) {
    if (s_line != "SATISFIABLE")
      throw SolverError("exit code 10 but status line is '" + s_line + "'");
    if (!saw_terminator) throw SolverError("model is not zero-terminated");
    for (std::uint32_t v = 1; v <= num_vars; ++v)
      if (!assigned[v])
        throw SolverError("model does not assign variable " + std::to_string(v));
    out.status = SolveStatus::Sat;
    out.model = std::move(model);
  } else if (exit_code == 20) {
    if (s_line != "UNSATISFIABLE")
      throw SolverError("exit code 20 but status line is '" + s_line + "'");
    out.status = SolveStatus::Unsat;
  } else {
    out.status = SolveStatus::Unknown;
  }
  return out;
}

SolveOutcome solve(const CnfFormula& formula, const SolverConfig& config) {
  if (formula.clauses.empty()) throw InvalidInput("solve: empty formula");
  if (!(config.timeout_seconds > 0)) throw InvalidInput("solver timeout must be > 0");
  const std::string exe = resolve_solver(config);

  const std::string dimacs = to_dimacs(formula);
  const fs::path dir = config.work_dir.empty() ? fs::temp_directory_path() : config.work_dir;
  const std::string stem = "lgnv-" + hex64(std::hash<std::string>{}(dimacs)) + "-" +
                           std::to_string(::getpid()) + "-" +
                           std::to_string(g_file_counter++);
  const fs::path cnf_path = dir / (stem + ".cnf");
  const fs::path out_path = dir / (stem + ".out");
  {
    std::ofstream cnf_out(cnf_path, std::ios::binary);
    if (!cnf_out) throw FileError("cannot write " + cnf_path.string());
    cnf_out << dimacs;
  }

  std::vector<std::string> args = config.extra_args;
  args.push_back(cnf_path.string());

  const auto start = std::chrono::steady_clock::now();
  ChildResult child;
  try {
    child = run_child(exe, args, out_path, config.timeout_seconds);
  } catch (...) {
    if (!config.keep_files) {
      std::error_code ec;
      fs::remove(cnf_path, ec);
      fs::remove(out_path, ec);
    }
    throw;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  SolveOutcome outcome;
  if (child.timed_out) {
    outcome.status = SolveStatus::Unknown;
    outcome.timed_out = true;
  } else {
    outcome = parse_solver_output(read_file(out_path), child.exit_code, formula.num_vars);
  }
  outcome.seconds = seconds;

  if (!config.keep_files) {
    std::error_code ec;
    fs::remove(cnf_path, ec);
    fs::remove(out_path, ec);
  }
  return outcome;
}

namespace {

Bits model_bits(const SolveOutcome& outcome, std::span<const Lit> lits) {
  Bits bits;
  bits.reserve(lits.size());
  for (Lit l : lits) bits.push_back(outcome.value(l) ? 1 : 0);
  return bits;
}

void check_outputs(const SolveOutcome& outcome, const CopyVars& copy,
                   const Netlist& netlist, BitSpan input, const char* which) {
  Bits expected = forward(netlist, input);
  std::size_t pos = 0;
  for (const auto& block : copy.blocks)
    for (Lit l : block)
      if ((outcome.value(l) ? 1 : 0) != expected[pos++])
        throw InternalConsistencyError(std::string("model outputs of ") + which +
                                       " disagree with the forward pass");
}

}  // namespace

Witness decode_counterexample(const SolveOutcome& outcome, const VarMap& varmap,
                              const PropertyQuery& query) {
  if (outcome.status != SolveStatus::Sat)
    throw InvalidInput("decode_counterexample needs a SAT outcome");
  if (query.mode == QueryMode::Attainable)
    throw InvalidInput("decode_counterexample needs a fair/robust query");
  const Netlist& net = *query.netlist;
  const FeatureSchema& schema = *query.schema;

  Witness w;
  w.x = model_bits(outcome, varmap.x.inputs);
  w.x_prime = model_bits(outcome, varmap.x_prime.inputs);
  if (!is_well_formed(schema, w.x) || !is_well_formed(schema, w.x_prime))
    throw InternalConsistencyError("model inputs are not well-formed");
  check_outputs(outcome, varmap.x, net, w.x, "x");
  check_outputs(outcome, varmap.x_prime, net, w.x_prime, "x'");

  w.values = decode_values(schema, w.x);
  w.values_prime = decode_values(schema, w.x_prime);
  w.prediction = predict(net, w.x);
  w.prediction_prime = predict(net, w.x_prime);

  const Mode mode = query.mode == QueryMode::Fair ? Mode::Fair : Mode::Robust;
  if (w.prediction.cls == w.prediction_prime.cls)
    throw InternalConsistencyError("counterexample pair has equal predicted classes");
  if (!check_phi(w.x, w.x_prime, schema, query.eps, mode))
    throw InternalConsistencyError("counterexample pair violates the similarity condition");
  if (!(w.prediction.confidence > query.kappa))
    throw InternalConsistencyError("counterexample confidence " +
                                   to_string(w.prediction.confidence) +
                                   " does not exceed " + to_string(query.kappa));
  for (std::size_t c = 0; c < varmap.x.winners.size(); ++c) {
    if (outcome.value(varmap.x.winners[c]) != (c == w.prediction.cls) ||
        outcome.value(varmap.x_prime.winners[c]) != (c == w.prediction_prime.cls))
      throw InternalConsistencyError("winner flags disagree with predict()");
  }
  return w;
}

Bits decode_attainable(const SolveOutcome& outcome, const VarMap& varmap,
                       const PropertyQuery& query) {
  if (outcome.status != SolveStatus::Sat)
    throw InvalidInput("decode_attainable needs a SAT outcome");
  Bits x = model_bits(outcome, varmap.x.inputs);
  if (!is_well_formed(*query.schema, x))
    throw InternalConsistencyError("attainability model input is not well-formed");
  check_outputs(outcome, varmap.x, *query.netlist, x, "x");
  Prediction p = predict(*query.netlist, x);
  if (p.degenerate || !(p.confidence > query.kappa))
    throw InternalConsistencyError("attainability witness confidence " +
                                   to_string(p.confidence) + " does not exceed " +
                                   to_string(query.kappa));
  return x;
}

}  // namespace lgnv
