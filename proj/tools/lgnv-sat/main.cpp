// lgnv-sat: DIMACS CNF in, SAT-competition output out.
//   exit 10 + "s SATISFIABLE" + v-lines, or exit 20 + "s UNSATISFIABLE".
//   Usage: lgnv-sat [file.cnf]   (stdin when no file is given)

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cdcl.hpp"

namespace {

int fail(const std::string& msg) {
  std::cerr << "lgnv-sat: " << msg << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  std::ifstream file;
  std::istream* in = &std::cin;
  if (argc > 2) return fail("usage: lgnv-sat [file.cnf]");
  if (argc == 2) {
    file.open(argv[1]);
    if (!file) return fail(std::string("cannot open ") + argv[1]);
    in = &file;
  }

  lgnv::sat::CdclSolver solver;
  std::vector<int> clause;
  std::string line;
  bool header = false;
  long declared_vars = 0;
  while (std::getline(*in, line)) {
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    if (line[0] == 'p') {
      std::istringstream hs(line);
      std::string p, fmt;
      long clauses = 0;
      if (!(hs >> p >> fmt >> declared_vars >> clauses) || fmt != "cnf" || declared_vars < 0)
        return fail("bad header: " + line);
      solver.reserve_vars(static_cast<int>(declared_vars));
      header = true;
      continue;
    }
    if (!header) return fail("clause before header");
    const char* s = line.c_str();
    char* end = nullptr;
    while (true) {
      while (*s == ' ' || *s == '\t' || *s == '\r') ++s;
      if (*s == '\0') break;
      long lit = std::strtol(s, &end, 10);
      if (end == s) return fail("bad literal in: " + line);
      s = end;
      if (lit == 0) {
        solver.add_clause(clause);
        clause.clear();
      } else {
        if (std::labs(lit) > declared_vars) return fail("literal exceeds declared variables");
        clause.push_back(static_cast<int>(lit));
      }
    }
  }
  if (!clause.empty()) solver.add_clause(clause);

  const auto result = solver.solve();
  std::cout << "c conflicts " << solver.conflicts() << '\n'
            << "c decisions " << solver.decisions() << '\n'
            << "c propagations " << solver.propagations() << '\n';
  if (result == lgnv::sat::CdclSolver::Result::Unsat) {
    std::cout << "s UNSATISFIABLE\n";
    std::cout.flush();
    return 20;
  }
  std::cout << "s SATISFIABLE\n";
  std::string row = "v";
  for (int v = 1; v <= solver.num_vars(); ++v) {
    row += ' ';
    row += std::to_string(solver.model_value(v) ? v : -v);
    if (row.size() > 72) {
      std::cout << row << '\n';
      row = "v";
    }
  }
  std::cout << row << " 0\n";
  std::cout.flush();
  return 10;
}
