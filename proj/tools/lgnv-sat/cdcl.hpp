#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lgnv::sat {

/// Conflict-driven clause-learning solver: two watched literals, first-UIP
/// learning with recursive minimization, VSIDS, phase saving, Luby restarts
/// and activity-based learnt clause reduction.
class CdclSolver {
 public:
  enum class Result { Sat, Unsat };

  /// Ensures variables 1..n exist.
  void reserve_vars(int n);

  /// DIMACS literals, no terminating zero. Returns false once the formula
  /// is known to be unsatisfiable.
  bool add_clause(std::span<const int> lits);

  Result solve();

  /// Model value of DIMACS variable v (1-based) after a Sat result.
  bool model_value(int v) const { return model_[static_cast<std::size_t>(v - 1)] != 0; }

  int num_vars() const { return static_cast<int>(assign_.size()); }
  std::uint64_t conflicts() const { return conflicts_; }
  std::uint64_t decisions() const { return decisions_; }
  std::uint64_t propagations() const { return propagations_; }

 private:
  using CRef = std::uint32_t;
  static constexpr CRef kNoReason = UINT32_MAX;
  static constexpr std::uint8_t kUndef = 2;

  struct Clause {
    std::vector<std::uint32_t> lits;
    double activity = 0.0;
    bool learnt = false;
    bool deleted = false;
  };

  struct Watcher {
    CRef cref;
    std::uint32_t blocker;
  };

  static std::uint32_t var_of(std::uint32_t lit) { return lit >> 1; }
  static std::uint32_t neg(std::uint32_t lit) { return lit ^ 1u; }
  static std::uint32_t from_dimacs(int lit) {
    return lit > 0 ? std::uint32_t(lit - 1) * 2 : std::uint32_t(-lit - 1) * 2 + 1;
  }

  std::uint8_t value(std::uint32_t lit) const {
    std::uint8_t a = assign_[var_of(lit)];
    return a == kUndef ? kUndef : std::uint8_t(a ^ (lit & 1u));
  }
  int level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(std::uint32_t lit, CRef reason);
  CRef propagate();
  void analyze(CRef conflict, std::vector<std::uint32_t>& learnt, int& back_level);
  bool redundant(std::uint32_t lit, std::uint32_t abstract_levels);
  void backtrack(int target);
  std::uint32_t pick_branch();
  void attach(CRef cref);
  void reduce_learnts();
  void bump_var(std::uint32_t v);
  void bump_clause(Clause& c);

  // VSIDS heap on activity.
  void heap_insert(std::uint32_t v);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  std::uint32_t heap_pop();
  bool heap_less(std::uint32_t a, std::uint32_t b) const { return activity_[a] > activity_[b]; }

  std::vector<Clause> clauses_;
  std::vector<CRef> learnts_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::uint8_t> assign_;
  std::vector<std::uint8_t> phase_;
  std::vector<int> level_;
  std::vector<CRef> reason_;
  std::vector<double> activity_;
  std::vector<std::uint8_t> seen_;
  std::vector<std::uint32_t> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<std::uint32_t> heap_;
  std::vector<int> heap_pos_;

  std::vector<std::uint32_t> analyze_stack_;
  std::vector<std::uint32_t> analyze_clear_;

  std::vector<std::uint8_t> model_;
  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  bool unsat_ = false;

  std::uint64_t conflicts_ = 0;
  std::uint64_t decisions_ = 0;
  std::uint64_t propagations_ = 0;
};

}  // namespace lgnv::sat
