#include "cdcl.hpp"

#include <algorithm>
#include <cmath>

namespace lgnv::sat {
namespace {

// Luby sequence 1 1 2 1 1 2 4 1 1 2 ... (x is 0-based).
double luby(double y, int x) {
  int size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

}  // namespace

void CdclSolver::reserve_vars(int n) {
  const auto old = assign_.size();
  if (n <= static_cast<int>(old)) return;
  const auto size = static_cast<std::size_t>(n);
  assign_.resize(size, kUndef);
  phase_.resize(size, 0);
  level_.resize(size, 0);
  reason_.resize(size, kNoReason);
  activity_.resize(size, 0.0);
  seen_.resize(size, 0);
  heap_pos_.resize(size, -1);
  watches_.resize(2 * size);
  for (auto v = old; v < size; ++v) heap_insert(static_cast<std::uint32_t>(v));
}

bool CdclSolver::add_clause(std::span<const int> dimacs) {
  if (unsat_) return false;
  std::vector<std::uint32_t> lits;
  lits.reserve(dimacs.size());
  for (int d : dimacs) {
    reserve_vars(std::abs(d));
    lits.push_back(from_dimacs(d));
  }
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());

  std::size_t out = 0;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && lits[i + 1] == neg(lits[i])) return true;  // tautology
    const auto v = value(lits[i]);
    if (v == 1) return true;  // satisfied at level 0
    if (v == 0) continue;     // false at level 0
    lits[out++] = lits[i];
  }
  lits.resize(out);

  if (lits.empty()) {
    unsat_ = true;
    return false;
  }
  if (lits.size() == 1) {
    enqueue(lits[0], kNoReason);
    if (propagate() != kNoReason) unsat_ = true;
    return !unsat_;
  }
  clauses_.push_back({std::move(lits), 0.0, false, false});
  attach(static_cast<CRef>(clauses_.size() - 1));
  return true;
}

void CdclSolver::attach(CRef cref) {
  const auto& c = clauses_[cref];
  watches_[c.lits[0]].push_back({cref, c.lits[1]});
  watches_[c.lits[1]].push_back({cref, c.lits[0]});
}

void CdclSolver::enqueue(std::uint32_t lit, CRef reason) {
  const auto v = var_of(lit);
  assign_[v] = static_cast<std::uint8_t>((lit & 1u) ^ 1u);
  level_[v] = level();
  reason_[v] = reason;
  trail_.push_back(lit);
}

CdclSolver::CRef CdclSolver::propagate() {
  while (qhead_ < trail_.size()) {
    const std::uint32_t p = trail_[qhead_++];
    const std::uint32_t false_lit = neg(p);
    auto& ws = watches_[false_lit];
    ++propagations_;

    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ws.size()) {
      Watcher w = ws[i];
      if (value(w.blocker) == 1) {
        ws[j++] = ws[i++];
        continue;
      }
      Clause& c = clauses_[w.cref];
      if (c.deleted) {
        ++i;
        continue;
      }
      if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
      const std::uint32_t first = c.lits[0];
      if (first != w.blocker && value(first) == 1) {
        ws[j++] = {w.cref, first};
        ++i;
        continue;
      }

      bool moved = false;
      for (std::size_t k = 2; k < c.lits.size(); ++k) {
        if (value(c.lits[k]) != 0) {
          std::swap(c.lits[1], c.lits[k]);
          watches_[c.lits[1]].push_back({w.cref, first});
          moved = true;
          break;
        }
      }
      ++i;
      if (moved) continue;

      ws[j++] = {w.cref, first};
      if (value(first) == 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return w.cref;
      }
      enqueue(first, w.cref);
    }
    ws.resize(j);
  }
  return kNoReason;
}

void CdclSolver::analyze(CRef conflict, std::vector<std::uint32_t>& learnt,
                         int& back_level) {
  learnt.clear();
  learnt.push_back(0);  // asserting literal goes here
  int path = 0;
  std::uint32_t p = UINT32_MAX;
  std::size_t index = trail_.size();
  CRef confl = conflict;

  do {
    Clause& c = clauses_[confl];
    if (c.learnt) bump_clause(c);
    for (std::size_t k = (p == UINT32_MAX ? 0 : 1); k < c.lits.size(); ++k) {
      const std::uint32_t q = c.lits[k];
      const auto v = var_of(q);
      if (!seen_[v] && level_[v] > 0) {
        bump_var(v);
        seen_[v] = 1;
        if (level_[v] >= level())
          ++path;
        else
          learnt.push_back(q);
      }
    }
    while (!seen_[var_of(trail_[--index])]) {
    }
    p = trail_[index];
    confl = reason_[var_of(p)];
    seen_[var_of(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = neg(p);

  // Drop literals implied by the rest of the clause.
  analyze_clear_.assign(learnt.begin(), learnt.end());
  std::uint32_t abstract_levels = 0;
  for (std::size_t k = 1; k < learnt.size(); ++k)
    abstract_levels |= 1u << (level_[var_of(learnt[k])] & 31);
  std::size_t out = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    const auto v = var_of(learnt[k]);
    if (reason_[v] == kNoReason || !redundant(learnt[k], abstract_levels))
      learnt[out++] = learnt[k];
  }
  learnt.resize(out);

  back_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_k = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k)
      if (level_[var_of(learnt[k])] > level_[var_of(learnt[max_k])]) max_k = k;
    std::swap(learnt[1], learnt[max_k]);
    back_level = level_[var_of(learnt[1])];
  }
  for (auto l : analyze_clear_) seen_[var_of(l)] = 0;
}

bool CdclSolver::redundant(std::uint32_t lit, std::uint32_t abstract_levels) {
  analyze_stack_.clear();
  analyze_stack_.push_back(lit);
  const std::size_t top = analyze_clear_.size();
  while (!analyze_stack_.empty()) {
    const auto v = var_of(analyze_stack_.back());
    analyze_stack_.pop_back();
    const Clause& c = clauses_[reason_[v]];
    for (std::size_t k = 1; k < c.lits.size(); ++k) {
      const auto q = c.lits[k];
      const auto qv = var_of(q);
      if (seen_[qv] || level_[qv] == 0) continue;
      if (reason_[qv] != kNoReason &&
          ((1u << (level_[qv] & 31)) & abstract_levels) != 0) {
        seen_[qv] = 1;
        analyze_stack_.push_back(q);
        analyze_clear_.push_back(q);
      } else {
        for (std::size_t r = top; r < analyze_clear_.size(); ++r)
          seen_[var_of(analyze_clear_[r])] = 0;
        analyze_clear_.resize(top);
        return false;
      }
    }
  }
  return true;
}

void CdclSolver::backtrack(int target) {
  if (level() <= target) return;
  const std::size_t stop = trail_lim_[static_cast<std::size_t>(target)];
  for (std::size_t i = trail_.size(); i > stop; --i) {
    const auto lit = trail_[i - 1];
    const auto v = var_of(lit);
    phase_[v] = static_cast<std::uint8_t>((lit & 1u) ^ 1u);
    assign_[v] = kUndef;
    reason_[v] = kNoReason;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(stop);
  trail_lim_.resize(static_cast<std::size_t>(target));
  qhead_ = trail_.size();
}

std::uint32_t CdclSolver::pick_branch() {
  while (!heap_.empty()) {
    const auto v = heap_pop();
    if (assign_[v] == kUndef) return v * 2 + (phase_[v] ? 0u : 1u);
  }
  return UINT32_MAX;
}

void CdclSolver::bump_var(std::uint32_t v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

void CdclSolver::bump_clause(Clause& c) {
  c.activity += clause_inc_;
  if (c.activity > 1e20) {
    for (auto cref : learnts_) clauses_[cref].activity *= 1e-20;
    clause_inc_ *= 1e-20;
  }
}

void CdclSolver::reduce_learnts() {
  std::sort(learnts_.begin(), learnts_.end(), [&](CRef a, CRef b) {
    return clauses_[a].activity < clauses_[b].activity;
  });
  const std::size_t half = learnts_.size() / 2;
  std::size_t out = 0;
  for (std::size_t i = 0; i < learnts_.size(); ++i) {
    Clause& c = clauses_[learnts_[i]];
    const auto v0 = var_of(c.lits[0]);
    const bool locked = reason_[v0] == learnts_[i] && value(c.lits[0]) == 1;
    if (i < half && c.lits.size() > 2 && !locked) {
      c.deleted = true;
      c.lits.clear();
      c.lits.shrink_to_fit();
    } else {
      learnts_[out++] = learnts_[i];
    }
  }
  learnts_.resize(out);
}

void CdclSolver::heap_insert(std::uint32_t v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void CdclSolver::heap_up(std::size_t i) {
  const auto v = heap_[i];
  while (i > 0) {
    const std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

void CdclSolver::heap_down(std::size_t i) {
  const auto v = heap_[i];
  while (true) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

std::uint32_t CdclSolver::heap_pop() {
  const auto top = heap_.front();
  heap_pos_[top] = -1;
  const auto last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

CdclSolver::Result CdclSolver::solve() {
  if (unsat_) return Result::Unsat;
  if (propagate() != kNoReason) {
    unsat_ = true;
    return Result::Unsat;
  }

  double max_learnts = std::max(100.0, static_cast<double>(clauses_.size()) / 3.0);
  std::vector<std::uint32_t> learnt;
  for (int restart = 0;; ++restart) {
    auto budget = static_cast<std::int64_t>(luby(2.0, restart) * 100.0);
    while (true) {
      const CRef confl = propagate();
      if (confl != kNoReason) {
        ++conflicts_;
        if (level() == 0) {
          unsat_ = true;
          return Result::Unsat;
        }
        int back_level = 0;
        analyze(confl, learnt, back_level);
        backtrack(back_level);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          clauses_.push_back({learnt, 0.0, true, false});
          const auto cref = static_cast<CRef>(clauses_.size() - 1);
          learnts_.push_back(cref);
          attach(cref);
          bump_clause(clauses_[cref]);
          enqueue(learnt[0], cref);
        }
        var_inc_ /= 0.95;
        clause_inc_ /= 0.999;
        --budget;
        continue;
      }

      if (budget <= 0) {
        backtrack(0);
        max_learnts *= 1.05;
        break;
      }
      if (static_cast<double>(learnts_.size()) >= max_learnts + double(trail_.size()))
        reduce_learnts();

      const auto next = pick_branch();
      if (next == UINT32_MAX) {
        model_.assign(assign_.begin(), assign_.end());
        backtrack(0);
        return Result::Sat;
      }
      ++decisions_;
      trail_lim_.push_back(trail_.size());
      enqueue(next, kNoReason);
    }
  }
}

}  // namespace lgnv::sat
