#pragma once

// Forward DRAT checking, independent of the solver.
//
// The active clause multiset starts as the formula; additions must be RUP
// (reverse unit propagation: asserting the clause's negation and
// propagating yields a conflict) at their point of insertion, with an
// optional RAT fallback on the first literal.  Deletions remove one
// matching instance.  Unit propagation here walks full occurrence lists
// with per-clause false-literal counters, rebuilt for every check run --
// intentionally not the solver's watched-literal scheme, so the two sides
// of the certificate share no propagation code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ap4cycle/cnf.hpp"
#include "ap4cycle/drat.hpp"

namespace ap4cycle {

struct CheckConfig {
  bool strict_delete = false; // fail on deleting a missing clause
  bool rat = false;           // RAT fallback when RUP fails
  std::int64_t propagation_budget = 1'000'000'000'000; // clause visits
};

struct CheckVerdict {
  bool verified = false;
  std::optional<size_t> failing_step; // 0-based index into proof.steps
  size_t steps_checked = 0;
  bool empty_clause_seen = false;
  bool aborted = false; // resource limit, distinct from refutation
  long warnings = 0;    // e.g. deletions of missing clauses
  std::string message;
};

namespace dratcheck_detail {

class Checker {
public:
  Checker(const CnfFormula &f, const CheckConfig &cfg)
      : cfg_(cfg), nvars_(f.num_vars), budget_(cfg.propagation_budget) {
    value_.assign(static_cast<size_t>(nvars_) + 1, 0);
    occ_.assign(2 * (static_cast<size_t>(nvars_) + 1), {});
    for (const auto &cl : f.clauses)
      insert_clause(cl);
  }

  CheckVerdict run(const DratProof &proof) {
    CheckVerdict v;
    for (size_t i = 0; i < proof.steps.size(); ++i) {
      const DratStep &s = proof.steps[i];
      ++v.steps_checked;
      if (s.is_delete) {
        if (!delete_clause(s.clause)) {
          if (cfg_.strict_delete) {
            v.failing_step = i;
            v.message = "deletion of a clause not in the active set "
                        "(unit deletions are never performed)";
            return v;
          }
          ++v.warnings;
        }
        continue;
      }
      if (s.clause.empty())
        v.empty_clause_seen = true;
      bool ok = rup(s.clause);
      if (!ok && cfg_.rat && !s.clause.empty())
        ok = rat(s.clause);
      if (aborted_) {
        v.aborted = true;
        v.failing_step = i;
        v.message = "propagation budget exhausted";
        return v;
      }
      if (!ok) {
        v.failing_step = i;
        v.message = s.clause.empty() ? "empty clause is not a RUP consequence"
                                     : "clause addition fails RUP/RAT";
        return v;
      }
      if (s.clause.empty()) {
        v.verified = true; // refutation complete, trailing steps ignored
        return v;
      }
      insert_clause(s.clause);
    }
    v.message = "proof ended without an empty clause";
    return v;
  }

private:
  CheckConfig cfg_;
  int nvars_;
  std::int64_t budget_;
  bool aborted_ = false;
  bool root_conflict_ = false;

  // Literal codes as in the DIMACS sign convention: var v -> 2v / 2v+1.
  static int code_of(int dimacs) {
    return dimacs > 0 ? 2 * dimacs : -2 * dimacs + 1;
  }
  static int neg(int code) { return code ^ 1; }
  static int var_of(int code) { return code >> 1; }

  std::vector<std::vector<int>> lits_; // per clause, literal codes
  std::vector<char> active_;
  std::vector<int> false_count_;
  std::vector<std::vector<int>> occ_; // literal code -> clause ids
  std::map<std::vector<int>, std::vector<int>> by_key_; // sorted lits -> ids

  std::vector<signed char> value_; // per var
  std::vector<int> trail_;         // literal codes, root prefix persistent

  int lit_value(int code) const {
    signed char s = value_[static_cast<size_t>(var_of(code))];
    return (code & 1) ? -s : s;
  }

  static std::vector<int> key_of(const std::vector<int> &dimacs) {
    std::vector<int> k = dimacs;
    std::sort(k.begin(), k.end());
    return k;
  }

  void assign(int code) {
    value_[static_cast<size_t>(var_of(code))] = (code & 1) ? -1 : 1;
    trail_.push_back(code);
    for (int cid : occ_[static_cast<size_t>(neg(code))])
      ++false_count_[static_cast<size_t>(cid)];
  }

  void unassign_to(size_t mark) {
    while (trail_.size() > mark) {
      int code = trail_.back();
      trail_.pop_back();
      value_[static_cast<size_t>(var_of(code))] = 0;
      for (int cid : occ_[static_cast<size_t>(neg(code))])
        --false_count_[static_cast<size_t>(cid)];
    }
  }

  // Propagate trail_[from..]; true on conflict.  Counter scheme: a clause
  // with false_count == size is falsified; at size-1 it is unit unless
  // its remaining literal is already true.
  bool propagate(size_t from) {
    for (size_t i = from; i < trail_.size(); ++i) {
      const int p = trail_[i];
      const auto &watch = occ_[static_cast<size_t>(neg(p))];
      for (int cid : watch) {
        if (!active_[static_cast<size_t>(cid)])
          continue;
        if (--budget_ <= 0) {
          aborted_ = true;
          return true;
        }
        const auto &cl = lits_[static_cast<size_t>(cid)];
        const int fc = false_count_[static_cast<size_t>(cid)];
        if (fc == static_cast<int>(cl.size()))
          return true;
        if (fc != static_cast<int>(cl.size()) - 1)
          continue;
        int unit = -1;
        for (int code : cl) {
          const int val = lit_value(code);
          if (val == 1) {
            unit = -1;
            break; // satisfied
          }
          if (val == 0)
            unit = code;
        }
        if (unit != -1)
          assign(unit);
      }
    }
    return false;
  }

  // Insert an active clause, keeping the root state a unit-propagation
  // fixpoint of the active set.
  void insert_clause(const std::vector<int> &dimacs) {
    const int cid = static_cast<int>(lits_.size());
    std::vector<int> codes;
    codes.reserve(dimacs.size());
    int fc = 0;
    for (int d : dimacs) {
      int code = code_of(d);
      codes.push_back(code);
      if (lit_value(code) == -1)
        ++fc;
    }
    for (int code : codes)
      occ_[static_cast<size_t>(code)].push_back(cid);
    lits_.push_back(codes);
    active_.push_back(1);
    false_count_.push_back(fc);
    by_key_[key_of(dimacs)].push_back(cid);

    if (codes.empty()) {
      root_conflict_ = true;
      return;
    }
    if (fc == static_cast<int>(codes.size())) {
      root_conflict_ = true;
      return;
    }
    if (fc == static_cast<int>(codes.size()) - 1) {
      int unit = -1;
      for (int code : codes) {
        const int val = lit_value(code);
        if (val == 1)
          return; // satisfied under root state
        if (val == 0)
          unit = code;
      }
      const size_t from = trail_.size();
      assign(unit);
      if (propagate(from))
        root_conflict_ = true;
    }
  }

  // Remove one active instance with the same literal multiset.  Deleting
  // a unit clause is skipped (and reported as missing) so the persistent
  // root assignment stays justified, matching drat-trim's behavior.
  bool delete_clause(const std::vector<int> &dimacs) {
    if (dimacs.size() == 1)
      return false;
    auto it = by_key_.find(key_of(dimacs));
    if (it == by_key_.end() || it->second.empty())
      return false;
    const int cid = it->second.front();
    it->second.erase(it->second.begin());
    if (it->second.empty())
      by_key_.erase(it);
    active_[static_cast<size_t>(cid)] = 0;
    return true;
  }

  // Assert the negation of cl on top of the root state and propagate.
  bool rup(const std::vector<int> &cl) {
    if (root_conflict_)
      return true;
    const size_t mark = trail_.size();
    bool conflict = false;
    for (int d : cl) {
      const int code = code_of(d);
      const int val = lit_value(code);
      if (val == 1) { // negation contradicts the current state
        conflict = true;
        break;
      }
      if (val == 0)
        assign(neg(code));
    }
    if (!conflict)
      conflict = propagate(mark);
    unassign_to(mark);
    return conflict && !aborted_;
  }

  // RAT on the first literal: every resolvent with an active clause
  // containing the negated pivot must be RUP (tautologies pass trivially).
  bool rat(const std::vector<int> &cl) {
    const int pivot = cl.front();
    std::vector<int> base; // cl without the pivot
    for (size_t i = 1; i < cl.size(); ++i)
      base.push_back(cl[i]);
    const auto &against = occ_[static_cast<size_t>(code_of(-pivot))];
    const std::vector<int> candidates(against.begin(), against.end());
    for (int cid : candidates) {
      if (!active_[static_cast<size_t>(cid)])
        continue;
      std::vector<int> resolvent = base;
      bool tautology = false;
      for (int code : lits_[static_cast<size_t>(cid)]) {
        const int d = (code & 1) ? -(code >> 1) : code >> 1;
        if (d == -pivot)
          continue;
        if (std::find(base.begin(), base.end(), -d) != base.end()) {
          tautology = true;
          break;
        }
        resolvent.push_back(d);
      }
      if (tautology)
        continue;
      if (!rup(resolvent))
        return false;
      if (aborted_)
        return false;
    }
    return true;
  }
};

} // namespace dratcheck_detail

inline CheckVerdict check(const CnfFormula &f, const DratProof &proof,
                          const CheckConfig &cfg = {}) {
  dratcheck_detail::Checker checker(f, cfg);
  return checker.run(proof);
}

} // namespace ap4cycle
