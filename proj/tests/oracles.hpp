#pragma once

// Test-only oracles, kept independent of the library implementation paths
// they are used to check: window generation by a plain double loop with a
// set-distinctness test, enumeration by filtering all 2^M words, and a
// deliberately naive RUP checker that re-scans the whole clause set.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ap4cycle/drat.hpp"

namespace oracle {

using WindowTuple = std::array<int, 4>;

inline std::vector<WindowTuple> all_windows(int m) {
  std::vector<WindowTuple> out;
  for (int r = 1; r < m; ++r)
    for (int i = 0; i < m; ++i)
      out.push_back({i, (i + r) % m, (i + 2 * r) % m, (i + 3 * r) % m});
  return out;
}

inline bool four_distinct(const WindowTuple &w) {
  std::set<int> s(w.begin(), w.end());
  return s.size() == 4;
}

inline std::vector<WindowTuple> nondeg_windows(int m) {
  std::vector<WindowTuple> out;
  for (const WindowTuple &w : all_windows(m))
    if (four_distinct(w))
      out.push_back(w);
  return out;
}

// word as bitmask, bit j set = position j is R
inline bool mono(const WindowTuple &w, std::uint64_t word) {
  int sum = 0;
  for (int ix : w)
    sum += (word >> ix) & 1;
  return sum == 0 || sum == 4;
}

inline long count_mono(const std::vector<WindowTuple> &wins,
                       std::uint64_t word) {
  long n = 0;
  for (const WindowTuple &w : wins)
    if (mono(w, word))
      ++n;
  return n;
}

inline std::string word_string(std::uint64_t word, int m) {
  std::string s;
  for (int j = 0; j < m; ++j)
    s.push_back((word >> j) & 1 ? 'R' : 'B');
  return s;
}

// The brute-force enumeration the library's DFS must reproduce exactly:
// filter all 2^M words, then sort into lexicographic order with B < R.
inline std::vector<std::string> naive_solutions(int m, bool strong) {
  std::vector<WindowTuple> wins =
      strong ? all_windows(m) : nondeg_windows(m);
  std::vector<std::string> out;
  for (std::uint64_t word = 0; word < (1ULL << m); ++word) {
    bool ok = true;
    for (const WindowTuple &w : wins)
      if (mono(w, word)) {
        ok = false;
        break;
      }
    if (ok)
      out.push_back(word_string(word, m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- reference RUP checker ------------------------------------------------
//
// Propagation by repeated full scans until fixpoint; clause states tracked
// with nothing cleverer than a per-variable value array.  Used to
// cross-examine the production checker's verdicts on mutated proofs.

class ReferenceChecker {
public:
  ReferenceChecker(int num_vars, const std::vector<std::vector<int>> &clauses)
      : nvars_(num_vars) {
    for (const auto &c : clauses)
      active_.emplace_back(c, true);
  }

  bool run(const ap4cycle::DratProof &proof) {
    for (const auto &step : proof.steps) {
      if (step.is_delete) {
        erase_one(step.clause);
        continue;
      }
      if (!rup(step.clause))
        return false;
      if (step.clause.empty())
        return true;
      active_.emplace_back(step.clause, true);
    }
    return false; // no empty clause derived
  }

private:
  int nvars_;
  std::vector<std::pair<std::vector<int>, bool>> active_;

  void erase_one(const std::vector<int> &clause) {
    if (clause.size() == 1)
      return; // unit deletions are ignored, as in the production checker
    std::vector<int> key = clause;
    std::sort(key.begin(), key.end());
    for (auto &[lits, alive] : active_) {
      if (!alive)
        continue;
      std::vector<int> k2 = lits;
      std::sort(k2.begin(), k2.end());
      if (k2 == key) {
        alive = false;
        return;
      }
    }
  }

  bool rup(const std::vector<int> &clause) const {
    std::vector<int> value(static_cast<size_t>(nvars_) + 1, 0); // 0/1/-1
    auto val = [&](int lit) {
      int v = value[static_cast<size_t>(lit > 0 ? lit : -lit)];
      return lit > 0 ? v : -v;
    };
    auto set_true = [&](int lit) {
      value[static_cast<size_t>(lit > 0 ? lit : -lit)] = lit > 0 ? 1 : -1;
    };
    for (int lit : clause) {
      if (val(lit) == 1)
        return true; // negation contradicts itself (duplicate/tautology)
      set_true(-lit);
    }
    for (;;) {
      bool changed = false;
      for (const auto &[lits, alive] : active_) {
        if (!alive)
          continue;
        int unassigned = 0, unit = 0;
        bool sat = false;
        for (int lit : lits) {
          int v = val(lit);
          if (v == 1) {
            sat = true;
            break;
          }
          if (v == 0) {
            ++unassigned;
            unit = lit;
          }
        }
        if (sat)
          continue;
        if (unassigned == 0)
          return true; // conflict
        if (unassigned == 1) {
          set_true(unit);
          changed = true;
        }
      }
      if (!changed)
        return false;
    }
  }
};

} // namespace oracle
