#pragma once

// Exhaustive enumeration of all valid words of a given length.
//
// Depth-first assignment of positions 0..M-1 with incremental rejection:
// a window is tested the moment its last (largest) position is assigned,
// so wraparound windows are deferred to the final positions they touch.
// Assigning B before R yields the solutions in lexicographic order
// (B < R) without a sort.

#include <map>
#include <utility>
#include <vector>

#include "ap4cycle/coloring.hpp"
#include "ap4cycle/core.hpp"

namespace ap4cycle {

struct EnumerationResult {
  Modulus modulus;
  Mode mode;
  std::vector<Word> solutions; // lexicographic, B < R
  long count() const { return static_cast<long>(solutions.size()); }
};

struct EnumerateOptions {
  int limit_guard = 24;         // refuse larger M unless raised by the caller
  bool run_of_four_cut = false; // extra cut implied by the step-1 windows;
                                // must never change the result set
};

inline EnumerationResult enumerate_all(const Modulus &m, Mode mode,
                                       const EnumerateOptions &opt = {}) {
  if (m.value > opt.limit_guard)
    throw std::invalid_argument(
        "enumeration at M=" + std::to_string(m.value) +
        " exceeds the guard (" + std::to_string(opt.limit_guard) +
        "); raise limit_guard to override, or use the SAT path");

  const int n = m.value;
  std::vector<Window> wins = windows_for_mode(m, mode);

  // Windows indexed by the position that completes them.
  std::vector<std::vector<const Window *>> complete_at(
      static_cast<size_t>(n));
  for (const Window &w : wins) {
    int last = 0;
    for (int ix : w.indices)
      if (ix > last)
        last = ix;
    complete_at[static_cast<size_t>(last)].push_back(&w);
  }

  EnumerationResult res{m, mode, {}};
  std::vector<Color> cur(static_cast<size_t>(n), Color::B);

  auto rejected_at = [&](int j) {
    for (const Window *w : complete_at[static_cast<size_t>(j)]) {
      Color c0 = cur[static_cast<size_t>(w->indices[0])];
      if (cur[static_cast<size_t>(w->indices[1])] == c0 &&
          cur[static_cast<size_t>(w->indices[2])] == c0 &&
          cur[static_cast<size_t>(w->indices[3])] == c0)
        return true;
    }
    if (opt.run_of_four_cut && j >= 3) {
      Color c0 = cur[static_cast<size_t>(j)];
      if (cur[static_cast<size_t>(j - 1)] == c0 &&
          cur[static_cast<size_t>(j - 2)] == c0 &&
          cur[static_cast<size_t>(j - 3)] == c0)
        return true;
    }
    return false;
  };

  // B tried before R at each depth.
  auto dfs = [&](auto &&self, int j) -> void {
    if (j == n) {
      res.solutions.emplace_back(cur);
      return;
    }
    for (Color c : {Color::B, Color::R}) {
      cur[static_cast<size_t>(j)] = c;
      if (!rejected_at(j))
        self(self, j + 1);
    }
  };
  dfs(dfs, 0);
  return res;
}

// Tally of solutions by (countB, countR).
inline std::map<std::pair<int, int>, long>
balance_histogram(const EnumerationResult &res) {
  std::map<std::pair<int, int>, long> hist;
  for (const Word &w : res.solutions) {
    int b = 0;
    for (Color c : w.colors)
      if (c == Color::B)
        ++b;
    ++hist[{b, w.size() - b}];
  }
  return hist;
}

} // namespace ap4cycle
