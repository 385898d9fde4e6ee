#pragma once

// Two-colored cyclic words and the monochromatic-window verifiers.
//
// A word of length M is a 2-coloring of Z/MZ.  verify_strong checks all
// M*(M-1) residue windows (prime setting), verify_cyclic checks only the
// non-degenerate ones (any modulus).  Colors encode as B=0, R=1, the same
// convention the CNF encoding uses for variable polarity.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ap4cycle/core.hpp"

namespace ap4cycle {

enum class Color : std::uint8_t { B = 0, R = 1 };

inline char to_char(Color c) { return c == Color::B ? 'B' : 'R'; }

struct Word {
  std::vector<Color> colors;

  Word() = default;
  explicit Word(std::vector<Color> cs) : colors(std::move(cs)) {}

  static Word parse(std::string_view text) {
    Word w;
    w.colors.reserve(text.size());
    for (char ch : text) {
      if (ch == 'B')
        w.colors.push_back(Color::B);
      else if (ch == 'R')
        w.colors.push_back(Color::R);
      else
        throw std::invalid_argument(std::string("invalid color symbol '") +
                                    ch + "' (alphabet is {B,R})");
    }
    return w;
  }

  std::string str() const {
    std::string s;
    s.reserve(colors.size());
    for (Color c : colors)
      s.push_back(to_char(c));
    return s;
  }

  int size() const { return static_cast<int>(colors.size()); }
  Color at(int i) const { return colors[static_cast<size_t>(i)]; }

  auto operator<=>(const Word &) const = default;
};

struct VerifyFailure {
  Window window;
  std::string block; // the four colors at the window positions, e.g. "RRRR"
};

struct VerifyReport {
  bool ok = false;
  std::optional<VerifyFailure> first_failure;
  long windows_checked = 0;
  long mono_count = 0; // monochromatic windows among those inspected
};

namespace detail {

inline bool window_monochromatic(const Word &w, const Window &win) {
  Color c0 = w.at(win.indices[0]);
  return w.at(win.indices[1]) == c0 && w.at(win.indices[2]) == c0 &&
         w.at(win.indices[3]) == c0;
}

inline std::string window_block(const Word &w, const Window &win) {
  std::string s;
  for (int ix : win.indices)
    s.push_back(to_char(w.at(ix)));
  return s;
}

inline VerifyReport verify_over(const Word &w, const std::vector<Window> &wins) {
  VerifyReport rep;
  for (const Window &win : wins) {
    ++rep.windows_checked;
    if (window_monochromatic(w, win)) {
      ++rep.mono_count;
      if (!rep.first_failure)
        rep.first_failure = VerifyFailure{win, window_block(w, win)};
    }
  }
  rep.ok = rep.mono_count == 0;
  return rep;
}

} // namespace detail

// Strong form: no window over any residue step r in [1, p) may be
// monochromatic.  Only meaningful on prime cycles, where degeneracy
// coincides with p | d; composite moduli are rejected.
inline VerifyReport verify_strong(const Modulus &p, const Word &w) {
  if (!p.prime)
    throw std::invalid_argument(
        "verify_strong requires a prime modulus (use verify_cyclic)");
  if (w.size() != p.value)
    throw std::invalid_argument("word length does not match modulus");
  return detail::verify_over(w, windows(p));
}

// Cyclic form: degenerate windows are skipped; works for any M >= 2.
inline VerifyReport verify_cyclic(const Modulus &m, const Word &w) {
  if (w.size() != m.value)
    throw std::invalid_argument("word length does not match modulus");
  return detail::verify_over(w, nondegenerate_windows(m));
}

// Number of monochromatic non-degenerate windows; 0 iff verify_cyclic ok.
inline long count_mono_nondegenerate(const Modulus &m, const Word &w) {
  if (w.size() != m.value)
    throw std::invalid_argument("word length does not match modulus");
  long n = 0;
  for (const Window &win : nondegenerate_windows(m))
    if (detail::window_monochromatic(w, win))
      ++n;
  return n;
}

// w repeated out to n letters.
inline std::vector<Color> extend_periodic(const Word &w, int n) {
  std::vector<Color> ext;
  ext.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    ext.push_back(w.at(i % w.size()));
  return ext;
}

// Executable witness of the lifting argument: extend w periodically over
// [0, span_multiplier*p) and exhaustively test every integer 4-AP
// (a, a+d, a+2d, a+3d) with p not dividing d that fits in the interval.
// Requires a word that already passes verify_strong.
inline bool periodic_extension_check(const Modulus &p, const Word &w,
                                     int span_multiplier) {
  if (span_multiplier < 1)
    throw std::invalid_argument("span_multiplier must be >= 1");
  VerifyReport base = verify_strong(p, w);
  if (!base.ok)
    throw std::invalid_argument(
        "periodic_extension_check requires a verify_strong-passing word");
  const int n = span_multiplier * p.value;
  std::vector<Color> ext = extend_periodic(w, n);
  for (int d = 1; 3 * d <= n - 1; ++d) {
    if (d % p.value == 0)
      continue;
    for (int a = 0; a + 3 * d < n; ++a) {
      Color c = ext[static_cast<size_t>(a)];
      if (ext[static_cast<size_t>(a + d)] == c &&
          ext[static_cast<size_t>(a + 2 * d)] == c &&
          ext[static_cast<size_t>(a + 3 * d)] == c)
        return false;
    }
  }
  return true;
}

// Maximum cyclic run of equal colors.
inline int run_length_max(const Word &w) {
  if (w.size() == 0)
    throw std::invalid_argument("run_length_max on empty word");
  const int n = w.size();
  int best = 1;
  int run = 1;
  // Double traversal covers the wraparound run; a run can never exceed n.
  for (int i = 1; i < 2 * n; ++i) {
    if (w.at(i % n) == w.at((i - 1) % n)) {
      ++run;
      if (run > best)
        best = run;
    } else {
      run = 1;
    }
  }
  return best < n ? best : n;
}

} // namespace ap4cycle
