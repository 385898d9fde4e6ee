#pragma once

// Modular arithmetic, residue 4-AP windows, degeneracy tests and prime
// utilities shared by every other header.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ap4cycle {

inline bool is_prime(int n) {
  if (n < 2)
    return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

// A cycle length M >= 2 together with its (trial-division) primality.
struct Modulus {
  int value = 2;
  bool prime = false;

  explicit Modulus(int m) : value(m), prime(is_prime(m)) {
    if (m < 2)
      throw std::invalid_argument("modulus must be >= 2, got " +
                                  std::to_string(m));
  }
};

// Residue 4-AP (i, i+r, i+2r, i+3r) mod M.  Degenerate when the four
// residues are not pairwise distinct; for a fixed step this does not
// depend on the start.
struct Window {
  int start = 0;
  int step = 0;
  std::array<int, 4> indices{};
  bool degenerate = false;
};

inline Window make_window(int m, int step, int start) {
  Window w;
  w.start = start;
  w.step = step;
  for (int k = 0; k < 4; ++k)
    w.indices[static_cast<size_t>(k)] = (start + k * step) % m;
  const auto &ix = w.indices;
  w.degenerate = false;
  for (int a = 0; a < 4 && !w.degenerate; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (ix[static_cast<size_t>(a)] == ix[static_cast<size_t>(b)]) {
        w.degenerate = true;
        break;
      }
  return w;
}

// All M*(M-1) windows in deterministic emission order: step-major
// (r = 1..M-1), start ascending (i = 0..M-1).  Every consumer of window
// order (verifier failure reports, CNF clause order) relies on this.
inline std::vector<Window> windows(const Modulus &m) {
  std::vector<Window> out;
  out.reserve(static_cast<size_t>(m.value) * (m.value - 1));
  for (int r = 1; r < m.value; ++r)
    for (int i = 0; i < m.value; ++i)
      out.push_back(make_window(m.value, r, i));
  return out;
}

// Subsequence of windows(m) with four distinct residues, order preserved.
inline std::vector<Window> nondegenerate_windows(const Modulus &m) {
  std::vector<Window> out;
  for (int r = 1; r < m.value; ++r)
    for (int i = 0; i < m.value; ++i) {
      Window w = make_window(m.value, r, i);
      if (!w.degenerate)
        out.push_back(w);
    }
  return out;
}

// True iff every window with step r is degenerate.  Degeneracy is
// start-independent, so this is equivalent to "some window is degenerate".
// The congruence shortcut (r, 2r or 3r vanishing mod M) is property-tested
// against the pairwise-distinctness definition.
inline bool is_degenerate_step(const Modulus &m, int r) {
  if (r < 0 || r >= m.value)
    throw std::invalid_argument("step out of range");
  return r == 0 || (2 * r) % m.value == 0 || (3 * r) % m.value == 0;
}

// Constraint mode shared by the verifier, enumerator and CNF encoder:
// StrongPrime quantifies over every residue step (prime cycles only),
// CyclicNondegenerate restricts to windows with four distinct residues.
enum class Mode { StrongPrime, CyclicNondegenerate };

inline const char *mode_name(Mode mode) {
  return mode == Mode::StrongPrime ? "strong-prime" : "cyclic-nondegenerate";
}

inline std::vector<Window> windows_for_mode(const Modulus &m, Mode mode) {
  if (mode == Mode::StrongPrime) {
    if (!m.prime)
      throw std::invalid_argument(
          "strong-prime mode requires a prime modulus");
    return windows(m);
  }
  return nondegenerate_windows(m);
}

// Ascending primes in [lo, hi].
inline std::vector<int> primes_in_range(int lo, int hi) {
  if (lo < 2 || lo > hi)
    throw std::invalid_argument("primes_in_range requires 2 <= lo <= hi");
  std::vector<int> out;
  for (int n = lo; n <= hi; ++n)
    if (is_prime(n))
      out.push_back(n);
  return out;
}

} // namespace ap4cycle
