#pragma once

// Dihedral group action on cyclic words, optionally extended by the global
// color swap.  Rotations act by (rot_k w)_i = w_{i-k}, reflections by
// (ref_k w)_i = w_{k-i}, indices mod M.
//
// Orbits are computed inside the given word set (orbit intersected with the
// input), which is what the solution-list classification counts.  Two orbit
// routes exist: the algebraic one over explicit group elements and a
// generator route (rotations plus the reversal of each rotation); they are
// cross-checked in the tests.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "ap4cycle/coloring.hpp"
#include "ap4cycle/core.hpp"

namespace ap4cycle {

struct GroupElement {
  enum class Kind { Rotation, Reflection };
  Kind kind = Kind::Rotation;
  int k = 0;              // parameter in [0, M)
  bool with_swap = false; // post-compose B <-> R

  bool is_identity() const {
    return kind == Kind::Rotation && k == 0 && !with_swap;
  }
};

inline Word swap_colors(const Word &w) {
  Word out = w;
  for (Color &c : out.colors)
    c = c == Color::B ? Color::R : Color::B;
  return out;
}

inline Word apply(const GroupElement &g, const Word &w) {
  const int n = w.size();
  if (n == 0)
    throw std::invalid_argument("apply on empty word");
  if (g.k < 0 || g.k >= n)
    throw std::invalid_argument("group element parameter out of range");
  Word out;
  out.colors.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    int src = g.kind == GroupElement::Kind::Rotation
                  ? (i - g.k + n) % n   // (rot_k w)_i = w_{i-k}
                  : ((g.k - i) % n + n) % n; // (ref_k w)_i = w_{k-i}
    out.colors[static_cast<size_t>(i)] = w.at(src);
  }
  if (g.with_swap)
    out = swap_colors(out);
  return out;
}

// Group law for D_M x <swap>:
//   rot_a rot_b = rot_{a+b}   rot_a ref_b = ref_{a+b}
//   ref_a rot_b = ref_{a-b}   ref_a ref_b = rot_{a-b}
// and the swap is central of order 2.
inline GroupElement compose(const GroupElement &g, const GroupElement &h,
                            int m) {
  using Kind = GroupElement::Kind;
  GroupElement out;
  out.with_swap = g.with_swap != h.with_swap;
  if (g.kind == Kind::Rotation && h.kind == Kind::Rotation)
    out = {Kind::Rotation, (g.k + h.k) % m, out.with_swap};
  else if (g.kind == Kind::Rotation && h.kind == Kind::Reflection)
    out = {Kind::Reflection, (g.k + h.k) % m, out.with_swap};
  else if (g.kind == Kind::Reflection && h.kind == Kind::Rotation)
    out = {Kind::Reflection, ((g.k - h.k) % m + m) % m, out.with_swap};
  else
    out = {Kind::Rotation, ((g.k - h.k) % m + m) % m, out.with_swap};
  return out;
}

// All 2M elements of D_M, or 4M with the swap extension, in deterministic
// order: rotations then reflections, k ascending, swap last.
inline std::vector<GroupElement> group_elements(int m, bool with_swap) {
  std::vector<GroupElement> out;
  for (int s = 0; s < (with_swap ? 2 : 1); ++s) {
    for (int k = 0; k < m; ++k)
      out.push_back({GroupElement::Kind::Rotation, k, s == 1});
    for (int k = 0; k < m; ++k)
      out.push_back({GroupElement::Kind::Reflection, k, s == 1});
  }
  return out;
}

// Every group element fixing w; contains at least the identity.
inline std::vector<GroupElement> stabilizer(const Word &w, bool with_swap) {
  std::vector<GroupElement> out;
  for (const GroupElement &g : group_elements(w.size(), with_swap))
    if (apply(g, w) == w)
      out.push_back(g);
  return out;
}

struct OrbitSummary {
  long num_words = 0;
  long num_orbits = 0;
  std::vector<long> orbit_sizes;       // discovery order
  std::vector<Word> representatives;   // lexicographic minimum per orbit
  bool with_swap = false;
};

namespace detail {

// Generator route: rotations of w plus the reversal of each rotation
// (plus both families of the swapped word when requested).
inline std::set<Word> orbit_of(const Word &w, bool with_swap) {
  std::set<Word> orb;
  auto add_dihedral = [&](const Word &v) {
    const int n = v.size();
    for (int k = 0; k < n; ++k) {
      Word rot;
      rot.colors.reserve(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i)
        rot.colors.push_back(v.at((i + k) % n));
      orb.insert(rot);
      Word rev = rot;
      std::reverse(rev.colors.begin(), rev.colors.end());
      orb.insert(rev);
    }
  };
  add_dihedral(w);
  if (with_swap)
    add_dihedral(swap_colors(w));
  return orb;
}

} // namespace detail

// Partition of the input set into orbits.  Orbits are discovered from the
// lexicographically smallest unseen word; each orbit is intersected with
// the input set and represented by its minimum.
inline OrbitSummary orbits(const std::vector<Word> &words, bool with_swap) {
  std::set<Word> input(words.begin(), words.end());
  for (const Word &w : input)
    if (w.size() != input.begin()->size())
      throw std::invalid_argument("orbit words must share one length");

  OrbitSummary sum;
  sum.num_words = static_cast<long>(input.size());
  sum.with_swap = with_swap;

  std::set<Word> unseen = input;
  while (!unseen.empty()) {
    const Word &w = *unseen.begin();
    std::set<Word> orb = detail::orbit_of(w, with_swap);
    std::set<Word> inside;
    for (const Word &v : orb)
      if (input.count(v))
        inside.insert(v);
    sum.representatives.push_back(*inside.begin());
    sum.orbit_sizes.push_back(static_cast<long>(inside.size()));
    for (const Word &v : inside)
      unseen.erase(v);
  }
  sum.num_orbits = static_cast<long>(sum.orbit_sizes.size());
  return sum;
}

// Orbit via explicit group elements; must agree with the generator route.
inline std::set<Word> orbit_elements(const Word &w, bool with_swap) {
  std::set<Word> orb;
  for (const GroupElement &g : group_elements(w.size(), with_swap))
    orb.insert(apply(g, w));
  return orb;
}

// All 2^((M+1)/2) words of odd length M fixed by the reflection through
// axis k: position i pairs with k-i, so the free choices are the axis
// point and one side of each pair.  Used to certify that no valid word has
// a reflective symmetry.
inline std::vector<Word> reflection_fixed_candidates(const Modulus &m,
                                                     int axis) {
  const int n = m.value;
  if (n % 2 == 0)
    throw std::invalid_argument(
        "reflection_fixed_candidates requires odd modulus");
  if (axis < 0 || axis >= n)
    throw std::invalid_argument("axis out of range");

  // Orbit representatives of i <-> (axis - i) mod n.
  std::vector<int> free_pos;
  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    if (seen[static_cast<size_t>(i)])
      continue;
    int j = ((axis - i) % n + n) % n;
    seen[static_cast<size_t>(i)] = 1;
    seen[static_cast<size_t>(j)] = 1;
    free_pos.push_back(i);
  }

  std::vector<Word> out;
  const int bits = static_cast<int>(free_pos.size());
  out.reserve(static_cast<size_t>(1) << bits);
  for (long mask = 0; mask < (1L << bits); ++mask) {
    Word w;
    w.colors.assign(static_cast<size_t>(n), Color::B);
    for (int b = 0; b < bits; ++b) {
      Color c = (mask >> b) & 1 ? Color::R : Color::B;
      int i = free_pos[static_cast<size_t>(b)];
      int j = ((axis - i) % n + n) % n;
      w.colors[static_cast<size_t>(i)] = c;
      w.colors[static_cast<size_t>(j)] = c;
    }
    out.push_back(std::move(w));
  }
  return out;
}

} // namespace ap4cycle
