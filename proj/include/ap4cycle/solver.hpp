#pragma once

// Embedded CDCL SAT solver with two-watched-literal propagation, first-UIP
// clause learning with basic minimization, activity-driven branching, Luby
// restarts, lazy learned-clause deletion and textual DRAT proof logging.
// Plus an adapter that drives an external DIMACS solver process.
//
// With a fixed seed and a single thread the search is fully deterministic:
// identical conflict/decision/propagation counts and byte-identical proofs
// across runs.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ap4cycle/cnf.hpp"
#include "ap4cycle/drat.hpp"

namespace ap4cycle {

enum class Status { Sat, Unsat, Unknown };

inline const char *status_name(Status s) {
  switch (s) {
  case Status::Sat:
    return "SAT";
  case Status::Unsat:
    return "UNSAT";
  default:
    return "UNKNOWN";
  }
}

struct SolverStats {
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  double wall_seconds = 0.0;
};

struct SolverConfig {
  double timeout_seconds = 600.0;
  std::uint64_t seed = 1;
  bool log_proof = true;
  std::uint64_t conflict_limit = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t reduce_base = 2000; // learned clauses kept before reduction
};

struct SolveOutcome {
  Status status = Status::Unknown;
  std::optional<Model> model;    // present iff SAT
  std::optional<DratProof> proof; // present iff UNSAT and logging enabled
  SolverStats stats;
  std::string message;
};

namespace cdcl {

// Literal codes: variable v in 1..n becomes 2v (positive) or 2v+1
// (negated), so arrays index directly and negation is an xor.
inline int lit_code(int dimacs) {
  return dimacs > 0 ? 2 * dimacs : -2 * dimacs + 1;
}
inline int lit_neg(int code) { return code ^ 1; }
inline int lit_var(int code) { return code >> 1; }
inline int lit_dimacs(int code) {
  return (code & 1) ? -(code >> 1) : code >> 1;
}

class Solver {
public:
  Solver(const CnfFormula &f, const SolverConfig &cfg)
      : formula_(f), cfg_(cfg), nvars_(f.num_vars) {
    const size_t vs = static_cast<size_t>(nvars_) + 1;
    value_.assign(vs, 0);
    level_.assign(vs, 0);
    reason_.assign(vs, -1);
    seen_.assign(vs, 0);
    phase_.assign(vs, 0); // saved phase, 0 = false = B
    activity_.assign(vs, 0.0);
    heap_pos_.assign(vs, -1);
    watches_.assign(2 * vs, {});
    // Tiny seed-dependent jitter varies the initial branching order
    // between seeds while staying deterministic for a fixed seed.
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> jitter(0.0, 1e-9);
    for (int v = 1; v <= nvars_; ++v)
      activity_[static_cast<size_t>(v)] = jitter(rng);
    for (int v = 1; v <= nvars_; ++v)
      heap_insert(v);
    for (const auto &cl : f.clauses)
      if (!add_input_clause(cl))
        break;
  }

  SolveOutcome run() {
    const auto t0 = std::chrono::steady_clock::now();
    SolveOutcome out;
    out.status = search();
    out.stats = stats_;
    out.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (out.status == Status::Sat) {
      Model m;
      for (int v = 1; v <= nvars_; ++v)
        m.assignment[v] = value_[static_cast<size_t>(v)] > 0;
      check_model(m); // never trust the search, always re-check
      out.model = std::move(m);
    } else if (out.status == Status::Unsat && cfg_.log_proof) {
      out.proof = std::move(proof_);
    } else if (out.status == Status::Unknown) {
      out.message = unknown_reason_;
    }
    return out;
  }

private:
  // ---- clause storage -------------------------------------------------
  struct Clause {
    std::uint32_t start = 0;
    std::uint32_t size = 0;
    bool learned = false;
    bool deleted = false;
    std::uint32_t lbd = 0;
    double activity = 0.0;
  };
  struct Watcher {
    int cref;
    int blocker;
  };

  const CnfFormula &formula_;
  SolverConfig cfg_;
  int nvars_;

  std::vector<int> pool_;       // literal codes, clause slices
  std::vector<Clause> clauses_; // cref = index
  std::vector<std::vector<Watcher>> watches_; // per literal code

  std::vector<signed char> value_; // per var: 0 / 1 / -1
  std::vector<int> level_;
  std::vector<int> reason_; // cref or -1
  std::vector<signed char> seen_;
  std::vector<signed char> phase_;
  std::vector<int> trail_;
  std::vector<size_t> trail_lim_;
  size_t qhead_ = 0;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  static constexpr double kVarDecay = 0.95;
  double cla_inc_ = 1.0;
  static constexpr double kClaDecay = 0.999;

  std::vector<int> heap_; // max-heap of vars keyed by activity
  std::vector<int> heap_pos_;

  SolverStats stats_;
  DratProof proof_;
  bool input_unsat_ = false; // conflict while loading the input
  std::string unknown_reason_;

  std::uint64_t num_learned_ = 0;
  std::uint64_t reduce_threshold_ = cfg_.reduce_base;

  // ---- small helpers --------------------------------------------------
  int lit_value(int code) const {
    signed char v = value_[static_cast<size_t>(lit_var(code))];
    return (code & 1) ? -v : v;
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  std::vector<int> clause_lits(int cref) const {
    const Clause &c = clauses_[static_cast<size_t>(cref)];
    return {pool_.begin() + c.start, pool_.begin() + c.start + c.size};
  }

  void log_add(const std::vector<int> &codes) {
    if (!cfg_.log_proof)
      return;
    DratStep s;
    for (int code : codes)
      s.clause.push_back(lit_dimacs(code));
    proof_.steps.push_back(std::move(s));
  }
  void log_delete(int cref) {
    if (!cfg_.log_proof)
      return;
    DratStep s;
    s.is_delete = true;
    for (int code : clause_lits(cref))
      s.clause.push_back(lit_dimacs(code));
    proof_.steps.push_back(std::move(s));
  }
  void log_empty() {
    if (cfg_.log_proof)
      proof_.steps.push_back(DratStep{});
  }

  // ---- activity heap --------------------------------------------------
  bool heap_less(int a, int b) const { // priority order: a above b?
    double aa = activity_[static_cast<size_t>(a)];
    double ab = activity_[static_cast<size_t>(b)];
    return aa > ab || (aa == ab && a < b);
  }
  void heap_sift_up(size_t i) {
    while (i > 0) {
      size_t p = (i - 1) / 2;
      if (!heap_less(heap_[i], heap_[p]))
        break;
      std::swap(heap_[i], heap_[p]);
      heap_pos_[static_cast<size_t>(heap_[i])] = static_cast<int>(i);
      heap_pos_[static_cast<size_t>(heap_[p])] = static_cast<int>(p);
      i = p;
    }
  }
  void heap_sift_down(size_t i) {
    const size_t n = heap_.size();
    for (;;) {
      size_t l = 2 * i + 1, r = l + 1, best = i;
      if (l < n && heap_less(heap_[l], heap_[best]))
        best = l;
      if (r < n && heap_less(heap_[r], heap_[best]))
        best = r;
      if (best == i)
        break;
      std::swap(heap_[i], heap_[best]);
      heap_pos_[static_cast<size_t>(heap_[i])] = static_cast<int>(i);
      heap_pos_[static_cast<size_t>(heap_[best])] = static_cast<int>(best);
      i = best;
    }
  }
  void heap_insert(int v) {
    if (heap_pos_[static_cast<size_t>(v)] != -1)
      return;
    heap_pos_[static_cast<size_t>(v)] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_sift_up(heap_.size() - 1);
  }
  int heap_pop() {
    int v = heap_[0];
    int last = heap_.back();
    heap_.pop_back();
    heap_pos_[static_cast<size_t>(v)] = -1;
    if (!heap_.empty() && v != last) {
      heap_[0] = last;
      heap_pos_[static_cast<size_t>(last)] = 0;
      heap_sift_down(0);
    }
    return v;
  }
  void bump_var(int v) {
    activity_[static_cast<size_t>(v)] += var_inc_;
    if (activity_[static_cast<size_t>(v)] > 1e100) {
      for (int u = 1; u <= nvars_; ++u)
        activity_[static_cast<size_t>(u)] *= 1e-100;
      var_inc_ *= 1e-100;
    }
    int pos = heap_pos_[static_cast<size_t>(v)];
    if (pos != -1)
      heap_sift_up(static_cast<size_t>(pos));
  }
  void bump_clause(int cref) {
    Clause &c = clauses_[static_cast<size_t>(cref)];
    c.activity += cla_inc_;
    if (c.activity > 1e20) {
      for (Clause &d : clauses_)
        d.activity *= 1e-20;
      cla_inc_ *= 1e-20;
    }
  }

  // ---- assignments ----------------------------------------------------
  void enqueue(int code, int from) {
    int v = lit_var(code);
    value_[static_cast<size_t>(v)] = (code & 1) ? -1 : 1;
    level_[static_cast<size_t>(v)] = decision_level();
    reason_[static_cast<size_t>(v)] = from;
    trail_.push_back(code);
  }

  void backtrack(int target_level) {
    if (decision_level() <= target_level)
      return;
    size_t keep = trail_lim_[static_cast<size_t>(target_level)];
    for (size_t i = trail_.size(); i-- > keep;) {
      int v = lit_var(trail_[i]);
      phase_[static_cast<size_t>(v)] = value_[static_cast<size_t>(v)] > 0;
      value_[static_cast<size_t>(v)] = 0;
      reason_[static_cast<size_t>(v)] = -1;
      heap_insert(v);
    }
    trail_.resize(keep);
    trail_lim_.resize(static_cast<size_t>(target_level));
    qhead_ = keep;
  }

  // ---- clause construction --------------------------------------------
  int attach_clause(const std::vector<int> &codes, bool learned) {
    Clause c;
    c.start = static_cast<std::uint32_t>(pool_.size());
    c.size = static_cast<std::uint32_t>(codes.size());
    c.learned = learned;
    pool_.insert(pool_.end(), codes.begin(), codes.end());
    int cref = static_cast<int>(clauses_.size());
    clauses_.push_back(c);
    watches_[static_cast<size_t>(codes[0])].push_back({cref, codes[1]});
    watches_[static_cast<size_t>(codes[1])].push_back({cref, codes[0]});
    return cref;
  }

  void detach_clause(int cref) {
    const Clause &c = clauses_[static_cast<size_t>(cref)];
    for (int w = 0; w < 2; ++w) {
      auto &ws = watches_[static_cast<size_t>(pool_[c.start + w])];
      for (size_t i = 0; i < ws.size(); ++i)
        if (ws[i].cref == cref) {
          ws.erase(ws.begin() + static_cast<long>(i));
          break;
        }
    }
  }

  // Returns false once the input is known unsatisfiable.
  bool add_input_clause(const std::vector<int> &dimacs) {
    if (input_unsat_)
      return false;
    std::vector<int> codes;
    codes.reserve(dimacs.size());
    for (int d : dimacs) {
      if (d == 0 || d > nvars_ || d < -nvars_)
        throw std::invalid_argument("solver: literal out of range");
      codes.push_back(lit_code(d));
    }
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    for (size_t i = 0; i + 1 < codes.size(); ++i)
      if (codes[i + 1] == lit_neg(codes[i]))
        return true; // tautology, never needed
    if (codes.empty()) {
      input_unsat_ = true;
      return false;
    }
    if (codes.size() == 1) {
      int v = lit_value(codes[0]);
      if (v == -1) {
        input_unsat_ = true;
        return false;
      }
      if (v == 0)
        enqueue(codes[0], -1);
      return true;
    }
    attach_clause(codes, false);
    return true;
  }

  // ---- propagation ----------------------------------------------------
  int propagate() {
    while (qhead_ < trail_.size()) {
      ++stats_.propagations;
      const int p = trail_[qhead_++];
      const int fl = lit_neg(p); // literal that just became false
      auto &ws = watches_[static_cast<size_t>(fl)];
      size_t i = 0, j = 0;
      while (i < ws.size()) {
        const Watcher w = ws[i];
        if (lit_value(w.blocker) == 1) {
          ws[j++] = ws[i++];
          continue;
        }
        Clause &c = clauses_[static_cast<size_t>(w.cref)];
        int *lits = pool_.data() + c.start;
        if (lits[0] == fl)
          std::swap(lits[0], lits[1]);
        const int first = lits[0];
        if (first != w.blocker && lit_value(first) == 1) {
          ws[j++] = {w.cref, first};
          ++i;
          continue;
        }
        bool moved = false;
        for (std::uint32_t k = 2; k < c.size; ++k) {
          if (lit_value(lits[k]) != -1) {
            std::swap(lits[1], lits[k]);
            watches_[static_cast<size_t>(lits[1])].push_back({w.cref, first});
            moved = true;
            break;
          }
        }
        if (moved) {
          ++i; // watcher leaves this list
          continue;
        }
        ws[j++] = {w.cref, first};
        ++i;
        if (lit_value(first) == -1) {
          while (i < ws.size())
            ws[j++] = ws[i++];
          ws.resize(j);
          qhead_ = trail_.size();
          return w.cref;
        }
        enqueue(first, w.cref);
      }
      ws.resize(j);
    }
    return -1;
  }

  // ---- conflict analysis ----------------------------------------------
  std::vector<int> analyze_toclear_;

  // First-UIP scheme; fills `learned` (learned[0] = asserting literal)
  // and returns the backjump level.
  int analyze(int confl, std::vector<int> &learned, std::uint32_t &lbd) {
    learned.assign(1, 0);
    analyze_toclear_.clear();
    int path = 0;
    int p = -1;
    size_t index = trail_.size();

    int cref = confl;
    do {
      const Clause &c = clauses_[static_cast<size_t>(cref)];
      if (c.learned)
        bump_clause(cref);
      const int *lits = pool_.data() + c.start;
      for (std::uint32_t k = (p == -1 ? 0 : 1); k < c.size; ++k) {
        const int q = lits[k];
        const int v = lit_var(q);
        if (seen_[static_cast<size_t>(v)] || level_[static_cast<size_t>(v)] == 0)
          continue;
        seen_[static_cast<size_t>(v)] = 1;
        analyze_toclear_.push_back(v);
        bump_var(v);
        if (level_[static_cast<size_t>(v)] >= decision_level())
          ++path;
        else
          learned.push_back(q);
      }
      while (!seen_[static_cast<size_t>(lit_var(trail_[index - 1]))])
        --index;
      --index;
      p = trail_[index];
      cref = reason_[static_cast<size_t>(lit_var(p))];
      seen_[static_cast<size_t>(lit_var(p))] = 0;
      --path;
    } while (path > 0);
    learned[0] = lit_neg(p);

    // Basic minimization: drop a literal whose reason lies entirely
    // inside the learned clause (or at level 0).
    size_t kept = 1;
    for (size_t i = 1; i < learned.size(); ++i) {
      const int v = lit_var(learned[i]);
      const int r = reason_[static_cast<size_t>(v)];
      bool removable = r != -1;
      if (removable) {
        const Clause &rc = clauses_[static_cast<size_t>(r)];
        const int *rl = pool_.data() + rc.start;
        for (std::uint32_t k = 1; k < rc.size; ++k) {
          const int u = lit_var(rl[k]);
          if (!seen_[static_cast<size_t>(u)] &&
              level_[static_cast<size_t>(u)] != 0) {
            removable = false;
            break;
          }
        }
      }
      if (!removable)
        learned[kept++] = learned[i];
    }
    learned.resize(kept);

    for (int v : analyze_toclear_)
      seen_[static_cast<size_t>(v)] = 0;

    // Backjump level = highest level below the asserting one; move that
    // literal to slot 1 so it is watched.
    int bj = 0;
    if (learned.size() > 1) {
      size_t at = 1;
      for (size_t i = 2; i < learned.size(); ++i)
        if (level_[static_cast<size_t>(lit_var(learned[i]))] >
            level_[static_cast<size_t>(lit_var(learned[at]))])
          at = i;
      std::swap(learned[1], learned[at]);
      bj = level_[static_cast<size_t>(lit_var(learned[1]))];
    }

    lbd = 0;
    std::vector<int> lbd_levels;
    for (int q : learned)
      lbd_levels.push_back(level_[static_cast<size_t>(lit_var(q))]);
    std::sort(lbd_levels.begin(), lbd_levels.end());
    lbd_levels.erase(std::unique(lbd_levels.begin(), lbd_levels.end()),
                     lbd_levels.end());
    lbd = static_cast<std::uint32_t>(lbd_levels.size());
    return bj;
  }

  // ---- learned clause DB reduction --------------------------------------
  bool locked(int cref) const {
    const Clause &c = clauses_[static_cast<size_t>(cref)];
    const int first = pool_[c.start];
    return lit_value(first) == 1 &&
           reason_[static_cast<size_t>(lit_var(first))] == cref;
  }

  void reduce_db() {
    std::vector<int> cand;
    for (int cref = 0; cref < static_cast<int>(clauses_.size()); ++cref) {
      const Clause &c = clauses_[static_cast<size_t>(cref)];
      if (c.learned && !c.deleted && c.lbd > 2 && !locked(cref))
        cand.push_back(cref);
    }
    std::sort(cand.begin(), cand.end(), [&](int a, int b) {
      const Clause &ca = clauses_[static_cast<size_t>(a)];
      const Clause &cb = clauses_[static_cast<size_t>(b)];
      if (ca.lbd != cb.lbd)
        return ca.lbd > cb.lbd; // worst first
      if (ca.activity != cb.activity)
        return ca.activity < cb.activity;
      return a < b;
    });
    const size_t drop = cand.size() / 2;
    for (size_t i = 0; i < drop; ++i) {
      int cref = cand[i];
      log_delete(cref);
      detach_clause(cref);
      clauses_[static_cast<size_t>(cref)].deleted = true;
      --num_learned_;
    }
    reduce_threshold_ += 300;
  }

  // ---- search ------------------------------------------------------------
  // Luby sequence 1,1,2,1,1,2,4,... (0-based index).
  static std::uint64_t luby(std::uint64_t x) {
    std::uint64_t size = 1, seq = 0;
    while (size < x + 1) {
      ++seq;
      size = 2 * size + 1;
    }
    while (size - 1 != x) {
      size = (size - 1) / 2;
      --seq;
      x %= size;
    }
    return 1ULL << seq;
  }

  int pick_branch_var() {
    while (!heap_.empty()) {
      int v = heap_pop();
      if (value_[static_cast<size_t>(v)] == 0)
        return v;
    }
    return 0;
  }

  Status search() {
    if (input_unsat_) {
      log_empty();
      return Status::Unsat;
    }
    const auto t0 = std::chrono::steady_clock::now();
    auto timed_out = [&] {
      return cfg_.timeout_seconds > 0 &&
             std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                           t0)
                     .count() > cfg_.timeout_seconds;
    };

    std::uint64_t restart_no = 0;
    std::uint64_t restart_budget = 100 * luby(0);
    std::uint64_t conflicts_at_restart = 0;
    std::vector<int> learned;

    for (;;) {
      int confl = propagate();
      if (confl != -1) {
        ++stats_.conflicts;
        if (decision_level() == 0) {
          log_empty();
          return Status::Unsat;
        }
        std::uint32_t lbd = 0;
        int bj = analyze(confl, learned, lbd);
        backtrack(bj);
        if (learned.size() == 1) {
          log_add(learned);
          enqueue(learned[0], -1);
        } else {
          int cref = attach_clause(learned, true);
          clauses_[static_cast<size_t>(cref)].lbd = lbd;
          bump_clause(cref);
          log_add(learned);
          ++num_learned_;
          enqueue(learned[0], cref);
        }
        var_inc_ /= kVarDecay;
        cla_inc_ /= kClaDecay;

        if (stats_.conflicts >= cfg_.conflict_limit) {
          unknown_reason_ = "conflict limit reached";
          return Status::Unknown;
        }
        if (stats_.conflicts % 256 == 0 && timed_out()) {
          unknown_reason_ = "timeout";
          return Status::Unknown;
        }
        if (num_learned_ >= reduce_threshold_)
          reduce_db();
        if (stats_.conflicts - conflicts_at_restart >= restart_budget) {
          backtrack(0);
          ++restart_no;
          conflicts_at_restart = stats_.conflicts;
          restart_budget = 100 * luby(restart_no);
        }
      } else {
        if (static_cast<int>(trail_.size()) == nvars_)
          return Status::Sat;
        int v = pick_branch_var();
        if (v == 0)
          return Status::Sat; // all assigned
        ++stats_.decisions;
        if (stats_.decisions % 4096 == 0 && timed_out()) {
          unknown_reason_ = "timeout";
          return Status::Unknown;
        }
        trail_lim_.push_back(trail_.size());
        enqueue(phase_[static_cast<size_t>(v)] ? 2 * v : 2 * v + 1, -1);
      }
    }
  }

  void check_model(const Model &m) const {
    for (const auto &cl : formula_.clauses) {
      bool sat = false;
      for (int d : cl) {
        auto it = m.assignment.find(d > 0 ? d : -d);
        if (it != m.assignment.end() && it->second == (d > 0)) {
          sat = true;
          break;
        }
      }
      if (!sat)
        throw std::logic_error("solver produced a model that does not "
                               "satisfy the input formula");
    }
  }
};

} // namespace cdcl

inline SolveOutcome solve(const CnfFormula &f, const SolverConfig &cfg = {}) {
  cdcl::Solver s(f, cfg);
  return s.run();
}

namespace detail {

inline std::filesystem::path temp_file(const std::string &suffix) {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  std::ostringstream name;
  name << "ap4cycle-" << std::hex << rd() << '-' << counter++ << suffix;
  return std::filesystem::temp_directory_path() / name.str();
}

struct CommandResult {
  bool spawned = false;
  int exit_code = -1;
  std::string output;
};

inline CommandResult run_command(const std::string &cmd) {
  CommandResult res;
  FILE *pipe = ::popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe)
    return res;
  res.spawned = true;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0)
    res.output.append(buf, n);
  res.exit_code = ::pclose(pipe);
  return res;
}

} // namespace detail

// Drive an external solver process: DIMACS path as first argument, an
// optional proof path as second, status expected as "s SATISFIABLE" /
// "s UNSATISFIABLE" on stdout and the model on "v " lines.  Returned
// models are re-checked against the formula; anything unparsable comes
// back as UNKNOWN with the captured output attached.
inline SolveOutcome solve_external(const CnfFormula &f,
                                   const std::string &solver_command,
                                   const SolverConfig &cfg = {}) {
  namespace fs = std::filesystem;
  const auto t0 = std::chrono::steady_clock::now();
  SolveOutcome out;

  const fs::path cnf_path = detail::temp_file(".cnf");
  const fs::path proof_path = detail::temp_file(".drat");
  {
    std::ofstream os(cnf_path, std::ios::binary);
    to_dimacs(f, os);
    if (!os) {
      out.message = "cannot write temporary DIMACS file";
      return out;
    }
  }

  std::string cmd = solver_command + " " + cnf_path.string();
  if (cfg.log_proof)
    cmd += " " + proof_path.string();
  if (cfg.timeout_seconds > 0 && fs::exists("/usr/bin/timeout")) {
    long secs = std::max(1L, std::lround(std::ceil(cfg.timeout_seconds)));
    cmd = "timeout " + std::to_string(secs) + " " + cmd;
  }

  detail::CommandResult res = detail::run_command(cmd);
  out.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  auto cleanup = [&] {
    std::error_code ec;
    fs::remove(cnf_path, ec);
    fs::remove(proof_path, ec);
  };

  if (!res.spawned) {
    out.message = "failed to spawn external solver: " + solver_command;
    cleanup();
    return out;
  }

  Status status = Status::Unknown;
  std::istringstream is(res.output);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind("s ", 0) != 0)
      continue;
    if (line.find("UNSATISFIABLE") != std::string::npos)
      status = Status::Unsat;
    else if (line.find("SATISFIABLE") != std::string::npos)
      status = Status::Sat;
    break;
  }

  if (status == Status::Sat) {
    std::optional<Model> m = parse_model_output(res.output, true);
    bool good = m.has_value();
    if (good) {
      for (const auto &cl : f.clauses) {
        bool sat = false;
        for (int d : cl) {
          auto it = m->assignment.find(d > 0 ? d : -d);
          if (it != m->assignment.end() && it->second == (d > 0)) {
            sat = true;
            break;
          }
        }
        if (!sat) {
          good = false;
          break;
        }
      }
    }
    if (!good) {
      out.message = "external solver claimed SAT without a valid model\n" +
                    res.output;
      cleanup();
      return out;
    }
    out.status = Status::Sat;
    out.model = std::move(m);
  } else if (status == Status::Unsat) {
    out.status = Status::Unsat;
    if (cfg.log_proof && fs::exists(proof_path)) {
      std::ifstream ps(proof_path, std::ios::binary);
      try {
        out.proof = parse_drat(ps);
      } catch (const DratParseError &e) {
        out.message = std::string("external proof unparsable: ") + e.what();
      }
    }
  } else {
    out.message = "could not parse external solver status (exit " +
                  std::to_string(res.exit_code) + ")\n" + res.output;
  }
  cleanup();
  return out;
}

} // namespace ap4cycle
