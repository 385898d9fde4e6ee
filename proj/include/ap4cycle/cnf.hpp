#pragma once

// CNF encoding of the avoidance constraints and the DIMACS exchange format.
//
// Variables 1..M stand for positions 0..M-1, variable j+1 true iff
// position j is R.  Each in-scope window (a,b,c,d) contributes the pair
//   ( x_{a+1} v  x_{b+1} v  x_{c+1} v  x_{d+1})   -- forbids BBBB
//   (~x_{a+1} v ~x_{b+1} v ~x_{c+1} v ~x_{d+1})   -- forbids RRRR
// positive clause first, windows in emission order, so the serialized
// instance is byte-identical across runs.

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ap4cycle/coloring.hpp"
#include "ap4cycle/core.hpp"

namespace ap4cycle {

struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  bool operator==(const CnfFormula &) const = default;
};

class DimacsParseError : public std::runtime_error {
public:
  DimacsParseError(long line, const std::string &what)
      : std::runtime_error("dimacs parse error at line " +
                           std::to_string(line) + ": " + what),
        line_(line) {}
  long line() const { return line_; }

private:
  long line_;
};

inline CnfFormula encode(const Modulus &m, Mode mode) {
  CnfFormula f;
  f.num_vars = m.value;
  std::vector<Window> wins = windows_for_mode(m, mode);
  f.clauses.reserve(wins.size() * 2);
  for (const Window &w : wins) {
    std::vector<int> pos, neg;
    pos.reserve(4);
    neg.reserve(4);
    for (int ix : w.indices) {
      pos.push_back(ix + 1);
      neg.push_back(-(ix + 1));
    }
    f.clauses.push_back(std::move(pos));
    f.clauses.push_back(std::move(neg));
  }
  return f;
}

inline void to_dimacs(const CnfFormula &f, std::ostream &os) {
  os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const std::vector<int> &cl : f.clauses) {
    for (int lit : cl)
      os << lit << ' ';
    os << "0\n";
  }
}

inline std::string to_dimacs(const CnfFormula &f) {
  std::ostringstream os;
  to_dimacs(f, os);
  return os.str();
}

inline CnfFormula parse_dimacs(std::istream &is) {
  CnfFormula f;
  long declared_clauses = -1;
  long line_no = 0;
  bool in_clause = false;
  std::vector<int> clause;
  std::string line;

  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == 'c')
      continue;
    if (line[0] == 'p') {
      if (declared_clauses >= 0)
        throw DimacsParseError(line_no, "duplicate header");
      std::istringstream hs(line);
      std::string p, fmt;
      long nv = -1, nc = -1;
      hs >> p >> fmt >> nv >> nc;
      if (p != "p" || fmt != "cnf" || nv < 0 || nc < 0 || hs.fail())
        throw DimacsParseError(line_no, "malformed header '" + line + "'");
      f.num_vars = static_cast<int>(nv);
      declared_clauses = nc;
      continue;
    }
    if (declared_clauses < 0)
      throw DimacsParseError(line_no, "clause before header");
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      long lit = 0;
      try {
        size_t used = 0;
        lit = std::stol(tok, &used);
        if (used != tok.size())
          throw std::invalid_argument(tok);
      } catch (const std::exception &) {
        throw DimacsParseError(line_no, "non-integer token '" + tok + "'");
      }
      if (lit == 0) {
        f.clauses.push_back(clause);
        clause.clear();
        in_clause = false;
      } else {
        if (lit > f.num_vars || lit < -static_cast<long>(f.num_vars))
          throw DimacsParseError(line_no, "literal " + std::to_string(lit) +
                                              " out of declared range");
        clause.push_back(static_cast<int>(lit));
        in_clause = true;
      }
    }
  }
  if (declared_clauses < 0)
    throw DimacsParseError(line_no, "missing header");
  if (in_clause)
    throw DimacsParseError(line_no, "missing terminating 0");
  if (static_cast<long>(f.clauses.size()) != declared_clauses)
    throw DimacsParseError(
        line_no, "header declares " + std::to_string(declared_clauses) +
                     " clauses but " + std::to_string(f.clauses.size()) +
                     " present");
  return f;
}

inline CnfFormula parse_dimacs(const std::string &text) {
  std::istringstream is(text);
  return parse_dimacs(is);
}

// A (possibly partial) assignment, variable index -> value.
struct Model {
  std::map<int, bool> assignment;
};

// Position j is R iff variable j+1 is true; unassigned defaults to B.
inline Word model_to_word(const Modulus &m, const Model &model) {
  Word w;
  w.colors.reserve(static_cast<size_t>(m.value));
  for (int j = 0; j < m.value; ++j) {
    auto it = model.assignment.find(j + 1);
    bool r = it != model.assignment.end() && it->second;
    w.colors.push_back(r ? Color::R : Color::B);
  }
  return w;
}

namespace detail {

inline bool integer_token(const std::string &tok, long &out) {
  if (tok.empty())
    return false;
  size_t i = tok[0] == '-' ? 1 : 0;
  if (i == tok.size())
    return false;
  for (; i < tok.size(); ++i)
    if (tok[i] < '0' || tok[i] > '9')
      return false;
  out = std::stol(tok);
  return true;
}

} // namespace detail

// Decode an assignment from raw solver output.  Strict mode reads only
// "v "-prefixed model lines and reports absence when there are none;
// lenient mode scans every integer token in the text.
inline std::optional<Model> parse_model_output(const std::string &text,
                                               bool strict_vlines) {
  Model m;
  bool saw_vline = false;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (strict_vlines) {
      if (line.rfind("v ", 0) != 0 && line != "v")
        continue;
      saw_vline = true;
    }
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      long v = 0;
      if (!detail::integer_token(tok, v) || v == 0)
        continue;
      m.assignment[static_cast<int>(v < 0 ? -v : v)] = v > 0;
    }
  }
  if (strict_vlines && !saw_vline)
    return std::nullopt;
  return m;
}

} // namespace ap4cycle
