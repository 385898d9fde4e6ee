#pragma once

// Textual DRAT proofs: an ordered list of clause additions and deletions.
// One clause per line, space-separated literals with a " 0" terminator,
// deletions prefixed "d ", LF line endings.

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ap4cycle {

struct DratStep {
  bool is_delete = false;
  std::vector<int> clause; // DIMACS-signed literals
};

struct DratProof {
  std::vector<DratStep> steps;

  bool ends_with_empty_clause() const {
    return !steps.empty() && !steps.back().is_delete &&
           steps.back().clause.empty();
  }
};

class DratParseError : public std::runtime_error {
public:
  DratParseError(long line, const std::string &what)
      : std::runtime_error("drat parse error at line " +
                           std::to_string(line) + ": " + what),
        line_(line) {}
  long line() const { return line_; }

private:
  long line_;
};

inline void to_text(const DratProof &proof, std::ostream &os) {
  for (const DratStep &s : proof.steps) {
    if (s.is_delete)
      os << "d ";
    for (int lit : s.clause)
      os << lit << ' ';
    os << "0\n";
  }
}

inline std::string to_text(const DratProof &proof) {
  std::ostringstream os;
  to_text(proof, os);
  return os.str();
}

inline DratProof parse_drat(std::istream &is) {
  DratProof proof;
  std::string line;
  long line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok))
      continue; // blank line
    if (tok == "c")
      continue;
    DratStep step;
    if (tok == "d") {
      step.is_delete = true;
      if (!(ls >> tok))
        throw DratParseError(line_no, "deletion without clause");
    }
    bool terminated = false;
    for (;;) {
      long lit = 0;
      try {
        size_t used = 0;
        lit = std::stol(tok, &used);
        if (used != tok.size())
          throw std::invalid_argument(tok);
      } catch (const std::exception &) {
        throw DratParseError(line_no, "non-integer token '" + tok + "'");
      }
      if (lit == 0) {
        terminated = true;
        break;
      }
      step.clause.push_back(static_cast<int>(lit));
      if (!(ls >> tok))
        break;
    }
    if (!terminated)
      throw DratParseError(line_no, "missing terminating 0");
    proof.steps.push_back(std::move(step));
  }
  return proof;
}

inline DratProof parse_drat(const std::string &text) {
  std::istringstream is(text);
  return parse_drat(is);
}

} // namespace ap4cycle
