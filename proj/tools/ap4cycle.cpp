// ap4cycle command-line front end.
//
// Subcommands: verify, enumerate, orbits, encode, solve, check-proof,
// sweep-primes, sweep-cyclic, table1, manifest.
//
// Exit codes: 0 success, 1 verification/certificate failure, 2 usage or
// input error.  `solve` follows the SAT-competition convention instead
// (10 satisfiable, 20 unsatisfiable, 0 unknown).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ap4cycle/cnf.hpp"
#include "ap4cycle/coloring.hpp"
#include "ap4cycle/core.hpp"
#include "ap4cycle/dratcheck.hpp"
#include "ap4cycle/enumerate.hpp"
#include "ap4cycle/pipeline.hpp"
#include "ap4cycle/solver.hpp"
#include "ap4cycle/symmetry.hpp"

namespace {

using namespace ap4cycle;

std::string upper(std::string s) {
  for (char &c : s)
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

Mode parse_mode(const std::string &name) {
  if (name == "strong")
    return Mode::StrongPrime;
  if (name == "cyclic")
    return Mode::CyclicNondegenerate;
  throw CLI::ValidationError("--mode", "expected 'strong' or 'cyclic'");
}

std::string format_failure(const VerifyFailure &f) {
  const auto &ix = f.window.indices;
  std::ostringstream os;
  os << "FAIL at (" << ix[0] << ',' << ix[1] << ',' << ix[2] << ',' << ix[3]
     << ") block=" << f.block;
  return os.str();
}

int cmd_verify(int modulus, const std::string &word_text, bool strong) {
  const Modulus m(modulus);
  const Word w = Word::parse(upper(word_text));
  const VerifyReport rep = strong ? verify_strong(m, w) : verify_cyclic(m, w);
  if (rep.ok) {
    std::cout << "OK\n";
    return 0;
  }
  std::cout << format_failure(*rep.first_failure) << '\n';
  return 1;
}

int cmd_enumerate(int modulus, const std::string &mode_name,
                  const std::string &out, int guard) {
  const Modulus m(modulus);
  const Mode mode = parse_mode(mode_name);
  EnumerateOptions opt;
  if (guard > 0)
    opt.limit_guard = guard;
  const EnumerationResult res = enumerate_all(m, mode, opt);
  if (!out.empty()) {
    std::ofstream os(out, std::ios::binary);
    for (const Word &w : res.solutions)
      os << w.str() << '\n';
    if (!os) {
      std::cerr << "error: cannot write " << out << '\n';
      return 2;
    }
  }
  nlohmann::ordered_json j;
  j["modulus"] = modulus;
  j["mode"] = ap4cycle::mode_name(mode);
  j["count"] = res.count();
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_orbits(const std::string &solutions_file, bool with_swap,
               const std::string &out) {
  std::ifstream is(solutions_file);
  if (!is) {
    std::cerr << "error: cannot read " << solutions_file << '\n';
    return 2;
  }
  std::vector<Word> words;
  std::string line;
  while (std::getline(is, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (!line.empty())
      words.push_back(Word::parse(upper(line)));
  }
  const OrbitSummary sum = orbits(words, with_swap);
  const std::string text = orbit_summary_json(sum).dump(2) + "\n";
  std::cout << text;
  if (!out.empty()) {
    std::ofstream os(out, std::ios::binary);
    os << text;
    if (!os) {
      std::cerr << "error: cannot write " << out << '\n';
      return 2;
    }
  }
  return 0;
}

int cmd_encode(int modulus, const std::string &mode_name,
               const std::string &out) {
  const CnfFormula f = encode(Modulus(modulus), parse_mode(mode_name));
  std::ofstream os(out, std::ios::binary);
  to_dimacs(f, os);
  if (!os) {
    std::cerr << "error: cannot write " << out << '\n';
    return 2;
  }
  std::cout << "c wrote " << out << " (" << f.num_vars << " vars, "
            << f.clauses.size() << " clauses)\n";
  return 0;
}

int cmd_solve(const std::string &cnf_file, const std::string &proof_file,
              const std::string &external, double timeout,
              std::uint64_t seed) {
  std::ifstream is(cnf_file);
  if (!is) {
    std::cerr << "error: cannot read " << cnf_file << '\n';
    return 2;
  }
  const CnfFormula f = parse_dimacs(is);

  SolverConfig cfg;
  cfg.timeout_seconds = timeout;
  cfg.seed = seed;
  cfg.log_proof = !proof_file.empty();
  const SolveOutcome out =
      external.empty() ? solve(f, cfg) : solve_external(f, external, cfg);

  std::cout << "c conflicts " << out.stats.conflicts << "\nc decisions "
            << out.stats.decisions << "\nc propagations "
            << out.stats.propagations << '\n';
  switch (out.status) {
  case Status::Sat: {
    std::cout << "s SATISFIABLE\nv";
    for (int v = 1; v <= f.num_vars; ++v) {
      auto it = out.model->assignment.find(v);
      bool val = it != out.model->assignment.end() && it->second;
      std::cout << ' ' << (val ? v : -v);
    }
    std::cout << " 0\n";
    return 10;
  }
  case Status::Unsat:
    std::cout << "s UNSATISFIABLE\n";
    if (!proof_file.empty() && out.proof) {
      std::ofstream ps(proof_file, std::ios::binary);
      to_text(*out.proof, ps);
      if (!ps) {
        std::cerr << "error: cannot write " << proof_file << '\n';
        return 2;
      }
    }
    return 20;
  default:
    std::cout << "s UNKNOWN\n";
    if (!out.message.empty())
      std::cerr << "c " << out.message << '\n';
    return 0;
  }
}

int cmd_check_proof(const std::string &cnf_file, const std::string &proof_file,
                    bool strict_delete, bool rat) {
  std::ifstream cs(cnf_file);
  if (!cs) {
    std::cerr << "error: cannot read " << cnf_file << '\n';
    return 2;
  }
  const CnfFormula f = parse_dimacs(cs);
  std::ifstream ps(proof_file);
  if (!ps) {
    std::cerr << "error: cannot read " << proof_file << '\n';
    return 2;
  }
  const DratProof proof = parse_drat(ps);
  CheckConfig cfg;
  cfg.strict_delete = strict_delete;
  cfg.rat = rat;
  const CheckVerdict v = check(f, proof, cfg);
  if (v.verified) {
    std::cout << "s VERIFIED\n";
    return 0;
  }
  std::cout << "s NOT VERIFIED\n";
  if (!v.message.empty())
    std::cerr << "c " << v.message << '\n';
  return 1;
}

void print_sweep(const SweepReport &report) {
  std::cout << "M\tStatus\tWitness\tProof\n";
  for (const SweepEntry &e : report.entries) {
    std::cout << e.modulus << '\t' << status_name(e.status) << '\t'
              << (e.witness ? e.witness->str() : "") << '\t';
    if (e.status == Status::Unsat && e.proof_verified.has_value())
      std::cout << (*e.proof_verified ? "DRAT ok" : "DRAT check failed");
    std::cout << '\n';
  }
}

int cmd_sweep_primes(int max_p, const std::string &outdir,
                     const SweepConfig &cfg) {
  const SweepReport report = prime_sweep(max_p, outdir, cfg);
  print_sweep(report);
  std::string sat, unsat;
  for (const SweepEntry &e : report.entries) {
    if (e.status == Status::Sat)
      sat += (sat.empty() ? "" : " ") + std::to_string(e.modulus);
    else if (e.status == Status::Unsat)
      unsat += (unsat.empty() ? "" : " ") + std::to_string(e.modulus);
  }
  std::cout << "SAT primes (witness found): " << (sat.empty() ? "none" : sat)
            << '\n'
            << "UNSAT primes (DRAT verified): "
            << (unsat.empty() ? "none" : unsat) << '\n';
  return 0;
}

int cmd_sweep_cyclic(int start, int end, const std::string &outdir,
                     const SweepConfig &cfg) {
  const SweepReport report = cyclic_sweep(start, end, outdir, cfg);
  print_sweep(report);
  if (report.conclusion)
    std::cout << '\n' << *report.conclusion << '\n';
  return 0;
}

int cmd_table1(const std::string &dir) {
  const std::vector<Table1Row> rows = table1_report(dir);
  std::cout << "p\texists\tsolutions\torbits\torbits_swap\n";
  auto cell = [](const std::optional<long> &v) {
    return v ? std::to_string(*v) : std::string("--");
  };
  for (const Table1Row &r : rows)
    std::cout << r.p << '\t' << r.exists << '\t' << cell(r.solutions) << '\t'
              << cell(r.orbits_dihedral) << '\t' << cell(r.orbits_with_swap)
              << '\n';
  return 0;
}

int cmd_manifest(const std::string &dir) {
  const Manifest m = write_manifest(dir);
  std::cout << "wrote " << (std::filesystem::path(dir) / kManifestName).string()
            << " (" << m.entries.size() << " entries)\n";
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"2-colorings of Z/MZ avoiding monochromatic non-degenerate "
               "4-term arithmetic progressions: verification, enumeration, "
               "orbit classification, SAT solving and DRAT certification"};
  app.set_version_flag("--version", "ap4cycle 1.0.0");
  app.require_subcommand(1);

  // verify
  int modulus = 0;
  std::string word_text;
  bool strong = false;
  auto *verify_cmd =
      app.add_subcommand("verify", "check one word against the verifier");
  verify_cmd->add_option("--modulus", modulus, "cycle length M")->required();
  verify_cmd->add_option("--word", word_text, "word over {B,R}")->required();
  verify_cmd->add_flag("--strong", strong,
                       "check all residue steps (prime M only)");

  // enumerate
  int enum_modulus = 0, enum_guard = 0;
  std::string enum_mode = "strong", enum_out;
  auto *enum_cmd =
      app.add_subcommand("enumerate", "list all valid words of length M");
  enum_cmd->add_option("--modulus", enum_modulus, "cycle length M")
      ->required();
  enum_cmd->add_option("--mode", enum_mode, "strong|cyclic (default strong)");
  enum_cmd->add_option("--out", enum_out, "solution list file (one per line)");
  enum_cmd->add_option("--guard", enum_guard,
                       "override the M<=24 enumeration guard");

  // orbits
  std::string orbit_file, orbit_out;
  bool with_swap = false;
  auto *orbit_cmd = app.add_subcommand(
      "orbits", "orbit decomposition of a solution list");
  orbit_cmd->add_option("--solutions", orbit_file, "solution list file")
      ->required();
  orbit_cmd->add_flag("--with-swap", with_swap,
                      "extend the dihedral action by the color swap");
  orbit_cmd->add_option("--out", orbit_out, "also write the JSON summary");

  // encode
  int enc_modulus = 0;
  std::string enc_mode = "strong", enc_out;
  auto *enc_cmd =
      app.add_subcommand("encode", "write the avoidance CNF in DIMACS");
  enc_cmd->add_option("--modulus", enc_modulus, "cycle length M")->required();
  enc_cmd->add_option("--mode", enc_mode, "strong|cyclic (default strong)");
  enc_cmd->add_option("--out", enc_out, "output .cnf path")->required();

  // solve
  std::string solve_cnf, solve_proof, solve_external_cmd;
  double solve_timeout = 600.0;
  std::uint64_t solve_seed = 1;
  auto *solve_cmd =
      app.add_subcommand("solve", "decide a DIMACS instance (exit 10/20/0)");
  solve_cmd->add_option("--cnf", solve_cnf, "DIMACS input")->required();
  solve_cmd->add_option("--proof", solve_proof, "write DRAT proof on UNSAT");
  solve_cmd->add_option("--external", solve_external_cmd,
                        "external solver command instead of the embedded one");
  solve_cmd->add_option("--timeout", solve_timeout, "seconds before UNKNOWN");
  solve_cmd->add_option("--seed", solve_seed, "search seed");

  // check-proof
  std::string check_cnf, check_proof_file;
  bool strict_delete = false, rat = false;
  auto *check_cmd =
      app.add_subcommand("check-proof", "verify a DRAT refutation");
  check_cmd->add_option("--cnf", check_cnf, "DIMACS input")->required();
  check_cmd->add_option("--proof", check_proof_file, "DRAT proof")->required();
  check_cmd->add_flag("--strict-delete", strict_delete,
                      "fail on deletions of missing clauses");
  check_cmd->add_flag("--rat", rat, "enable the RAT fallback");

  // sweeps
  int max_p = 97, cyc_start = 13, cyc_end = 34;
  std::string sweep_out, sweep_external;
  int jobs = 1;
  double sweep_timeout = 600.0;
  std::uint64_t sweep_seed = 1;
  auto *primes_cmd = app.add_subcommand(
      "sweep-primes", "classification sweep over primes 5..P");
  primes_cmd->add_option("--max", max_p, "largest prime (default 97)");
  primes_cmd->add_option("--out", sweep_out, "artifact directory")
      ->required();
  primes_cmd->add_option("--jobs", jobs, "parallel instances (default 1)");
  primes_cmd->add_option("--external", sweep_external,
                         "external solver command");
  primes_cmd->add_option("--timeout", sweep_timeout,
                         "per-instance seconds before UNKNOWN");
  primes_cmd->add_option("--seed", sweep_seed, "search seed");

  auto *cyclic_cmd = app.add_subcommand(
      "sweep-cyclic", "threshold sweep over all moduli 13..34");
  cyclic_cmd->add_option("--start", cyc_start, "first modulus (default 13)");
  cyclic_cmd->add_option("--end", cyc_end, "last modulus (default 34)");
  cyclic_cmd->add_option("--out", sweep_out, "artifact directory")
      ->required();
  cyclic_cmd->add_option("--jobs", jobs, "parallel instances (default 1)");
  cyclic_cmd->add_option("--external", sweep_external,
                         "external solver command");
  cyclic_cmd->add_option("--timeout", sweep_timeout,
                         "per-instance seconds before UNKNOWN");
  cyclic_cmd->add_option("--seed", sweep_seed, "search seed");

  // table1 / manifest
  std::string table_dir, manifest_dir;
  auto *table_cmd = app.add_subcommand(
      "table1", "existence/count/orbit table from sweep results");
  table_cmd->add_option("--out", table_dir, "sweep artifact directory")
      ->required();
  auto *manifest_cmd =
      app.add_subcommand("manifest", "write artifact_manifest.json");
  manifest_cmd->add_option("--dir", manifest_dir, "artifact directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify_cmd->parsed())
      return cmd_verify(modulus, word_text, strong);
    if (enum_cmd->parsed())
      return cmd_enumerate(enum_modulus, enum_mode, enum_out, enum_guard);
    if (orbit_cmd->parsed())
      return cmd_orbits(orbit_file, with_swap, orbit_out);
    if (enc_cmd->parsed())
      return cmd_encode(enc_modulus, enc_mode, enc_out);
    if (solve_cmd->parsed())
      return cmd_solve(solve_cnf, solve_proof, solve_external_cmd,
                       solve_timeout, solve_seed);
    if (check_cmd->parsed())
      return cmd_check_proof(check_cnf, check_proof_file, strict_delete, rat);
    SweepConfig cfg;
    cfg.jobs = jobs;
    cfg.timeout_seconds = sweep_timeout;
    cfg.seed = sweep_seed;
    cfg.external_command = sweep_external;
    if (primes_cmd->parsed())
      return cmd_sweep_primes(max_p, sweep_out, cfg);
    if (cyclic_cmd->parsed())
      return cmd_sweep_cyclic(cyc_start, cyc_end, sweep_out, cfg);
    if (table_cmd->parsed())
      return cmd_table1(table_dir);
    if (manifest_cmd->parsed())
      return cmd_manifest(manifest_dir);
  } catch (const CertificateError &e) {
    std::cerr << "certificate failure: " << e.what() << '\n';
    return 1;
  } catch (const DimacsParseError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DratParseError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
