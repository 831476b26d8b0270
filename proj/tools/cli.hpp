#pragma once

#include "dioph/dioph.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace dioph::cli {

// 0 success / HOLDS / verified, 1 verification failure or counterexample,
// 2 usage or parse error, 3 cap exhausted or unknown.
enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2, kCapExhausted = 3 };

struct CommandOutcome {
  int exit_code = kOk;
  std::string report;  // ends with one "RESULT:" line
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline constexpr std::size_t kAnnotateDigits = 40;

inline std::string exact(const Int& v) {
  std::string s = v.get_str();
  if (decimal_digits(v) > kAnnotateDigits) s += " (~" + sci_notation(v, 10) + ")";
  return s;
}

// Comment lines giving the scientific form of every long coordinate.
inline std::string annotate_tuple(const Tuple& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (decimal_digits(t[i]) > kAnnotateDigits)
      out += "# x" + std::to_string(i + 1) + " ~ " + sci_notation(t[i], 10) + "\n";
  }
  return out;
}

inline std::string read_text(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path);
  if (!file) throw UsageError("cannot open '" + path + "'");
  buf << file.rdbuf();
  return buf.str();
}

inline Variant parse_variant(const std::string& s) { return s == "doubled" ? Variant::Doubled : Variant::Halved; }

inline std::string result_line(const std::string& s) { return "RESULT: " + s + "\n"; }

}  // namespace detail

// Parses argv (without the program name) and runs one subcommand. Standard
// input backs any file operand given as "-"; progress goes to `err`.
inline CommandOutcome run(const std::vector<std::string>& args, std::istream& in, std::ostream& err) {
  CLI::App app{"Systems of equations x_i = 1, x_i + x_j = x_k, x_i * x_j = x_k", "dioph"};
  app.require_subcommand(1);

  std::size_t n = 0, limit = 0;
  std::string modulus = "625";
  unsigned long lift = 1;
  std::uint64_t cap = 0;
  unsigned jobs = 1;
  std::string mode = "compact", variant = "halved", input, expr, tuple_text, kind = "doubling", witness_text;
  std::size_t ceiling = kDefaultFullTCeiling;
  bool witness = false, units = false;
  std::string sys_path, sol_path;

  auto* pell_enum = app.add_subcommand("pell-enumerate", "First solutions of x^2 - 5y^2 = -1");
  pell_enum->add_option("--limit", limit, "number of solutions")->required()->check(CLI::PositiveNumber);

  auto* pell_div = app.add_subcommand("pell-find-div", "Indices k <= limit with modulus | v(k)");
  pell_div->add_option("--modulus", modulus, "divisor of v(k)");
  pell_div->add_option("--limit", limit, "last index")->required()->check(CLI::PositiveNumber);

  auto* th1 = app.add_subcommand("theorem1", "System whose solutions all exceed 2^(2^(n-1))");
  th1->add_option("--n", n, "variable count (>= 12)")->required();
  th1->add_flag("--witness", witness, "also print and verify a solution");
  th1->add_option("--lift", lift, "odd power index of the fundamental solution")->check(CLI::PositiveNumber);

  auto* tl = app.add_subcommand("tilde", "Replace each x_i = 1 by x_i * x_j = x_j");
  tl->add_option("--input", input, "system file or -")->required();

  auto* comp = app.add_subcommand("compile", "Lower D(x1..xp) = 0 to a system");
  auto* comp_in = comp->add_option("--input", input, "polynomial file or -");
  auto* comp_expr = comp->add_option("--expr", expr, "polynomial text");
  comp_in->excludes(comp_expr);
  comp->add_option("--mode", mode, "compact or full-t")->check(CLI::IsMember({"compact", "full-t"}));
  comp->add_option("--variant", variant, "doubled or halved")->check(CLI::IsMember({"doubled", "halved"}));
  comp->add_option("--ceiling", ceiling, "largest card(T) accepted by full-t");

  auto* solve = app.add_subcommand("solve", "Least solution in <=_n order up to a shell cap");
  solve->add_option("--input", input, "system file or -")->required();
  solve->add_option("--cap", cap, "largest max-norm searched")->required();

  auto* verify = app.add_subcommand("verify", "Check every tuple of a file against a system");
  verify->add_option("system", sys_path, "system file or -")->required();
  verify->add_option("solutions", sol_path, "tuple file or -")->required();

  auto* psi = app.add_subcommand("check-psi", "Brute-force the finitized statement for one n");
  psi->add_option("--n", n, "tuple length")->required()->check(CLI::Range(1, 4));
  psi->add_option("--cap", cap, "largest y shell (default (2^(2^n))^2)");
  psi->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  auto* prop4 = app.add_subcommand("check-prop4", "Search for y preserving relations with y1 != x1");
  auto* p4_tuple = prop4->add_option("--tuple", tuple_text, "comma-separated tuple");
  auto* p4_in = prop4->add_option("--input", input, "tuple file or -");
  p4_tuple->excludes(p4_in);
  prop4->add_option("--cap", cap, "largest shell")->required();

  auto* ext = app.add_subcommand("extremal", "Rigidity of the doubling and property-(4) tuples");
  auto* ext_n = ext->add_option("--n", n, "tuple length (>= 2)");
  auto* ext_kind = ext->add_option("--kind", kind, "doubling or property4")
                       ->check(CLI::IsMember({"doubling", "property4"}));
  auto* ext_tuple = ext->add_option("--tuple", tuple_text, "arbitrary comma-separated tuple");
  ext_tuple->excludes(ext_n)->excludes(ext_kind);
  ext->add_flag("--units", units, "include unit relations (default for property4)");

  auto* th2 = app.add_subcommand("theorem2", "n-variable system whose solutions have x1 = f(n)");
  auto* th2_in = th2->add_option("--input", input, "file with the representation W");
  auto* th2_expr = th2->add_option("--expr", expr, "representation W as text");
  th2_in->excludes(th2_expr);
  th2->add_option("--n", n, "variable count (default m(f))");
  th2->add_option("--witness", witness_text, "nonnegative x1..xr with W = 0 and x2 = n");

  std::ostringstream out;
  std::ostringstream cli_out, cli_err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, cli_out, cli_err);
    return {kOk, cli_out.str() + detail::result_line("help")};
  } catch (const CLI::ParseError& e) {
    app.exit(e, cli_out, cli_err);
    return {kUsage, cli_err.str() + detail::result_line("usage error: " + std::string(e.what()))};
  }

  auto done = [&](int code, const std::string& summary) {
    out << detail::result_line(summary);
    return CommandOutcome{code, out.str()};
  };

  try {
    if (*pell_enum) {
      auto sols = pell::enumerate_5(limit);
      for (std::size_t k = 0; k < sols.size(); ++k)
        out << (k + 1) << ": " << detail::exact(sols[k].x) << ", " << detail::exact(sols[k].y) << "\n";
      return done(kOk, std::to_string(limit) + " solutions of x^2 - 5y^2 = -1");
    }

    if (*pell_div) {
      Int mod = parse_int(modulus);
      if (mod <= 0) throw UsageError("--modulus must be positive");
      auto hits = pell::find_divisible_index(mod, limit);
      std::string list;
      for (auto h : hits) {
        out << "index " << h << "\n";
        list += (list.empty() ? "" : ",") + std::to_string(h);
      }
      return done(kOk, "indices " + (list.empty() ? std::string("none") : list));
    }

    if (*th1) {
      System s = theorem1_system(n);
      out << render_system(s);
      if (!witness) return done(kOk, "theorem1 system for n=" + std::to_string(n));
      Tuple x = theorem1_witness(n, lift);
      out << "# witness (lift " << lift << ")\n" << format_tuple(x) << "\n" << detail::annotate_tuple(x);
      Int bound = pow2_pow2(static_cast<unsigned>(n - 1));
      bool solves = check_solution(s, x);
      bool exceeds = x[n - 1] > bound;
      out << "# 2^(2^" << (n - 1) << ") ~ " << sci_notation(bound, 10) << "\n";
      if (!solves) return done(kFailed, "witness does not solve the system");
      if (!exceeds) return done(kFailed, "witness does not exceed 2^(2^(n-1))");
      return done(kOk, "verified: witness solves the system and x" + std::to_string(n) + " > 2^(2^" +
                           std::to_string(n - 1) + ")");
    }

    if (*tl) {
      System s = tilde(parse_system(detail::read_text(input, in)));
      out << render_system(s);
      return done(kOk, "tilde system with " + std::to_string(s.size()) + " equations");
    }

    if (*comp) {
      if (input.empty() == expr.empty()) throw UsageError("compile needs exactly one of --input, --expr");
      Polynomial d = parse_polynomial(input.empty() ? expr : detail::read_text(input, in));
      if (mode == "full-t" && variant != "doubled" && comp->count("--variant"))
        throw UsageError("full-t mode builds the doubled family only");
      CompiledSystem c = mode == "full-t" ? compile_full_T(d, ceiling)
                                          : compile_compact(d, detail::parse_variant(variant));
      out << render_system(c.system);
      std::istringstream side(render_sidecar(c));
      for (std::string line; std::getline(side, line);) out << "# " << line << "\n";
      return done(kOk, std::string(mode) + " " + to_string(c.variant) + ": " + std::to_string(c.n()) +
                           " variables, " + std::to_string(c.system.size()) + " equations, q=" +
                           std::to_string(c.q));
    }

    if (*solve) {
      System s = parse_system(detail::read_text(input, in));
      SearchVerdict v = solve_in_order(s, cap);
      if (v.kind == Verdict::Found) {
        out << format_tuple(*v.tuple) << "\n";
        return done(kOk, "FOUND in shell " + std::to_string(v.shell));
      }
      return done(kCapExhausted, "NONE_UP_TO_CAP " + std::to_string(cap));
    }

    if (*verify) {
      if (sys_path == "-" && sol_path == "-") throw UsageError("only one operand may be '-'");
      System s = parse_system(detail::read_text(sys_path, in));
      auto tuples = parse_tuples(detail::read_text(sol_path, in));
      if (tuples.empty()) throw UsageError("no tuples in '" + sol_path + "'");
      std::size_t bad = 0;
      for (std::size_t i = 0; i < tuples.size(); ++i) {
        bool ok = check_solution(s, tuples[i]);
        out << "tuple " << (i + 1) << ": " << (ok ? "solves" : "fails") << "\n";
        if (!ok) {
          ++bad;
          for (const auto& e : s)
            if (!e.holds(tuples[i])) out << "  violated: " << to_string(e) << "\n";
        }
      }
      if (bad) return done(kFailed, std::to_string(bad) + " of " + std::to_string(tuples.size()) + " tuples fail");
      return done(kOk, "verified " + std::to_string(tuples.size()) + " tuples");
    }

    if (*psi) {
      PsiOptions opt;
      opt.jobs = jobs;
      opt.progress = [&](const std::string& msg) { err << "check-psi: " << msg << "\n"; };
      std::optional<std::uint64_t> c;
      if (psi->count("--cap")) c = cap;
      SearchVerdict v = check_psi(n, c, opt);
      std::uint64_t used = c ? *c : default_psi_cap(n);
      out << "tuples scanned: " << v.scanned << "\n";
      switch (v.kind) {
        case Verdict::Holds:
          return done(kOk, "HOLDS for n=" + std::to_string(n) + " with y shells up to " + std::to_string(used));
        case Verdict::Counterexample:
          return done(kFailed, "COUNTEREXAMPLE " + format_tuple(*v.tuple));
        default:
          return done(kCapExhausted, "UNKNOWN_CAP_EXHAUSTED at " + format_tuple(*v.tuple) + " (cap " +
                                         std::to_string(used) + ")");
      }
    }

    if (*prop4) {
      if (tuple_text.empty() == input.empty()) throw UsageError("check-prop4 needs exactly one of --tuple, --input");
      Tuple x = tuple_text.empty() ? parse_tuples(detail::read_text(input, in)).at(0) : parse_tuple(tuple_text);
      if (x.empty()) throw UsageError("empty tuple");
      SearchVerdict v = check_property4(x, cap);
      if (v.kind == Verdict::Counterexample) {
        out << format_tuple(*v.tuple) << "\n";
        return done(kFailed, "COUNTEREXAMPLE in shell " + std::to_string(v.shell));
      }
      return done(kOk, "NONE_UP_TO_CAP " + std::to_string(cap));
    }

    if (*ext) {
      Tuple x;
      bool with_units = units;
      std::vector<Tuple> expected;
      if (!tuple_text.empty()) {
        x = parse_tuple(tuple_text);
      } else {
        if (n < 2) throw UsageError("extremal needs --n >= 2 or --tuple");
        if (kind == "doubling") {
          x = doubling_tuple(n);
          expected = {Tuple(n, Int(0)), x};
        } else {
          x = property4_tuple(n);
          with_units = true;
          expected = {x};
        }
      }
      out << "x = " << format_tuple(x) << "\n" << detail::annotate_tuple(x);
      SearchVerdict v = rigidity_by_propagation(x, with_units);
      if (v.kind != Verdict::Determined) return done(kCapExhausted, "INDETERMINATE");
      for (const auto& y : v.tuples) out << "y = " << format_tuple(y) << "\n";
      std::string summary = "DETERMINED " + std::to_string(v.tuples.size()) + " relation-preserving tuples";
      if (!expected.empty()) {
        std::sort(expected.begin(), expected.end());
        if (v.tuples != expected) return done(kFailed, summary + " (expected " + std::to_string(expected.size()) + ")");
      }
      return done(kOk, summary);
    }

    if (*th2) {
      if (input.empty() == expr.empty()) throw UsageError("theorem2 needs exactly one of --input, --expr");
      Polynomial w = parse_polynomial(input.empty() ? expr : detail::read_text(input, in));
      std::size_t s_vars = compile_compact(integerize_nonneg(w), Variant::Halved).n();
      std::size_t target = n ? n : 8 + 2 * s_vars;
      Theorem2Plan plan = plan_theorem2(w, target);
      const auto& l = plan.layout;
      out << "# s = " << l.s << ", m(f) = " << l.m_f << ", n = " << l.n << "\n"
          << "# padding z: " << l.padding_count << " from x" << l.padding_first << "\n"
          << "# chain t: " << l.chain_length << " from x" << l.chain_first << "\n"
          << "# w = x" << l.w << ", y = x" << l.y << ", u = x" << l.u << ", v = x" << l.v << "\n";
      System s = theorem2_system(plan);
      out << render_system(s);
      if (witness_text.empty()) return done(kOk, "theorem2 system with " + std::to_string(l.n) + " variables");
      Tuple full = theorem2_witness(plan, parse_tuple(witness_text));
      out << "# witness\n" << format_tuple(full) << "\n";
      if (!check_solution(s, full)) return done(kFailed, "witness does not solve the system");
      return done(kOk, "verified: witness solves the system, x1 = " + full[0].get_str());
    }
  } catch (const UsageError& e) {
    return done(kUsage, std::string("usage error: ") + e.what());
  } catch (const ParseError& e) {
    return done(kUsage, std::string("parse error: ") + e.what());
  } catch (const PolynomialParseError& e) {
    return done(kUsage, std::string("parse error: ") + e.what());
  } catch (const std::invalid_argument& e) {
    return done(kUsage, std::string("invalid input: ") + e.what());
  } catch (const std::out_of_range& e) {
    return done(kUsage, std::string("invalid input: ") + e.what());
  } catch (const std::length_error& e) {
    return done(kUsage, std::string("invalid input: ") + e.what());
  } catch (const std::domain_error& e) {
    return done(kUsage, std::string("invalid input: ") + e.what());
  }
  return done(kUsage, "no subcommand");
}

}  // namespace dioph::cli
