#pragma once

#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hitchin/io.hpp"

namespace hitchin::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kVerificationFailure = 2 };

/// Raised when a result fails one of the engine's own consistency checks.
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { human, machine };

struct RunConfig {
  std::string command;
  Format format = Format::human;
  std::optional<int> n;
  std::optional<long> g;
  std::optional<long> b;
  std::string family_path;
  bool verify = false;
};

namespace detail {

using io::json;

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

inline int cmd_discr(const RunConfig& c, std::ostream& out) {
  if (c.n.has_value() == !c.family_path.empty()) throw io::InputError("discr needs exactly one of --n or --family");
  json j;
  std::string text;
  if (c.n) {
    if (*c.n < 1) throw io::InputError("--n must be at least 1");
    text = to_string(generic_discriminant(*c.n));
    j["n"] = *c.n;
  } else {
    SpectralFamily fam = io::read_family(c.family_path);
    text = to_string(discriminant_family(fam), "z");
    j["family"] = io::family_to_json(fam);
  }
  j["discriminant"] = text;
  if (c.format == Format::machine)
    emit(out, j);
  else
    out << text << '\n';
  return kOk;
}

inline int cmd_decompose(const RunConfig& c, std::ostream& out) {
  if (!c.n) throw io::InputError("decompose needs --n");
  if (*c.n < 3) throw io::InputError("decompose needs n >= 3");
  StrataDecomposition d = decompose_discriminant(*c.n);
  if (c.format == Format::machine) {
    emit(out, io::to_json(d));
  } else {
    out << "n = " << d.n << '\n'
        << "R0 = " << to_string(d.R0) << '\n'
        << "R1 = " << to_string(d.R1) << '\n'
        << "S = " << to_string(d.S) << '\n'
        << "lower discriminant = " << to_string(d.lower_discriminant) << '\n'
        << "leading factor = " << to_string(d.leading_factor) << '\n'
        << "verified: " << (d.verified ? "true" : "false") << '\n';
    if (!d.unit_leading_holds)
      out << "note: the identity with leading factor -1 does not hold; the remainder is "
          << to_string(d.leading_factor) << " * q" << d.n << " * q" << d.n - 2 << "^3 * Discr(P" << d.n - 2 << ")\n";
  }
  return kOk;
}

inline std::string profile_string(const std::vector<int>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

inline int cmd_classify(const RunConfig& c, std::ostream& out) {
  if (c.family_path.empty()) throw io::InputError("classify needs --family");
  SpectralFamily fam = io::read_family(c.family_path);
  QPoly w = discriminant_family(fam);
  if (w.is_zero()) throw ZeroDiscriminantError("W vanishes identically");
  MultiplicityAudit audit = multiplicity_audit(fam);
  auto records = classify_family(fam);
  if (c.format == Format::machine) {
    json j;
    j["family"] = io::family_to_json(fam);
    j["W"] = to_string(w, "z");
    j["records"] = io::to_json(records);
    emit(out, j);
  } else {
    out << "F = " << to_string(fam) << '\n' << "W = " << to_string(w, "z") << '\n';
    for (const auto& r : records) {
      const auto& l = r.local;
      out << (r.point ? "z = " + to_string(*r.point) : "locus " + to_string(primitive_normalize(r.locus), "z")) << ": "
          << to_string(l.tag) << ", ord W = " << l.w_multiplicity << ", profile " << profile_string(l.profile);
      std::vector<std::string> flags;
      if (l.triple_root) flags.emplace_back("triple root");
      if (l.two_double_roots) flags.emplace_back("two double roots");
      if (l.singular) flags.emplace_back("singular");
      if (l.non_nodal) flags.emplace_back("non-nodal");
      for (std::size_t i = 0; i < flags.size(); ++i) out << (i ? ", " : " [") << flags[i];
      out << (flags.empty() ? "" : "]") << '\n';
    }
  }
  if (!audit.ok()) {
    std::string msg = "multiplicity audit failed:";
    for (const auto& f : audit.failures) msg += "\n  " + f;
    throw VerificationFailure(msg);
  }
  return kOk;
}

inline int cmd_genus(const RunConfig& c, std::ostream& out) {
  if (!c.n || !c.g) throw io::InputError("genus needs --n and --g");
  const Integer n(*c.n), g(*c.g);
  const Integer genus = c.b ? riemann_hurwitz(n, g, Integer(*c.b)) : spectral_genus(n, g);
  if (c.format == Format::machine) {
    json j;
    j["n"] = *c.n;
    j["g"] = *c.g;
    j["b"] = to_string(c.b ? Integer(*c.b) : expected_zero_count(n, g));
    j["genus"] = to_string(genus);
    emit(out, j);
  } else {
    out << to_string(genus) << '\n';
  }
  return kOk;
}

struct Check {
  std::string name;
  picard::IdentityReport report;
};

// Engine derivations against their closed forms; any inequality is a bug.
inline std::vector<Check> identity_suite(const picard::StrataClasses& s, const picard::BaseClass& hodge) {
  namespace cf = picard::closed_form;
  return {
      {"DW = total discriminant class", picard::verify_identity(s.DW, cf::total_discriminant())},
      {"DW = Db + 2 Dm + 3 Dc", picard::verify_identity(s.DW, s.Db + picard::coeff(2) * s.Dm + picard::coeff(3) * s.Dc)},
      {"Db = boundary class", picard::verify_identity(s.Db, cf::boundary())},
      {"Dm = Maxwell class with -4(g-1) phi", picard::verify_identity(s.Dm, cf::maxwell(-1))},
      {"Dc = caustic class with -4(g-1) phi", picard::verify_identity(s.Dc, cf::caustic(-1))},
      {"push(Psi Bh)", picard::verify_identity(picard::derive_psi_B(), cf::psi_B())},
      {"push(Bh^2)", picard::verify_identity(picard::derive_B_self_intersection(), cf::B_self_intersection())},
      {"push(omega^2)", picard::verify_identity(picard::derive_omega_squared(), cf::omega_squared())},
      {"lambda-hat", picard::verify_identity(hodge, cf::hodge_hat())},
  };
}

// Comparisons against printed variants that disagree with the derivation.
inline std::vector<Check> erratum_suite(const picard::StrataClasses& s) {
  namespace cf = picard::closed_form;
  return {
      {"Dm as printed with +4(g-1) phi", picard::verify_identity(s.Dm, cf::maxwell(+1))},
      {"Dc as printed with +4(g-1) phi", picard::verify_identity(s.Dc, cf::caustic(+1))},
      {"boundary cycle with weight and target swapped",
       picard::verify_identity(s.Db, picard::pushforward_cover(cf::boundary_instance_swapped()))},
  };
}

inline int cmd_classes(const RunConfig& c, std::ostream& out) {
  if (c.n.has_value() != c.g.has_value()) throw io::InputError("classes needs both --n and --g, or neither");
  if (c.n && *c.n < 1) throw io::InputError("--n must be at least 1");
  if (c.g && *c.g < 0) throw io::InputError("--g must be non-negative");
  const picard::StrataClasses s = picard::derive_strata_classes();
  const picard::BaseClass hodge = picard::derive_hodge_hat();
  std::vector<std::pair<std::string, picard::BaseClass>> table{
      {"Db", s.Db}, {"Dm", s.Dm}, {"Dc", s.Dc}, {"DW", s.DW}, {"lambda_hat", hodge}};
  if (c.n)
    for (auto& [name, x] : table) x = picard::specialize(x, Rational(*c.n), Rational(*c.g));

  std::vector<Check> checks, errata;
  if (c.verify) {
    checks = identity_suite(s, hodge);
    errata = erratum_suite(s);
  }
  bool ok = true;
  for (const auto& ch : checks) ok = ok && ch.report.equal;

  if (c.format == Format::machine) {
    json j;
    j["classes"] = json::object();
    for (const auto& [name, x] : table) j["classes"][name] = io::to_json(x);
    if (c.n) {
      j["n"] = *c.n;
      j["g"] = *c.g;
    }
    if (c.verify) {
      auto dump = [](const std::vector<Check>& v) {
        json a = json::array();
        for (const auto& ch : v) a.push_back({{"name", ch.name}, {"equal", ch.report.equal}, {"diff", io::to_json(ch.report.diff)}});
        return a;
      };
      j["verification"] = dump(checks);
      j["errata"] = dump(errata);
      j["verified"] = ok;
    }
    emit(out, j);
  } else {
    for (const auto& [name, x] : table) out << name << " = " << picard::to_string(x) << '\n';
    if (c.verify) {
      for (const auto& ch : checks) {
        out << (ch.report.equal ? "ok       " : "MISMATCH ") << ch.name << '\n';
        for (const auto& line : ch.report.lines) out << "    diff " << line << '\n';
      }
      for (const auto& ch : errata) {
        out << "erratum  " << ch.name << (ch.report.equal ? ": agrees" : ": differs from the derivation") << '\n';
        for (const auto& line : ch.report.lines) out << "    diff " << line << '\n';
      }
    }
  }
  if (!ok) throw VerificationFailure("identity suite reported a mismatch");
  return kOk;
}

inline int dispatch(const RunConfig& c, std::ostream& out) {
  if (c.command == "discr") return cmd_discr(c, out);
  if (c.command == "decompose") return cmd_decompose(c, out);
  if (c.command == "classify") return cmd_classify(c, out);
  if (c.command == "genus") return cmd_genus(c, out);
  if (c.command == "classes") return cmd_classes(c, out);
  throw io::InputError("unknown command '" + c.command + "'");
}

}  // namespace detail

/// Maps the library's exception families onto exit codes: bad input is 1,
/// a failed internal check is 2.
template <class F>
int guarded(F&& body, std::ostream& err) {
  try {
    return body();
  } catch (const VerificationFailure& e) {
    err << "verification failure: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const DecompositionError& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kVerificationFailure;
  }
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Discriminant strata, spectral cover branch points and divisor classes", "hitchin"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "human";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "machine"}));

  auto* discr = app.add_subcommand("discr", "Discriminant of the generic degree-n polynomial or of a family");
  discr->add_option("--n", cfg.n, "Degree");
  discr->add_option("--family", cfg.family_path, "Family file (JSON)");

  auto* decompose = app.add_subcommand("decompose", "Strata decomposition of the generic discriminant");
  decompose->add_option("--n", cfg.n, "Degree")->required();

  auto* classify = app.add_subcommand("classify", "Classify the branch points of a family");
  classify->add_option("--family", cfg.family_path, "Family file (JSON)")->required();

  auto* genus = app.add_subcommand("genus", "Riemann-Hurwitz genus of the spectral curve");
  genus->add_option("--n", cfg.n, "Sheets")->required();
  genus->add_option("--g", cfg.g, "Base genus")->required();
  genus->add_option("--b", cfg.b, "Total branching; defaults to 2n(n-1)(g-1)");

  auto* classes = app.add_subcommand("classes", "Divisor classes of the strata and the spectral Hodge class");
  classes->add_option("--n", cfg.n, "Specialize at this n");
  classes->add_option("--g", cfg.g, "Specialize at this g");
  classes->add_flag("--verify", cfg.verify, "Run the identity suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.format = format == "machine" ? Format::machine : Format::human;

  return guarded([&] { return detail::dispatch(cfg, out); }, err);
}

}  // namespace hitchin::cli
