#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hitchin/mpoly.hpp"
#include "hitchin/parse.hpp"

namespace hitchin::picard {

// Coefficients are polynomials in the formal degree n and base genus g.
using CoeffNG = MPoly;

inline const RingPtr& ng_ring() {
  static const RingPtr ring = make_ring({"n", "g"});
  return ring;
}

inline CoeffNG coeff(const Rational& c) { return MPoly::constant(ng_ring(), c); }
inline CoeffNG var_n() { return MPoly::variable(ng_ring(), "n"); }
inline CoeffNG var_g() { return MPoly::variable(ng_ring(), "g"); }
inline CoeffNG parse_coeff(std::string_view text) { return parse_poly(text, ng_ring()); }

/// Raised when an expression leaves the range the calculus is defined on:
/// pushing forward something that is not of codimension two, or multiplying
/// past the dimension of the universal curve.
struct CodimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Classes on the base: combinations of lambda, delta, phi and lambda-hat.

enum class Basis { lambda = 0, delta = 1, phi = 2, lambda_hat = 3 };
inline constexpr std::array<Basis, 4> kBasis{Basis::lambda, Basis::delta, Basis::phi, Basis::lambda_hat};

inline const char* basis_name(Basis b) {
  switch (b) {
    case Basis::lambda: return "lambda";
    case Basis::delta: return "delta";
    case Basis::phi: return "phi";
    case Basis::lambda_hat: return "lambda_hat";
  }
  return "?";
}

class BaseClass {
 public:
  BaseClass() {
    for (auto& c : c_) c = coeff(0);
  }
  static BaseClass unit(Basis b, CoeffNG c = coeff(1)) {
    BaseClass out;
    out[b] = std::move(c);
    return out;
  }
  static BaseClass lambda(CoeffNG c = coeff(1)) { return unit(Basis::lambda, std::move(c)); }
  static BaseClass delta(CoeffNG c = coeff(1)) { return unit(Basis::delta, std::move(c)); }
  static BaseClass phi(CoeffNG c = coeff(1)) { return unit(Basis::phi, std::move(c)); }
  static BaseClass lambda_hat(CoeffNG c = coeff(1)) { return unit(Basis::lambda_hat, std::move(c)); }

  CoeffNG& operator[](Basis b) { return c_[static_cast<std::size_t>(b)]; }
  const CoeffNG& operator[](Basis b) const { return c_[static_cast<std::size_t>(b)]; }

  bool is_zero() const {
    for (const auto& c : c_)
      if (!c.is_zero()) return false;
    return true;
  }

  friend BaseClass operator+(BaseClass a, const BaseClass& b) {
    for (auto k : kBasis) a[k] = a[k] + b[k];
    return a;
  }
  friend BaseClass operator-(BaseClass a, const BaseClass& b) {
    for (auto k : kBasis) a[k] = a[k] - b[k];
    return a;
  }
  BaseClass operator-() const { return BaseClass() - *this; }
  friend BaseClass operator*(const CoeffNG& s, BaseClass a) {
    for (auto k : kBasis) a[k] = s * a[k];
    return a;
  }
  friend BaseClass operator*(const Rational& s, const BaseClass& a) { return coeff(s) * a; }
  friend bool operator==(const BaseClass& a, const BaseClass& b) { return (a - b).is_zero(); }

 private:
  std::array<CoeffNG, 4> c_;
};

/// 12 lambda - delta, the pushforward of psi^2.
inline BaseClass mumford() { return BaseClass::lambda(coeff(12)) - BaseClass::delta(); }

/// Evaluates every coefficient at integers n, g.
inline BaseClass specialize(const BaseClass& x, const Rational& n, const Rational& g) {
  BaseClass out;
  for (auto k : kBasis) out[k] = coeff(evaluate(x[k], {{"n", n}, {"g", g}}));
  return out;
}

inline std::string to_string(const BaseClass& x) {
  std::string out;
  for (auto k : kBasis) {
    if (x[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(x[k]) + ")*" + basis_name(k);
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Formal expressions on the universal curve and on the universal spectral
// curve. Both are polynomials in class symbols with CoeffNG coefficients,
// stored as MPoly over one shared universe.

namespace detail {

inline const RingPtr& symbol_ring() {
  static const RingPtr ring =
      make_ring({"n", "g", "psi", "Psi", "Bh", "Dbh", "Dmh", "Dch", "lambda", "delta", "phi", "lambda_hat"});
  return ring;
}

inline MPoly sym(const char* name) { return MPoly::variable(symbol_ring(), name); }
inline MPoly lift(const CoeffNG& c) { return embed(c, symbol_ring()); }

inline MPoly linear_form(const BaseClass& a) {
  MPoly out = MPoly::constant(symbol_ring(), 0);
  for (auto k : kBasis) out = out + lift(a[k]) * sym(basis_name(k));
  return out;
}

constexpr std::size_t kFirstSymbol = 2;  // after n, g

// Codimension of each symbol; the D-hat symbols are cycles of codimension 2.
inline unsigned symbol_codim(std::size_t i) {
  const std::string& name = symbol_ring()->names()[i];
  return (name == "Dbh" || name == "Dmh" || name == "Dch") ? 2 : 1;
}

using SymbolKey = std::vector<std::uint16_t>;  // exponents of the symbols

// Groups p by symbol monomial; each group's coefficient lives in Q[n, g].
inline std::map<SymbolKey, CoeffNG> expand(const MPoly& p) {
  std::map<SymbolKey, std::vector<Term>> groups;
  const std::size_t size = symbol_ring()->size();
  const MPoly q = embed(p, symbol_ring());
  for (const auto& t : q.terms()) {
    SymbolKey key(t.mono.exp.begin() + kFirstSymbol, t.mono.exp.begin() + static_cast<long>(size));
    Monomial m;
    m.exp[0] = t.mono.exp[0];
    m.exp[1] = t.mono.exp[1];
    m.degree = m.exp[0] + m.exp[1];
    groups[key].push_back({m, t.coeff});
  }
  std::map<SymbolKey, CoeffNG> out;
  for (auto& [k, terms] : groups) out.emplace(k, MPoly::from_terms(ng_ring(), std::move(terms)));
  return out;
}

inline unsigned codim(const SymbolKey& key) {
  unsigned c = 0;
  for (std::size_t i = 0; i < key.size(); ++i) c += key[i] * symbol_codim(i + kFirstSymbol);
  return c;
}

inline unsigned max_codim(const MPoly& p) {
  unsigned c = 0;
  for (const auto& [key, _] : expand(p)) c = std::max(c, codim(key));
  return c;
}

inline std::size_t index(const char* name) { return symbol_ring()->index_of(name) - kFirstSymbol; }

inline std::optional<Basis> base_symbol(std::size_t i) {
  for (auto k : kBasis)
    if (index(basis_name(k)) == i) return k;
  return std::nullopt;
}

}  // namespace detail

/// Polynomial of degree at most two in psi and pulled-back base classes.
class FiberExpr {
 public:
  FiberExpr() : p_(MPoly::constant(detail::symbol_ring(), 0)) {}
  static FiberExpr psi() { return FiberExpr(detail::sym("psi")); }
  static FiberExpr pull(const BaseClass& a) { return FiberExpr(detail::linear_form(a)); }
  static FiberExpr scalar(const CoeffNG& c) { return FiberExpr(detail::lift(c)); }

  const MPoly& poly() const { return p_; }
  unsigned degree() const { return detail::max_codim(p_); }

  friend FiberExpr operator+(const FiberExpr& a, const FiberExpr& b) { return FiberExpr(a.p_ + b.p_); }
  friend FiberExpr operator-(const FiberExpr& a, const FiberExpr& b) { return FiberExpr(a.p_ - b.p_); }
  friend FiberExpr operator*(const CoeffNG& s, const FiberExpr& a) { return FiberExpr(detail::lift(s) * a.p_); }
  friend FiberExpr operator*(const FiberExpr& a, const FiberExpr& b) {
    if (a.degree() + b.degree() > 2) throw CodimensionError("product of three or more divisor classes on the universal curve");
    return FiberExpr(a.p_ * b.p_);
  }
  friend bool operator==(const FiberExpr& a, const FiberExpr& b) { return a.p_ == b.p_; }

 private:
  explicit FiberExpr(MPoly p) : p_(std::move(p)) {}
  MPoly p_;
};

/// pi_* from the universal curve: psi^2 -> 12 lambda - delta,
/// psi * pull(a) -> (2g - 2) a, pull(a) * pull(b) -> 0.
inline BaseClass pushforward_base(const FiberExpr& e) {
  using detail::index;
  BaseClass out;
  const CoeffNG two_g_minus_2 = coeff(2) * var_g() - coeff(2);
  for (const auto& [key, c] : detail::expand(e.poly())) {
    if (detail::codim(key) != 2) throw CodimensionError("pushforward to divisors needs pure fiber degree 2");
    if (key[index("psi")] == 2) {
      out = out + c * mumford();
      continue;
    }
    if (key[index("psi")] == 1) {
      for (std::size_t i = 0; i < key.size(); ++i)
        if (auto b = detail::base_symbol(i); b && key[i] == 1) out = out + (c * two_g_minus_2) * BaseClass::unit(*b);
      continue;
    }
    // pull(a) * pull(b): zero on fibers.
  }
  return out;
}

/// Class of the branching divisor on the universal curve, n(n-1)(psi - pull(phi)).
inline FiberExpr class_of_B() {
  CoeffNG n = var_n();
  return (n * (n - coeff(1))) * (FiberExpr::psi() - FiberExpr::pull(BaseClass::phi()));
}

// ---------------------------------------------------------------------------
// The universal spectral curve. Generators: Psi = p* psi, pulled-back base
// classes, the ramification divisor Bh, and the codimension-two cycles
// Dbh, Dmh, Dch lying over the three strata.

enum class Stratum { boundary, maxwell, caustic };

class CoverExpr {
 public:
  CoverExpr() : p_(MPoly::constant(detail::symbol_ring(), 0)) {}
  static CoverExpr Psi() { return CoverExpr(detail::sym("Psi")); }
  static CoverExpr pull(const BaseClass& a) { return CoverExpr(detail::linear_form(a)); }
  static CoverExpr B() { return CoverExpr(detail::sym("Bh")); }
  static CoverExpr D(Stratum s) {
    switch (s) {
      case Stratum::boundary: return CoverExpr(detail::sym("Dbh"));
      case Stratum::maxwell: return CoverExpr(detail::sym("Dmh"));
      case Stratum::caustic: return CoverExpr(detail::sym("Dch"));
    }
    throw std::logic_error("unknown stratum");
  }
  static CoverExpr scalar(const CoeffNG& c) { return CoverExpr(detail::lift(c)); }
  /// Wraps p as is, without eliminating Bh^2.
  static CoverExpr raw(const MPoly& p) { return CoverExpr(embed(p, detail::symbol_ring()), false); }

  const MPoly& poly() const { return p_; }
  bool is_normal() const { return partition_by_divisibility(p_, "Bh", 2).first.is_zero(); }
  unsigned codim() const { return detail::max_codim(p_); }

  /// Rewrites Bh^2 by the adjunction relation 2 Bh^2 = -Psi Bh + Dbh + Dch.
  CoverExpr normalized() const {
    const MPoly bb = detail::sym("Bh") * detail::sym("Bh");
    const MPoly rule = (-detail::sym("Psi") * detail::sym("Bh") + detail::sym("Dbh") + detail::sym("Dch")) * Rational(1, 2);
    MPoly p = p_;
    while (true) {
      auto [with, without] = partition_by_divisibility(p, "Bh", 2);
      if (with.is_zero()) break;
      p = without + exact_divide(with, bb) * rule;
    }
    return CoverExpr(p, false);
  }

  friend CoverExpr operator+(const CoverExpr& a, const CoverExpr& b) { return CoverExpr(a.p_ + b.p_); }
  friend CoverExpr operator-(const CoverExpr& a, const CoverExpr& b) { return CoverExpr(a.p_ - b.p_); }
  friend CoverExpr operator*(const CoeffNG& s, const CoverExpr& a) { return CoverExpr(detail::lift(s) * a.p_); }
  friend CoverExpr operator*(const CoverExpr& a, const CoverExpr& b) {
    if (a.codim() + b.codim() > 2) throw CodimensionError("product beyond codimension two on the universal spectral curve");
    return CoverExpr(a.p_ * b.p_);
  }
  friend bool operator==(const CoverExpr& a, const CoverExpr& b) { return a.p_ == b.p_; }

 private:
  explicit CoverExpr(MPoly p, bool normalize = true) : p_(std::move(p)) {
    if (normalize) p_ = normalized().p_;
  }
  MPoly p_;
};

/// (b Psi - a pull(phi)) Bh: the divisor of a homomorphism from the a-th
/// power of the tautological bundle to the b-th power of p* omega, on Bh.
inline CoverExpr strata_divisor_upstairs(const CoeffNG& a, const CoeffNG& b) {
  return (b * CoverExpr::Psi() - a * CoverExpr::pull(BaseClass::phi())) * CoverExpr::B();
}

/// Weight and target power of the homomorphism cutting out each stratum.
/// Boundary: the node map has weight n and lands in the (n+1)-st power.
inline std::pair<CoeffNG, CoeffNG> stratum_weights(Stratum s) {
  const CoeffNG n = var_n();
  switch (s) {
    case Stratum::boundary: return {n, n + coeff(1)};
    case Stratum::maxwell: {
      CoeffNG w = (n - coeff(2)) * (n - coeff(3));
      return {w, w};
    }
    case Stratum::caustic: return {n - coeff(2), n - coeff(2)};
  }
  throw std::logic_error("unknown stratum");
}

inline CoverExpr stratum_instance(Stratum s) {
  auto [a, b] = stratum_weights(s);
  return strata_divisor_upstairs(a, b);
}

/// pi-hat_* to the base. Uses p_* Bh = B (degree one onto the branching
/// divisor), p_* 1 = n, the projection formula, and the stratum cycles'
/// defining expressions.
inline BaseClass pushforward_cover(const CoverExpr& e) {
  using detail::index;
  if (!e.is_normal()) throw CodimensionError("pushforward needs normal form (no Bh^2)");
  const CoeffNG n = var_n();
  BaseClass out;
  for (const auto& [key, c] : detail::expand(e.poly())) {
    if (detail::codim(key) != 2) throw CodimensionError("pushforward to divisors needs codimension 2");
    std::optional<Stratum> stratum;
    if (key[index("Dbh")]) stratum = Stratum::boundary;
    if (key[index("Dmh")]) stratum = Stratum::maxwell;
    if (key[index("Dch")]) stratum = Stratum::caustic;
    if (stratum) {
      out = out + c * pushforward_cover(stratum_instance(*stratum));
      continue;
    }
    // Remaining factor next to Bh or the pullback of one: rebuild it on the
    // universal curve and push forward through it.
    FiberExpr downstairs = FiberExpr::scalar(coeff(1));
    bool on_B = key[index("Bh")] == 1;
    for (std::size_t i = 0; i < key.size(); ++i) {
      for (unsigned k = 0; k < key[i]; ++k) {
        if (i == index("Psi"))
          downstairs = downstairs * FiberExpr::psi();
        else if (auto b = detail::base_symbol(i))
          downstairs = downstairs * FiberExpr::pull(BaseClass::unit(*b));
      }
    }
    if (on_B)
      out = out + c * pushforward_base(downstairs * class_of_B());
    else
      out = out + (c * n) * pushforward_base(downstairs);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Derivations.

struct StrataClasses {
  BaseClass Db, Dm, Dc, DW;
};

/// The Maxwell cycle lies over its stratum with degree two.
inline StrataClasses derive_strata_classes() {
  StrataClasses s;
  s.Db = pushforward_cover(stratum_instance(Stratum::boundary));
  s.Dm = Rational(1, 2) * pushforward_cover(stratum_instance(Stratum::maxwell));
  s.Dc = pushforward_cover(stratum_instance(Stratum::caustic));
  s.DW = s.Db + coeff(2) * s.Dm + coeff(3) * s.Dc;
  return s;
}

inline BaseClass derive_psi_B() { return pushforward_cover(CoverExpr::Psi() * CoverExpr::B()); }

inline BaseClass derive_B_self_intersection() { return pushforward_cover(CoverExpr::B() * CoverExpr::B()); }

/// c1(omega) upstairs is Psi + Bh.
inline BaseClass derive_omega_squared() {
  CoverExpr omega = CoverExpr::Psi() + CoverExpr::B();
  return pushforward_cover(omega * omega);
}

/// The degree-one part of GRR for the structure sheaf, as a relation
/// 12 lambda-hat - pi-hat_*(c1(omega)^2 + V_nodal) = 0, with
/// pi-hat_* V_nodal = n delta + Db.
inline BaseClass grr_relation() {
  BaseClass nodal = BaseClass::delta(var_n()) + derive_strata_classes().Db;
  return BaseClass::lambda_hat(coeff(12)) - (derive_omega_squared() + nodal);
}

/// Solves a relation with invertible lambda-hat coefficient for lambda-hat.
inline BaseClass solve_for_lambda_hat(const BaseClass& relation) {
  const CoeffNG& k = relation[Basis::lambda_hat];
  if (!k.is_constant() || k.is_zero()) throw std::invalid_argument("lambda-hat coefficient must be a nonzero constant");
  BaseClass rest = relation;
  rest[Basis::lambda_hat] = coeff(0);
  return coeff(-inverse(k.constant_value())) * rest;
}

inline BaseClass derive_hodge_hat() { return solve_for_lambda_hat(grr_relation()); }

// ---------------------------------------------------------------------------
// Identity checking.

struct IdentityReport {
  bool equal = false;
  BaseClass diff;  // lhs - rhs
  std::vector<std::string> lines;  // one per nonzero coordinate of diff
};

inline IdentityReport verify_identity(const BaseClass& lhs, const BaseClass& rhs) {
  IdentityReport r;
  r.diff = lhs - rhs;
  r.equal = r.diff.is_zero();
  for (auto k : kBasis)
    if (!r.diff[k].is_zero()) r.lines.push_back(std::string(basis_name(k)) + ": " + to_string(r.diff[k]));
  return r;
}

// ---------------------------------------------------------------------------
// Closed forms as printed, for comparison with the derivations.

namespace closed_form {

inline CoeffNG n() { return var_n(); }
inline CoeffNG g() { return var_g(); }
inline CoeffNG g1() { return var_g() - coeff(1); }
inline CoeffNG nn1() { return var_n() * (var_n() - coeff(1)); }

/// 12 lambda - delta + sign * 4(g-1) phi
inline BaseClass twelve_lambda_delta_phi4(int sign) { return mumford() + BaseClass::phi(coeff(4 * sign) * g1()); }

inline BaseClass total_discriminant() {
  CoeffNG n2 = n() * n();
  return nn1() * ((n2 - n() + coeff(1)) * mumford() - BaseClass::phi(coeff(2) * g1() * (coeff(2) * n2 - coeff(2) * n() + coeff(1))));
}

inline BaseClass boundary() {
  return nn1() * ((n() + coeff(1)) * mumford() - BaseClass::phi(coeff(2) * g1() * (coeff(2) * n() + coeff(1))));
}

/// Maxwell class with the given sign in front of 4(g-1) phi; the printed
/// statements use +1.
inline BaseClass maxwell(int sign) {
  return (nn1() * (n() - coeff(2)) * (n() - coeff(3)) * coeff(Rational(1, 2))) * twelve_lambda_delta_phi4(sign);
}

/// Caustic class; the introduction prints -1, the derivation's last line +1.
inline BaseClass caustic(int sign) { return (nn1() * (n() - coeff(2))) * twelve_lambda_delta_phi4(sign); }

/// pi-hat_*(Psi Bh) = n(n-1)(12 lambda - delta - 2(g-1) phi)
inline BaseClass psi_B() { return nn1() * (mumford() - BaseClass::phi(coeff(2) * g1())); }

inline BaseClass B_self_intersection() {
  return coeff(Rational(-1, 2)) * psi_B() + Rational(1, 2) * (boundary() + caustic(-1));
}

inline BaseClass omega_squared() {
  return BaseClass::lambda(coeff(6) * n() * (coeff(3) * n() - coeff(1))) - BaseClass::phi(coeff(3) * nn1() * g1()) -
         BaseClass::delta(n() * (coeff(3) * n() - coeff(1)) * coeff(Rational(1, 2))) +
         Rational(1, 2) * (boundary() + caustic(-1));
}

inline BaseClass hodge_hat() {
  return BaseClass::lambda(n() * (coeff(2) * n() * n() - coeff(1))) -
         BaseClass::phi(nn1() * (coeff(4) * n() + coeff(1)) * g1() * coeff(Rational(1, 6))) -
         BaseClass::delta(n() * (n() * n() - coeff(1)) * coeff(Rational(1, 6)));
}

/// The boundary cycle with weight and target swapped: (n Psi - (n+1) phi) Bh.
inline CoverExpr boundary_instance_swapped() { return strata_divisor_upstairs(n() + coeff(1), n()); }

}  // namespace closed_form

}  // namespace hitchin::picard
