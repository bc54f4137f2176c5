#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hitchin/dense_poly.hpp"
#include "hitchin/mpoly.hpp"
#include "hitchin/parse.hpp"

namespace hitchin {

/// A polynomial in one distinguished variable with MPoly coefficients. The
/// coefficients live in `ring` (which contains `var`) but never involve var.
struct UPoly {
  RingPtr ring;
  std::string var;
  DensePoly<MPoly> coeffs;

  int degree() const { return coeffs.degree(); }
  bool is_zero() const { return coeffs.is_zero(); }
  const MPoly& lc() const { return coeffs.lc(); }

  bool has_constant_coefficients() const {
    for (const auto& c : coeffs.coeffs())
      if (!c.is_constant()) return false;
    return true;
  }
};

inline UPoly to_upoly(const MPoly& p, const std::string& var) {
  RingPtr ring = p.ring();
  if (!ring || !ring->contains(var)) {
    std::vector<std::string> names = ring ? ring->names() : std::vector<std::string>{};
    names.push_back(var);
    ring = make_ring(std::move(names));
  }
  MPoly q = embed(p, ring);
  return {ring, var, DensePoly<MPoly>(coefficients_in(q, var))};
}

inline MPoly to_mpoly(const UPoly& u) {
  MPoly x = MPoly::variable(u.ring, u.var);
  MPoly out = MPoly::constant(u.ring, 0);
  for (std::size_t k = u.coeffs.coeffs().size(); k-- > 0;) out = out * x + u.coeffs.coeffs()[k];
  return out;
}

inline UPoly make_upoly(RingPtr ring, std::string var, DensePoly<MPoly> coeffs) {
  return {std::move(ring), std::move(var), std::move(coeffs)};
}

inline std::string to_string(const UPoly& u) { return to_string(to_mpoly(u)); }

inline bool operator==(const UPoly& a, const UPoly& b) { return a.var == b.var && to_mpoly(a) == to_mpoly(b); }

inline UPoly derivative(const UPoly& u) { return {u.ring, u.var, u.coeffs.derivative()}; }

inline UPoly derivative(const UPoly& u, const std::string& var) {
  if (var == u.var) return derivative(u);
  return {u.ring, u.var, u.coeffs.map([&](const MPoly& c) { return derivative(c, var); })};
}

/// Replaces var by expr in p, keeping p's main variable.
inline UPoly substitute(const UPoly& p, const std::string& var, const UPoly& expr) {
  MPoly e = to_mpoly(expr);
  MPoly base = to_mpoly(p);
  RingPtr ring = p.ring;
  if (!(*ring == *e.ring())) {
    std::vector<std::string> names = ring->names();
    for (const auto& n : e.ring()->names())
      if (!ring->contains(n)) names.push_back(n);
    ring = make_ring(std::move(names));
  }
  return to_upoly(substitute(embed(base, ring), var, embed(e, ring)), p.var);
}

// ---------------------------------------------------------------------------
// Conversions between ℚ[x] (dense) and MPoly in a single variable.

inline QPoly to_qpoly(const MPoly& p, const std::string& var) {
  auto cs = coefficients_in(p, var);
  std::vector<Rational> out;
  out.reserve(cs.size());
  for (const auto& c : cs) {
    if (!c.is_constant()) throw std::invalid_argument("polynomial involves variables other than '" + var + "'");
    out.push_back(c.constant_value());
  }
  return QPoly(std::move(out));
}

inline MPoly from_qpoly(const QPoly& q, const RingPtr& ring, const std::string& var) {
  MPoly x = MPoly::variable(ring, var);
  MPoly out = MPoly::constant(ring, 0);
  for (std::size_t k = q.coeffs().size(); k-- > 0;) out = out * x + MPoly::constant(ring, q.coeffs()[k]);
  return out;
}

inline std::string to_string(const QPoly& q, const std::string& var) {
  return to_string(from_qpoly(q, make_ring({var}), var));
}

// Rescales q to an integer polynomial with coprime coefficients and a
// positive leading coefficient, e.g. z - 1/4 -> 4*z - 1.
inline QPoly primitive_normalize(const QPoly& q) {
  if (q.is_zero()) return q;
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& c : q.coeffs()) {
    if (is_zero(c)) continue;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (sgn(q.lc()) < 0) scale = -scale;
  return q * scale;
}

inline QPoly to_qpoly(const UPoly& u) {
  std::vector<Rational> out;
  for (const auto& c : u.coeffs.coeffs()) {
    if (!c.is_constant()) throw std::invalid_argument("coefficients must be rational constants");
    out.push_back(c.constant_value());
  }
  return QPoly(std::move(out));
}

inline UPoly upoly_from_qpoly(const QPoly& q, RingPtr ring, std::string var) {
  return {ring, std::move(var), q.map([&](const Rational& c) { return MPoly::constant(ring, c); })};
}

// ---------------------------------------------------------------------------
// Resultants, discriminants, gcds.

/// Sylvester-determinant resultant in the common main variable, computed by
/// the subresultant PRS. Res(t - a, t - b) = a - b.
inline MPoly resultant(const UPoly& f, const UPoly& g) {
  if (f.var != g.var) throw std::invalid_argument("resultant of polynomials in different variables");
  if (f.is_zero() || g.is_zero()) throw std::domain_error("resultant of a zero polynomial");
  RingPtr ring = MPoly::common_ring(f.ring, g.ring);
  return subresultant_resultant(f.coeffs, g.coeffs).with_ring(ring);
}

/// Discr(f) = (-1)^(m(m-1)/2) Res(f, f') for monic f of degree m >= 1.
inline MPoly discriminant(const UPoly& f) {
  if (f.degree() < 1) throw std::invalid_argument("discriminant needs degree >= 1");
  if (!(f.lc() == MPoly(1))) throw std::invalid_argument("discriminant needs a monic polynomial");
  MPoly r = resultant(f, derivative(f));
  long m = f.degree();
  return (m * (m - 1) / 2) % 2 ? -r : r;
}

inline Rational discriminant(const QPoly& f) {
  if (f.degree() < 1) throw std::invalid_argument("discriminant needs degree >= 1");
  if (f.lc() != 1) throw std::invalid_argument("discriminant needs a monic polynomial");
  Rational r = subresultant_resultant(f, f.derivative());
  long m = f.degree();
  return (m * (m - 1) / 2) % 2 ? Rational(-r) : r;
}

/// Greatest common divisor in the main variable over the fraction field of
/// the coefficient ring. Monic when the monic representative has polynomial
/// coefficients (always the case over ℚ); otherwise the PRS representative
/// scaled so the leading coefficient's leading term is 1.
inline UPoly poly_gcd(const UPoly& f, const UPoly& g) {
  if (f.var != g.var) throw std::invalid_argument("gcd of polynomials in different variables");
  if (f.is_zero() && g.is_zero()) throw std::domain_error("gcd(0, 0) is undefined");
  RingPtr ring = MPoly::common_ring(f.ring, g.ring);
  if (f.has_constant_coefficients() && g.has_constant_coefficients())
    return upoly_from_qpoly(field_gcd(to_qpoly(f), to_qpoly(g)), ring, f.var);
  DensePoly<MPoly> d = subresultant_gcd(f.coeffs, g.coeffs);
  if (d.degree() <= 0) return {ring, f.var, DensePoly<MPoly>::constant(MPoly::constant(ring, 1))};
  try {
    const MPoly lead = d.lc();
    d = d.map([&](const MPoly& c) { return exact_divide(c, lead); });
  } catch (const NotDivisible&) {
    d = d * MPoly(inverse(d.lc().leading_term().coeff));
  }
  return {ring, f.var, d};
}

struct SquarefreeDecomposition {
  Rational unit;
  std::vector<std::pair<UPoly, int>> factors;  // monic, multiplicity
};

/// Yun decomposition of a polynomial with rational coefficients.
inline SquarefreeDecomposition squarefree_decomposition(const UPoly& f) {
  if (f.is_zero()) throw std::domain_error("squarefree decomposition of zero");
  QPoly q = to_qpoly(f);
  SquarefreeDecomposition out{q.lc(), {}};
  for (auto& [factor, mult] : yun_squarefree(q)) out.factors.emplace_back(upoly_from_qpoly(factor, f.ring, f.var), mult);
  return out;
}

inline UPoly reconstruct(const SquarefreeDecomposition& d, const RingPtr& ring, const std::string& var) {
  DensePoly<MPoly> acc = DensePoly<MPoly>::constant(MPoly::constant(ring, d.unit));
  for (const auto& [factor, mult] : d.factors)
    for (int k = 0; k < mult; ++k) acc = acc * factor.coeffs;
  return {ring, var, acc};
}

}  // namespace hitchin
