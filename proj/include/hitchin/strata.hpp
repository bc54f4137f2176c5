#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "hitchin/mpoly.hpp"
#include "hitchin/upoly.hpp"

namespace hitchin {

/// Raised when an internal invariant of the discriminant decomposition is
/// violated. This is a bug signal, not an input error.
struct DecompositionError : std::logic_error {
  using std::logic_error::logic_error;
};

inline std::string q_name(int j) { return "q" + std::to_string(j); }

/// Universe q1..qn, t.
inline RingPtr generic_ring(int n) {
  std::vector<std::string> names;
  for (int j = 1; j <= n; ++j) names.push_back(q_name(j));
  names.emplace_back("t");
  return make_ring(std::move(names));
}

/// P(t) = t^n + q1 t^(n-1) + ... + qn over `ring`, which must hold q1..qn, t.
inline UPoly generic_monic(int n, const RingPtr& ring) {
  if (n < 1) throw std::invalid_argument("degree must be at least 1");
  std::vector<MPoly> c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(n)] = MPoly::constant(ring, 1);
  for (int j = 1; j <= n; ++j) c[static_cast<std::size_t>(n - j)] = MPoly::variable(ring, q_name(j));
  return make_upoly(ring, "t", DensePoly<MPoly>(std::move(c)));
}

inline UPoly generic_monic(int n) { return generic_monic(n, generic_ring(n)); }

/// Discr of the generic monic polynomial of degree n, over the universe
/// q1..qn. Memoized: the n = 8 case takes seconds.
inline MPoly generic_discriminant(int n) {
  if (n < 1) throw std::invalid_argument("degree must be at least 1");
  static std::mutex mu;
  static std::map<int, MPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  std::vector<std::string> names;
  for (int j = 1; j <= n; ++j) names.push_back(q_name(j));
  MPoly d = embed(discriminant(generic_monic(n)), make_ring(std::move(names)));
  cache.emplace(n, d);
  return d;
}

// ---------------------------------------------------------------------------
// Decomposition of the generic discriminant.
//
//   Discr(P) = k * qn * q(n-2)^3 * Discr(P(n-2)) + qn*(q(n-1)*R1 + qn*R0) + q(n-1)^2 * S
//
// The canonical witness comes from partitioning monomials; k is read off the
// remainder rather than assumed.

struct StrataDecomposition {
  int n = 0;
  MPoly discriminant;
  MPoly R0, R1, S;
  MPoly lower_discriminant;  // Discr(P(n-2)) in q1..q(n-2)
  Rational leading_factor;   // k above
  MPoly reconstructed;
  bool verified = false;  // reconstructed == discriminant
  // Same identity with k forced to -1.
  MPoly unit_leading_reconstruction;
  bool unit_leading_holds = false;
};

inline StrataDecomposition decompose_discriminant(int n) {
  if (n < 3) throw std::invalid_argument("decomposition needs n >= 3");
  StrataDecomposition out;
  out.n = n;
  out.discriminant = generic_discriminant(n);
  const RingPtr ring = out.discriminant.ring();
  const std::string qn = q_name(n), qn1 = q_name(n - 1);
  const MPoly x_n = MPoly::variable(ring, qn);
  const MPoly x_n1 = MPoly::variable(ring, qn1);
  const MPoly x_n2 = MPoly::variable(ring, q_name(n - 2));

  auto [with_qn, free_of_qn] = partition_by_divisibility(out.discriminant, qn, 1);
  if (!partition_by_divisibility(free_of_qn, qn1, 2).second.is_zero())
    throw DecompositionError("qn-free part is not divisible by q(n-1)^2");
  out.S = exact_divide(free_of_qn, x_n1 * x_n1);

  MPoly s1 = exact_divide(with_qn, x_n);
  auto [r0_part, rest] = partition_by_divisibility(s1, qn, 1);
  out.R0 = exact_divide(r0_part, x_n);
  auto [r1_part, remainder] = partition_by_divisibility(rest, qn1, 1);
  out.R1 = exact_divide(r1_part, x_n1);

  out.lower_discriminant = embed(generic_discriminant(n - 2), ring);
  const MPoly shape = pow(x_n2, 3) * out.lower_discriminant;
  if (remainder.is_zero()) throw DecompositionError("remainder vanishes");
  out.leading_factor = remainder.leading_term().coeff / shape.leading_term().coeff;
  if (!(remainder == shape * out.leading_factor))
    throw DecompositionError("remainder is not a multiple of q(n-2)^3 * Discr(P(n-2))");

  const MPoly tail = x_n * (x_n1 * out.R1 + x_n * out.R0) + x_n1 * x_n1 * out.S;
  out.reconstructed = x_n * shape * out.leading_factor + tail;
  out.verified = out.reconstructed == out.discriminant;
  if (!out.verified) throw DecompositionError("reconstruction does not reproduce the discriminant");
  out.unit_leading_reconstruction = -(x_n * shape) + tail;
  out.unit_leading_holds = out.unit_leading_reconstruction == out.discriminant;
  return out;
}

// ---------------------------------------------------------------------------
// Rational points of the space of monic polynomials.

struct MonicPoint {
  int n = 0;
  std::vector<Rational> q;  // q1..qn
};

inline MonicPoint make_point(std::vector<Rational> q) {
  if (q.empty()) throw std::invalid_argument("monic point needs n >= 1");
  return {static_cast<int>(q.size()), std::move(q)};
}

inline void check_point(const MonicPoint& p) {
  if (p.n < 1 || static_cast<int>(p.q.size()) != p.n) throw std::invalid_argument("monic point needs exactly n coordinates");
}

inline QPoly polynomial_at(const MonicPoint& p) {
  check_point(p);
  std::vector<Rational> c(static_cast<std::size_t>(p.n) + 1);
  c[static_cast<std::size_t>(p.n)] = 1;
  for (int j = 1; j <= p.n; ++j) c[static_cast<std::size_t>(p.n - j)] = p.q[static_cast<std::size_t>(j - 1)];
  return QPoly(std::move(c));
}

// The inverse of polynomial_at; f must be monic.
inline MonicPoint point_of(const QPoly& f) {
  if (f.degree() < 1 || f.lc() != 1) throw std::invalid_argument("expected a monic polynomial of degree >= 1");
  MonicPoint p{f.degree(), {}};
  for (int j = 1; j <= p.n; ++j) p.q.push_back(f.coeff(p.n - j));
  return p;
}

inline Rational discriminant_at(const MonicPoint& p) { return discriminant(polynomial_at(p)); }

enum class PointTag { Separable, SingleDouble, TwoOrMoreMultiple, TripleOrHigher };

inline const char* to_string(PointTag t) {
  switch (t) {
    case PointTag::Separable: return "Separable";
    case PointTag::SingleDouble: return "SingleDouble";
    case PointTag::TwoOrMoreMultiple: return "TwoOrMoreMultiple";
    case PointTag::TripleOrHigher: return "TripleOrHigher";
  }
  return "?";
}

struct PointClassification {
  PointTag tag = PointTag::Separable;
  bool in_D = false;   // some multiple root
  bool in_Dm = false;  // at least two distinct multiple roots
  bool in_Dc = false;  // some root of multiplicity >= 3
  QPoly multiple_part;  // gcd(P, P')
};

inline PointClassification classify_point(const MonicPoint& p) {
  QPoly f = polynomial_at(p);
  PointClassification c;
  c.multiple_part = field_gcd(f, f.derivative());
  c.in_D = c.multiple_part.degree() >= 1;
  if (!c.in_D) return c;
  QPoly third = field_gcd(c.multiple_part, f.derivative().derivative());
  c.in_Dc = third.degree() >= 1;
  // Distinct multiple roots are the roots of the radical of gcd(P, P').
  QPoly radical = field_exact_div(c.multiple_part, field_gcd(c.multiple_part, c.multiple_part.derivative()));
  c.in_Dm = radical.degree() >= 2;
  if (c.in_Dc)
    c.tag = PointTag::TripleOrHigher;
  else if (c.multiple_part.degree() == 1)
    c.tag = PointTag::SingleDouble;
  else
    c.tag = PointTag::TwoOrMoreMultiple;
  return c;
}

/// Monic polynomial whose roots are the t-coordinates of the points of the
/// normalization over p: one point per distinct multiple root.
inline QPoly normalization_fiber(const MonicPoint& p) {
  QPoly f = polynomial_at(p);
  QPoly g = field_gcd(f, f.derivative());
  if (g.degree() < 1) throw std::invalid_argument("point is not on the discriminant");
  return field_exact_div(g, field_gcd(g, g.derivative()));
}

/// q_j -> xi^j q_j.
inline MonicPoint weighted_action(const Rational& xi, const MonicPoint& p) {
  check_point(p);
  if (is_zero(xi)) throw std::invalid_argument("weighted action needs xi != 0");
  MonicPoint out = p;
  Rational scale = 1;
  for (auto& qj : out.q) {
    scale *= xi;
    qj *= scale;
  }
  return out;
}

/// The same action on a polynomial in q1..qn. xi is a polynomial whose
/// universe contains every variable of p.
inline MPoly weighted_action(const MPoly& p, int n, const MPoly& xi) {
  const RingPtr ring = xi.ring();
  if (!ring) throw std::invalid_argument("xi must carry a variable universe");
  MPoly out = embed(p, ring);
  for (int j = 1; j <= n; ++j) {
    if (!ring->contains(q_name(j))) continue;
    out = substitute(out, q_name(j), pow(xi, static_cast<unsigned long>(j)) * MPoly::variable(ring, q_name(j)));
  }
  return out;
}

}  // namespace hitchin
