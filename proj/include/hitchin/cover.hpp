#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hitchin/parse.hpp"
#include "hitchin/residue.hpp"
#include "hitchin/upoly.hpp"

namespace hitchin {

/// W vanishes identically: the spectral curve is non-reduced.
struct ZeroDiscriminantError : std::domain_error {
  using std::domain_error::domain_error;
};

/// F(t, z) = t^n + q1(z) t^(n-1) + ... + qn(z) on one affine chart.
struct SpectralFamily {
  int n = 0;
  std::vector<QPoly> coeffs;          // q1..qn as polynomials in z
  std::optional<Integer> base_genus;  // bookkeeping only

  // Coefficients of F as a polynomial in t, lowest degree first.
  std::vector<QPoly> t_coefficients() const {
    std::vector<QPoly> c(static_cast<std::size_t>(n) + 1);
    c[static_cast<std::size_t>(n)] = QPoly::constant(Rational(1));
    for (int j = 1; j <= n; ++j) c[static_cast<std::size_t>(n - j)] = coeffs[static_cast<std::size_t>(j - 1)];
    return c;
  }
};

inline SpectralFamily make_family(std::vector<QPoly> coeffs, std::optional<Integer> g = std::nullopt) {
  if (coeffs.empty()) throw std::invalid_argument("family needs n >= 1 coefficients");
  if (g && *g < 0) throw std::invalid_argument("base genus must be non-negative");
  SpectralFamily f;
  f.n = static_cast<int>(coeffs.size());
  f.coeffs = std::move(coeffs);
  f.base_genus = std::move(g);
  return f;
}

/// Parses q1..qn from text in the polynomial grammar; only z may occur.
inline SpectralFamily parse_family(const std::vector<std::string>& coeffs, std::optional<Integer> g = std::nullopt) {
  const RingPtr zring = make_ring({"z"});
  std::vector<QPoly> qs;
  for (const auto& text : coeffs) qs.push_back(to_qpoly(parse_poly(text, zring), "z"));
  return make_family(std::move(qs), std::move(g));
}

/// Builds a family from its factorization into monic pieces in t, each
/// given by its t-coefficients (lowest first).
inline SpectralFamily family_from_factors(const std::vector<std::vector<QPoly>>& factors) {
  DensePoly<QPoly> acc = DensePoly<QPoly>::constant(QPoly::constant(Rational(1)));
  for (const auto& f : factors) acc = acc * DensePoly<QPoly>(f);
  if (acc.degree() < 1 || !(acc.lc() == QPoly::constant(Rational(1)))) throw std::invalid_argument("factors must be monic in t");
  std::vector<QPoly> qs;
  for (int j = 1; j <= acc.degree(); ++j) qs.push_back(acc.coeff(acc.degree() - j));
  return make_family(std::move(qs));
}

inline RingPtr family_ring() { return make_ring({"t", "z"}); }

inline UPoly family_upoly(const SpectralFamily& fam) {
  RingPtr ring = family_ring();
  std::vector<MPoly> c;
  for (const auto& q : fam.t_coefficients()) c.push_back(from_qpoly(q, ring, "z"));
  return make_upoly(ring, "t", DensePoly<MPoly>(std::move(c)));
}

inline std::string to_string(const SpectralFamily& fam) { return to_string(family_upoly(fam)); }

/// W(z) = Discr_t F(t, z).
inline QPoly discriminant_family(const SpectralFamily& fam) {
  if (fam.n < 1 || static_cast<int>(fam.coeffs.size()) != fam.n) throw std::invalid_argument("malformed family");
  return to_qpoly(discriminant(family_upoly(fam)), "z");
}

/// Number of zeros of the global N-differential W, N = n(n-1), on a base
/// curve of genus g: N(2g - 2).
inline Integer expected_zero_count(const Integer& n, const Integer& g) { return 2 * n * (n - 1) * (g - 1); }

struct LocusFactor {
  QPoly factor;  // monic, squarefree
  int multiplicity = 0;
};

inline std::vector<LocusFactor> branch_locus_of(const QPoly& w) {
  if (w.is_zero()) throw ZeroDiscriminantError("discriminant vanishes identically; the spectral curve is non-reduced");
  std::vector<LocusFactor> out;
  for (auto& [f, k] : yun_squarefree(w)) out.push_back({f, k});
  return out;
}

inline std::vector<LocusFactor> branch_locus(const SpectralFamily& fam) { return branch_locus_of(discriminant_family(fam)); }

// ---------------------------------------------------------------------------
// Classification of a zero of W.

enum class BranchTag { Simple, Boundary, Maxwell, Caustic, Degenerate };

inline const char* to_string(BranchTag t) {
  switch (t) {
    case BranchTag::Simple: return "Simple";
    case BranchTag::Boundary: return "Boundary";
    case BranchTag::Maxwell: return "Maxwell";
    case BranchTag::Caustic: return "Caustic";
    case BranchTag::Degenerate: return "Degenerate";
  }
  return "?";
}

/// What holds at every root of the locus polynomial.
struct LocalType {
  int w_multiplicity = 0;
  BranchTag tag = BranchTag::Simple;
  std::vector<int> profile;  // descending, sums to n
  // Elimination predicates over the residue field.
  bool triple_root = false;       // gcd(F, F_t, F_tt) nontrivial
  bool two_double_roots = false;  // gcd(F, F_t) squarefree of degree >= 2
  bool singular = false;          // F, F_t, F_z share a zero
  bool non_nodal = false;         // singular with degenerate Hessian

  friend bool operator==(const LocalType& a, const LocalType& b) {
    return a.w_multiplicity == b.w_multiplicity && a.tag == b.tag && a.profile == b.profile &&
           a.triple_root == b.triple_root && a.two_double_roots == b.two_double_roots && a.singular == b.singular &&
           a.non_nodal == b.non_nodal;
  }
};

struct BranchPointRecord {
  QPoly locus;                  // monic squarefree m(z)
  std::optional<Rational> point;  // the root when m is linear
  LocalType local;
};

namespace detail {

using KPoly = DensePoly<Residue>;

inline KPoly reduce_t_poly(const std::vector<QPoly>& t_coeffs, const std::shared_ptr<const QPoly>& m) {
  std::vector<Residue> c;
  for (const auto& q : t_coeffs) c.emplace_back(m, q);
  return KPoly(std::move(c));
}

inline std::vector<QPoly> z_derivative(const std::vector<QPoly>& t_coeffs) {
  std::vector<QPoly> out;
  for (const auto& q : t_coeffs) out.push_back(q.derivative());
  return out;
}

// Order of vanishing of w along m: the first derivative not vanishing there.
inline int vanishing_order(const QPoly& w, const std::shared_ptr<const QPoly>& m) {
  QPoly d = w;
  for (int j = 0; !d.is_zero(); ++j) {
    if (!is_zero(Residue(m, d))) return j;
    d = d.derivative();
  }
  throw ZeroDiscriminantError("discriminant vanishes identically; the spectral curve is non-reduced");
}

inline std::vector<int> profile_over(const KPoly& f) {
  std::vector<int> out;
  for (const auto& [a, k] : yun_squarefree(f))
    for (int i = 0; i < a.degree(); ++i) out.push_back(k);
  std::sort(out.rbegin(), out.rend());
  return out;
}

inline LocalType local_type(const SpectralFamily& fam, const QPoly& w, const QPoly& modulus) {
  auto m = std::make_shared<const QPoly>(modulus);
  LocalType out;
  out.w_multiplicity = vanishing_order(w, m);
  if (out.w_multiplicity == 0) throw std::invalid_argument("locus is not a zero of the discriminant");
  const auto tc = fam.t_coefficients();
  KPoly F = reduce_t_poly(tc, m);
  KPoly Ft = F.derivative();
  KPoly Ftt = Ft.derivative();
  out.profile = profile_over(F);

  KPoly G = field_gcd(F, Ft);
  out.triple_root = G.degree() >= 1 && field_gcd(G, Ftt).degree() >= 1;
  out.two_double_roots = G.degree() >= 2 && field_gcd(G, G.derivative()).degree() == 0;
  if (G.degree() == 1) {
    Residue v0 = -G.coeff(0);
    const auto dz = z_derivative(tc);
    KPoly Fz = reduce_t_poly(dz, m);
    out.singular = is_zero(Fz.evaluate(v0));
    if (out.singular) {
      Residue htt = Ftt.evaluate(v0);
      Residue hzz = reduce_t_poly(z_derivative(dz), m).evaluate(v0);
      Residue htz = Fz.derivative().evaluate(v0);
      out.non_nodal = is_zero(htt * hzz - htz * htz);
    }
  }

  if (out.w_multiplicity == 1) {
    out.tag = BranchTag::Simple;
  } else if (out.w_multiplicity == 2) {
    bool boundary = out.singular && !out.non_nodal && !out.triple_root;
    int fired = int(out.triple_root) + int(out.two_double_roots) + int(boundary);
    if (fired != 1)
      out.tag = BranchTag::Degenerate;
    else if (out.triple_root)
      out.tag = BranchTag::Caustic;
    else if (out.two_double_roots)
      out.tag = BranchTag::Maxwell;
    else
      out.tag = BranchTag::Boundary;
  } else {
    out.tag = BranchTag::Degenerate;
  }
  return out;
}

inline BranchPointRecord make_record(QPoly locus, LocalType local) {
  BranchPointRecord r{std::move(locus), std::nullopt, std::move(local)};
  if (r.locus.degree() == 1) r.point = -r.locus.coeff(0) / r.locus.coeff(1);
  return r;
}

}  // namespace detail

/// Classification over Q[z]/(m) for squarefree m, one record per class of
/// roots that behave alike.
inline std::vector<BranchPointRecord> classify_branch_point(const SpectralFamily& fam, const QPoly& modulus) {
  if (!is_squarefree(modulus)) throw std::invalid_argument("locus polynomial must be squarefree of degree >= 1");
  QPoly w = discriminant_family(fam);
  if (w.is_zero()) throw ZeroDiscriminantError("discriminant vanishes identically; the spectral curve is non-reduced");
  std::vector<BranchPointRecord> out;
  for (auto& [m, local] : split_evaluate(modulus, [&](const QPoly& m) { return detail::local_type(fam, w, m); }))
    out.push_back(detail::make_record(m, local));
  return out;
}

inline BranchPointRecord classify_branch_point(const SpectralFamily& fam, const Rational& z0) {
  return classify_branch_point(fam, QPoly::linear_root(z0)).front();
}

/// Multiset of t-root multiplicities of F(., z0), descending.
inline std::vector<int> ramification_profile(const SpectralFamily& fam, const Rational& z0) {
  auto m = std::make_shared<const QPoly>(QPoly::linear_root(z0));
  return detail::profile_over(detail::reduce_t_poly(fam.t_coefficients(), m));
}

inline std::vector<std::pair<QPoly, std::vector<int>>> ramification_profile(const SpectralFamily& fam, const QPoly& modulus) {
  if (!is_squarefree(modulus)) throw std::invalid_argument("locus polynomial must be squarefree of degree >= 1");
  return split_evaluate(modulus, [&](const QPoly& m) {
    return detail::profile_over(detail::reduce_t_poly(fam.t_coefficients(), std::make_shared<const QPoly>(m)));
  });
}

/// Every multiple zero of W, classified; sorted by locus.
inline std::vector<BranchPointRecord> classify_family(const SpectralFamily& fam) {
  std::vector<BranchPointRecord> out;
  for (const auto& lf : branch_locus(fam)) {
    auto recs = classify_branch_point(fam, lf.factor);
    out.insert(out.end(), recs.begin(), recs.end());
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return qpoly_less(a.locus, b.locus); });
  return out;
}

/// Criteria after moving a rational double root v0 of F(., z0) to t = 0:
/// with G(t, z) = F(t + v0, z) = sum g_k(z) t^k, the point is a boundary
/// point iff g_0 has a double zero at z0, caustic iff g_2(z0) = 0, and
/// Maxwell iff G(t, z0) / t^2 has a multiple root.
struct ShiftCriteria {
  bool boundary = false;
  bool caustic = false;
  bool maxwell = false;
};

inline ShiftCriteria shift_criteria(const SpectralFamily& fam, const Rational& z0, const Rational& v0) {
  DensePoly<QPoly> F(fam.t_coefficients());
  DensePoly<QPoly> shifted = F.compose(DensePoly<QPoly>({QPoly::constant(v0), QPoly::constant(Rational(1))}));
  QPoly g0 = shifted.coeff(0), g1 = shifted.coeff(1);
  if (g0.evaluate(z0) != 0 || g1.evaluate(z0) != 0) throw std::invalid_argument("v0 is not a double root over z0");
  ShiftCriteria c;
  c.boundary = g0.derivative().evaluate(z0) == 0;
  c.caustic = shifted.coeff(2).evaluate(z0) == 0;
  std::vector<Rational> rest;
  for (int k = 2; k <= shifted.degree(); ++k) rest.push_back(shifted.coeff(k).evaluate(z0));
  QPoly lower(std::move(rest));
  c.maxwell = lower.degree() >= 2 && field_gcd(lower, lower.derivative()).degree() >= 1;
  return c;
}

// ---------------------------------------------------------------------------
// Genus bookkeeping.

/// Genus of an n-sheeted cover of a genus-g curve with total branching b:
/// n(g - 1) + 1 + b/2.
inline Integer riemann_hurwitz(const Integer& n, const Integer& g, const Integer& b) {
  if (n < 1) throw std::invalid_argument("sheet count must be positive");
  if (g < 0) throw std::invalid_argument("genus must be non-negative");
  if (b < 0) throw std::invalid_argument("branching number must be non-negative");
  if (mpz_odd_p(b.get_mpz_t())) throw std::invalid_argument("branching number must be even");
  return n * (g - 1) + 1 + b / 2;
}

/// Genus of the spectral curve under simple branching: n^2 (g - 1) + 1.
inline Integer spectral_genus(const Integer& n, const Integer& g) {
  if (g < 1) throw std::invalid_argument("spectral genus needs base genus >= 1");
  return riemann_hurwitz(n, g, expected_zero_count(n, g));
}

// ---------------------------------------------------------------------------
// Audit of the orders of W at the classified points.

struct MultiplicityAudit {
  std::vector<BranchPointRecord> records;    // Boundary, Maxwell, Caustic
  std::vector<BranchPointRecord> degenerate;
  std::vector<std::string> failures;
  // Points over the algebraic closure, per stratum.
  int boundary_points = 0, maxwell_points = 0, caustic_points = 0, simple_points = 0;
  int degree_w = 0;
  int order_sum = 0;  // sum over zeros of ord(W), counted over the closure
  std::optional<Integer> expected_zeros;

  bool ok() const { return failures.empty(); }
};

inline std::vector<int> expected_profile(BranchTag tag, int n) {
  std::vector<int> p;
  switch (tag) {
    case BranchTag::Simple:
    case BranchTag::Boundary: p = {2}; break;
    case BranchTag::Maxwell: p = {2, 2}; break;
    case BranchTag::Caustic: p = {3}; break;
    case BranchTag::Degenerate: return {};
  }
  int used = 0;
  for (int k : p) used += k;
  for (; used < n; ++used) p.push_back(1);
  return p;
}

inline MultiplicityAudit multiplicity_audit(const SpectralFamily& fam) {
  MultiplicityAudit a;
  QPoly w = discriminant_family(fam);
  a.degree_w = w.degree();
  if (fam.base_genus) a.expected_zeros = expected_zero_count(fam.n, *fam.base_genus);
  const auto locus = branch_locus_of(w);
  for (const auto& lf : locus) {
    for (auto& r : classify_branch_point(fam, lf.factor)) {
      const int deg = r.locus.degree();
      a.order_sum += deg * r.local.w_multiplicity;
      if (r.local.w_multiplicity != lf.multiplicity)
        a.failures.push_back("order of W along " + to_string(r.locus, "z") + " disagrees with its squarefree multiplicity");
      auto want = expected_profile(r.local.tag, fam.n);
      if (!want.empty() && want != r.local.profile)
        a.failures.push_back(std::string(to_string(r.local.tag)) + " point " + to_string(r.locus, "z") + " has an incoherent profile");
      switch (r.local.tag) {
        case BranchTag::Simple: a.simple_points += deg; break;
        case BranchTag::Boundary: a.boundary_points += deg; break;
        case BranchTag::Maxwell: a.maxwell_points += deg; break;
        case BranchTag::Caustic: a.caustic_points += deg; break;
        case BranchTag::Degenerate: a.degenerate.push_back(r); continue;
      }
      if (r.local.tag != BranchTag::Simple) {
        if (r.local.w_multiplicity != 2)
          a.failures.push_back(std::string(to_string(r.local.tag)) + " point " + to_string(r.locus, "z") + " where W does not vanish to order 2");
        a.records.push_back(std::move(r));
      }
    }
  }
  if (a.order_sum != a.degree_w) a.failures.push_back("orders of W do not add up to deg W");
  return a;
}

}  // namespace hitchin
