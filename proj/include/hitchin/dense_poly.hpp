#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "hitchin/mpoly.hpp"
#include "hitchin/rational.hpp"

namespace hitchin {

namespace detail {
template <class R>
bool coefficient_is_zero(const R& r) {
  return is_zero(r);
}
}  // namespace detail

/// Dense univariate polynomial over a coefficient ring R; coeffs()[k]
/// multiplies x^k. The coefficient list never ends in a zero, so the zero
/// polynomial has an empty list and degree -1.
///
/// R needs R(int), ring operators, `is_zero(R)` and `pow(R, unsigned long)`.
/// Field algorithms below additionally need `inverse(R)`; pseudo-remainder
/// based ones need `exact_quotient(R, R)`.
template <class R>
class DensePoly {
 public:
  DensePoly() = default;
  explicit DensePoly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }
  // Integer constants, so that DensePoly can itself serve as a coefficient ring.
  template <class I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
  explicit DensePoly(I c) : c_{R(c)} { trim(); }

  static DensePoly constant(R c) { return DensePoly(std::vector<R>{std::move(c)}); }
  static DensePoly monomial(R c, int k) {
    std::vector<R> v(static_cast<std::size_t>(k) + 1, R(0));
    v[static_cast<std::size_t>(k)] = std::move(c);
    return DensePoly(std::move(v));
  }
  // x - a
  static DensePoly linear_root(const R& a) { return DensePoly(std::vector<R>{-a, R(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<R>& coeffs() const { return c_; }
  R coeff(int k) const { return k >= 0 && k <= degree() ? c_[static_cast<std::size_t>(k)] : R(0); }
  const R& lc() const {
    if (c_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
    return c_.back();
  }

  DensePoly operator-() const {
    DensePoly p = *this;
    for (auto& c : p.c_) c = -c;
    return p;
  }

  friend DensePoly operator+(const DensePoly& a, const DensePoly& b) { return combine(a, b, false); }
  friend DensePoly operator-(const DensePoly& a, const DensePoly& b) { return combine(a, b, true); }

  friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<R> out(a.c_.size() + b.c_.size() - 1, R(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::coefficient_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return DensePoly(std::move(out));
  }

  friend DensePoly operator*(const DensePoly& a, const R& s) {
    std::vector<R> out;
    out.reserve(a.c_.size());
    for (const auto& c : a.c_) out.push_back(c * s);
    return DensePoly(std::move(out));
  }
  friend DensePoly operator*(const R& s, const DensePoly& a) { return a * s; }

  DensePoly& operator+=(const DensePoly& o) { return *this = *this + o; }
  DensePoly& operator-=(const DensePoly& o) { return *this = *this - o; }
  DensePoly& operator*=(const DensePoly& o) { return *this = *this * o; }

  friend bool operator==(const DensePoly& a, const DensePoly& b) { return (a - b).is_zero(); }
  friend bool is_zero(const DensePoly& p) { return p.is_zero(); }

  DensePoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<R> out;
    out.reserve(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) out.push_back(c_[k] * R(static_cast<long>(k)));
    return DensePoly(std::move(out));
  }

  R evaluate(const R& x) const {
    R acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  // this(q(x))
  DensePoly compose(const DensePoly& q) const {
    DensePoly acc;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * q + DensePoly::constant(c_[k]);
    return acc;
  }

  template <class F>
  auto map(F&& f) const {
    using S = decltype(f(std::declval<const R&>()));
    std::vector<S> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(f(c));
    return DensePoly<S>(std::move(out));
  }

 private:
  void trim() {
    while (!c_.empty() && detail::coefficient_is_zero(c_.back())) c_.pop_back();
  }

  static DensePoly combine(const DensePoly& a, const DensePoly& b, bool subtract) {
    std::vector<R> out(std::max(a.c_.size(), b.c_.size()), R(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) out[k] = a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) {
      if (subtract)
        out[k] -= b.c_[k];
      else
        out[k] += b.c_[k];
    }
    return DensePoly(std::move(out));
  }

  std::vector<R> c_;
};

// ---------------------------------------------------------------------------
// Algorithms over a field of coefficients.

template <class R>
std::pair<DensePoly<R>, DensePoly<R>> divmod(const DensePoly<R>& a, const DensePoly<R>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const R inv = inverse(b.lc());
  std::vector<R> rem = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {DensePoly<R>{}, a};
  std::vector<R> quo(static_cast<std::size_t>(a.degree() - db + 1), R(0));
  for (int k = a.degree(); k >= db; --k) {
    R c = rem[static_cast<std::size_t>(k)] * inv;
    quo[static_cast<std::size_t>(k - db)] = c;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {DensePoly<R>(std::move(quo)), DensePoly<R>(std::move(rem))};
}

template <class R>
DensePoly<R> monic(const DensePoly<R>& p) {
  if (p.is_zero()) return p;
  return p * inverse(p.lc());
}

// Euclid; the result is monic (or zero when both inputs are zero).
template <class R>
DensePoly<R> field_gcd(DensePoly<R> a, DensePoly<R> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

template <class R>
DensePoly<R> field_exact_div(const DensePoly<R>& a, const DensePoly<R>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw NotDivisible("univariate division is not exact");
  return q;
}

/// Yun's algorithm: returns (a_i, i) with f = lc(f) * prod a_i^i, the a_i
/// monic, squarefree and pairwise coprime. Factors equal to 1 are dropped.
template <class R>
std::vector<std::pair<DensePoly<R>, int>> yun_squarefree(const DensePoly<R>& f) {
  if (f.is_zero()) throw std::domain_error("squarefree decomposition of zero");
  std::vector<std::pair<DensePoly<R>, int>> out;
  if (f.degree() == 0) return out;
  DensePoly<R> fm = monic(f);
  DensePoly<R> d = fm.derivative();
  DensePoly<R> a = field_gcd(fm, d);
  DensePoly<R> b = field_exact_div(fm, a);
  DensePoly<R> c = field_exact_div(d, a);
  DensePoly<R> e = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    DensePoly<R> ai = field_gcd(b, e);
    b = field_exact_div(b, ai);
    c = field_exact_div(e, ai);
    e = c - b.derivative();
    if (ai.degree() > 0) out.emplace_back(std::move(ai), i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Algorithms over an integral domain with exact division.

/// lc(b)^(deg a - deg b + 1) * a  mod  b
template <class R>
DensePoly<R> pseudo_remainder(const DensePoly<R>& a, const DensePoly<R>& b) {
  if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero");
  if (a.degree() < b.degree()) return a;
  const R& lb = b.lc();
  int e = a.degree() - b.degree() + 1;
  DensePoly<R> r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    DensePoly<R> t = DensePoly<R>::monomial(r.lc(), r.degree() - b.degree());
    r = r * lb - t * b;
    --e;
  }
  return e > 0 ? r * pow(lb, static_cast<unsigned long>(e)) : r;
}

/// One normal PRS step: prem(A, C) / lc(A)^2 for deg A = deg C + 1, with the
/// division by lc(A) split in two so the squared multiplier of the plain
/// pseudo-remainder never materializes. Writing A = a t^(e+1) + A' and
/// C = c t^e + C', prem(A, C) = c X - a Y with
///   X = c A' - A'_e C,  Y = c t C' - C'_(e-1) C.
/// Empty when a does not divide X exactly; callers fall back to prem.
template <class R>
std::optional<DensePoly<R>> normal_prs_step(const DensePoly<R>& A, const DensePoly<R>& C) {
  const int e = C.degree();
  const R& a = A.lc();
  const R& c = C.lc();
  DensePoly<R> A_tail(std::vector<R>(A.coeffs().begin(), A.coeffs().end() - 1));
  DensePoly<R> C_tail(std::vector<R>(C.coeffs().begin(), C.coeffs().end() - 1));
  DensePoly<R> X = A_tail * c - C * A_tail.coeff(e);
  DensePoly<R> Y = DensePoly<R>::monomial(c, 1) * C_tail - C * C_tail.coeff(e - 1);
  DensePoly<R> X_over_a;
  try {
    X_over_a = X.map([&](const R& x) { return exact_quotient(x, a); });
  } catch (const NotDivisible&) {
    return std::nullopt;
  }
  return (X_over_a * c - Y).map([&](const R& x) { return exact_quotient(x, a); });
}

/// Resultant by the subresultant polynomial remainder sequence. Convention:
/// Res(a, b) = lc(a)^deg(b) * prod over roots x of a of b(x), which equals
/// the Sylvester determinant with the rows of a on top.
template <class R>
R subresultant_resultant(DensePoly<R> a, DensePoly<R> b) {
  if (a.is_zero() || b.is_zero()) throw std::domain_error("resultant of a zero polynomial");
  if (a.degree() == 0) return pow(a.lc(), static_cast<unsigned long>(b.degree()));
  if (b.degree() == 0) return pow(b.lc(), static_cast<unsigned long>(a.degree()));
  bool negate = false;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if ((a.degree() & 1) && (b.degree() & 1)) negate = true;
  }
  R g(1), h(1);
  while (true) {
    int delta = a.degree() - b.degree();
    if ((a.degree() & 1) && (b.degree() & 1)) negate = !negate;
    // In the normal case g = h = lc(a), so the divisor below is lc(a)^2.
    std::optional<DensePoly<R>> reduced;
    if (delta == 1 && g == a.lc() && h == a.lc()) reduced = normal_prs_step(a, b);
    DensePoly<R> r = reduced ? std::move(*reduced) : pseudo_remainder(a, b);
    a = std::move(b);
    if (r.is_zero()) return R(0);
    if (reduced) {
      b = std::move(r);
    } else {
      R divisor = g * pow(h, static_cast<unsigned long>(delta));
      b = r.map([&](const R& c) { return exact_quotient(c, divisor); });
    }
    g = a.lc();
    if (delta == 1)
      h = g;
    else if (delta > 1)
      h = exact_quotient(pow(g, static_cast<unsigned long>(delta)), pow(h, static_cast<unsigned long>(delta - 1)));
    if (b.degree() == 0) {
      unsigned long da = static_cast<unsigned long>(a.degree());
      R res = exact_quotient(pow(b.lc(), da), pow(h, da - 1));
      return negate ? R(-res) : res;
    }
  }
}

/// Determinant of the Sylvester matrix by fraction-free (Bareiss)
/// elimination. Independent of the subresultant route; used to cross-check it.
template <class R>
R sylvester_resultant(const DensePoly<R>& a, const DensePoly<R>& b) {
  if (a.is_zero() || b.is_zero()) throw std::domain_error("resultant of a zero polynomial");
  int m = a.degree(), n = b.degree();
  int size = m + n;
  if (size == 0) return R(1);
  std::vector<std::vector<R>> mat(static_cast<std::size_t>(size), std::vector<R>(static_cast<std::size_t>(size), R(0)));
  for (int row = 0; row < n; ++row)
    for (int k = 0; k <= m; ++k) mat[row][row + k] = a.coeff(m - k);
  for (int row = 0; row < m; ++row)
    for (int k = 0; k <= n; ++k) mat[n + row][row + k] = b.coeff(n - k);
  bool negate = false;
  R prev(1);
  for (int k = 0; k < size - 1; ++k) {
    if (is_zero(mat[k][k])) {
      int swap_row = -1;
      for (int i = k + 1; i < size; ++i)
        if (!is_zero(mat[i][k])) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return R(0);
      std::swap(mat[k], mat[swap_row]);
      negate = !negate;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j)
        mat[i][j] = exact_quotient(R(mat[k][k] * mat[i][j] - mat[i][k] * mat[k][j]), prev);
      mat[i][k] = R(0);
    }
    prev = mat[k][k];
  }
  R det = mat[size - 1][size - 1];
  return negate ? R(-det) : det;
}

/// Last nonzero element of the subresultant PRS of a and b: a gcd over the
/// fraction field, up to a factor from the coefficient ring.
template <class R>
DensePoly<R> subresultant_gcd(DensePoly<R> a, DensePoly<R> b) {
  if (a.degree() < b.degree()) std::swap(a, b);
  if (b.is_zero()) return a;
  R g(1), h(1);
  while (true) {
    int delta = a.degree() - b.degree();
    DensePoly<R> r = pseudo_remainder(a, b);
    if (r.is_zero()) return b;
    if (r.degree() == 0) return DensePoly<R>::constant(R(1));
    a = std::move(b);
    R divisor = g * pow(h, static_cast<unsigned long>(delta));
    b = r.map([&](const R& c) { return exact_quotient(c, divisor); });
    g = a.lc();
    if (delta == 1)
      h = g;
    else if (delta > 1)
      h = exact_quotient(pow(g, static_cast<unsigned long>(delta)), pow(h, static_cast<unsigned long>(delta - 1)));
  }
}

using QPoly = DensePoly<Rational>;

}  // namespace hitchin
