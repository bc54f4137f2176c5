#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hitchin/dense_poly.hpp"
#include "hitchin/rational.hpp"

namespace hitchin {

// Canonical order on univariate polynomials: degree, then coefficients from
// the top down.
inline bool qpoly_less(const QPoly& a, const QPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int k = a.degree(); k >= 0; --k)
    if (a.coeff(k) != b.coeff(k)) return a.coeff(k) < b.coeff(k);
  return false;
}

inline bool is_squarefree(const QPoly& m) { return m.degree() >= 1 && field_gcd(m, m.derivative()).degree() == 0; }

/// Thrown when an element of Q[z]/(m) turns out to be a zero divisor;
/// `factor` is a proper monic factor of m along which the caller splits.
struct ZeroDivisorSplit : std::runtime_error {
  explicit ZeroDivisorSplit(QPoly f) : std::runtime_error("zero divisor in residue ring"), factor(std::move(f)) {}
  QPoly factor;
};

/// Element of Q[z]/(m) for squarefree m. A residue without a modulus is a
/// plain rational constant and adopts the modulus of the other operand.
class Residue {
 public:
  Residue() : value_(QPoly()) {}
  Residue(int c) : value_(QPoly::constant(Rational(c))) {}
  Residue(long c) : value_(QPoly::constant(Rational(c))) {}
  Residue(const Rational& c) : value_(QPoly::constant(c)) {}
  Residue(std::shared_ptr<const QPoly> modulus, const QPoly& value) : mod_(std::move(modulus)), value_(value) { reduce(); }

  const QPoly& value() const { return value_; }
  const std::shared_ptr<const QPoly>& modulus() const { return mod_; }

  Residue operator-() const { return {mod_, -value_, Raw{}}; }
  friend Residue operator+(const Residue& a, const Residue& b) { return {common(a, b), a.value_ + b.value_, Raw{}}; }
  friend Residue operator-(const Residue& a, const Residue& b) { return {common(a, b), a.value_ - b.value_, Raw{}}; }
  friend Residue operator*(const Residue& a, const Residue& b) {
    auto m = common(a, b);
    return m ? Residue(m, a.value_ * b.value_) : Residue(nullptr, a.value_ * b.value_, Raw{});
  }
  Residue& operator+=(const Residue& o) { return *this = *this + o; }
  Residue& operator-=(const Residue& o) { return *this = *this - o; }
  Residue& operator*=(const Residue& o) { return *this = *this * o; }

  /// Zero on every component of m, nonzero on every component, or a split.
  friend bool is_zero(const Residue& r) {
    if (r.value_.is_zero()) return true;
    if (!r.mod_ || r.value_.degree() == 0) return false;
    QPoly g = field_gcd(*r.mod_, r.value_);
    if (g.degree() == 0) return false;
    throw ZeroDivisorSplit(std::move(g));
  }

  friend Residue inverse(const Residue& r) {
    if (r.value_.is_zero()) throw std::domain_error("inverse of zero residue");
    if (!r.mod_ || r.value_.degree() == 0) {
      Rational c = hitchin::inverse(r.value_.coeff(0));
      return {r.mod_, QPoly::constant(c), Raw{}};
    }
    // Extended Euclid on (m, v): track s with s*v = current remainder mod m.
    QPoly a = *r.mod_, b = r.value_;
    QPoly sa, sb = QPoly::constant(Rational(1));
    while (b.degree() > 0) {
      auto [q, rem] = divmod(a, b);
      QPoly sn = sa - q * sb;
      a = std::move(b);
      b = std::move(rem);
      sa = std::move(sb);
      sb = std::move(sn);
    }
    if (b.is_zero()) throw ZeroDivisorSplit(monic(a));
    return Residue(r.mod_, sb * hitchin::inverse(b.coeff(0)));
  }

  friend Residue pow(const Residue& base, unsigned long e) {
    Residue out(1), b = base;
    while (e) {
      if (e & 1) out *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return out;
  }

  friend bool operator==(const Residue& a, const Residue& b) { return is_zero(a - b); }

 private:
  struct Raw {};
  Residue(std::shared_ptr<const QPoly> m, QPoly v, Raw) : mod_(std::move(m)), value_(std::move(v)) {}

  static std::shared_ptr<const QPoly> common(const Residue& a, const Residue& b) {
    if (!a.mod_) return b.mod_;
    if (!b.mod_ || a.mod_ == b.mod_ || *a.mod_ == *b.mod_) return a.mod_;
    throw std::invalid_argument("residues over different moduli");
  }

  void reduce() {
    if (mod_ && value_.degree() >= mod_->degree()) value_ = divmod(value_, *mod_).second;
  }

  std::shared_ptr<const QPoly> mod_;
  QPoly value_;
};

inline Residue exact_quotient(const Residue& a, const Residue& b) { return a * inverse(b); }

inline std::shared_ptr<const QPoly> make_modulus(const QPoly& m) {
  if (!is_squarefree(m)) throw std::invalid_argument("modulus must be squarefree of degree >= 1");
  return std::make_shared<const QPoly>(monic(m));
}

/// Runs f(m) under dynamic evaluation. Whenever f hits a zero divisor the
/// modulus splits and f is rerun on both factors. Branches with equal results
/// are merged (moduli multiplied) and returned sorted by modulus, so the
/// outcome does not depend on the order in which splits occurred.
template <class F>
auto split_evaluate(const QPoly& m, F&& f) {
  using T = decltype(f(m));
  std::vector<QPoly> work{monic(m)};
  std::vector<std::pair<QPoly, T>> done;
  while (!work.empty()) {
    QPoly cur = std::move(work.back());
    work.pop_back();
    try {
      T value = f(cur);
      auto same = std::find_if(done.begin(), done.end(), [&](const auto& d) { return d.second == value; });
      if (same != done.end())
        same->first = same->first * cur;
      else
        done.emplace_back(std::move(cur), std::move(value));
    } catch (const ZeroDivisorSplit& s) {
      if (s.factor.degree() < 1 || s.factor.degree() >= cur.degree()) throw;
      work.push_back(field_exact_div(cur, s.factor));
      work.push_back(s.factor);
    }
  }
  std::sort(done.begin(), done.end(), [](const auto& x, const auto& y) { return qpoly_less(x.first, y.first); });
  return done;
}

}  // namespace hitchin
