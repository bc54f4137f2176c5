#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hitchin/rational.hpp"

namespace hitchin {

struct UniverseMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotDivisible : std::domain_error {
  using std::domain_error::domain_error;
};

/// Ordered list of variable names a polynomial lives over. Position in the
/// list fixes the variable order used by the graded-lexicographic ordering:
/// earlier names are larger.
class Ring {
 public:
  static constexpr std::size_t kMaxVars = 16;

  explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > kMaxVars)
      throw std::invalid_argument("variable universe larger than " + std::to_string(kMaxVars));
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw std::invalid_argument("empty variable name");
      for (std::size_t j = 0; j < i; ++j)
        if (names_[i] == names_[j]) throw std::invalid_argument("duplicate variable '" + names_[i] + "'");
    }
  }

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }

  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    throw std::invalid_argument("variable '" + name + "' not in universe");
  }
  bool contains(const std::string& name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
  }

  friend bool operator==(const Ring& a, const Ring& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const Ring>(std::move(names));
}

/// Exponent vector over a ring, dense in the ring's variable order. The total
/// degree is cached because the monomial order compares it first.
struct Monomial {
  std::array<std::uint16_t, Ring::kMaxVars> exp{};
  std::uint32_t degree = 0;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree == b.degree && a.exp == b.exp;
  }

  bool divides(const Monomial& other) const {
    if (degree > other.degree) return false;
    for (std::size_t i = 0; i < Ring::kMaxVars; ++i)
      if (exp[i] > other.exp[i]) return false;
    return true;
  }
};

// Graded lexicographic: total degree first, then the first differing
// exponent in ring order.
inline bool grlex_greater(const Monomial& a, const Monomial& b) {
  if (a.degree != b.degree) return a.degree > b.degree;
  return a.exp > b.exp;
}

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_greater(a, b); }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ull ^ m.degree;
    for (auto e : m.exp) {
      h ^= e;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (std::size_t i = 0; i < Ring::kMaxVars; ++i) {
    std::uint32_t e = std::uint32_t(a.exp[i]) + b.exp[i];
    if (e > 0xFFFF) throw std::overflow_error("monomial exponent overflow");
    out.exp[i] = static_cast<std::uint16_t>(e);
  }
  out.degree = a.degree + b.degree;
  return out;
}

// Requires b.divides(a).
inline Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (std::size_t i = 0; i < Ring::kMaxVars; ++i) out.exp[i] = static_cast<std::uint16_t>(a.exp[i] - b.exp[i]);
  out.degree = a.degree - b.degree;
  return out;
}

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Sparse multivariate polynomial with rational coefficients. Terms are kept
/// sorted in descending graded-lexicographic order with no zero coefficients,
/// so equality is structural. A polynomial without a ring is a constant and
/// combines with any ring.
class MPoly {
 public:
  MPoly() = default;
  MPoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (!hitchin::is_zero(c)) terms_.push_back({Monomial{}, c});
  }
  MPoly(long c) : MPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  MPoly(int c) : MPoly(Rational(c)) {}   // NOLINT(google-explicit-constructor)

  static MPoly constant(RingPtr ring, const Rational& c) {
    MPoly p(c);
    p.ring_ = std::move(ring);
    return p;
  }

  static MPoly variable(RingPtr ring, const std::string& name, unsigned power = 1) {
    MPoly p;
    Monomial m;
    std::size_t i = ring->index_of(name);
    if (power > 0xFFFF) throw std::overflow_error("monomial exponent overflow");
    m.exp[i] = static_cast<std::uint16_t>(power);
    m.degree = power;
    p.ring_ = std::move(ring);
    p.terms_.push_back({m, Rational(1)});
    return p;
  }

  // Canonicalizes arbitrary (unsorted, possibly repeated) terms.
  static MPoly from_terms(RingPtr ring, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return grlex_greater(a.mono, b.mono); });
    MPoly p;
    p.ring_ = std::move(ring);
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coeff += t.coeff;
        if (hitchin::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
      } else if (!hitchin::is_zero(t.coeff)) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  // Terms must already be sorted, distinct and nonzero.
  static MPoly from_sorted_terms(RingPtr ring, std::vector<Term> terms) {
    MPoly p;
    p.ring_ = std::move(ring);
    p.terms_ = std::move(terms);
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree == 0); }
  Rational constant_value() const {
    if (!is_constant()) throw std::domain_error("polynomial is not constant");
    return terms_.empty() ? Rational(0) : terms_[0].coeff;
  }
  const Term& leading_term() const {
    if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
    return terms_.front();
  }
  std::uint32_t total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree; }

  std::uint32_t degree_in(const std::string& name) const {
    if (!ring_ || !ring_->contains(name)) return 0;
    std::size_t i = ring_->index_of(name);
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max<std::uint32_t>(d, t.mono.exp[i]);
    return d;
  }

  MPoly with_ring(RingPtr ring) const {
    MPoly p = *this;
    p.ring_ = std::move(ring);
    return p;
  }

  MPoly operator-() const {
    MPoly p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
  }

  MPoly& operator+=(const MPoly& o) { return *this = add(*this, o, false); }
  MPoly& operator-=(const MPoly& o) { return *this = add(*this, o, true); }
  MPoly& operator*=(const MPoly& o) { return *this = multiply(*this, o); }

  friend MPoly operator+(const MPoly& a, const MPoly& b) { return add(a, b, false); }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return add(a, b, true); }
  friend MPoly operator*(const MPoly& a, const MPoly& b) { return multiply(a, b); }

  friend MPoly operator*(const MPoly& a, const Rational& c) {
    if (hitchin::is_zero(c)) return MPoly::constant(a.ring_, 0);
    MPoly p = a;
    for (auto& t : p.terms_) t.coeff *= c;
    return p;
  }
  friend MPoly operator*(const Rational& c, const MPoly& a) { return a * c; }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (same_universe(a.ring_, b.ring_) || a.is_constant() || b.is_constant()) return a.terms_.size() == b.terms_.size() && equal_terms(a, b);
    return a.named_terms() == b.named_terms();
  }

  // Variable-name keyed view, independent of the ring's variable order.
  std::map<std::map<std::string, unsigned>, Rational> named_terms() const {
    std::map<std::map<std::string, unsigned>, Rational> out;
    for (const auto& t : terms_) {
      std::map<std::string, unsigned> key;
      for (std::size_t i = 0; ring_ && i < ring_->size(); ++i)
        if (t.mono.exp[i]) key[ring_->names()[i]] = t.mono.exp[i];
      out[key] = t.coeff;
    }
    return out;
  }

  static bool same_universe(const RingPtr& a, const RingPtr& b) {
    return a == b || (a && b && *a == *b);
  }

  // Shared ring of two operands; ringless constants adopt the other ring.
  static RingPtr common_ring(const RingPtr& a, const RingPtr& b) {
    if (!a) return b;
    if (!b) return a;
    if (a == b || *a == *b) return a;
    throw UniverseMismatch("mismatched variable universes");
  }

 private:
  static bool equal_terms(const MPoly& a, const MPoly& b) {
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }

  static MPoly add(const MPoly& a, const MPoly& b, bool subtract) {
    MPoly out;
    out.ring_ = common_ring(a.ring_, b.ring_);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && grlex_greater(a.terms_[i].mono, b.terms_[j].mono))) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || grlex_greater(b.terms_[j].mono, a.terms_[i].mono)) {
        out.terms_.push_back(b.terms_[j++]);
        if (subtract) out.terms_.back().coeff = -out.terms_.back().coeff;
      } else {
        Rational c = subtract ? Rational(a.terms_[i].coeff - b.terms_[j].coeff)
                              : Rational(a.terms_[i].coeff + b.terms_[j].coeff);
        if (!hitchin::is_zero(c)) out.terms_.push_back({a.terms_[i].mono, std::move(c)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  bool is_integral() const {
    for (const auto& t : terms_)
      if (t.coeff.get_den() != 1) return false;
    return true;
  }

  // Integer coefficients accumulate with a fused multiply-add and skip the
  // rational normalization; this is the hot loop of every resultant.
  static MPoly multiply_integral(const RingPtr& ring, const MPoly& small, const MPoly& large) {
    std::unordered_map<Monomial, Integer, MonomialHash> acc;
    acc.reserve(large.size() * 2);
    for (const auto& s : small.terms_)
      for (const auto& t : large.terms_) {
        auto it = acc.try_emplace(s.mono * t.mono).first;
        mpz_addmul(it->second.get_mpz_t(), s.coeff.get_num_mpz_t(), t.coeff.get_num_mpz_t());
      }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (sgn(c) != 0) terms.push_back({m, Rational(c)});
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return grlex_greater(x.mono, y.mono); });
    return from_sorted_terms(ring, std::move(terms));
  }

  static MPoly multiply(const MPoly& a, const MPoly& b) {
    RingPtr ring = common_ring(a.ring_, b.ring_);
    if (a.is_zero() || b.is_zero()) return MPoly::constant(ring, 0);
    const MPoly& small = a.size() <= b.size() ? a : b;
    const MPoly& large = a.size() <= b.size() ? b : a;
    if (small.size() == 1) {
      MPoly out;
      out.ring_ = ring;
      out.terms_.reserve(large.size());
      const Term& s = small.terms_[0];
      for (const auto& t : large.terms_) out.terms_.push_back({t.mono * s.mono, t.coeff * s.coeff});
      return out;
    }
    if (small.is_integral() && large.is_integral()) return multiply_integral(ring, small, large);
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(large.size() * 2);
    Rational prod;
    for (const auto& s : small.terms_) {
      for (const auto& t : large.terms_) {
        prod = s.coeff * t.coeff;
        auto [it, inserted] = acc.try_emplace(s.mono * t.mono, prod);
        if (!inserted) it->second += prod;
      }
    }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!hitchin::is_zero(c)) terms.push_back({m, std::move(c)});
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return grlex_greater(x.mono, y.mono); });
    return from_sorted_terms(ring, std::move(terms));
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

inline bool is_zero(const MPoly& p) { return p.is_zero(); }

inline MPoly pow(const MPoly& base, unsigned long e) {
  MPoly result = MPoly::constant(base.ring(), 1);
  MPoly b = base;
  while (e) {
    if (e & 1) result *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return result;
}

/// Re-expresses p over a ring whose variables include all of p's variables.
inline MPoly embed(const MPoly& p, const RingPtr& target) {
  if (!p.ring() || MPoly::same_universe(p.ring(), target)) return p.with_ring(target);
  std::vector<std::size_t> map(p.ring()->size());
  std::vector<bool> used(p.ring()->size(), false);
  for (const auto& t : p.terms())
    for (std::size_t i = 0; i < p.ring()->size(); ++i)
      if (t.mono.exp[i]) used[i] = true;
  for (std::size_t i = 0; i < p.ring()->size(); ++i) {
    if (!used[i]) continue;
    const auto& name = p.ring()->names()[i];
    if (!target->contains(name)) throw UniverseMismatch("variable '" + name + "' missing from target universe");
    map[i] = target->index_of(name);
  }
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < p.ring()->size(); ++i)
      if (t.mono.exp[i]) m.exp[map[i]] = t.mono.exp[i];
    m.degree = t.mono.degree;
    terms.push_back({m, t.coeff});
  }
  return MPoly::from_terms(target, std::move(terms));
}

inline MPoly derivative(const MPoly& p, const std::string& var) {
  if (!p.ring() || !p.ring()->contains(var)) return MPoly::constant(p.ring(), 0);
  std::size_t i = p.ring()->index_of(var);
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    if (t.mono.exp[i] == 0) continue;
    Term d{t.mono, t.coeff * t.mono.exp[i]};
    --d.mono.exp[i];
    --d.mono.degree;
    terms.push_back(std::move(d));
  }
  return MPoly::from_terms(p.ring(), std::move(terms));
}

/// Returns q with p = q * d exactly; throws NotDivisible otherwise.
inline MPoly exact_divide(const MPoly& p, const MPoly& d) {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  RingPtr ring = MPoly::common_ring(p.ring(), d.ring());
  if (d.is_constant()) return p * inverse(d.constant_value());
  const Term& lead = d.leading_term();
  const Rational lead_inv = inverse(lead.coeff);
  if (d.size() == 1) {
    std::vector<Term> q;
    q.reserve(p.size());
    for (const auto& t : p.terms()) {
      if (!lead.mono.divides(t.mono)) throw NotDivisible("polynomial division is not exact");
      q.push_back({t.mono / lead.mono, t.coeff * lead_inv});
    }
    return MPoly::from_sorted_terms(ring, std::move(q));
  }
  std::map<Monomial, Rational, GrlexGreater> rem;
  for (const auto& t : p.terms()) rem.emplace(t.mono, t.coeff);
  std::vector<Term> quotient;
  Rational c;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!lead.mono.divides(top->first)) throw NotDivisible("polynomial division is not exact");
    Monomial qm = top->first / lead.mono;
    c = top->second * lead_inv;
    rem.erase(top);
    for (std::size_t k = 1; k < d.size(); ++k) {
      const Term& t = d.terms()[k];
      Monomial m = t.mono * qm;
      auto [it, inserted] = rem.try_emplace(m);
      it->second -= c * t.coeff;
      if (hitchin::is_zero(it->second)) rem.erase(it);
    }
    quotient.push_back({qm, c});
  }
  return MPoly::from_sorted_terms(ring, std::move(quotient));
}

inline MPoly exact_quotient(const MPoly& p, const MPoly& d) { return exact_divide(p, d); }

/// Splits p = A + B where every monomial of A is divisible by var^k and no
/// monomial of B is.
inline std::pair<MPoly, MPoly> partition_by_divisibility(const MPoly& p, const std::string& var, unsigned k) {
  if (k == 0) throw std::invalid_argument("partition power must be positive");
  if (!p.ring() || !p.ring()->contains(var)) return {MPoly::constant(p.ring(), 0), p};
  std::size_t i = p.ring()->index_of(var);
  std::vector<Term> a, b;
  for (const auto& t : p.terms()) (t.mono.exp[i] >= k ? a : b).push_back(t);
  return {MPoly::from_sorted_terms(p.ring(), std::move(a)), MPoly::from_sorted_terms(p.ring(), std::move(b))};
}

/// Coefficients of p viewed as a polynomial in var: result[k] multiplies var^k.
inline std::vector<MPoly> coefficients_in(const MPoly& p, const std::string& var) {
  if (!p.ring() || !p.ring()->contains(var)) return {p};
  std::size_t i = p.ring()->index_of(var);
  std::vector<std::vector<Term>> buckets(p.degree_in(var) + 1);
  for (const auto& t : p.terms()) {
    Term c = t;
    c.mono.degree -= c.mono.exp[i];
    c.mono.exp[i] = 0;
    buckets[t.mono.exp[i]].push_back(std::move(c));
  }
  std::vector<MPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(MPoly::from_terms(p.ring(), std::move(b)));
  return out;
}

/// Replaces var by expr everywhere in p.
inline MPoly substitute(const MPoly& p, const std::string& var, const MPoly& expr) {
  RingPtr ring = MPoly::common_ring(p.ring(), expr.ring());
  auto coeffs = coefficients_in(p, var);
  MPoly out = MPoly::constant(ring, 0);
  for (std::size_t k = coeffs.size(); k-- > 0;) out = out * expr + coeffs[k];
  return out;
}

inline MPoly evaluate(const MPoly& p, const std::string& var, const Rational& value) {
  return substitute(p, var, MPoly::constant(p.ring(), value));
}

/// Full evaluation; every variable occurring in p must be assigned.
inline Rational evaluate(const MPoly& p, const std::map<std::string, Rational>& values) {
  Rational sum = 0;
  std::vector<const Rational*> slot;
  if (p.ring()) {
    for (const auto& name : p.ring()->names()) {
      auto it = values.find(name);
      slot.push_back(it == values.end() ? nullptr : &it->second);
    }
  }
  for (const auto& t : p.terms()) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < slot.size(); ++i) {
      if (!t.mono.exp[i]) continue;
      if (!slot[i]) throw std::invalid_argument("no value for variable '" + p.ring()->names()[i] + "'");
      v *= pow(*slot[i], t.mono.exp[i]);
    }
    sum += v;
  }
  return sum;
}

}  // namespace hitchin
