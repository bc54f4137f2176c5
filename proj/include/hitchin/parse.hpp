#pragma once

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hitchin/mpoly.hpp"

namespace hitchin {

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

// "q10" sorts after "q9"; names compare by alphabetic stem, then number.
inline bool natural_less(const std::string& a, const std::string& b) {
  auto split = [](const std::string& s) {
    std::size_t k = s.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(s[k - 1]))) --k;
    std::string stem = s.substr(0, k);
    std::string digits = s.substr(k);
    return std::make_pair(stem, digits);
  };
  auto [sa, da] = split(a);
  auto [sb, db] = split(b);
  if (sa != sb) return sa < sb;
  if (da.size() != db.size()) return da.size() < db.size();
  return da < db;
}

struct RawFactor {
  Rational coeff = 1;
  std::vector<std::pair<std::string, unsigned>> powers;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }
  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      fail("expected identifier");
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// term := factor ('*' factor)* ; factor := int ['/' int] | ident ['^' int]
inline RawFactor parse_term(Lexer& lex) {
  RawFactor term;
  do {
    char c = lex.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = lex.digits();
      if (lex.accept('/')) num += "/" + lex.digits();
      term.coeff *= parse_rational(num);
    } else {
      std::string name = lex.identifier();
      unsigned power = 1;
      if (lex.accept('^')) {
        std::string e = lex.digits();
        if (e.size() > 5 || std::stoul(e) > 0xFFFF) lex.fail("exponent too large");
        power = static_cast<unsigned>(std::stoul(e));
      }
      term.powers.emplace_back(std::move(name), power);
    }
  } while (lex.accept('*'));
  return term;
}

inline std::vector<RawFactor> parse_terms(std::string_view text) {
  Lexer lex(text);
  std::vector<RawFactor> terms;
  if (lex.at_end()) lex.fail("empty polynomial");
  bool first = true;
  while (!lex.at_end()) {
    int sign = 1;
    if (lex.accept('+')) {
    } else if (lex.accept('-')) {
      sign = -1;
    } else if (!first) {
      lex.fail("expected '+' or '-'");
    }
    RawFactor t = parse_term(lex);
    if (sign < 0) t.coeff = -t.coeff;
    terms.push_back(std::move(t));
    first = false;
  }
  return terms;
}

inline MPoly assemble(const std::vector<RawFactor>& raw, const RingPtr& ring) {
  std::vector<Term> terms;
  for (const auto& r : raw) {
    Term t{Monomial{}, r.coeff};
    for (const auto& [name, e] : r.powers) {
      if (!ring->contains(name)) throw ParseError("variable '" + name + "' not in universe");
      Monomial m;
      m.exp[ring->index_of(name)] = static_cast<std::uint16_t>(e);
      m.degree = e;
      t.mono = t.mono * m;
    }
    terms.push_back(std::move(t));
  }
  return MPoly::from_terms(ring, std::move(terms));
}

}  // namespace detail

/// Parses over an explicit universe; unknown variables are an error.
inline MPoly parse_poly(std::string_view text, const RingPtr& ring) {
  return detail::assemble(detail::parse_terms(text), ring);
}

/// Parses over the universe of the variables that occur, in natural order.
inline MPoly parse_poly(std::string_view text) {
  auto raw = detail::parse_terms(text);
  std::set<std::string> names;
  for (const auto& r : raw)
    for (const auto& p : r.powers) names.insert(p.first);
  std::vector<std::string> ordered(names.begin(), names.end());
  std::sort(ordered.begin(), ordered.end(), detail::natural_less);
  return detail::assemble(raw, make_ring(std::move(ordered)));
}

/// Canonical text: terms in descending grlex order, e.g. "q1^2 - 4*q2".
inline std::string to_string(const MPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool negative = sgn(t.coeff) < 0;
    Rational mag = abs(t.coeff);
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    first = false;
    bool unit = mag == 1;
    if (t.mono.degree == 0 || !unit) out << mag.get_str();
    bool need_star = t.mono.degree != 0 && !unit;
    for (std::size_t i = 0; p.ring() && i < p.ring()->size(); ++i) {
      unsigned e = t.mono.exp[i];
      if (!e) continue;
      if (need_star) out << '*';
      out << p.ring()->names()[i];
      if (e > 1) out << '^' << e;
      need_star = true;
    }
  }
  return out.str();
}

}  // namespace hitchin
