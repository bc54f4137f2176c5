#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/Polynomials>

#include "hitchin/upoly.hpp"

namespace hitchin::fixtures {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

/// Small rational p/q with |p| <= num, 1 <= q <= den.
inline Rational small_rational(long num = 5, long den = 3) {
  Rational r(uniform(-num, num), uniform(1, den));
  r.canonicalize();
  return r;
}

inline MPoly random_mpoly(const RingPtr& ring, int terms, unsigned max_exp = 2) {
  std::vector<Term> ts;
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    for (std::size_t i = 0; i < ring->size(); ++i) {
      m.exp[i] = static_cast<std::uint16_t>(uniform(0, max_exp));
      m.degree += m.exp[i];
    }
    ts.push_back({m, small_rational()});
  }
  return MPoly::from_terms(ring, std::move(ts));
}

inline QPoly random_monic(int degree, long num = 5, long den = 3) {
  std::vector<Rational> c(static_cast<std::size_t>(degree) + 1);
  for (int k = 0; k < degree; ++k) c[static_cast<std::size_t>(k)] = small_rational(num, den);
  c[static_cast<std::size_t>(degree)] = 1;
  return QPoly(std::move(c));
}

inline QPoly from_roots(const std::vector<Rational>& roots) {
  QPoly f = QPoly::constant(Rational(1));
  for (const auto& r : roots) f = f * QPoly::linear_root(r);
  return f;
}

inline double to_double(const Rational& r) { return r.get_d(); }

/// Numeric roots of a nonconstant polynomial with rational coefficients.
inline std::vector<std::complex<double>> numeric_roots(const QPoly& f) {
  if (f.degree() < 1) return {};
  Eigen::VectorXd c(f.degree() + 1);
  for (int k = 0; k <= f.degree(); ++k) c(k) = to_double(f.coeff(k));
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(c);
  const auto& r = solver.roots();
  return {r.data(), r.data() + r.size()};
}

inline std::complex<double> eval_complex(const QPoly& f, std::complex<double> x) {
  std::complex<double> acc = 0;
  for (int k = f.degree(); k >= 0; --k) acc = acc * x + to_double(f.coeff(k));
  return acc;
}

inline bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace hitchin::fixtures
