#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vxa/rational.hpp"

namespace vxa {

/// Exponent vector over the zero-mode symbols x1..xN.
using Exps = std::vector<unsigned>;

inline unsigned total_degree(const Exps& e) {
  unsigned d = 0;
  for (unsigned x : e) d += x;
  return d;
}

/// Graded lexicographic term order; fixes the canonical form of every
/// polynomial and the pivoting of all echelon reductions built on top.
struct GrlexLess {
  bool operator()(const Exps& a, const Exps& b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;  // lexicographic tie-break
  }
};

/// Sparse multivariate polynomial with Rational coefficients in x1..xN.
/// Invariants: no zero coefficients; all exponent vectors have length nvars.
class Poly {
 public:
  using TermMap = std::map<Exps, Rational, GrlexLess>;

  Poly() : nvars_(0) {}
  explicit Poly(int nvars) : nvars_(nvars) {}
  Poly(int nvars, const Rational& c) : nvars_(nvars) {
    if (!c.is_zero()) terms_[Exps(nvars, 0)] = c;
  }

  static Poly variable(int nvars, int i, unsigned power = 1);  // x_{i+1}^power
  static Poly constant(int nvars, const Rational& c) { return Poly(nvars, c); }

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }
  bool is_one() const { return is_constant() && constant_term().is_one(); }
  Rational constant_term() const;
  int degree() const;  // total degree, -1 for zero

  void add_term(const Exps& e, const Rational& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
  friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
  Poly operator*(const Rational& c) const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  bool operator<(const Poly& o) const;  // arbitrary total order for map keys

  Poly partial(int i) const;                 // d/dx_{i+1}
  Poly truncate(int max_total_degree) const;  // drop terms above the bound
  Poly homogeneous_part(unsigned degree) const;
  Rational eval_zero() const { return constant_term(); }

  /// Maximum degree in variable i alone.
  int degree_in(int i) const;

  /// Substitutes x_{i+1} -> args[i] for polynomial arguments.
  Poly substitute(const std::vector<Poly>& args) const;

  std::string str() const;  // canonical rendering, e.g. "3/2*x1^2*x2 + 1"

  // -- integer-content helpers used by gcd and rational normal forms --

  /// Largest rational c such that this = c * (primitive integer polynomial).
  Rational content() const;
  Poly primitive_part() const;  // integer-primitive, positive leading coeff
  Rational leading_coeff() const;

  /// Exact division; nullopt when the division does not come out even.
  std::optional<Poly> divide_exact(const Poly& divisor) const;

 private:
  int nvars_;
  TermMap terms_;
};

/// Multivariate gcd over Q (primitive in Z, positive leading coefficient).
Poly poly_gcd(const Poly& a, const Poly& b);

Poly poly_pow(const Poly& base, unsigned n);

}  // namespace vxa
