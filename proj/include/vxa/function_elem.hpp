#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vxa/error.hpp"
#include "vxa/poly.hpp"

namespace vxa {

/// Coefficient modes of the function ring attached to the zero-mode
/// symbols x1..xN: plain polynomials, reduced rational functions, and
/// truncated formal power series addressed by total degree.
enum class CoeffMode { kPoly, kRational, kSeries };

/// An exact element of the coefficient ring.
///
/// kPoly:     num (den = 1)
/// kRational: num/den, reduced, den integer-primitive with positive
///            leading coefficient under grlex
/// kSeries:   num truncated to total degree <= order; elements carry their
///            own valid order, and binary operations take the minimum
class FunctionElem {
 public:
  FunctionElem() = default;
  static FunctionElem poly(Poly p);
  static FunctionElem rational(Poly num, Poly den);
  static FunctionElem series(Poly p, int order);
  static FunctionElem constant(int nvars, const Rational& c, CoeffMode mode,
                               int order = -1);
  static FunctionElem variable(int nvars, int i, CoeffMode mode, int order = -1);

  CoeffMode mode() const { return mode_; }
  int nvars() const { return num_.nvars(); }
  int order() const { return order_; }  // kSeries only, else -1
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  Rational eval_zero() const;  // value at x = 0

  FunctionElem operator-() const;
  friend FunctionElem operator+(const FunctionElem& a, const FunctionElem& b);
  friend FunctionElem operator-(const FunctionElem& a, const FunctionElem& b);
  friend FunctionElem operator*(const FunctionElem& a, const FunctionElem& b);
  FunctionElem& operator+=(const FunctionElem& o) { *this = *this + o; return *this; }
  FunctionElem& operator-=(const FunctionElem& o) { *this = *this - o; return *this; }
  FunctionElem& operator*=(const FunctionElem& o) { *this = *this * o; return *this; }
  FunctionElem operator*(const Rational& c) const;

  /// Multiplicative inverse in the same mode. kSeries requires a nonzero
  /// constant term; zero input is never invertible.
  FunctionElem inverse() const;
  friend FunctionElem operator/(const FunctionElem& a, const FunctionElem& b) {
    return a * b.inverse();
  }

  /// Exact partial derivative d/dx_{i+1}; quotient rule in kRational mode,
  /// kSeries output re-tagged at order - 1.
  FunctionElem partial(int i) const;

  /// Substitutes x_{j+1} -> args[j]. All args must share mode and nvars.
  FunctionElem substitute(const std::vector<FunctionElem>& args) const;

  /// Equality is canonical and exact (mode, parts, series order all agree).
  friend bool operator==(const FunctionElem& a, const FunctionElem& b);
  friend bool operator!=(const FunctionElem& a, const FunctionElem& b) { return !(a == b); }
  bool operator<(const FunctionElem& o) const;

  /// True when the two elements agree as series up to the given total degree
  /// (rational elements are expanded; both must be expandable).
  bool agrees_to_order(const FunctionElem& o, int order) const;

  /// Series expansion to the given order; requires den(0) != 0 in
  /// kRational mode.
  FunctionElem to_series(int order) const;

  std::string str() const;

  /// Max total degree of the polynomial data (numerator; used by the
  /// engine's truncation budget).
  int poly_degree() const { return num_.degree(); }

 private:
  void normalize_rational();

  CoeffMode mode_ = CoeffMode::kPoly;
  Poly num_{0};
  Poly den_{0};
  int order_ = -1;
};

inline bool is_zero(const FunctionElem& f) { return f.is_zero(); }
inline FunctionElem field_inv(const FunctionElem& f) { return f.inverse(); }

/// Truncated multiplicative inverse of a series numerator (unit constant
/// term), computed degree by degree.
Poly series_inverse(const Poly& a, int order);

/// Compositional inverse of a coordinate change.
///
/// g is an N-tuple of kSeries elements in N variables with zero constant
/// terms and Jacobian invertible at the origin. Returns the N-tuple f with
/// f(g(x)) = x modulo total degree order+1, found order by order and
/// verified by back-substitution. Throws kNotInvertibleChange when the
/// Jacobian is singular at the origin.
std::vector<FunctionElem> compose_and_invert(const std::vector<FunctionElem>& g,
                                             int order);

/// f(g): substitutes the tuple g into each component of f.
std::vector<FunctionElem> compose_tuple(const std::vector<FunctionElem>& f,
                                        const std::vector<FunctionElem>& g);

}  // namespace vxa
