#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vxa {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar over arbitrary-precision integers.
/// Always canonical: gcd(|num|, den) = 1 and den > 0 (maintained by the
/// backing cpp_rational).
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long long n) : v_(n) {}  // NOLINT: implicit by design
  Rational(long long n, long long d) : Rational(BigInt(n), BigInt(d)) {}
  Rational(BigInt n, BigInt d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    v_ = boost::multiprecision::cpp_rational(std::move(n), std::move(d));
  }
  explicit Rational(const std::string& s) : v_(s) {}

  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

  Rational operator-() const { return Rational(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
  friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
  friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
  friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    return Rational(denominator(), numerator());
  }

  /// Renders as `p` or `p/q`.
  std::string str() const {
    std::string s = numerator().str();
    if (!is_integer()) s += "/" + denominator().str();
    return s;
  }

 private:
  explicit Rational(boost::multiprecision::cpp_rational v) : v_(std::move(v)) {}
  boost::multiprecision::cpp_rational v_;
};

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline Rational field_inv(const Rational& r) { return r.inverse(); }

/// Generalized binomial coefficient C(n, k) for integer n (possibly negative)
/// and k >= 0, as an exact rational-free integer.
inline BigInt binomial(long long n, long long k) {
  if (k < 0) return 0;
  BigInt num = 1, den = 1;
  for (long long j = 0; j < k; ++j) {
    num *= BigInt(n - j);
    den *= BigInt(j + 1);
  }
  return num / den;  // always exact
}

inline BigInt factorial(long long n) {
  BigInt r = 1;
  for (long long j = 2; j <= n; ++j) r *= j;
  return r;
}

}  // namespace vxa
