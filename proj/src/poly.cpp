#include "vxa/poly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace vxa {

Poly Poly::variable(int nvars, int i, unsigned power) {
  if (i < 0 || i >= nvars) throw std::out_of_range("Poly::variable index");
  Poly p(nvars);
  Exps e(nvars, 0);
  e[i] = power;
  p.terms_[e] = Rational(1);
  return p;
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Exps(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  // grlex order: the last term has maximal total degree
  return static_cast<int>(total_degree(terms_.rbegin()->first));
}

int Poly::degree_in(int i) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[i]));
  return d;
}

void Poly::add_term(const Exps& e, const Rational& c) {
  if (c.is_zero()) return;
  assert(static_cast<int>(e.size()) == nvars_);
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_[e] = c;
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  assert(nvars_ == o.nvars_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  assert(nvars_ == o.nvars_);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  assert(a.nvars_ == b.nvars_);
  Poly r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exps e(ea);
      for (int i = 0; i < a.nvars_; ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Poly Poly::operator*(const Rational& c) const {
  Poly r(nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
  return r;
}

bool Poly::operator<(const Poly& o) const {
  if (nvars_ != o.nvars_) return nvars_ < o.nvars_;
  auto it = terms_.begin(), jt = o.terms_.begin();
  GrlexLess less;
  for (; it != terms_.end() && jt != o.terms_.end(); ++it, ++jt) {
    if (less(it->first, jt->first)) return true;
    if (less(jt->first, it->first)) return false;
    if (it->second != jt->second) return it->second < jt->second;
  }
  return it == terms_.end() && jt != o.terms_.end();
}

Poly Poly::partial(int i) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exps d(e);
    d[i] -= 1;
    r.add_term(d, c * Rational(static_cast<long long>(e[i])));
  }
  return r;
}

Poly Poly::truncate(int max_total_degree) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_)
    if (static_cast<int>(total_degree(e)) <= max_total_degree) r.terms_[e] = c;
  return r;
}

Poly Poly::homogeneous_part(unsigned degree) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) == degree) r.terms_[e] = c;
  return r;
}

Poly Poly::substitute(const std::vector<Poly>& args) const {
  assert(static_cast<int>(args.size()) == nvars_);
  int out_nvars = args.empty() ? nvars_ : args[0].nvars();
  // power cache per variable
  std::vector<std::vector<Poly>> pows(nvars_);
  for (int i = 0; i < nvars_; ++i) pows[i].push_back(Poly(out_nvars, Rational(1)));
  Poly r(out_nvars);
  for (const auto& [e, c] : terms_) {
    Poly t(out_nvars, c);
    for (int i = 0; i < nvars_; ++i) {
      while (pows[i].size() <= e[i]) pows[i].push_back(pows[i].back() * args[i]);
      if (e[i] > 0) t *= pows[i][e[i]];
    }
    r += t;
  }
  return r;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // render highest terms first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational a = c;
    if (first) {
      if (a.sign() < 0) { os << "-"; a = -a; }
    } else {
      os << (a.sign() < 0 ? " - " : " + ");
      if (a.sign() < 0) a = -a;
    }
    first = false;
    bool has_vars = total_degree(e) > 0;
    if (!a.is_one() || !has_vars) os << a.str();
    bool need_star = !a.is_one() || !has_vars;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      need_star = true;
      os << "x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

Rational Poly::content() const {
  if (terms_.empty()) return Rational(0);
  BigInt num_gcd = 0, den_lcm = 1;
  for (const auto& [e, c] : terms_) {
    num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::abs(c.numerator()));
    den_lcm = boost::multiprecision::lcm(den_lcm, c.denominator());
  }
  Rational content(num_gcd, den_lcm);
  if (leading_coeff().sign() < 0) content = -content;
  return content;
}

Rational Poly::leading_coeff() const {
  return terms_.empty() ? Rational(0) : terms_.rbegin()->second;
}

Poly Poly::primitive_part() const {
  if (terms_.empty()) return *this;
  return *this * content().inverse();
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("Poly: division by zero");
  Poly rem = *this;
  Poly quo(nvars_);
  const auto& [lde, ldc] = *divisor.terms_.rbegin();
  while (!rem.is_zero()) {
    const auto& [re, rc] = *rem.terms_.rbegin();
    Exps q(static_cast<size_t>(nvars_), 0u);
    for (int i = 0; i < nvars_; ++i) {
      if (re[i] < lde[i]) return std::nullopt;
      q[i] = re[i] - lde[i];
    }
    Rational qc = rc / ldc;
    Poly qt(nvars_);
    qt.terms_[q] = qc;
    quo += qt;
    rem -= qt * divisor;
    if (!rem.is_zero() && !GrlexLess()(rem.terms_.rbegin()->first, re)) {
      return std::nullopt;  // no strict progress: not divisible
    }
  }
  return quo;
}

namespace {

// Univariate view in variable `var`: coefficients are polynomials in the
// remaining variables.
std::vector<Poly> coeffs_in_var(const Poly& p, int var) {
  int d = p.degree_in(var);
  std::vector<Poly> cs(static_cast<size_t>(d + 1), Poly(p.nvars()));
  for (const auto& [e, c] : p.terms()) {
    Exps r(e);
    unsigned k = r[var];
    r[var] = 0;
    Poly t(p.nvars());
    t.add_term(r, c);
    cs[k] += t;
  }
  return cs;
}

Poly from_coeffs_in_var(const std::vector<Poly>& cs, int var, int nvars) {
  Poly p(nvars);
  for (size_t k = 0; k < cs.size(); ++k) {
    for (const auto& [e, c] : cs[k].terms()) {
      Exps r(e);
      r[var] += static_cast<unsigned>(k);
      p.add_term(r, c);
    }
  }
  return p;
}

// gcd of the coefficient list (recursive content)
Poly list_gcd(const std::vector<Poly>& cs) {
  Poly g(cs.empty() ? 0 : cs[0].nvars());
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c : poly_gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

// Pseudo-remainder of a by b in variable `var` (both nonzero in var).
Poly pseudo_rem(Poly a, const Poly& b, int var) {
  int db = b.degree_in(var);
  auto bcs = coeffs_in_var(b, var);
  const Poly& blead = bcs.back();
  while (true) {
    int da = a.degree_in(var);
    if (a.is_zero() || da < db) return a;
    auto acs = coeffs_in_var(a, var);
    // a <- blead * a - alead * x^(da-db) * b
    Poly shift(a.nvars());
    for (const auto& [e, c] : acs.back().terms()) {
      Exps r(e);
      r[var] += static_cast<unsigned>(da - db);
      shift.add_term(r, c);
    }
    a = blead * a - shift * b;
  }
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  assert(a.nvars() == b.nvars());
  if (a.is_zero()) return b.is_zero() ? b : b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  if (a.is_constant() || b.is_constant()) return Poly(a.nvars(), Rational(1));

  // pick the last variable actually present in both; if none is shared the
  // gcd can only be constant
  int var = -1;
  for (int i = a.nvars() - 1; i >= 0; --i) {
    if (a.degree_in(i) > 0 && b.degree_in(i) > 0) { var = i; break; }
  }
  if (var < 0) return Poly(a.nvars(), Rational(1));

  auto acs = coeffs_in_var(a, var);
  auto bcs = coeffs_in_var(b, var);
  Poly ca = list_gcd(acs), cb = list_gcd(bcs);
  Poly gc = poly_gcd(ca, cb);

  auto strip = [&](const Poly& p, const Poly& cont) {
    auto q = p.divide_exact(cont);
    assert(q.has_value());
    return *q;
  };
  Poly pa = strip(a, ca), pb = strip(b, cb);

  // primitive euclidean sequence in `var`
  Poly u = pa, v = pb;
  if (u.degree_in(var) < v.degree_in(var)) std::swap(u, v);
  while (!v.is_zero() && v.degree_in(var) > 0) {
    Poly r = pseudo_rem(u, v, var);
    u = v;
    if (r.is_zero()) {
      v = r;
    } else {
      Poly rc = list_gcd(coeffs_in_var(r, var));
      v = strip(r, rc);
    }
  }
  Poly g = v.is_zero() ? u : Poly(a.nvars(), Rational(1));
  return (g * gc).primitive_part();
}

Poly poly_pow(const Poly& base, unsigned n) {
  Poly r(base.nvars(), Rational(1));
  Poly b = base;
  while (n > 0) {
    if (n & 1u) r *= b;
    b *= b;
    n >>= 1u;
  }
  return r;
}

}  // namespace vxa
