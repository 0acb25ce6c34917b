#include <doctest.h>

#include <random>

#include "vxa/function_elem.hpp"

using namespace vxa;

namespace {

FunctionElem fe_poly(const Poly& p) { return FunctionElem::poly(p); }

Poly x(int nvars, int i) { return Poly::variable(nvars, i); }
Poly c(int nvars, long long v) { return Poly(nvars, Rational(v)); }

Poly random_poly(std::mt19937& rng, int nvars, int max_deg, int terms) {
  std::uniform_int_distribution<int> dcoef(-4, 4);
  std::uniform_int_distribution<int> ddeg(0, max_deg);
  Poly p(nvars);
  for (int t = 0; t < terms; ++t) {
    Exps e(nvars, 0);
    int budget = ddeg(rng);
    for (int i = 0; i < nvars && budget > 0; ++i) {
      std::uniform_int_distribution<int> dd(0, budget);
      int k = dd(rng);
      e[i] = static_cast<unsigned>(k);
      budget -= k;
    }
    p.add_term(e, Rational(dcoef(rng)));
  }
  return p;
}

// independent geometric-series oracle: expand 1/(1 - u) as sum of powers
Poly geometric_inverse_oracle(const Poly& a, int order) {
  Rational a0 = a.constant_term();
  Poly u = (a * a0.inverse() - Poly(a.nvars(), Rational(1))) * Rational(-1);
  // 1/a = (1/a0) * sum u^k
  Poly acc(a.nvars(), Rational(1));
  Poly up(a.nvars(), Rational(1));
  for (int k = 1; k <= order; ++k) {
    up = (up * u).truncate(order);
    acc += up;
  }
  return (acc * a0.inverse()).truncate(order);
}

// Lagrange inversion for N=1: [t^n] f = (1/n) [x^{n-1}] (x/g)^n
Poly lagrange_inverse_oracle(const Poly& g, int order) {
  Poly x1 = Poly::variable(1, 0);
  auto gq = g.divide_exact(x1);  // g has zero constant term
  REQUIRE(gq.has_value());
  Poly f(1);
  for (int n = 1; n <= order; ++n) {
    Poly base = geometric_inverse_oracle(*gq, order);
    Poly pw(1, Rational(1));
    for (int j = 0; j < n; ++j) pw = (pw * base).truncate(order);
    // coefficient of x^{n-1}
    Rational coef(0);
    for (const auto& [e, cc] : pw.terms()) {
      if (e[0] == static_cast<unsigned>(n - 1)) coef = cc;
    }
    Exps e(1, static_cast<unsigned>(n));
    f.add_term(e, coef / Rational(n));
  }
  return f;
}

}  // namespace

TEST_CASE("rational canonical arithmetic") {
  Rational a(1, 2), b(1, 2);
  CHECK((a + b).is_one());
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK((Rational(7, 3) * Rational(3, 7)).is_one());
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("ring_arith add and cancel") {
  // (1/2) x1 + (1/2) x1 = x1
  FunctionElem h = fe_poly(x(2, 0) * Rational(1, 2));
  CHECK(h + h == fe_poly(x(2, 0)));

  // (x1/(1+x1)) * ((1+x1)/1) = x1 with denominator 1
  Poly onepx = c(1, 1) + x(1, 0);
  FunctionElem r1 = FunctionElem::rational(x(1, 0), onepx);
  FunctionElem r2 = FunctionElem::rational(onepx, c(1, 1));
  FunctionElem prod = r1 * r2;
  CHECK(prod.num() == x(1, 0));
  CHECK(prod.den().is_one());
}

TEST_CASE("series product truncates") {
  // (1+x)(1-x+x^2-x^3) = 1 at order 3
  Poly onepx = c(1, 1) + x(1, 0);
  Poly alt = c(1, 1) - x(1, 0) + x(1, 0) * x(1, 0) -
             x(1, 0) * x(1, 0) * x(1, 0);
  FunctionElem a = FunctionElem::series(onepx, 3);
  FunctionElem b = FunctionElem::series(alt, 3);
  CHECK((a * b) == FunctionElem::series(c(1, 1), 3));
}

TEST_CASE("ring_invert") {
  // rational: x -> 1/x
  FunctionElem fx = FunctionElem::rational(x(1, 0), c(1, 1));
  FunctionElem inv = fx.inverse();
  CHECK(inv.num().is_one());
  CHECK(inv.den() == x(1, 0));
  CHECK((fx * inv).is_one());

  // series 1+x at order 2 -> 1 - x + x^2, against the geometric oracle
  Poly onepx = c(1, 1) + x(1, 0);
  FunctionElem s = FunctionElem::series(onepx, 2);
  Poly expect = c(1, 1) - x(1, 0) + x(1, 0) * x(1, 0);
  CHECK(s.inverse() == FunctionElem::series(expect, 2));
  CHECK(s.inverse().num() == geometric_inverse_oracle(onepx, 2));

  // zero constant term is not invertible
  CHECK_THROWS_AS(FunctionElem::series(x(1, 0), 3).inverse(), Error);

  std::mt19937 rng(7);
  for (int it = 0; it < 20; ++it) {
    Poly p = random_poly(rng, 2, 3, 4) + c(2, 1 + it % 3);
    if (p.constant_term().is_zero()) continue;
    CHECK(series_inverse(p, 5) == geometric_inverse_oracle(p, 5));
  }
}

TEST_CASE("partial derivatives") {
  // d/dx1 (x1^2 x2) = 2 x1 x2
  Poly p = x(2, 0) * x(2, 0) * x(2, 1);
  CHECK(fe_poly(p).partial(0) == fe_poly(x(2, 0) * x(2, 1) * Rational(2)));
  CHECK(fe_poly(x(2, 0)).partial(1).is_zero());

  // quotient rule: d/dx 1/(1+x) = -1/(1+x)^2, checked against the series route
  Poly onepx = c(1, 1) + x(1, 0);
  FunctionElem r = FunctionElem::rational(c(1, 1), onepx);
  FunctionElem dr = r.partial(0);
  CHECK(dr == FunctionElem::rational(c(1, -1), onepx * onepx));
  // independent check: series-expand then differentiate termwise
  FunctionElem rs = r.to_series(6);
  CHECK(dr.to_series(5).num() == rs.num().partial(0).truncate(5));
}

TEST_CASE("exactness properties (distributivity, Leibniz)") {
  std::mt19937 rng(11);
  for (int it = 0; it < 25; ++it) {
    Poly p = random_poly(rng, 2, 3, 3), q = random_poly(rng, 2, 3, 3),
         r = random_poly(rng, 2, 3, 3);
    CHECK((p + q) * r == p * r + q * r);
    CHECK((p * q).partial(0) == p.partial(0) * q + p * q.partial(0));
  }
}

TEST_CASE("compose_and_invert") {
  // g = x + x^2 at D=5: f = x - x^2 + 2x^3 - 5x^4 + 14x^5
  Poly g1 = x(1, 0) + x(1, 0) * x(1, 0);
  auto f = compose_and_invert({FunctionElem::series(g1, 5)}, 5);
  Poly expected = lagrange_inverse_oracle(g1, 5);
  CHECK(f[0].num() == expected);
  {
    Poly want(1);
    want.add_term({1}, Rational(1));
    want.add_term({2}, Rational(-1));
    want.add_term({3}, Rational(2));
    want.add_term({4}, Rational(-5));
    want.add_term({5}, Rational(14));
    CHECK(f[0].num() == want);
  }

  // identity
  auto id = compose_and_invert({FunctionElem::series(x(1, 0), 4)}, 4);
  CHECK(id[0].num() == x(1, 0));

  // singular Jacobian
  CHECK_THROWS_AS(compose_and_invert({FunctionElem::series(x(1, 0) * x(1, 0), 3)}, 3),
                  Error);

  // randomized N=2 round trips at D<=6
  std::mt19937 rng(3);
  for (int it = 0; it < 8; ++it) {
    int D = 4 + static_cast<int>(it % 3);
    Poly a = x(2, 0) + random_poly(rng, 2, D, 3).truncate(D) * x(2, 0) * x(2, 0);
    Poly b = x(2, 1) + random_poly(rng, 2, D, 3).truncate(D) * x(2, 1) * x(2, 1);
    // strip constant / relinearize: keep zero constant term, Jacobian = I + ...
    a -= Poly(2, a.constant_term());
    b -= Poly(2, b.constant_term());
    std::vector<FunctionElem> g = {FunctionElem::series(a.truncate(D), D),
                                   FunctionElem::series(b.truncate(D), D)};
    auto fi = compose_and_invert(g, D);
    auto round = compose_tuple(g, fi);
    CHECK(round[0].num() == x(2, 0));
    CHECK(round[1].num() == x(2, 1));
  }
}

TEST_CASE("mode mismatch errors") {
  FunctionElem r = FunctionElem::rational(x(1, 0), c(1, 1) + x(1, 0));
  FunctionElem s = FunctionElem::series(x(1, 0), 4);
  CHECK_THROWS_AS(r + s, Error);
  // poly promotes into both
  FunctionElem p = fe_poly(x(1, 0));
  CHECK((p + s).mode() == CoeffMode::kSeries);
  CHECK((p + r).mode() == CoeffMode::kRational);
}
