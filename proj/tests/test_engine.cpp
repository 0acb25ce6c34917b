#include <doctest.h>

#include <random>

#include "vxa/engine.hpp"

using namespace vxa;
using namespace vxa::engine;

namespace {

System omega(int n, CoeffMode m = CoeffMode::kPoly, int ord = -1) {
  return System{n, SystemKind::kOmega, m, ord};
}
System heis(int n, CoeffMode m = CoeffMode::kPoly, int ord = -1) {
  return System{n, SystemKind::kHeisenberg, m, ord};
}
System cliff(int n) { return System{n, SystemKind::kClifford, CoeffMode::kPoly, -1}; }

ModeVar A(int i, long n) { return ModeVar{Family::kA, i, n}; }
ModeVar B(int i, long n) { return ModeVar{Family::kB, i, n}; }
ModeVar Phi(int i, long n) { return ModeVar{Family::kPhi, i, n}; }
ModeVar Psi(int i, long n) { return ModeVar{Family::kPsi, i, n}; }

State one_term(const System& sys, std::vector<ModeVar> vars, Rational c = Rational(1)) {
  return State::term(sys, sys.scalar(c), std::move(vars));
}

// generator states: a^i, b^i (= x_i |0>), phi^i, psi^i
State gen_a(const System& s, int i) { return one_term(s, {A(i, -1)}); }
State gen_b(const System& s, int i) {
  return State::term(s, s.coordinate(i - 1), {});
}
State gen_phi(const System& s, int i) { return one_term(s, {Phi(i, 0)}); }
State gen_psi(const System& s, int i) { return one_term(s, {Psi(i, -1)}); }

// Virasoro states per system kind
State virasoro(const System& s) {
  State L = State::zero(s);
  for (int i = 1; i <= s.nvars; ++i) {
    if (s.has_bosons()) L += one_term(s, {B(i, -1), A(i, -1)});
    if (s.has_fermions()) L += one_term(s, {Phi(i, -1), Psi(i, -1)});
  }
  return L;
}

}  // namespace

TEST_CASE("generator mode actions") {
  System sys = omega(1);
  // the derived sign: b1_{1} a1_{-1} |0> = -|0>
  State s = apply_generator_mode(Family::kB, 1, 1, gen_a(sys, 1));
  CHECK(s == State::vacuum(sys) * Rational(-1));

  // a1_0 acts as d/dx1 on the coefficient ring
  State x2 = State::term(sys, FunctionElem::poly(Poly::variable(1, 0) * Poly::variable(1, 0)), {});
  CHECK(apply_generator_mode(Family::kA, 1, 0, x2) ==
        State::term(sys, FunctionElem::poly(Poly::variable(1, 0) * Rational(2)), {}));

  // annihilation on the vacuum
  CHECK(apply_generator_mode(Family::kPhi, 1, 1, State::vacuum(sys)).is_zero());

  // fermionic contraction with Koszul sign through an odd variable
  //   psi1_0 (phi1_{-1} phi1_0) = -phi1_{-1}
  State t = one_term(sys, {Phi(1, -1), Phi(1, 0)});
  CHECK(apply_generator_mode(Family::kPsi, 1, 0, t) ==
        one_term(sys, {Phi(1, -1)}, Rational(-1)));
}

TEST_CASE("free-field OPE tables for N <= 3") {
  for (int N = 1; N <= 3; ++N) {
    System sys = omega(N);
    for (int i = 1; i <= N; ++i) {
      for (int j = 1; j <= N; ++j) {
        auto ab = ope(gen_a(sys, i), gen_b(sys, j));
        if (i == j) {
          REQUIRE(ab.poles.size() == 1);
          CHECK(ab.poles.at(1) == State::vacuum(sys));
        } else {
          CHECK(ab.regular());
        }
        auto pp = ope(gen_phi(sys, i), gen_psi(sys, j));
        if (i == j) {
          REQUIRE(pp.poles.size() == 1);
          CHECK(pp.poles.at(1) == State::vacuum(sys));
        } else {
          CHECK(pp.regular());
        }
        CHECK(ope(gen_a(sys, i), gen_a(sys, j)).regular());
        CHECK(ope(gen_b(sys, i), gen_b(sys, j)).regular());
        CHECK(ope(gen_phi(sys, i), gen_phi(sys, j)).regular());
        CHECK(ope(gen_psi(sys, i), gen_psi(sys, j)).regular());
        CHECK(ope(gen_b(sys, i), gen_phi(sys, j)).regular());
        CHECK(ope(gen_b(sys, i), gen_psi(sys, j)).regular());
        CHECK(ope(gen_a(sys, i), gen_phi(sys, j)).regular());
        CHECK(ope(gen_a(sys, i), gen_psi(sys, j)).regular());
      }
    }
  }
}

TEST_CASE("vacuum axiom: a_{(-1)} |0> = a") {
  System sys = omega(2);
  std::vector<State> samples = {
      gen_a(sys, 1),
      one_term(sys, {A(1, -2), B(2, -1), Phi(1, 0)}),
      one_term(sys, {Psi(2, -1), Phi(1, -1)}, Rational(7, 3)),
      State::term(sys, sys.coordinate(0) * sys.coordinate(0), {B(1, -3)}),
  };
  for (const auto& a : samples) {
    CHECK(field_mode(a, -1, State::vacuum(sys)) == a);
  }
}

TEST_CASE("Heisenberg L_(3) L = (c/2)|0> with c = 2N") {
  for (int N = 1; N <= 3; ++N) {
    System sys = heis(N);
    State L = virasoro(sys);
    CHECK(field_mode(L, 3, L) == State::vacuum(sys) * Rational(N));
    CHECK(field_mode(L, 2, L).is_zero());
    CHECK(field_mode(L, 1, L) == L * Rational(2));
    CHECK(field_mode(L, 0, L) == translate(L));
  }
  // Clifford: c = -2N; Omega: c = 0
  for (int N = 1; N <= 3; ++N) {
    System sc = cliff(N);
    State Lc = virasoro(sc);
    CHECK(field_mode(Lc, 3, Lc) == State::vacuum(sc) * Rational(-N));
    System so = omega(N);
    State Lo = virasoro(so);
    CHECK(field_mode(Lo, 3, Lo).is_zero());
  }
}

TEST_CASE("taylor_field_mode") {
  System sys = heis(1, CoeffMode::kRational);
  Poly x1 = Poly::variable(1, 0);

  // f = x1^2 at z^0 on the vacuum is multiplication by x1^2
  FunctionElem f = FunctionElem::rational(x1 * x1, Poly(1, Rational(1)));
  CHECK(taylor_field_mode(f, 0, State::vacuum(sys)) == State::term(sys, f, {}));

  // f = 1/(1+x1): coefficient of z^1 on the vacuum is (df) b_{-1} = L_{-1} f
  Poly onepx = Poly(1, Rational(1)) + x1;
  FunctionElem g = FunctionElem::rational(Poly(1, Rational(1)), onepx);
  State got = taylor_field_mode(g, -1, State::vacuum(sys));
  State expect = State::term(sys, FunctionElem::rational(Poly(1, Rational(-1)), onepx * onepx),
                             {B(1, -1)});
  CHECK(got == expect);
  CHECK(got == translate(State::term(sys, g, {})));

  // f = x1 reproduces the plain b-mode action at every k
  FunctionElem fx = FunctionElem::rational(x1, Poly(1, Rational(1)));
  std::vector<State> samples = {State::vacuum(sys), one_term(sys, {A(1, -1)}),
                                one_term(sys, {A(1, -2), B(1, -1)})};
  for (const auto& s : samples) {
    for (long k = -3; k <= 3; ++k) {
      CHECK(taylor_field_mode(fx, k, s) == apply_generator_mode(Family::kB, 1, k, s));
    }
  }
}

TEST_CASE("series truncation budget") {
  // requesting weight-3 output in an order-2 run underflows
  System low_sys = heis(1, CoeffMode::kSeries, 2);
  FunctionElem low = FunctionElem::series(Poly::variable(1, 0), 2);
  CHECK_THROWS_AS(taylor_field_mode(low, -3, State::vacuum(low_sys)), Error);
  System sys = heis(1, CoeffMode::kSeries, 8);
  FunctionElem ok = FunctionElem::series(Poly::variable(1, 0), 8);
  CHECK(!taylor_field_mode(ok, -3, State::vacuum(sys)).is_zero());
}

TEST_CASE("fourier modes are derivations") {
  System sys = omega(1);
  Poly x1 = Poly::variable(1, 0);

  // int a(z) on x1^3 = 3 x1^2
  State x3 = State::term(sys, FunctionElem::poly(x1 * x1 * x1), {});
  CHECK(fourier_derivation(gen_a(sys, 1))(x3) ==
        State::term(sys, FunctionElem::poly(x1 * x1 * Rational(3)), {}));

  // int (df)(z) = 0 for f = x1^2: the state of f(z)' is L_{-1} f
  State df = translate(State::term(sys, FunctionElem::poly(x1 * x1), {}));
  std::vector<State> samples = {State::vacuum(sys), gen_a(sys, 1),
                                one_term(sys, {A(1, -1), Phi(1, 0)}),
                                one_term(sys, {A(1, -2)})};
  for (const auto& s : samples) CHECK(fourier_derivation(df)(s).is_zero());

  // int L(z) acts as L_{-1}
  State L = virasoro(sys);
  for (const auto& s : samples) CHECK(fourier_derivation(L)(s) == translate(s));

  // derivation property over nth products on sampled triples
  std::vector<State> xs = {gen_a(sys, 1), gen_phi(sys, 1), gen_b(sys, 1)};
  std::vector<State> ys = {gen_b(sys, 1), gen_psi(sys, 1),
                           one_term(sys, {B(1, -1)})};
  std::vector<State> ds = {L, one_term(sys, {A(1, -1), Phi(1, 0)})};
  for (const auto& d : ds) {
    int dpar = d.parity();
    for (const auto& xstate : xs) {
      for (const auto& y : ys) {
        for (long n = -2; n <= 1; ++n) {
          State lhs = fourier_derivation(d)(field_mode(xstate, n, y));
          State rhs = field_mode(fourier_derivation(d)(xstate), n, y);
          State cross = field_mode(xstate, n, fourier_derivation(d)(y));
          if (dpar == 1 && xstate.parity() == 1) cross = -cross;
          rhs += cross;
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("Borcherds commutator formula on sampled modes") {
  for (int N = 1; N <= 2; ++N) {
    System sys = omega(N);
    std::vector<State> pool = {gen_a(sys, 1), gen_b(sys, 1), gen_phi(sys, 1),
                               gen_psi(sys, 1), virasoro(sys),
                               one_term(sys, {A(1, -1), Phi(1, 0)})};
    std::vector<State> targets = {State::vacuum(sys), gen_a(sys, 1),
                                  one_term(sys, {B(1, -1), Phi(1, 0)}),
                                  one_term(sys, {Psi(1, -1)})};
    if (N == 2) {
      pool.push_back(gen_a(sys, 2));
      targets.push_back(one_term(sys, {B(2, -2)}));
    }
    for (const auto& a : pool) {
      for (const auto& b : pool) {
        int sgn = (a.parity() == 1 && b.parity() == 1) ? -1 : 1;
        for (long m = -2; m <= 2; ++m) {
          for (long n = -2; n <= 2; ++n) {
            for (const auto& s : targets) {
              State lhs = field_mode(a, m, field_mode(b, n, s)) -
                          field_mode(b, n, field_mode(a, m, s)) * Rational(sgn);
              State rhs = State::zero(sys);
              long kmax = a.max_weight() + b.max_weight();
              for (long k = 0; k <= kmax; ++k) {
                State akb = field_mode(a, k, b);
                if (akb.is_zero()) continue;
                Rational c(binomial(m, k), 1);
                if (c.is_zero()) continue;
                rhs += field_mode(akb, m + n - k, s) * c;
              }
              CHECK(lhs == rhs);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("locality bound") {
  System sys = omega(2);
  std::vector<State> pool = {virasoro(sys), gen_a(sys, 2),
                             one_term(sys, {A(1, -1), Phi(2, 0)}),
                             one_term(sys, {Psi(1, -2), B(1, -1)})};
  for (const auto& a : pool) {
    for (const auto& b : pool) {
      long bound = a.weight() + b.weight();
      CHECK(ope(a, b).max_order() <= bound);
      for (long n = bound; n <= bound + 2; ++n) CHECK(field_mode(a, n, b).is_zero());
    }
  }
}

TEST_CASE("translation identity (L_{-1}a)_{(n)} = -n a_{(n-1)}") {
  System sys = omega(1);
  std::vector<State> as = {gen_a(sys, 1), gen_b(sys, 1), gen_phi(sys, 1), virasoro(sys)};
  std::vector<State> ss = {State::vacuum(sys), gen_a(sys, 1),
                           one_term(sys, {B(1, -1), B(1, -2)}),
                           one_term(sys, {Phi(1, 0), Psi(1, -1)})};
  for (const auto& a : as) {
    State da = translate(a);
    for (const auto& s : ss) {
      for (long n = -3; n <= 3; ++n) {
        CHECK(field_mode(da, n, s) == field_mode(a, n - 1, s) * Rational(-n));
      }
    }
  }
}

TEST_CASE("iterated normal ordering does not depend on the word order") {
  System sys = omega(2);
  FunctionElem one = sys.scalar(Rational(1));
  // bosonic letters commute inside the normal-ordered word
  std::vector<ModeVar> word = {A(1, -1), B(1, -1), B(2, -2)};
  std::vector<State> ss = {State::vacuum(sys), gen_a(sys, 1), one_term(sys, {B(1, -1)})};
  std::vector<std::vector<ModeVar>> perms = {
      {A(1, -1), B(1, -1), B(2, -2)},
      {B(1, -1), A(1, -1), B(2, -2)},
      {B(2, -2), B(1, -1), A(1, -1)},
  };
  for (const auto& s : ss) {
    for (long p = -2; p <= 2; ++p) {
      State base = field_mode_word(one, perms[0], p, s);
      for (size_t i = 1; i < perms.size(); ++i) {
        CHECK(field_mode_word(one, perms[i], p, s) == base);
      }
    }
  }
  // odd letters anticommute: swapping two odd letters flips the sign
  std::vector<ModeVar> w1 = {Psi(1, -1), Phi(2, 0)};
  std::vector<ModeVar> w2 = {Phi(2, 0), Psi(1, -1)};
  for (const auto& s : ss) {
    for (long p = -2; p <= 1; ++p) {
      CHECK(field_mode_word(one, w1, p, s) == -field_mode_word(one, w2, p, s));
    }
  }
}

TEST_CASE("tensor-factor consistency") {
  // products of pure Heisenberg (resp. Clifford) states computed inside
  // Omega agree with the standalone systems
  System so = omega(2), sh = heis(2), sc = cliff(2);
  auto lift_h = [&](const State& s) {
    State r = State::zero(so);
    for (const auto& [m, c] : s.terms())
      r += State::term(so, FunctionElem::poly(c.num()), m.vars());
    return r;
  };
  std::vector<State> hs = {State::term(sh, sh.coordinate(0), {}),
                           one_term(sh, {A(1, -1)}), one_term(sh, {B(2, -1), A(1, -1)}),
                           virasoro(sh)};
  for (const auto& a : hs) {
    for (const auto& b : hs) {
      for (long n = -2; n <= 3; ++n) {
        CHECK(lift_h(field_mode(a, n, b)) == field_mode(lift_h(a), n, lift_h(b)));
      }
    }
  }
  auto lift_c = [&](const State& s) {
    State r = State::zero(so);
    for (const auto& [m, c] : s.terms())
      r += State::term(so, FunctionElem::poly(c.num()), m.vars());
    return r;
  };
  std::vector<State> cs = {one_term(sc, {Phi(1, 0)}), one_term(sc, {Psi(2, -1)}),
                           one_term(sc, {Phi(1, -1), Psi(1, -1)}), virasoro(sc)};
  for (const auto& a : cs) {
    for (const auto& b : cs) {
      for (long n = -2; n <= 3; ++n) {
        CHECK(lift_c(field_mode(a, n, b)) == field_mode(lift_c(a), n, lift_c(b)));
      }
    }
  }
}
