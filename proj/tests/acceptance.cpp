// Acceptance suite: runs every criterion end to end and prints one
// PASS/FAIL line per criterion. All comparisons are exact; series-valued
// identities are checked on their recorded truncation orders.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <vector>

#include "vxa/cdr.hpp"
#include "vxa/coord.hpp"
#include "vxa/dsl.hpp"
#include "vxa/liecocycle.hpp"
#include "vxa/sheaf.hpp"

using namespace vxa;
using engine::field_mode;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, const std::function<bool()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string(" [exception: ") + e.what() + "]";
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << label
            << " (" << ms << " ms)" << note << std::endl;
}

System omega(int n, CoeffMode m = CoeffMode::kPoly, int ord = -1) {
  return System{n, SystemKind::kOmega, m, ord};
}
System heis(int n, CoeffMode m = CoeffMode::kPoly, int ord = -1) {
  return System{n, SystemKind::kHeisenberg, m, ord};
}
System cliff(int n) { return System{n, SystemKind::kClifford, CoeffMode::kPoly, -1}; }

State one_term(const System& sys, std::vector<ModeVar> vars, Rational c = Rational(1)) {
  return State::term(sys, sys.scalar(c), std::move(vars));
}

State gen_a(const System& s, int i) { return one_term(s, {{Family::kA, i, -1}}); }
State gen_b(const System& s, int i) { return State::term(s, s.coordinate(i - 1), {}); }
State gen_phi(const System& s, int i) { return one_term(s, {{Family::kPhi, i, 0}}); }
State gen_psi(const System& s, int i) { return one_term(s, {{Family::kPsi, i, -1}}); }

// independent oracle: two-coloured partition count = [q^n] prod (1-q^k)^{-2}
long long partition_pairs(int n) {
  std::function<long long(int, int)> pcount = [&](int rem, int maxpart) -> long long {
    if (rem == 0) return 1;
    long long total = 0;
    for (int p = std::min(rem, maxpart); p >= 1; --p) total += pcount(rem - p, p);
    return total;
  };
  long long total = 0;
  for (int k = 0; k <= n; ++k)
    total += pcount(k, std::max(k, 1)) * pcount(n - k, std::max(n - k, 1));
  return total;
}

bool criterion1() {
  for (int N = 1; N <= 3; ++N) {
    System sys = omega(N);
    for (int i = 1; i <= N; ++i) {
      for (int j = 1; j <= N; ++j) {
        auto ab = engine::ope(gen_a(sys, i), gen_b(sys, j));
        if (i == j) {
          if (ab.poles.size() != 1 || !(ab.poles.at(1) == State::vacuum(sys))) return false;
        } else if (!ab.regular()) {
          return false;
        }
        auto pp = engine::ope(gen_phi(sys, i), gen_psi(sys, j));
        if (i == j) {
          if (pp.poles.size() != 1 || !(pp.poles.at(1) == State::vacuum(sys))) return false;
        } else if (!pp.regular()) {
          return false;
        }
        if (!engine::ope(gen_a(sys, i), gen_a(sys, j)).regular()) return false;
        if (!engine::ope(gen_b(sys, i), gen_b(sys, j)).regular()) return false;
        if (!engine::ope(gen_phi(sys, i), gen_phi(sys, j)).regular()) return false;
        if (!engine::ope(gen_psi(sys, i), gen_psi(sys, j)).regular()) return false;
      }
    }
  }
  return true;
}

bool criterion2() {
  for (int N = 1; N <= 3; ++N) {
    if (!cdr::check_virasoro(cdr::build_structure(heis(N)).L, Rational(2 * N)).ok())
      return false;
    if (!cdr::check_virasoro(cdr::build_structure(cliff(N)).L, Rational(-2 * N)).ok())
      return false;
    if (!cdr::check_virasoro(cdr::build_structure(omega(N)).L, Rational(0)).ok())
      return false;
  }
  return true;
}

bool criterion3() {
  for (int N = 1; N <= 2; ++N) {
    if (!cdr::check_topological(cdr::build_structure(omega(N))).ok()) return false;
  }
  return true;
}

bool criterion4() {
  for (int N = 1; N <= 2; ++N) {
    System sys = omega(N);
    auto d = cdr::chiral_d_operator(sys);
    int xcap = N == 1 ? 3 : 2;
    for (long w = 0; w <= 4; ++w) {
      if (N == 2 && w == 4) xcap = 1;
      for (const auto& m : monomials_of_weight_with_phi0(sys, w)) {
        for (int deg = 0; deg <= xcap; ++deg) {
          for (const auto& e : exponents_of_degree(sys.nvars, deg)) {
            Poly p(sys.nvars);
            p.add_term(e, Rational(1));
            State v = State::term(sys, FunctionElem::poly(p), m.vars());
            if (v.is_zero()) continue;
            if (!d(d(v)).is_zero()) return false;
          }
        }
      }
      if (!cdr::homotopy_check(sys, w, w <= 2 ? 2 : 1).ok()) return false;
    }
  }
  return true;
}

bool criterion5() {
  for (int N = 1; N <= 2; ++N) {
    for (long w = 0; w <= 3; ++w) {
      auto res = cdr::cohomology(omega(N), w, static_cast<int>(w) + 4);
      if (w == 0) {
        for (const auto& [p, h] : res.h_by_charge) {
          if (h != (p == 0 ? 1 : 0)) return false;
        }
        if (!res.h_by_charge.count(0) || res.h_by_charge.at(0) != 1) return false;
      } else {
        if (res.total_h() != 0) return false;
      }
    }
  }
  return true;
}

bool criterion6() {
  {
    System sys = omega(1, CoeffMode::kSeries, 8);
    FunctionElem x = sys.coordinate(0);
    coord::CoordChange cc = coord::make_series_change(sys, {x + x * x}, 8);
    if (!coord::verify_ope_preservation(cc, 3).ok()) return false;
    Report control = coord::verify_ope_preservation(cc, 2, true);
    if (control.ok()) return false;  // the negative control must fail
  }
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int trial = 0; trial < 2; ++trial) {
    System sys = omega(2, CoeffMode::kSeries, 5);
    FunctionElem x = sys.coordinate(0), y = sys.coordinate(1);
    FunctionElem gx = x + x * x * Rational(coef(rng)) + x * y * Rational(coef(rng)) +
                      y * y * Rational(coef(rng));
    FunctionElem gy = y + x * x * Rational(coef(rng)) + y * y * Rational(coef(rng)) +
                      x * y * y * Rational(coef(rng));
    coord::CoordChange cc = coord::make_series_change(sys, {gx, gy}, 5);
    if (!coord::verify_ope_preservation(cc, 2).ok()) return false;
  }
  return true;
}

bool criterion7() {
  System sys = omega(1, CoeffMode::kSeries, 8);
  FunctionElem x = sys.coordinate(0);
  coord::CoordChange cc1 = coord::make_series_change(sys, {x + x * x}, 8);
  coord::CoordChange cc2 = coord::make_series_change(sys, {x + x * x * x}, 8);
  return coord::verify_composition(cc2, cc1, 2).ok();
}

bool criterion8() {
  System sys = omega(1, CoeffMode::kSeries, 8);
  FunctionElem x = sys.coordinate(0);
  coord::CoordChange cc = coord::make_series_change(sys, {x + x * x}, 8);
  auto st = coord::structure_transform(cc);
  if (!st.report.ok()) return false;
  // independent closed form: J~ - J = (log(1+2x))' b_{-1} = 2/(1+2x) b_{-1}
  FunctionElem expect_c =
      (sys.scalar(Rational(1)) + x * Rational(2)).inverse() * Rational(2);
  State expect = State::term(sys, expect_c, {{Family::kB, 1, -1}});
  return (st.dJ - expect).is_zero() && st.dL.is_zero() && st.dG.is_zero();
}

bool criterion9() {
  if (!sheaf::glue_check_p1(2).ok()) return false;
  auto wk = sheaf::wakimoto_check();
  if (!wk.report.ok() || !(wk.level == Rational(-2))) return false;
  std::cout << "        [recorded Wakimoto level k = " << wk.level.str() << "]\n";
  // the reflection flow reproduces the transition image of a_{-1}|0>
  // exactly; the overall sign of the printed (x^2 a + 2 b')-state is the
  // one forced by the free-field relations
  System sys = sheaf::p1_system();
  FunctionElem x = sys.coordinate(0);
  State expect = State::term(sys, -(x * x), {{Family::kA, 1, -1}}) +
                 one_term(sys, {{Family::kB, 1, -1}}, Rational(-2));
  State got = sheaf::reflect(gen_a(sys, 1), 12);
  if (!(got == expect)) return false;
  coord::GeneratorImages gi = sheaf::p1_transition();
  if (!(got == gi.a[0])) return false;
  if (!(sheaf::reflect(gen_b(sys, 1), 10) == State::term(sys, x.inverse(), {})))
    return false;
  return true;
}

bool criterion10() {
  // Euler character first against the independent partition oracle
  std::vector<long long> expect = {1, 2, 5, 10, 20, 36};
  for (int w = 0; w <= 5; ++w) {
    if (partition_pairs(w) != expect[static_cast<size_t>(w)]) return false;
  }
  auto euler = sheaf::euler_character(5);
  if (!euler.report.ok()) return false;
  if (euler.coeffs != expect) return false;

  // global-section ranks against (1-q)^{-1} prod (1-q^n)^{-2}
  auto sec = sheaf::global_sections(3, 4);
  std::vector<long long> gamma_expect;
  long long run = 0;
  for (int w = 0; w <= 3; ++w) {
    run += partition_pairs(w);
    gamma_expect.push_back(run);
  }
  if (sec.gamma_ranks != gamma_expect) return false;
  // H^1 rank at w equals the global-section rank at w - 1
  if (sec.h1_ranks[0] != 0) return false;
  for (size_t w = 1; w < sec.h1_ranks.size(); ++w) {
    if (sec.h1_ranks[w] != sec.gamma_ranks[w - 1]) return false;
  }
  return true;
}

bool criterion11() {
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1), zero(2), one(2, Rational(1));
  auto vf2 = [](const Poly& a, const Poly& b) {
    return liecocycle::VectorField{{a, b}};
  };
  std::vector<liecocycle::VectorField> samples = {
      vf2(one, zero), vf2(zero, x), vf2(y * y, zero), vf2(zero, x * x),
      vf2(x * y, zero)};
  if (!liecocycle::check_identities(samples, 7, 20).ok()) return false;

  // discrepancy as an operator identity on weight <= 3 slices
  System sys = heis(2);
  if (!liecocycle::discrepancy(sys, samples[2], samples[3], 3, 2).ok()) return false;
  if (!liecocycle::discrepancy(sys, samples[1], samples[4], 3, 2).ok()) return false;

  // the quotient projection is part of check_identities; record compare_69
  auto cmp = liecocycle::compare_69(samples);
  if (!cmp.found) return false;
  std::cout << "        [recorded lambda = " << cmp.lambda.str() << " ("
            << cmp.lambda2.str() << " on one-forms, " << cmp.lambda3.str()
            << " on functions)]\n";
  return true;
}

bool criterion12() {
  std::mt19937 rng(99);
  for (int N = 1; N <= 2; ++N) {
    System sys = omega(N);
    std::vector<State> pool = {gen_a(sys, 1), gen_b(sys, 1), gen_phi(sys, 1),
                               gen_psi(sys, 1), cdr::build_structure(sys).L};
    std::vector<State> targets = {State::vacuum(sys), gen_a(sys, 1),
                                  one_term(sys, {{Family::kB, 1, -1}, {Family::kPhi, 1, 0}})};
    if (N == 2) targets.push_back(one_term(sys, {{Family::kB, 2, -2}}));
    for (const auto& a : pool) {
      for (const auto& b : pool) {
        int sgn = (a.parity() == 1 && b.parity() == 1) ? -1 : 1;
        for (int it = 0; it < 4; ++it) {
          long m = static_cast<long>(rng() % 5) - 2;
          long n = static_cast<long>(rng() % 5) - 2;
          for (const auto& s : targets) {
            State lhs = field_mode(a, m, field_mode(b, n, s)) -
                        field_mode(b, n, field_mode(a, m, s)) * Rational(sgn);
            State rhs = State::zero(sys);
            for (long k = 0; k <= a.max_weight() + b.max_weight(); ++k) {
              State akb = field_mode(a, k, b);
              if (akb.is_zero()) continue;
              Rational c(binomial(m, k), 1);
              if (!c.is_zero()) rhs += field_mode(akb, m + n - k, s) * c;
            }
            if (!(lhs == rhs)) return false;
          }
        }
        // translation identity
        State da = engine::translate(a);
        for (long n = -2; n <= 2; ++n) {
          if (!(field_mode(da, n, b) == field_mode(a, n - 1, b) * Rational(-n)))
            return false;
        }
        // derivation property of the zero mode
        for (const auto& dsrc : pool) {
          int dpar = dsrc.parity();
          for (long n : {-1L, 0L}) {
            State lhs = engine::fourier_derivation(dsrc)(field_mode(a, n, b));
            State rhs = field_mode(engine::fourier_derivation(dsrc)(a), n, b);
            State cross = field_mode(a, n, engine::fourier_derivation(dsrc)(b));
            if (dpar == 1 && a.parity() == 1) cross = -cross;
            rhs += cross;
            if (!(lhs == rhs)) return false;
          }
        }
      }
    }
  }
  // tensor-factor consistency: Omega restricted to the pure factors
  {
    System so = omega(2), sh = heis(2), sc = cliff(2);
    auto lift = [&](const State& s) {
      State r = State::zero(so);
      for (const auto& [m, c] : s.terms())
        r += State::term(so, FunctionElem::poly(c.num()), m.vars());
      return r;
    };
    std::vector<State> hs = {State::term(sh, sh.coordinate(0), {}), gen_a(sh, 1),
                             cdr::build_structure(sh).L};
    for (const auto& a : hs)
      for (const auto& b : hs)
        for (long n = -2; n <= 3; ++n)
          if (!(lift(field_mode(a, n, b)) == field_mode(lift(a), n, lift(b))))
            return false;
    std::vector<State> cs = {one_term(sc, {{Family::kPhi, 1, 0}}),
                             one_term(sc, {{Family::kPsi, 2, -1}}),
                             cdr::build_structure(sc).L};
    for (const auto& a : cs)
      for (const auto& b : cs)
        for (long n = -2; n <= 3; ++n)
          if (!(lift(field_mode(a, n, b)) == field_mode(lift(a), n, lift(b))))
            return false;
  }
  return true;
}

}  // namespace

int main() {
  std::cout << "acceptance suite (exact arithmetic; seeded samples)\n";
  criterion(1, "free-field OPE tables for N <= 3", criterion1);
  criterion(2, "central charges 2N / -2N / 0 for N in {1,2,3}", criterion2);
  criterion(3, "topological algebra table with d = N for N in {1,2}", criterion3);
  criterion(4, "d^2 = 0 and the homotopy [G_0,d] = L_0 on slices w <= 4, N <= 2",
            criterion4);
  criterion(5, "chiral de Rham cohomology concentrated at (0,0) for w <= 3, N <= 2",
            criterion5);
  criterion(6, "OPE preservation for x+x^2 (D=8) and random N=2 changes (D=5); "
               "fermion-dropped control fails",
            criterion6);
  criterion(7, "composition of lifted changes for (x+x^2, x+x^3) at D=8", criterion7);
  criterion(8, "structure transform: L,G invariant; J,Q corrections match the "
               "closed forms at D=8",
            criterion8);
  criterion(9, "P^1 gluing, Wakimoto currents at level -2, reflection flow",
            criterion9);
  criterion(10, "Euler character (1,2,5,10,20,36) and section ranks with the "
                "H^1 shift",
            criterion10);
  criterion(11, "cocycle identities, discrepancy operators, recorded lambda",
            criterion11);
  criterion(12, "engine soundness: commutator formula, translation, derivation, "
                "tensor factors",
            criterion12);
  std::cout << (failures == 0 ? "all criteria passed" : "FAILURES: " + std::to_string(failures))
            << std::endl;
  return failures == 0 ? 0 : 1;
}
