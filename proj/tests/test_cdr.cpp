#include <doctest.h>

#include "vxa/cdr.hpp"

using namespace vxa;
using namespace vxa::cdr;
using engine::field_mode;

namespace {

System omega(int n) { return System{n, SystemKind::kOmega, CoeffMode::kPoly, -1}; }
System heis(int n) { return System{n, SystemKind::kHeisenberg, CoeffMode::kPoly, -1}; }
System cliff(int n) { return System{n, SystemKind::kClifford, CoeffMode::kPoly, -1}; }

State one_term(const System& sys, std::vector<ModeVar> vars, Rational c = Rational(1)) {
  return State::term(sys, sys.scalar(c), std::move(vars));
}

// classical de Rham differential on functions tensor the phi_0 exterior
// algebra, per d = sum_i a^i_0 phi^i_0
State classical_de_rham(const State& s) {
  const System& sys = s.system();
  State out = State::zero(sys);
  for (const auto& [m, c] : s.terms()) {
    for (int i = 0; i < sys.nvars; ++i) {
      FunctionElem d = c.partial(i);
      if (d.is_zero()) continue;
      std::vector<ModeVar> vars = m.vars();
      vars.insert(vars.begin(), ModeVar{Family::kPhi, i + 1, 0});
      out += State::normalize(sys, {{d, vars}});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("build_structure") {
  System s1 = omega(1);
  StructureFields sf = build_structure(s1);
  CHECK(sf.L == State::normalize(s1, {{s1.scalar(Rational(1)),
                                       {{Family::kB, 1, -1}, {Family::kA, 1, -1}}},
                                      {s1.scalar(Rational(1)),
                                       {{Family::kPhi, 1, -1}, {Family::kPsi, 1, -1}}}}));
  CHECK(sf.Q == one_term(s1, {{Family::kA, 1, -1}, {Family::kPhi, 1, 0}}));
  CHECK(sf.J.weight() == 1);
  CHECK(sf.G.weight() == 2);

  StructureFields sf2 = build_structure(omega(2));
  CHECK(sf2.J.terms().size() == 2);

  // Heisenberg-only systems get the Virasoro state alone
  StructureFields sfh = build_structure(heis(1));
  CHECK(!sfh.L.is_zero());
  CHECK(sfh.J.is_zero());
}

TEST_CASE("central charges 2N, -2N, 0") {
  for (int N = 1; N <= 3; ++N) {
    CHECK(check_virasoro(build_structure(heis(N)).L, Rational(2 * N)).ok());
    CHECK(check_virasoro(build_structure(cliff(N)).L, Rational(-2 * N)).ok());
    CHECK(check_virasoro(build_structure(omega(N)).L, Rational(0)).ok());
    // and the wrong charge fails
    CHECK(!check_virasoro(build_structure(heis(N)).L, Rational(2 * N + 1)).ok());
  }
}

TEST_CASE("topological algebra table") {
  for (int N = 1; N <= 2; ++N) {
    Report rep = check_topological(build_structure(omega(N)));
    CHECK_MESSAGE(rep.ok(), rep.str());
  }
}

TEST_CASE("selected topological products") {
  System sys = omega(2);
  StructureFields sf = build_structure(sys);
  CHECK(field_mode(sf.J, 1, sf.J) == State::vacuum(sys) * Rational(2));
  CHECK(field_mode(sf.Q, 0, sf.Q).is_zero());
  CHECK(field_mode(sf.G, 0, sf.G).is_zero());
  CHECK(field_mode(sf.Q, 2, sf.G) == State::vacuum(sys) * Rational(2));
  CHECK(field_mode(sf.Q, 1, sf.G) == sf.J);
  CHECK(field_mode(sf.Q, 0, sf.G) == sf.L);
}

TEST_CASE("chiral differential") {
  System sys = omega(2);
  // d(x1) = phi^1_0, matching the classical differential
  State x1 = State::term(sys, sys.coordinate(0), {});
  CHECK(chiral_d(x1) == one_term(sys, {{Family::kPhi, 1, 0}}));
  CHECK(chiral_d(State::vacuum(sys)).is_zero());

  // d^2 = 0 on samples, and d raises the charge by one
  std::vector<State> samples = {
      State::term(sys, sys.coordinate(0) * sys.coordinate(1), {}),
      one_term(sys, {{Family::kB, 1, -1}, {Family::kPsi, 2, -1}}),
      one_term(sys, {{Family::kA, 1, -1}, {Family::kPhi, 1, 0}}),
      State::term(sys, sys.coordinate(1), {{Family::kB, 2, -2}}),
  };
  for (const auto& s : samples) {
    CHECK(chiral_d(chiral_d(s)).is_zero());
    for (const auto& [g, part] : chiral_d(s).grade()) {
      bool found = false;
      for (const auto& [g0, part0] : s.grade()) {
        if (g0.weight == g.weight && g0.charge + 1 == g.charge) found = true;
      }
      CHECK(found);
    }
  }

  // the embedding of the classical complex intertwines the differentials
  std::vector<State> forms = {
      x1,
      State::term(sys, sys.coordinate(0) * sys.coordinate(1), {}),
      State::term(sys, sys.coordinate(1) * sys.coordinate(1), {{Family::kPhi, 1, 0}}),
      one_term(sys, {{Family::kPhi, 2, 0}}),
  };
  for (const auto& f : forms) CHECK(chiral_d(f) == classical_de_rham(f));
}

TEST_CASE("fermionic charge operator F = J_0") {
  System sys = omega(2);
  StructureFields sf = build_structure(sys);
  auto F = [&](const State& s) { return field_mode(sf.J, 0, s); };
  CHECK(F(State::vacuum(sys)).is_zero());
  // [F, phi] = phi, [F, psi] = -psi on states: F is diagonal with the charge
  std::vector<State> samples = {
      one_term(sys, {{Family::kPhi, 1, 0}}),
      one_term(sys, {{Family::kPsi, 1, -1}}),
      one_term(sys, {{Family::kPhi, 1, -1}, {Family::kPhi, 2, 0}}),
      one_term(sys, {{Family::kA, 1, -1}, {Family::kB, 2, -1}}),
  };
  for (const auto& s : samples) {
    int p = s.grade().begin()->first.charge;
    CHECK(F(s) == s * Rational(p));
  }
  // [F, d] = d: d raises charge by exactly one
  State mixed = State::term(sys, sys.coordinate(0), {{Family::kB, 1, -1}});
  CHECK(F(chiral_d(mixed)) - chiral_d(F(mixed)) == chiral_d(mixed));
}

TEST_CASE("homotopy check") {
  CHECK(homotopy_check(omega(1), 0, 3).ok());
  CHECK(homotopy_check(omega(1), 1, 3).ok());
  CHECK(homotopy_check(omega(1), 2, 2).ok());
  CHECK(homotopy_check(omega(2), 1, 2).ok());
  CHECK(homotopy_check(omega(2), 2, 2).ok());
}

TEST_CASE("cohomology of the chiral de Rham complex") {
  // weight 0: the algebraic de Rham cohomology of affine space
  for (int N = 1; N <= 2; ++N) {
    CohomologyResult r0 = cohomology(omega(N), 0, 4);
    for (const auto& [p, h] : r0.h_by_charge) {
      CHECK(h == (p == 0 ? 1 : 0));
    }
    CHECK(r0.h_by_charge.at(0) == 1);
  }
  // positive weight: everything cancels
  CHECK(cohomology(omega(1), 1, 4).total_h() == 0);
  CHECK(cohomology(omega(1), 2, 3).total_h() == 0);
  CHECK(cohomology(omega(1), 3, 3).total_h() == 0);
  CHECK(cohomology(omega(2), 1, 3).total_h() == 0);
  CHECK(cohomology(omega(2), 2, 2).total_h() == 0);
}

TEST_CASE("weight-zero product is the wedge product") {
  System sys = omega(2);
  State x1 = State::term(sys, sys.coordinate(0), {});
  State x1sq = State::term(sys, sys.coordinate(0) * sys.coordinate(0), {});
  State x1cu = State::term(sys, sys.coordinate(0) * sys.coordinate(0) * sys.coordinate(0), {});
  CHECK(weight0_product(x1, x1sq) == x1cu);

  State p1 = one_term(sys, {{Family::kPhi, 1, 0}});
  State p2 = one_term(sys, {{Family::kPhi, 2, 0}});
  CHECK(weight0_product(p1, p1).is_zero());
  CHECK(weight0_product(p1, p2) == -weight0_product(p2, p1));
  // commutative and associative on even weight-zero states
  CHECK(weight0_product(x1, x1sq) == weight0_product(x1sq, x1));
  CHECK(weight0_product(weight0_product(x1, x1), x1) ==
        weight0_product(x1, weight0_product(x1, x1)));

  CHECK_THROWS_AS(weight0_product(x1, one_term(sys, {{Family::kB, 1, -1}})), Error);
}

TEST_CASE("character tables") {
  // V_1 ranks by weight: 1, 2, 5, 10, 20  (pairs of partitions)
  CharacterTable v1 = character(heis(1), 4);
  std::vector<long long> expect = {1, 2, 5, 10, 20};
  for (long w = 0; w <= 4; ++w) {
    long long rank = 0;
    for (const auto& [key, n] : v1.ranks)
      if (key.first == w) rank += n;
    CHECK(rank == expect[static_cast<size_t>(w)]);
  }
  // Omega_1 Euler numbers vanish for w > 0
  CharacterTable o1 = character(omega(1), 5);
  CHECK(o1.euler.at(0) == 1);
  for (long w = 1; w <= 5; ++w) CHECK(o1.euler.at(w) == 0);
  // w = 0 rank of V_N is 1
  CHECK(character(heis(3), 0).ranks.at({0, 0}) == 1);
}
