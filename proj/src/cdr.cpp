#include "vxa/cdr.hpp"

#include <algorithm>

namespace vxa {
namespace cdr {

using engine::field_mode;
using engine::ope;
using engine::translate;

StructureFields build_structure(const System& sys) {
  StructureFields sf;
  sf.rank = sys.nvars;
  State L = State::zero(sys), J = State::zero(sys), Q = State::zero(sys),
        G = State::zero(sys);
  FunctionElem one = sys.scalar(Rational(1));
  for (int i = 1; i <= sys.nvars; ++i) {
    if (sys.has_bosons())
      L += State::term(sys, one, {{Family::kB, i, -1}, {Family::kA, i, -1}});
    if (sys.has_fermions())
      L += State::term(sys, one, {{Family::kPhi, i, -1}, {Family::kPsi, i, -1}});
    if (sys.kind == SystemKind::kOmega) {
      J += State::term(sys, one, {{Family::kPhi, i, 0}, {Family::kPsi, i, -1}});
      Q += State::term(sys, one, {{Family::kA, i, -1}, {Family::kPhi, i, 0}});
      G += State::term(sys, one, {{Family::kPsi, i, -1}, {Family::kB, i, -1}});
    }
  }
  sf.L = std::move(L);
  sf.J = std::move(J);
  sf.Q = std::move(Q);
  sf.G = std::move(G);
  return sf;
}

namespace {

bool check_eq(Report& rep, const std::string& name, const State& got,
              const State& expect) {
  bool pass = (got == expect);
  rep.add(name, pass, pass ? "" : "got " + got.str() + " expected " + expect.str());
  return pass;
}

}  // namespace

Report check_virasoro(const State& L, const Rational& expected_c) {
  Report rep;
  rep.title = "virasoro";
  check_eq(rep, "L_(0)L = L'", field_mode(L, 0, L), translate(L));
  check_eq(rep, "L_(1)L = 2L", field_mode(L, 1, L), L * Rational(2));
  check_eq(rep, "L_(2)L = 0", field_mode(L, 2, L), State::zero(L.system()));
  check_eq(rep, "L_(3)L = (c/2)|0>", field_mode(L, 3, L),
           State::vacuum(L.system()) * (expected_c * Rational(1, 2)));
  return rep;
}

Report check_topological(const StructureFields& sf) {
  Report rep;
  rep.title = "topological algebra";
  const System& sys = sf.L.system();
  const State zero = State::zero(sys);
  const State vac = State::vacuum(sys);
  const Rational d(sf.rank);

  auto expect_table = [&](const std::string& pair, const State& a, const State& b,
                          const std::map<long, State>& expected) {
    engine::OpeSingularPart got = ope(a, b);
    long maxk = got.max_order();
    for (const auto& [k, st] : expected) maxk = std::max(maxk, k);
    for (long k = 1; k <= maxk; ++k) {
      State g = got.poles.count(k) ? got.poles.at(k) : zero;
      State e = expected.count(k) ? expected.at(k) : zero;
      check_eq(rep, pair + " pole " + std::to_string(k), g, e);
    }
  };

  // LL has no central term (c = 0)
  expect_table("L(z)L(w)", sf.L, sf.L,
               {{1, translate(sf.L)}, {2, sf.L * Rational(2)}});
  // JJ and LJ
  expect_table("J(z)J(w)", sf.J, sf.J, {{2, vac * d}});
  expect_table("L(z)J(w)", sf.L, sf.J,
               {{1, translate(sf.J)}, {2, sf.J}, {3, vac * (-d)}});
  // GG, LG, JG
  expect_table("G(z)G(w)", sf.G, sf.G, {});
  expect_table("L(z)G(w)", sf.L, sf.G, {{1, translate(sf.G)}, {2, sf.G * Rational(2)}});
  expect_table("J(z)G(w)", sf.J, sf.G, {{1, -sf.G}});
  // QQ, LQ, JQ
  expect_table("Q(z)Q(w)", sf.Q, sf.Q, {});
  expect_table("L(z)Q(w)", sf.L, sf.Q, {{1, translate(sf.Q)}, {2, sf.Q}});
  expect_table("J(z)Q(w)", sf.J, sf.Q, {{1, sf.Q}});
  // QG carries the whole structure
  expect_table("Q(z)G(w)", sf.Q, sf.G, {{1, sf.L}, {2, sf.J}, {3, vac * d}});
  return rep;
}

engine::ModeOperator chiral_d_operator(const System& sys) {
  if (!sys.has_fermions() || !sys.has_bosons())
    throw Error(ErrorCode::kDomainError, "chiral de Rham differential needs Omega_N");
  StructureFields sf = build_structure(sys);
  // pin the sign against the classical differential: d(x_1) = phi^1_0
  State probe = State::term(sys, sys.coordinate(0), {});
  State want = State::term(sys, sys.scalar(Rational(1)), {{Family::kPhi, 1, 0}});
  State got = field_mode(sf.Q, 0, probe);
  if (got == want) return engine::ModeOperator{sf.Q, 0};
  if (got == -want) return engine::ModeOperator{-sf.Q, 0};
  throw Error(ErrorCode::kDomainError, "unexpected Q zero-mode action");
}

State chiral_d(const State& s) { return chiral_d_operator(s.system())(s); }

Report homotopy_check(const System& sys, long w, int xdeg_cap) {
  Report rep;
  rep.title = "homotopy [G_0, d] = L_0 at weight " + std::to_string(w);
  StructureFields sf = build_structure(sys);
  engine::ModeOperator d = chiral_d_operator(sys);
  // G_0 in weight indexing is the Borcherds mode (1) of the weight-2 state
  auto g0 = [&](const State& s) { return field_mode(sf.G, 1, s); };
  int checked = 0;
  bool all = true;
  std::string witness;
  for (const auto& m : monomials_of_weight_with_phi0(sys, w)) {
    for (int deg = 0; deg <= xdeg_cap; ++deg) {
      for (const auto& e : exponents_of_degree(sys.nvars, deg)) {
        Poly p(sys.nvars);
        p.add_term(e, Rational(1));
        State v = State::term(sys, FunctionElem::poly(p), m.vars());
        if (v.is_zero()) continue;
        State lhs = g0(d(v)) + d(g0(v));  // both operators are odd
        State rhs = v * Rational(w);
        ++checked;
        if (lhs != rhs) {
          all = false;
          if (witness.empty()) witness = v.str();
        }
      }
    }
  }
  rep.add("[G_0,d] = " + std::to_string(w) + "·id on " + std::to_string(checked) +
              " basis states",
          all, witness);
  return rep;
}

namespace {

// basis item of a cohomology slice: canonical monomial times x-monomial
struct SliceBasis {
  std::vector<std::pair<Monomial, Exps>> items;
  std::map<std::pair<Monomial, Exps>, int> index;

  void push(const Monomial& m, const Exps& e) {
    index[{m, e}] = static_cast<int>(items.size());
    items.emplace_back(m, e);
  }
};

int bigrade_r(const Monomial& m, const Exps& e) {
  return m.count(Family::kB) + m.count(Family::kPhi) + static_cast<int>(total_degree(e));
}
int bigrade_s(const Monomial& m) {
  return m.count(Family::kA) + m.count(Family::kPsi);
}

}  // namespace

CohomologyResult cohomology(const System& sys, long w, int rmax) {
  if (sys.coeff_mode != CoeffMode::kPoly)
    throw Error(ErrorCode::kDomainError, "cohomology runs over polynomial coefficients");
  CohomologyResult res;
  res.weight = w;
  res.rmax = rmax;
  engine::ModeOperator d = chiral_d_operator(sys);

  auto mons = monomials_of_weight_with_phi0(sys, w);
  for (int r = 0; r <= rmax; ++r) {
    for (int s = 0; s <= static_cast<int>(w); ++s) {
      // collect the slice basis by charge
      std::map<int, SliceBasis> basis;
      for (const auto& m : mons) {
        if (bigrade_s(m) != s) continue;
        int rho = m.count(Family::kB) + m.count(Family::kPhi);
        int xdeg = r - rho;
        if (xdeg < 0) continue;
        for (const auto& e : exponents_of_degree(sys.nvars, xdeg))
          basis[m.charge()].push(m, e);
      }
      if (basis.empty()) continue;

      CohomologySlice slice;
      slice.weight = w;
      slice.r = r;
      slice.s = s;
      std::map<int, int> rank_d;  // charge p -> rank of d: C^p -> C^{p+1}
      for (auto& [p, bas] : basis) {
        slice.dim_by_charge[p] = static_cast<int>(bas.items.size());
        auto target = basis.find(p + 1);
        int tdim = target == basis.end() ? 0 : static_cast<int>(target->second.items.size());
        Mat<Rational> mat(tdim, static_cast<int>(bas.items.size()));
        for (int col = 0; col < static_cast<int>(bas.items.size()); ++col) {
          const auto& [mon, e] = bas.items[static_cast<size_t>(col)];
          Poly xp(sys.nvars);
          xp.add_term(e, Rational(1));
          State v = State::term(sys, FunctionElem::poly(xp), mon.vars());
          State dv = d(v);
          for (const auto& [m2, c2] : dv.terms()) {
            for (const auto& [e2, r2] : c2.num().terms()) {
              if (target == basis.end())
                throw Error(ErrorCode::kDomainError, "differential leaves the window");
              auto it = target->second.index.find({m2, e2});
              if (it == target->second.index.end())
                throw Error(ErrorCode::kDomainError, "differential leaves the slice");
              mat.at(it->second, col) = r2;
            }
          }
        }
        int rk = tdim == 0 ? 0 : rank(mat);
        rank_d[p] = rk;
        slice.ker_by_charge[p] = static_cast<int>(bas.items.size()) - rk;
        slice.im_into_charge[p + 1] = rk;
      }
      for (auto& [p, dim] : slice.dim_by_charge) {
        int ker = slice.ker_by_charge[p];
        int im = slice.im_into_charge.count(p) ? slice.im_into_charge[p] : 0;
        slice.h_by_charge[p] = ker - im;
      }
      for (auto& [p, h] : slice.h_by_charge) res.h_by_charge[p] += h;
      res.slices.push_back(std::move(slice));
    }
  }
  return res;
}

State weight0_product(const State& a, const State& b) {
  if (a.max_weight() != 0 || b.max_weight() != 0)
    throw Error(ErrorCode::kDomainError, "weight0_product needs weight-zero states");
  return field_mode(a, -1, b);
}

CharacterTable character(const System& sys, long max_weight) {
  CharacterTable t;
  for (long w = 0; w <= max_weight; ++w) {
    for (const auto& m : monomials_of_weight(sys, w)) t.ranks[{w, m.charge()}] += 1;
  }
  for (const auto& [key, n] : t.ranks) {
    auto [w, p] = key;
    t.euler[w] += (p % 2 == 0 ? n : -n);
  }
  return t;
}

}  // namespace cdr
}  // namespace vxa
