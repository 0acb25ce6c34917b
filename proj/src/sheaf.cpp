#include "vxa/sheaf.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace vxa {
namespace sheaf {

using engine::field_mode;
using engine::ope;

System p1_system() { return System{1, SystemKind::kHeisenberg, CoeffMode::kRational, -1}; }

namespace {

State a_state(const System& sys) {
  return State::term(sys, sys.scalar(Rational(1)), {{Family::kA, 1, -1}});
}
State b1_state(const System& sys) {
  return State::term(sys, sys.scalar(Rational(1)), {{Family::kB, 1, -1}});
}

// single scalar c with lhs + c * rhs = 0; throws when no such constant fits
Rational solve_scalar(const State& lhs, const State& rhs) {
  if (rhs.is_zero()) {
    if (lhs.is_zero()) return Rational(0);
    throw Error(ErrorCode::kNoConstant, "inhomogeneous correction");
  }
  // take any matching term pair
  const auto& [m, c] = *rhs.terms().begin();
  auto it = lhs.terms().find(m);
  if (it == lhs.terms().end())
    throw Error(ErrorCode::kNoConstant, "correction misses a term");
  // c is a function multiple: use the constant ratio when both are scalar
  // multiples of the same function
  FunctionElem ratio = it->second * c.inverse();
  Rational r = -ratio.eval_zero();
  if (!(lhs + rhs * r).is_zero())
    throw Error(ErrorCode::kNoConstant, "no single correction constant");
  return r;
}

}  // namespace

coord::GeneratorImages p1_transition() {
  System sys = p1_system();
  FunctionElem x = sys.coordinate(0);
  FunctionElem invx = x.inverse();
  // classical lifted-generator part for g = 1/x
  coord::CoordChange cc = coord::make_explicit_change(sys, {invx}, {invx});
  coord::GeneratorImages gi = coord::tilded_generators(cc);
  // curve correction: a~ <- a~ + c b_{-1} with c chosen so that a~(z)a~(w)
  // loses its first-order pole (the N = 1 anomaly is a coboundary)
  State A = gi.a[0];
  State B = b1_state(sys);
  State p_aa = field_mode(A, 0, A);
  State p_ab = field_mode(A, 0, B) + field_mode(B, 0, A);
  Rational c = solve_scalar(p_aa, p_ab);
  gi.a[0] = A + B * c;
  return gi;
}

Report glue_check_p1(long wmax) {
  Report rep;
  rep.title = "P^1 gluing";
  System sys = p1_system();
  coord::GeneratorImages gi = p1_transition();
  const State vac = State::vacuum(sys);

  rep.add("a~ image = -(x^2 a_{-1} + 2 b_{-1})|0>",
          gi.a[0] == State::term(sys, -(sys.coordinate(0) * sys.coordinate(0)),
                                 {{Family::kA, 1, -1}}) +
                         b1_state(sys) * Rational(-2),
          "sign of the a image fixed by the free-field relations");

  auto tab = [&](const std::string& name, const State& xs, const State& ys,
                 const std::map<long, State>& expected) {
    auto got = ope(xs, ys);
    long maxk = got.max_order();
    for (const auto& [k, st] : expected) maxk = std::max(maxk, k);
    for (long k = 1; k <= maxk; ++k) {
      State g = got.poles.count(k) ? got.poles.at(k) : State::zero(sys);
      State e = expected.count(k) ? expected.at(k) : State::zero(sys);
      rep.add(name + " pole " + std::to_string(k), (g - e).is_zero(),
              (g - e).is_zero() ? "" : "got " + g.str());
    }
  };
  tab("a~(z)b~(w)", gi.a[0], gi.b[0], {{1, vac}});
  tab("a~(z)a~(w)", gi.a[0], gi.a[0], {});
  tab("b~(z)b~(w)", gi.b[0], gi.b[0], {});

  // a~_(0) applied to x~ = x^{-1} gives 1
  State xt = State::term(sys, sys.coordinate(0).inverse(), {});
  rep.add("a~_(0) x~ = |0>", field_mode(gi.a[0], 0, xt) == vac);

  // involution on states of weight <= wmax with Laurent coefficients
  bool inv_ok = true;
  std::string witness;
  for (long w = 0; w <= wmax; ++w) {
    for (const auto& m : monomials_of_weight(sys, w)) {
      for (int j = -1; j <= 2; ++j) {
        FunctionElem c = j >= 0 ? sys.coordinate(0) : sys.coordinate(0).inverse();
        FunctionElem cf = sys.scalar(Rational(1));
        for (int t = 0; t < std::abs(j); ++t) cf = cf * c;
        State s = State::term(sys, cf, m.vars());
        State twice = transform_state(gi, transform_state(gi, s));
        if (!(twice - s).is_zero()) {
          inv_ok = false;
          if (witness.empty()) witness = s.str();
        }
      }
    }
  }
  rep.add("transition is an involution (weight <= " + std::to_string(wmax) + ")",
          inv_ok, witness);
  return rep;
}

WakimotoFields wakimoto_fields() {
  System sys = p1_system();
  FunctionElem x = sys.coordinate(0);
  WakimotoFields wf;
  wf.e21 = a_state(sys) * Rational(-1);
  wf.e12 = State::term(sys, x * x, {{Family::kA, 1, -1}}) + b1_state(sys) * Rational(2);
  wf.e11 = State::term(sys, x, {{Family::kA, 1, -1}});
  return wf;
}

WakimotoResult wakimoto_check() {
  WakimotoResult res;
  res.report.title = "Wakimoto sl_2 currents";
  System sys = p1_system();
  WakimotoFields wf = wakimoto_fields();
  const State vac = State::vacuum(sys);
  const State zero = State::zero(sys);

  struct Cur {
    std::string name;
    State s;
  };
  std::vector<Cur> cur = {{"E21", wf.e21}, {"E12", wf.e12}, {"E11", wf.e11}};

  // sl_2 structure constants for [X, Y] in this basis
  auto bracket = [&](int i, int j) -> State {
    if (i == j) return zero;
    // order: 0 = E21, 1 = E12, 2 = E11
    if (i == 2 && j == 0) return -wf.e21;
    if (i == 0 && j == 2) return wf.e21;
    if (i == 2 && j == 1) return wf.e12;
    if (i == 1 && j == 2) return -wf.e12;
    if (i == 0 && j == 1) return wf.e11 * Rational(-2);
    if (i == 1 && j == 0) return wf.e11 * Rational(2);
    return zero;
  };
  // invariant-form normalization with E11 = h/2: B(E12,E21) = 1,
  // B(E11,E11) = 1/2, all other pairs 0
  auto bform = [&](int i, int j) -> Rational {
    if ((i == 0 && j == 1) || (i == 1 && j == 0)) return Rational(1);
    if (i == 2 && j == 2) return Rational(1, 2);
    return Rational(0);
  };

  bool have_level = false;
  Rational level(0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      auto o = ope(cur[i].s, cur[j].s);
      std::string name = cur[i].name + "(z)" + cur[j].name + "(w)";
      State p1 = o.poles.count(1) ? o.poles.at(1) : zero;
      res.report.add(name + " pole 1 = [" + cur[i].name + "," + cur[j].name + "]",
                     p1 == bracket(i, j));
      State p2 = o.poles.count(2) ? o.poles.at(2) : zero;
      Rational b = bform(i, j);
      if (b.is_zero()) {
        res.report.add(name + " pole 2 = 0", p2.is_zero());
      } else {
        // p2 must be (level * b) |0>; pin one consistent level across pairs
        bool ok = false;
        if (!p2.is_zero()) {
          auto it = p2.terms().find(Monomial{});
          if (it != p2.terms().end() && p2.terms().size() == 1) {
            Rational k = it->second.eval_zero() / b;
            if ((p2 - vac * (k * b)).is_zero()) {
              if (!have_level) {
                level = k;
                have_level = true;
                ok = true;
              } else {
                ok = (k == level);
              }
            }
          }
        }
        res.report.add(name + " pole 2 = k * B(" + cur[i].name + "," + cur[j].name + ")",
                       ok);
      }
      res.report.add(name + " poles >= 3 vanish", o.max_order() <= 2);
    }
  }
  res.level = level;
  res.report.add("single consistent level k = " + level.str() + " (critical -2)",
                 have_level && level == Rational(-2));

  // the gluing intertwines the two charts' currents:
  // Phi(E21') = E12, Phi(E12') = E21, Phi(E11') = -E11
  coord::GeneratorImages gi = p1_transition();
  res.report.add("transition maps E21' to E12",
                 (transform_state(gi, wf.e21) - wf.e12).is_zero());
  res.report.add("transition maps E12' to E21",
                 (transform_state(gi, wf.e12) - wf.e21).is_zero());
  res.report.add("transition maps E11' to -E11",
                 (transform_state(gi, wf.e11) + wf.e11).is_zero());
  return res;
}

namespace {

// Laurent decomposition of a coefficient whose denominator is x^k (up to a
// scalar): returns exponent -> Rational
std::map<long, Rational> laurent_terms(const FunctionElem& c) {
  std::map<long, Rational> out;
  const Poly& den = c.den();
  if (den.terms().size() != 1)
    throw Error(ErrorCode::kDomainError, "coefficient is not Laurent: " + c.str());
  const auto& [de, dc] = *den.terms().begin();
  long shift = de[0];
  for (const auto& [e, r] : c.num().terms()) out[static_cast<long>(e[0]) - shift] = r / dc;
  return out;
}

struct LaurentBasis {
  std::map<std::pair<Monomial, long>, int> index;
  std::vector<std::pair<Monomial, long>> items;
  int at(const Monomial& m, long e) {
    auto key = std::make_pair(m, e);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    index[key] = static_cast<int>(items.size());
    items.push_back(key);
    return static_cast<int>(items.size()) - 1;
  }
};

using Vec = std::map<int, Rational>;

Vec vectorize(const State& s, LaurentBasis& basis) {
  Vec v;
  for (const auto& [m, c] : s.terms()) {
    for (const auto& [e, r] : laurent_terms(c)) v[basis.at(m, e)] = r;
  }
  return v;
}

int rank_of(const std::vector<Vec>& rows, int cols) {
  Mat<Rational> m(static_cast<int>(rows.size()), cols);
  for (size_t i = 0; i < rows.size(); ++i)
    for (const auto& [j, r] : rows[i]) m.at(static_cast<int>(i), j) = r;
  return rank(std::move(m));
}

}  // namespace

SectionsResult global_sections(long wmax, int window0) {
  SectionsResult res;
  res.report.title = "P^1 global sections and H^1 by weight";
  System sys = p1_system();
  coord::GeneratorImages gi = p1_transition();
  FunctionElem x = sys.coordinate(0);

  // The Cech complex splits under the integer grading by int E11(z)
  // (eigenvalue = x-degree + #b - #a, negated by the transition), and each
  // eigenvalue slice of fixed weight is finite: the monomial determines
  // its Laurent exponent. The x-degree window is therefore a window in the
  // eigenvalue, grown until the boundary slices are exact.
  for (long w = 0; w <= wmax; ++w) {
    auto mons = monomials_of_weight(sys, w);
    auto lam0 = [&](const Monomial& m) {
      return static_cast<long>(m.count(Family::kB) - m.count(Family::kA));
    };
    long long gamma = 0, h1 = 0;
    std::vector<State> witness;
    bool stable = false;
    for (long lam_max = w + window0; lam_max <= 512 && !stable; lam_max *= 2) {
      gamma = 0;
      h1 = 0;
      witness.clear();
      bool boundary_clear = true;
      for (long lam = -lam_max; lam <= lam_max; ++lam) {
        // slice cells: one per monomial, at Laurent exponent lam - lam0
        std::map<Monomial, int> cell;
        int cols = 0;
        for (const auto& m : mons) cell[m] = cols++;
        auto vec_of = [&](const State& s) {
          Vec v;
          for (const auto& [m, c] : s.terms()) {
            auto lt = laurent_terms(c);
            if (lt.size() != 1)
              throw Error(ErrorCode::kDomainError, "section is not eigen-homogeneous");
            v[cell.at(m)] = lt.begin()->second;
          }
          return v;
        };
        std::vector<Vec> arows, brows;
        std::vector<State> agen;
        for (const auto& m : mons) {
          long e = lam - lam0(m);
          if (e >= 0) {
            FunctionElem xp = sys.scalar(Rational(1));
            for (long t = 0; t < e; ++t) xp = xp * x;
            State u0 = State::term(sys, xp, m.vars());
            agen.push_back(u0);
            arows.push_back(vec_of(u0));
          }
          long j = -lam - lam0(m);  // the transition negates the eigenvalue
          if (j >= 0) {
            FunctionElem xp = sys.scalar(Rational(1));
            for (long t = 0; t < j; ++t) xp = xp * x;
            State u1 = transform_state(gi, State::term(sys, xp, m.vars()));
            if (!u1.is_zero()) brows.push_back(vec_of(u1));
          }
        }
        std::vector<Vec> all = arows;
        all.insert(all.end(), brows.begin(), brows.end());
        int ra = rank_of(arows, cols), rb = rank_of(brows, cols),
            rab = rank_of(all, cols);
        long long gamma_l = ra + rb - rab;
        long long h1_l = cols - rab;
        gamma += gamma_l;
        h1 += h1_l;
        if ((std::labs(lam) >= lam_max - 1) && (gamma_l != 0 || h1_l != 0))
          boundary_clear = false;

        if (gamma_l > 0) {
          // intersection witnesses from the nullspace of [A | B]
          Mat<Rational> stacked(cols, static_cast<int>(all.size()));
          for (size_t i = 0; i < all.size(); ++i)
            for (const auto& [j2, r] : all[i]) stacked.at(j2, static_cast<int>(i)) = r;
          auto null = nullspace(std::move(stacked), Rational(1));
          for (const auto& v : null) {
            State sec = State::zero(sys);
            for (size_t i = 0; i < agen.size(); ++i)
              if (!v[i].is_zero()) sec += agen[i] * v[i];
            if (!sec.is_zero()) witness.push_back(sec);
          }
        }
      }
      stable = boundary_clear;
    }
    if (!stable)
      throw Error(ErrorCode::kWindowExhausted,
                  "no stabilization at weight " + std::to_string(w));
    res.gamma_ranks.push_back(gamma);
    res.h1_ranks.push_back(h1);
    res.witnesses.push_back(std::move(witness));
    res.report.add("weight " + std::to_string(w) + ": Gamma rank " +
                       std::to_string(gamma) + ", H^1 rank " + std::to_string(h1),
                   true);
  }
  return res;
}

std::vector<long long> q_expansion_vacuum(long wmax) {
  // prod_{n >= 1} (1 - q^n)^{-2}
  std::vector<long long> acc(static_cast<size_t>(wmax + 1), 0);
  acc[0] = 1;
  for (long n = 1; n <= wmax; ++n) {
    for (int rep = 0; rep < 2; ++rep) {
      std::vector<long long> next(acc.size(), 0);
      for (size_t i = 0; i < acc.size(); ++i) {
        if (acc[i] == 0) continue;
        for (size_t k = 0; i + static_cast<size_t>(n) * k < acc.size(); ++k)
          next[i + static_cast<size_t>(n) * k] += acc[i];
      }
      acc = std::move(next);
    }
  }
  return acc;
}

std::vector<long long> q_expansion_global(long wmax) {
  std::vector<long long> v = q_expansion_vacuum(wmax);
  std::vector<long long> out(v.size(), 0);
  long long run = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    run += v[i];
    out[i] = run;  // multiplication by (1-q)^{-1} is the partial sum
  }
  return out;
}

EulerResult euler_character(long wmax) {
  EulerResult res;
  res.report.title = "Euler character of the chiral structure sheaf";
  System sys = p1_system();
  std::vector<long long> expect = q_expansion_vacuum(wmax);
  for (long w = 0; w <= wmax; ++w) {
    long long total = 0;
    for (const auto& m : monomials_of_weight(sys, w)) {
      int r = m.count(Family::kA);
      int s = m.count(Family::kB);
      total += 2 * s - 2 * r + 1;
    }
    res.coeffs.push_back(total);
    res.report.add("weight " + std::to_string(w) + ": sum(2s - 2r + 1) = " +
                       std::to_string(total),
                   total == expect[static_cast<size_t>(w)],
                   "expected " + std::to_string(expect[static_cast<size_t>(w)]));
  }
  return res;
}

namespace {

using TSeries = std::vector<State>;  // index = t-power

TSeries exp_apply(const engine::ModeOperator& op, Rational scale, const TSeries& in,
                  int torder) {
  // out(t) = exp(t * scale * op) in(t)
  const System& sys = in[0].system();
  TSeries out(static_cast<size_t>(torder + 1), State::zero(sys));
  for (size_t j = 0; j < in.size(); ++j) {
    State cur = in[j];
    Rational fact(1);
    for (int i = 0; static_cast<size_t>(i) + j <= static_cast<size_t>(torder); ++i) {
      if (i > 0) {
        cur = op(cur) * scale;
        fact = fact * Rational(1, i);
      }
      out[j + static_cast<size_t>(i)] += cur * fact;
      if (cur.is_zero()) break;
    }
  }
  return out;
}

// rational reconstruction of a scalar t-series over the field of
// x-rational functions; returns the value at t = 1
FunctionElem reconstruct_at_one(const std::vector<FunctionElem>& c, int torder,
                                const FunctionElem& one) {
  const FunctionElem zero = one - one;
  int d = torder / 2;
  // unknowns q_1..q_d with q_0 = 1: conditions (c*q)_m = 0 for m in (d, torder]
  int rows = torder - d;
  Mat<FunctionElem> mat(rows, d, zero);
  std::vector<FunctionElem> rhs(static_cast<size_t>(rows), zero);
  for (int m = d + 1; m <= torder; ++m) {
    int row = m - d - 1;
    for (int j = 1; j <= d; ++j) {
      if (m - j >= 0 && static_cast<size_t>(m - j) < c.size())
        mat.at(row, j - 1) = c[static_cast<size_t>(m - j)];
    }
    rhs[static_cast<size_t>(row)] = -c[static_cast<size_t>(m)];
  }
  // solve by rref on the augmented matrix
  Mat<FunctionElem> aug(rows, d + 1, zero);
  for (int r = 0; r < rows; ++r) {
    for (int j = 0; j < d; ++j) aug.at(r, j) = mat.at(r, j);
    aug.at(r, d) = rhs[static_cast<size_t>(r)];
  }
  auto pivots = rref(aug);
  std::vector<FunctionElem> q(static_cast<size_t>(d + 1), zero);
  q[0] = one;
  for (size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == d)
      throw Error(ErrorCode::kFlowNotRational, "inconsistent reconstruction system");
    q[static_cast<size_t>(pivots[i] + 1)] = aug.at(static_cast<int>(i), d);
  }
  // p = (c * q) truncated at degree d, and certification on all terms
  std::vector<FunctionElem> p(static_cast<size_t>(d + 1), zero);
  for (int m = 0; m < static_cast<int>(c.size()); ++m) {
    FunctionElem acc = zero;
    for (int j = 0; j <= d && j <= m; ++j) acc += q[static_cast<size_t>(j)] * c[static_cast<size_t>(m - j)];
    if (m <= d) {
      p[static_cast<size_t>(m)] = acc;
    } else if (!acc.is_zero()) {
      throw Error(ErrorCode::kFlowNotRational,
                  "reconstruction fails certification at t^" + std::to_string(m));
    }
  }
  FunctionElem psum = zero, qsum = zero;
  for (const auto& v : p) psum += v;
  for (const auto& v : q) qsum += v;
  if (qsum.is_zero())
    throw Error(ErrorCode::kFlowNotRational, "denominator vanishes at t = 1");
  return psum * qsum.inverse();
}

State series_eval_at_one(const TSeries& series, int torder) {
  const System& sys = series[0].system();
  // collect all monomials, reconstruct each scalar coefficient
  std::set<Monomial> mons;
  for (const auto& st : series)
    for (const auto& [m, c] : st.terms()) mons.insert(m);
  const FunctionElem one = sys.scalar(Rational(1));
  State out = State::zero(sys);
  for (const auto& m : mons) {
    std::vector<FunctionElem> c;
    for (const auto& st : series) {
      auto it = st.terms().find(m);
      c.push_back(it == st.terms().end() ? one - one : it->second);
    }
    FunctionElem v = reconstruct_at_one(c, torder, one);
    if (!v.is_zero()) out.add_term(m, v);
  }
  return out;
}

// eigenvalue of int E11 on a Laurent-monomial term, or throw
long e11_eigenvalue(const Monomial& m, long xexp) {
  return xexp + m.count(Family::kB) - m.count(Family::kA);
}

}  // namespace

State flow_eval(const State& X, const State& s, int torder) {
  engine::ModeOperator op = engine::fourier_derivation(X);
  TSeries in(1, s);
  TSeries series = exp_apply(op, Rational(1), in, torder + 2);
  return series_eval_at_one(series, torder);
}

State reflect(const State& s, int torder) {
  System sys = p1_system();
  WakimotoFields wf = wakimoto_fields();
  engine::ModeOperator p_op = engine::fourier_derivation(wf.e21);
  engine::ModeOperator m_op = engine::fourier_derivation(wf.e12);

  TSeries series(1, s);
  int T = torder + 2;
  series = exp_apply(p_op, Rational(1), series, T);
  series = exp_apply(m_op, Rational(-1), series, T);
  series = exp_apply(p_op, Rational(1), series, T);
  State u = series_eval_at_one(series, torder);

  // exp(pi sqrt(-1) int E11) as the parity operator on integer eigenspaces
  State out = State::zero(sys);
  for (const auto& [m, c] : u.terms()) {
    for (const auto& [e, r] : laurent_terms(c)) {
      long lambda = e11_eigenvalue(m, e);
      Rational coeff = (lambda % 2 == 0) ? r : -r;
      FunctionElem mono =
          e >= 0 ? FunctionElem::rational(Poly::variable(1, 0), Poly(1, Rational(1)))
                 : FunctionElem::rational(Poly(1, Rational(1)), Poly::variable(1, 0));
      FunctionElem term = sys.scalar(coeff);
      for (long t = 0; t < (e < 0 ? -e : e); ++t) term = term * mono;
      out.add_term(m, term);
    }
  }
  return out;
}

}  // namespace sheaf
}  // namespace vxa
