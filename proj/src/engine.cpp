#include "vxa/engine.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

namespace vxa {
namespace engine {

namespace {

bool is_creation(Family f, long mode) {
  return mode <= (family_is_weight_one(f) ? -1 : 0);
}

// contraction value of the annihilator (fam, m) against a creation variable
// of matching index; zero when the pair does not contract
int contraction_value(Family op, Family var) {
  switch (op) {
    case Family::kA: return var == Family::kB ? 1 : 0;
    case Family::kB: return var == Family::kA ? -1 : 0;
    case Family::kPhi: return var == Family::kPsi ? 1 : 0;
    case Family::kPsi: return var == Family::kPhi ? 1 : 0;
  }
  return 0;
}

}  // namespace

State apply_generator_mode(Family family, int index, long mode, const State& s) {
  const System& sys = s.system();
  if (!sys.allows(family))
    throw Error(ErrorCode::kInvalidMode, "family not in system");
  State out(sys);

  if (is_creation(family, mode) || (family == Family::kB && mode == 0)) {
    for (const auto& [m, c] : s.terms()) {
      std::vector<ModeVar> vars = m.vars();
      vars.insert(vars.begin(), ModeVar{family, index, mode});
      out += State::normalize(sys, {{c, vars}});
    }
    return out;
  }

  const bool op_odd = family_is_odd(family);
  for (const auto& [m, c] : s.terms()) {
    // a^i_0 differentiates the coefficient ring (the zero modes b^i = x_i)
    if (family == Family::kA && mode == 0) {
      out.add_term(m, c.partial(index - 1));
      continue;
    }
    int sign = 1;
    const auto& vars = m.vars();
    for (size_t j = 0; j < vars.size(); ++j) {
      const ModeVar& v = vars[j];
      int cv = contraction_value(family, v.family);
      if (cv != 0 && v.index == index && v.mode == -mode) {
        std::vector<ModeVar> rest;
        rest.reserve(vars.size() - 1);
        for (size_t t = 0; t < vars.size(); ++t)
          if (t != j) rest.push_back(vars[t]);
        Rational val(cv * sign);
        out.add_term(Monomial(std::move(rest)), c * val);
      }
      if (op_odd && v.is_odd()) sign = -sign;
    }
  }
  return out;
}

namespace {

struct LetterField {
  // x(z) = d^(d) of the base family field; weight-0 base fields have
  // paper modes shifted by one against Borcherds indices
  Family family;
  int index;
  long d;    // derivative order
  long w0;   // weight of the base field (0 or 1)

  static LetterField of(const ModeVar& v) {
    long w0 = family_is_weight_one(v.family) ? 1 : 0;
    return LetterField{v.family, v.index, -v.mode - w0, w0};
  }

  // [x(z)]_{(u)} = (-1)^d binom(u, d) * base mode (u + 1 - w0 - d)
  Rational coeff(long u) const {
    BigInt b = binomial(u, d);
    if (d % 2 != 0) b = -b;
    return Rational(b, 1);
  }
  long base_mode(long u) const { return u + 1 - w0 - d; }

  // applies [x(z)]_{(u)} to s
  State apply(long u, const State& s) const {
    Rational c = coeff(u);
    if (c.is_zero()) return State::zero(s.system());
    return apply_generator_mode(family, index, base_mode(u), s) * c;
  }
};

// total weight removable by b-family annihilators = weight carried by
// a-variables (the bound M of the finiteness argument)
long b_annihilatable_weight(const State& s) {
  long m = 0;
  for (const auto& [mon, c] : s.terms()) {
    long w = 0;
    for (const auto& v : mon.vars())
      if (v.family == Family::kA) w += v.weight();
    m = std::max(m, w);
  }
  return m;
}

int coeff_poly_degree(const State& s) {
  int d = 0;
  for (const auto& [mon, c] : s.terms()) {
    if (c.mode() == CoeffMode::kSeries) continue;
    d = std::max(d, c.poly_degree());
  }
  return d;
}

// recursive enumeration of Taylor tuples: multisets of (variable, nonzero
// mode) with positive part summing to <= M and matching total k
struct TaylorEnum {
  const State& s;
  const FunctionElem& f;
  long k;
  long M;
  State out;
  std::map<Exps, FunctionElem> partial_cache;

  explicit TaylorEnum(const FunctionElem& f_, long k_, const State& s_)
      : s(s_), f(f_), k(k_), M(b_annihilatable_weight(s_)), out(State::zero(s_.system())) {}

  const FunctionElem& partial_f(const Exps& counts) {
    auto it = partial_cache.find(counts);
    if (it != partial_cache.end()) return it->second;
    // reduce one derivative from a cached neighbor
    for (size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] == 0) continue;
      Exps prev = counts;
      prev[i] -= 1;
      FunctionElem d = partial_f(prev).partial(static_cast<int>(i));
      return partial_cache.emplace(counts, std::move(d)).first->second;
    }
    return partial_cache.emplace(counts, f).first->second;
  }

  // chosen: list of (var index, mode, multiplicity) slots in strictly
  // increasing (var, mode) order; budgets follow the finiteness bounds
  // sum(pos) <= M and sum(|neg|) <= M - k
  void run() {
    std::vector<std::tuple<int, long, int>> chosen;
    rec(std::max<long>(0, M - k), M, chosen);
  }

  void emit(const std::vector<std::tuple<int, long, int>>& chosen) {
    const System& sys = s.system();
    Exps counts(static_cast<size_t>(sys.nvars), 0u);
    Rational mult_factor(1);
    for (auto [i, mode, mult] : chosen) {
      counts[static_cast<size_t>(i)] += static_cast<unsigned>(mult);
      mult_factor = mult_factor / Rational(factorial(mult), 1);
    }
    FunctionElem df = partial_f(counts);
    if (df.is_zero()) return;
    // annihilation modes first, then creations; they all commute
    State cur = s;
    for (auto [i, mode, mult] : chosen) {
      if (mode <= 0) continue;
      for (int t = 0; t < mult && !cur.is_zero(); ++t)
        cur = apply_generator_mode(Family::kB, i + 1, mode, cur);
    }
    if (cur.is_zero()) return;
    for (auto [i, mode, mult] : chosen) {
      if (mode >= 0) continue;
      for (int t = 0; t < mult; ++t)
        cur = apply_generator_mode(Family::kB, i + 1, mode, cur);
    }
    out += cur * (df * mult_factor);
  }

  void rec(long neg_budget, long pos_budget,
           std::vector<std::tuple<int, long, int>>& chosen) {
    long total = 0;
    for (auto [i, mode, mult] : chosen) total += mode * mult;
    if (total == k) emit(chosen);

    const int nv = s.system().nvars;
    // extend with a new (var, mode, mult) strictly after the last chosen slot
    int start_var = 0;
    long start_mode_excl = 0;
    bool have_last = !chosen.empty();
    if (have_last) {
      start_var = std::get<0>(chosen.back());
      start_mode_excl = std::get<1>(chosen.back());
    }
    for (int i = start_var; i < nv; ++i) {
      long mode_from = (have_last && i == start_var) ? start_mode_excl + 1 : -neg_budget;
      mode_from = std::max(mode_from, -neg_budget);
      for (long mode = mode_from; mode <= pos_budget; ++mode) {
        if (mode == 0) continue;
        long abs_m = mode < 0 ? -mode : mode;
        long max_mult = mode > 0 ? pos_budget / abs_m : neg_budget / abs_m;
        for (int mult = 1; mult <= max_mult; ++mult) {
          chosen.emplace_back(i, mode, mult);
          long np = pos_budget - (mode > 0 ? abs_m * mult : 0);
          long nn = neg_budget - (mode < 0 ? abs_m * mult : 0);
          rec(nn, np, chosen);
          chosen.pop_back();
        }
      }
    }
  }
};

}  // namespace

State taylor_field_mode(const FunctionElem& f, long k, const State& s) {
  const System& sys = s.system();
  if (f.is_zero()) return State::zero(sys);
  if (f.mode() == CoeffMode::kSeries) {
    // the budget is checked against the run's declared truncation order;
    // individual elements keep their own (possibly lower) validity tags
    long w_out = std::max<long>(0, s.max_weight() - k);
    int need = static_cast<int>(w_out) + coeff_poly_degree(s) + 2;
    int have = std::max(sys.series_order, f.order());
    if (have < need)
      throw Error(ErrorCode::kTruncationUnderflow,
                  "series order " + std::to_string(have) + " below budget " +
                      std::to_string(need));
  }
  TaylorEnum e(f, k, s);
  e.run();
  return e.out;
}

namespace {

State field_mode_impl(const FunctionElem& coeff, const std::vector<ModeVar>& word,
                      size_t from, long p, const State& s) {
  const System& sys = s.system();
  if (from == word.size()) {
    // innermost factor: the Taylor field of the coefficient; Borcherds p is
    // paper mode p + 1 for a weight-0 field
    return taylor_field_mode(coeff, p + 1, s);
  }
  const ModeVar& xv = word[from];
  LetterField x = LetterField::of(xv);
  // parity of the rest of the word (the coefficient is even)
  int rest_parity = 0;
  for (size_t t = from + 1; t < word.size(); ++t)
    rest_parity ^= word[t].is_odd() ? 1 : 0;
  const bool koszul = xv.is_odd() && rest_parity;

  State out = State::zero(sys);

  // rough weight content of the rest-word for the q cutoff
  long rest_weight = 0;
  for (size_t t = from + 1; t < word.size(); ++t) rest_weight += word[t].weight();

  // x(z)+ R(z): modes u = p - 1 - q with u <= -1, i.e. q >= p
  long qmax = s.max_weight() + rest_weight - 1;
  for (long q = p; q <= qmax; ++q) {
    State rq = field_mode_impl(coeff, word, from + 1, q, s);
    if (rq.is_zero()) continue;
    out += x.apply(p - 1 - q, rq);
  }

  // (-1)^{x~ R~} R(z) x(z)-: modes u >= 0 acting first
  long umax = s.max_weight() - 1 + x.w0 + x.d;
  for (long u = std::max<long>(x.d, 0); u <= umax; ++u) {
    State xs = x.apply(u, s);
    if (xs.is_zero()) continue;
    State t = field_mode_impl(coeff, word, from + 1, p - 1 - u, xs);
    if (t.is_zero()) continue;
    if (koszul) t = -t;
    out += t;
  }
  return out;
}

}  // namespace

State field_mode_word(const FunctionElem& coeff, const std::vector<ModeVar>& word,
                      long p, const State& s) {
  return field_mode_impl(coeff, word, 0, p, s);
}

State field_mode(const State& a, long p, const State& s) {
  State out = State::zero(s.system());
  if (!(a.system() == s.system()))
    throw Error(ErrorCode::kDomainError, "states from different systems");
  for (const auto& [m, c] : a.terms()) out += field_mode_impl(c, m.vars(), 0, p, s);
  return out;
}

OpeSingularPart ope(const State& a, const State& b) {
  if (!a.is_weight_homogeneous() || !b.is_weight_homogeneous())
    throw Error(ErrorCode::kDomainError, "ope requires weight-homogeneous states");
  OpeSingularPart r;
  long bound = a.max_weight() + b.max_weight();  // locality bound
  for (long n = 0; n < bound; ++n) {
    State c = field_mode(a, n, b);
    if (!c.is_zero()) r.poles[n + 1] = std::move(c);
  }
  return r;
}

std::string OpeSingularPart::str() const {
  if (poles.empty()) return "{}";
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto it = poles.rbegin(); it != poles.rend(); ++it) {
    if (!first) os << ", ";
    first = false;
    os << "pole " << it->first << ": " << it->second.str();
  }
  os << "}";
  return os.str();
}

State translate(const State& s) {
  const System& sys = s.system();
  State out = State::zero(sys);
  for (const auto& [m, c] : s.terms()) {
    const auto& vars = m.vars();
    // derivative of each letter in place
    for (size_t j = 0; j < vars.size(); ++j) {
      std::vector<ModeVar> nv = vars;
      long w = nv[j].weight();
      long factor = family_is_weight_one(nv[j].family) ? w : w + 1;
      nv[j].mode -= 1;
      out += State::normalize(sys, {{c * Rational(factor), nv}});
    }
    // coefficient part: sum_i (df/dx_i) b^i_{-1}; Clifford systems have a
    // constant coefficient ring
    for (int i = 0; i < sys.nvars; ++i) {
      FunctionElem d = c.partial(i);
      if (d.is_zero()) continue;
      if (!sys.has_bosons())
        throw Error(ErrorCode::kDomainError,
                    "non-constant coefficient in a Clifford system");
      std::vector<ModeVar> nv = vars;
      nv.push_back(ModeVar{Family::kB, i + 1, -1});
      out += State::normalize(sys, {{d, nv}});
    }
  }
  return out;
}

}  // namespace engine
}  // namespace vxa
