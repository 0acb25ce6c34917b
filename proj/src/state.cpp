#include "vxa/state.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace vxa {

std::string ModeVar::str() const {
  std::ostringstream os;
  os << family_name(family) << index << "_{" << mode << "}";
  return os.str();
}

long Monomial::weight() const {
  long w = 0;
  for (const auto& v : vars_) w += v.weight();
  return w;
}

int Monomial::charge() const {
  int c = 0;
  for (const auto& v : vars_) {
    if (v.family == Family::kPhi) ++c;
    if (v.family == Family::kPsi) --c;
  }
  return c;
}

int Monomial::parity() const {
  int p = 0;
  for (const auto& v : vars_) p ^= v.is_odd() ? 1 : 0;
  return p;
}

int Monomial::count(Family f) const {
  int n = 0;
  for (const auto& v : vars_) n += (v.family == f) ? 1 : 0;
  return n;
}

bool Monomial::operator<(const Monomial& o) const {
  auto it = vars_.begin(), jt = o.vars_.begin();
  for (; it != vars_.end() && jt != o.vars_.end(); ++it, ++jt) {
    if (*it == *jt) continue;
    return ModeVar::before(*it, *jt);
  }
  return vars_.size() < o.vars_.size();
}

std::vector<std::pair<Family, long>> Monomial::shape() const {
  std::vector<std::pair<Family, long>> s;
  s.reserve(vars_.size());
  for (const auto& v : vars_) s.emplace_back(v.family, v.mode);
  return s;
}

std::string Monomial::str() const {
  std::string s;
  for (const auto& v : vars_) {
    if (!s.empty()) s += " ";
    s += v.str();
  }
  return s;
}

State State::normalize(const System& sys,
                       const std::vector<std::pair<FunctionElem, std::vector<ModeVar>>>& raw) {
  State out(sys);
  for (const auto& [coeff0, vars0] : raw) {
    FunctionElem coeff = coeff0;
    std::vector<ModeVar> vars;
    vars.reserve(vars0.size());
    for (const auto& v : vars0) {
      if (v.index < 1 || v.index > sys.nvars)
        throw Error(ErrorCode::kInvalidMode, "coordinate index out of range: " + v.str());
      if (!sys.allows(v.family))
        throw Error(ErrorCode::kInvalidMode,
                    std::string("family not in system: ") + v.str());
      long max_mode = family_is_weight_one(v.family) ? -1 : 0;
      if (v.mode > max_mode)
        throw Error(ErrorCode::kInvalidMode, "not a creation mode: " + v.str());
      if (v.family == Family::kB && v.mode == 0) {
        coeff = coeff * sys.coordinate(v.index - 1);  // b^i_0 lives in the ring
      } else {
        vars.push_back(v);
      }
    }
    // sort into canonical order, tracking the Koszul sign of odd swaps
    int sign = 1;
    for (size_t i = 0; i + 1 < vars.size(); ++i) {
      size_t best = i;
      for (size_t j = i + 1; j < vars.size(); ++j)
        if (ModeVar::before(vars[j], vars[best])) best = j;
      if (best != i) {
        // rotate vars[best] to position i; count odd-odd transpositions
        ModeVar moved = vars[best];
        for (size_t j = best; j > i; --j) {
          vars[j] = vars[j - 1];
          if (moved.is_odd() && vars[j].is_odd()) sign = -sign;
        }
        vars[i] = moved;
      }
    }
    // odd squares annihilate the term
    bool dead = false;
    for (size_t i = 0; i + 1 < vars.size(); ++i) {
      if (vars[i].is_odd() && vars[i] == vars[i + 1]) { dead = true; break; }
    }
    if (dead) continue;
    if (sign < 0) coeff = -coeff;
    out.add_term(Monomial(std::move(vars)), coeff);
  }
  return out;
}

void State::add_term(const Monomial& m, const FunctionElem& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_[m] = c;
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

State State::operator-() const {
  State r(sys_);
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

State& State::operator+=(const State& o) {
  if (!(sys_ == o.sys_))
    throw Error(ErrorCode::kDomainError, "states from different systems");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

State& State::operator-=(const State& o) { return *this += -o; }

State State::operator*(const Rational& c) const {
  State r(sys_);
  if (c.is_zero()) return r;
  for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
  return r;
}

State State::operator*(const FunctionElem& c) const {
  State r(sys_);
  for (const auto& [m, k] : terms_) r.add_term(m, k * c);
  return r;
}

bool State::agrees_to_order(const State& o, int order) const {
  State d = *this - o;
  for (const auto& [m, c] : d.terms()) {
    if (!c.to_series(order).is_zero()) return false;
  }
  return true;
}

long State::weight() const {
  if (!is_weight_homogeneous())
    throw Error(ErrorCode::kDomainError, "state is not weight-homogeneous");
  return terms_.empty() ? 0 : terms_.begin()->first.weight();
}

long State::max_weight() const {
  long w = 0;
  for (const auto& [m, c] : terms_) w = std::max(w, m.weight());
  return w;
}

bool State::is_weight_homogeneous() const {
  long w = -1;
  for (const auto& [m, c] : terms_) {
    if (w < 0) w = m.weight();
    else if (m.weight() != w) return false;
  }
  return true;
}

int State::parity() const {
  int p = -1;
  for (const auto& [m, c] : terms_) {
    if (p < 0) p = m.parity();
    else if (m.parity() != p)
      throw Error(ErrorCode::kDomainError, "state is not parity-homogeneous");
  }
  return p < 0 ? 0 : p;
}

std::map<Grading, State> State::grade() const {
  std::map<Grading, State> parts;
  for (const auto& [m, c] : terms_) {
    Grading g{m.weight(), m.charge()};
    auto it = parts.find(g);
    if (it == parts.end()) {
      State s(sys_);
      s.terms_[m] = c;
      parts.emplace(g, std::move(s));
    } else {
      it->second.terms_[m] = c;
    }
  }
  return parts;
}

namespace {

using Shape = std::vector<std::pair<Family, long>>;

// canonical comparison of shapes: entrywise by variable precedence, then by
// length (a prefix counts as smaller)
bool shape_less(const Shape& x, const Shape& y) {
  size_t n = std::min(x.size(), y.size());
  for (size_t i = 0; i < n; ++i) {
    if (x[i] == y[i]) continue;
    // "before" in the word = larger in the filtration order
    ModeVar a{x[i].first, 1, x[i].second}, b{y[i].first, 1, y[i].second};
    return ModeVar::before(b, a);
  }
  return x.size() < y.size();
}

void shapes_rec(const System& sys, const std::vector<std::pair<Family, long>>& alphabet,
                size_t from, long remaining, Shape& cur, std::vector<Shape>& out) {
  if (remaining == 0) {
    // append any number of phi zero modes (weight 0, at most nvars of them),
    // re-sorting so the shape stays a canonical word
    auto emit = [&](int k) {
      Shape s = cur;
      for (int j = 0; j < k; ++j) s.emplace_back(Family::kPhi, 0);
      std::sort(s.begin(), s.end(), [](auto x, auto y) {
        ModeVar a{x.first, 1, x.second}, b{y.first, 1, y.second};
        return ModeVar::before(a, b);
      });
      out.push_back(std::move(s));
    };
    if (sys.has_fermions()) {
      for (int k = 0; k <= sys.nvars; ++k) emit(k);
    } else {
      emit(0);
    }
    return;
  }
  for (size_t i = from; i < alphabet.size(); ++i) {
    auto [fam, mode] = alphabet[i];
    long w = -mode;
    if (w > remaining) continue;
    // odd letters repeat at most nvars times (one per index)
    int max_rep = family_is_odd(fam) ? sys.nvars
                                     : static_cast<int>(remaining / w);
    Shape saved = cur;
    int used = 0;
    for (int rep = 1; rep <= max_rep && rep * w <= remaining; ++rep) {
      cur.emplace_back(fam, mode);
      ++used;
      shapes_rec(sys, alphabet, i + 1, remaining - rep * w, cur, out);
    }
    cur = saved;
    (void)used;
  }
}

}  // namespace

std::vector<Shape> shapes_of_weight(const System& sys, long weight) {
  // alphabet of (family, mode) letters of weight 1..weight in canonical order
  std::vector<std::pair<Family, long>> alphabet;
  for (Family f : {Family::kA, Family::kPsi, Family::kPhi, Family::kB}) {
    if (!sys.allows(f)) continue;
    for (long w = weight; w >= 1; --w) alphabet.emplace_back(f, -w);
  }
  // canonical order of letters: family major, then more negative mode first
  std::sort(alphabet.begin(), alphabet.end(), [](auto x, auto y) {
    ModeVar a{x.first, 1, x.second}, b{y.first, 1, y.second};
    return ModeVar::before(a, b);
  });
  std::vector<Shape> out;
  Shape cur;
  shapes_rec(sys, alphabet, 0, weight, cur, out);
  std::sort(out.begin(), out.end(), shape_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

State State::filtration_symbol(long level) const {
  if (is_zero()) return *this;
  long w = weight();  // requires homogeneity
  auto shapes = shapes_of_weight(sys_, w);
  if (level < 0 || level >= static_cast<long>(shapes.size()))
    return State::zero(sys_);
  const Shape& want = shapes[static_cast<size_t>(level)];
  State r(sys_);
  for (const auto& [m, c] : terms_) {
    if (m.shape() == want) r.terms_[m] = c;
  }
  return r;
}

State State::top_symbol() const {
  if (is_zero()) return *this;
  Shape best;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Shape s = m.shape();
    if (first || shape_less(best, s)) { best = s; first = false; }
  }
  State r(sys_);
  for (const auto& [m, c] : terms_) {
    if (m.shape() == best) r.terms_[m] = c;
  }
  return r;
}

std::string State::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    if (!m.empty()) os << " " << m.str();
    os << " |0>";
  }
  return os.str();
}

namespace {

void monomials_rec(const System& sys, const std::vector<ModeVar>& alphabet, size_t from,
                   long remaining, std::vector<ModeVar>& cur, std::vector<Monomial>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (size_t i = from; i < alphabet.size(); ++i) {
    const ModeVar& v = alphabet[i];
    long w = v.weight();
    if (w > remaining) continue;
    int max_rep = v.is_odd() ? 1 : static_cast<int>(remaining / w);
    size_t base = cur.size();
    for (int rep = 1; rep <= max_rep && rep * w <= remaining; ++rep) {
      cur.push_back(v);
      monomials_rec(sys, alphabet, i + 1, remaining - rep * w, cur, out);
    }
    cur.resize(base);
  }
}

std::vector<ModeVar> creation_alphabet(const System& sys, long max_weight) {
  std::vector<ModeVar> a;
  for (Family f : {Family::kA, Family::kPsi, Family::kPhi, Family::kB}) {
    if (!sys.allows(f)) continue;
    for (long w = 1; w <= max_weight; ++w) {
      for (int i = 1; i <= sys.nvars; ++i) a.push_back(ModeVar{f, i, -w});
    }
  }
  std::sort(a.begin(), a.end(), ModeVar::before);
  return a;
}

}  // namespace

std::vector<Monomial> monomials_of_weight(const System& sys, long w) {
  std::vector<Monomial> out;
  std::vector<ModeVar> cur;
  auto alphabet = creation_alphabet(sys, w);
  monomials_rec(sys, alphabet, 0, w, cur, out);
  return out;
}

std::vector<Monomial> monomials_of_weight_with_phi0(const System& sys, long w) {
  std::vector<Monomial> base = monomials_of_weight(sys, w);
  if (!sys.has_fermions()) return base;
  // all subsets of {phi^1_0 .. phi^N_0}, appended in canonical position
  std::vector<Monomial> out;
  int n = sys.nvars;
  for (const auto& m : base) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<ModeVar> vars = m.vars();
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) vars.push_back(ModeVar{Family::kPhi, i + 1, 0});
      }
      std::sort(vars.begin(), vars.end(), ModeVar::before);
      out.emplace_back(std::move(vars));
    }
  }
  return out;
}

std::vector<Exps> exponents_of_degree(int nvars, int d) {
  std::vector<Exps> out;
  Exps cur(static_cast<size_t>(nvars), 0u);
  // lexicographic enumeration of compositions of d into nvars parts
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == nvars - 1) {
      cur[static_cast<size_t>(pos)] = static_cast<unsigned>(remaining);
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      cur[static_cast<size_t>(pos)] = static_cast<unsigned>(k);
      rec(pos + 1, remaining - k);
    }
  };
  if (nvars == 0) {
    if (d == 0) out.push_back({});
    return out;
  }
  rec(0, d);
  return out;
}

}  // namespace vxa
