#include "vxa/function_elem.hpp"

#include <cassert>

#include "vxa/linalg.hpp"

namespace vxa {

FunctionElem FunctionElem::poly(Poly p) {
  FunctionElem f;
  f.mode_ = CoeffMode::kPoly;
  f.den_ = Poly(p.nvars(), Rational(1));
  f.num_ = std::move(p);
  return f;
}

FunctionElem FunctionElem::rational(Poly num, Poly den) {
  if (den.is_zero()) throw Error(ErrorCode::kDomainError, "zero denominator");
  FunctionElem f;
  f.mode_ = CoeffMode::kRational;
  f.num_ = std::move(num);
  f.den_ = std::move(den);
  f.normalize_rational();
  return f;
}

FunctionElem FunctionElem::series(Poly p, int order) {
  if (order < 0) throw Error(ErrorCode::kDomainError, "negative series order");
  FunctionElem f;
  f.mode_ = CoeffMode::kSeries;
  f.den_ = Poly(p.nvars(), Rational(1));
  f.num_ = p.truncate(order);
  f.order_ = order;
  return f;
}

FunctionElem FunctionElem::constant(int nvars, const Rational& c, CoeffMode mode,
                                    int order) {
  Poly p(nvars, c);
  switch (mode) {
    case CoeffMode::kPoly: return poly(std::move(p));
    case CoeffMode::kRational: return rational(std::move(p), Poly(nvars, Rational(1)));
    case CoeffMode::kSeries: return series(std::move(p), order);
  }
  throw Error(ErrorCode::kDomainError, "bad mode");
}

FunctionElem FunctionElem::variable(int nvars, int i, CoeffMode mode, int order) {
  Poly p = Poly::variable(nvars, i);
  switch (mode) {
    case CoeffMode::kPoly: return poly(std::move(p));
    case CoeffMode::kRational: return rational(std::move(p), Poly(nvars, Rational(1)));
    case CoeffMode::kSeries: return series(std::move(p), order);
  }
  throw Error(ErrorCode::kDomainError, "bad mode");
}

void FunctionElem::normalize_rational() {
  if (num_.is_zero()) {
    den_ = Poly(num_.nvars(), Rational(1));
    return;
  }
  Poly g = poly_gcd(num_, den_);
  if (!g.is_one()) {
    num_ = *num_.divide_exact(g);
    den_ = *den_.divide_exact(g);
  }
  // canonical scaling: den integer-primitive with positive leading coeff
  Rational c = den_.content();
  if (!c.is_one()) {
    den_ = den_ * c.inverse();
    num_ = num_ * c.inverse();
  }
}

Rational FunctionElem::eval_zero() const {
  if (mode_ != CoeffMode::kRational) return num_.constant_term();
  Rational d = den_.constant_term();
  if (d.is_zero())
    throw Error(ErrorCode::kDomainError, "pole at the origin");
  return num_.constant_term() / d;
}

namespace {

// shared-mode promotion: kPoly promotes into either other mode
struct Promoted {
  CoeffMode mode;
  Poly an, ad, bn, bd;
  int order;
};

Promoted promote(const FunctionElem& a, const FunctionElem& b) {
  auto lift = [](const FunctionElem& x, CoeffMode m, int ord) {
    if (x.mode() == m) return x;
    if (x.mode() != CoeffMode::kPoly)
      throw Error(ErrorCode::kModeMismatch, "cannot mix rational and series elements");
    switch (m) {
      case CoeffMode::kRational:
        return FunctionElem::rational(x.num(), Poly(x.nvars(), Rational(1)));
      case CoeffMode::kSeries:
        return FunctionElem::series(x.num(), ord);
      default:
        return x;
    }
  };
  CoeffMode m = a.mode();
  if (b.mode() != m) {
    if (a.mode() == CoeffMode::kPoly) m = b.mode();
    else if (b.mode() == CoeffMode::kPoly) m = a.mode();
    else throw Error(ErrorCode::kModeMismatch, "cannot mix rational and series elements");
  }
  int ord = -1;
  if (m == CoeffMode::kSeries) {
    ord = -1;
    if (a.mode() == CoeffMode::kSeries) ord = a.order();
    if (b.mode() == CoeffMode::kSeries)
      ord = (ord < 0) ? b.order() : std::min(ord, b.order());
  }
  FunctionElem pa = lift(a, m, ord), pb = lift(b, m, ord);
  return Promoted{m, pa.num(), pa.den(), pb.num(), pb.den(), ord};
}

}  // namespace

FunctionElem FunctionElem::operator-() const {
  FunctionElem f = *this;
  f.num_ = -f.num_;
  return f;
}

FunctionElem operator+(const FunctionElem& a, const FunctionElem& b) {
  Promoted p = promote(a, b);
  switch (p.mode) {
    case CoeffMode::kPoly: return FunctionElem::poly(p.an + p.bn);
    case CoeffMode::kSeries:
      return FunctionElem::series(p.an + p.bn, p.order);
    case CoeffMode::kRational:
      return FunctionElem::rational(p.an * p.bd + p.bn * p.ad, p.ad * p.bd);
  }
  throw Error(ErrorCode::kDomainError, "bad mode");
}

FunctionElem operator-(const FunctionElem& a, const FunctionElem& b) { return a + (-b); }

FunctionElem operator*(const FunctionElem& a, const FunctionElem& b) {
  Promoted p = promote(a, b);
  switch (p.mode) {
    case CoeffMode::kPoly: return FunctionElem::poly(p.an * p.bn);
    case CoeffMode::kSeries:
      return FunctionElem::series((p.an * p.bn).truncate(p.order), p.order);
    case CoeffMode::kRational:
      return FunctionElem::rational(p.an * p.bn, p.ad * p.bd);
  }
  throw Error(ErrorCode::kDomainError, "bad mode");
}

FunctionElem FunctionElem::operator*(const Rational& c) const {
  FunctionElem f = *this;
  f.num_ = f.num_ * c;
  return f;
}

Poly series_inverse(const Poly& a, int order) {
  Rational a0 = a.constant_term();
  if (a0.is_zero())
    throw Error(ErrorCode::kNotInvertible, "series with zero constant term");
  // 1/a: solve (a * c) = 1 degree by degree
  Rational c0 = a0.inverse();
  Poly c(a.nvars(), c0);
  for (int d = 1; d <= order; ++d) {
    // degree-d part of a*c must vanish: a0*c_d = -sum_{e=1..d} a_e c_{d-e}
    Poly partial_prod = (a.truncate(d) * c).homogeneous_part(static_cast<unsigned>(d));
    c += partial_prod * (-c0);
  }
  return c.truncate(order);
}

FunctionElem FunctionElem::inverse() const {
  if (num_.is_zero()) throw Error(ErrorCode::kNotInvertible, "zero element");
  switch (mode_) {
    case CoeffMode::kPoly:
      // closed under inversion only for constants; otherwise move to kRational
      if (num_.is_constant())
        return FunctionElem::poly(Poly(num_.nvars(), num_.constant_term().inverse()));
      return FunctionElem::rational(Poly(num_.nvars(), Rational(1)), num_);
    case CoeffMode::kRational:
      return FunctionElem::rational(den_, num_);
    case CoeffMode::kSeries:
      return FunctionElem::series(series_inverse(num_, order_), order_);
  }
  throw Error(ErrorCode::kDomainError, "bad mode");
}

FunctionElem FunctionElem::partial(int i) const {
  switch (mode_) {
    case CoeffMode::kPoly: return FunctionElem::poly(num_.partial(i));
    case CoeffMode::kSeries:
      return FunctionElem::series(num_.partial(i), order_ > 0 ? order_ - 1 : 0);
    case CoeffMode::kRational:
      return FunctionElem::rational(num_.partial(i) * den_ - num_ * den_.partial(i),
                                    den_ * den_);
  }
  throw Error(ErrorCode::kDomainError, "bad mode");
}

FunctionElem FunctionElem::substitute(const std::vector<FunctionElem>& args) const {
  if (static_cast<int>(args.size()) != nvars())
    throw Error(ErrorCode::kArityMismatch, "substitution arity");
  // evaluate num and den as polynomials in the args via FunctionElem arithmetic
  auto eval_poly = [&](const Poly& p) {
    assert(!args.empty());
    FunctionElem acc = FunctionElem::constant(args[0].nvars(), Rational(0), args[0].mode(),
                                              args[0].order());
    std::vector<std::vector<FunctionElem>> pows(args.size());
    for (size_t i = 0; i < args.size(); ++i)
      pows[i].push_back(FunctionElem::constant(args[0].nvars(), Rational(1), args[0].mode(),
                                               args[0].order()));
    for (const auto& [e, c] : p.terms()) {
      FunctionElem t = FunctionElem::constant(args[0].nvars(), c, args[0].mode(),
                                              args[0].order());
      for (size_t i = 0; i < args.size(); ++i) {
        while (pows[i].size() <= e[i]) pows[i].push_back(pows[i].back() * args[i]);
        if (e[i] > 0) t *= pows[i][e[i]];
      }
      acc += t;
    }
    return acc;
  };
  if (args.empty()) return *this;
  FunctionElem n = eval_poly(num_);
  if (mode_ == CoeffMode::kRational && !den_.is_one()) {
    n = n * eval_poly(den_).inverse();
  }
  // a series substituted into is only valid to its own order
  if (mode_ == CoeffMode::kSeries && n.mode() == CoeffMode::kSeries &&
      n.order() > order_) {
    n = n.to_series(order_);
  }
  return n;
}

bool operator==(const FunctionElem& a, const FunctionElem& b) {
  return a.mode_ == b.mode_ && a.order_ == b.order_ && a.num_ == b.num_ &&
         a.den_ == b.den_;
}

bool FunctionElem::operator<(const FunctionElem& o) const {
  if (mode_ != o.mode_) return mode_ < o.mode_;
  if (order_ != o.order_) return order_ < o.order_;
  if (num_ != o.num_) return num_ < o.num_;
  return den_ < o.den_;
}

FunctionElem FunctionElem::to_series(int order) const {
  switch (mode_) {
    case CoeffMode::kPoly: return series(num_, order);
    case CoeffMode::kSeries:
      if (order_ < order)
        throw Error(ErrorCode::kTruncationUnderflow,
                    "series order " + std::to_string(order_) + " below requested " +
                        std::to_string(order));
      return series(num_.truncate(order), order);
    case CoeffMode::kRational: {
      Poly inv = series_inverse(den_, order);
      return series((num_.truncate(order) * inv).truncate(order), order);
    }
  }
  throw Error(ErrorCode::kDomainError, "bad mode");
}

bool FunctionElem::agrees_to_order(const FunctionElem& o, int order) const {
  return to_series(order).num() == o.to_series(order).num();
}

std::string FunctionElem::str() const {
  std::string s = num_.str();
  if (mode_ == CoeffMode::kRational && !den_.is_one()) {
    bool wrap_num = num_.terms().size() > 1;
    bool wrap_den = den_.terms().size() > 1 || total_degree(den_.terms().begin()->first) > 0;
    std::string res = wrap_num ? "(" + s + ")" : s;
    res += "/";
    res += wrap_den ? "(" + den_.str() + ")" : den_.str();
    return res;
  }
  return s;
}

std::vector<FunctionElem> compose_tuple(const std::vector<FunctionElem>& f,
                                        const std::vector<FunctionElem>& g) {
  std::vector<FunctionElem> out;
  out.reserve(f.size());
  for (const auto& fi : f) out.push_back(fi.substitute(g));
  return out;
}

std::vector<FunctionElem> compose_and_invert(const std::vector<FunctionElem>& g,
                                             int order) {
  const int n = static_cast<int>(g.size());
  if (n == 0) return {};
  const int nv = g[0].nvars();
  if (nv != n) throw Error(ErrorCode::kDomainError, "coordinate change must be square");
  for (const auto& gi : g) {
    if (gi.mode() != CoeffMode::kSeries)
      throw Error(ErrorCode::kDomainError, "compose_and_invert expects series input");
    if (!gi.num().constant_term().is_zero())
      throw Error(ErrorCode::kNotInvertibleChange, "change must fix the origin");
  }

  // Jacobian at the origin
  Mat<Rational> jac(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) jac.at(i, j) = g[i].num().partial(j).constant_term();
  auto jinv = invert(jac);
  if (!jinv)
    throw Error(ErrorCode::kNotInvertibleChange, "Jacobian singular at the origin");

  // linear part of f: A^{-1} x~
  std::vector<Poly> f(static_cast<size_t>(n), Poly(nv));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      f[i].add_term([&] { Exps e(nv, 0); e[j] = 1; return e; }(), jinv->at(i, j));

  std::vector<Poly> ainv_x = f;  // substitution x~ -> A^{-1} x~, reused per step

  // order-by-order correction: degree-(k+1) error e of f(g(x)) - x is removed
  // by f <- f - e(A^{-1} x~)
  std::vector<Poly> gp;
  gp.reserve(g.size());
  for (const auto& gi : g) gp.push_back(gi.num().truncate(order));
  for (int k = 1; k < order; ++k) {
    for (int i = 0; i < n; ++i) {
      Poly comp = f[i].substitute(gp).truncate(k + 1);
      Poly err = comp - Poly::variable(nv, i);
      Poly top = err.homogeneous_part(static_cast<unsigned>(k + 1));
      if (top.is_zero()) continue;
      f[i] -= top.substitute(ainv_x);
    }
  }

  // back-substitution check (post-condition of the construction)
  for (int i = 0; i < n; ++i) {
    Poly comp = f[i].substitute(gp).truncate(order);
    if (comp != Poly::variable(nv, i))
      throw Error(ErrorCode::kNotInvertibleChange, "back-substitution failed");
  }

  std::vector<FunctionElem> out;
  out.reserve(g.size());
  for (auto& fi : f) out.push_back(FunctionElem::series(std::move(fi), order));
  return out;
}

}  // namespace vxa
