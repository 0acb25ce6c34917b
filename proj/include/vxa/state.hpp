#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "vxa/function_elem.hpp"

namespace vxa {

/// Generator families. Order of the enum values is the ordering used by the
/// canonical monomial form: a > psi > phi > b, with more negative modes
/// first inside each family, then by coordinate index.
enum class Family : uint8_t { kA = 0, kPsi = 1, kPhi = 2, kB = 3 };

inline bool family_is_odd(Family f) { return f == Family::kPsi || f == Family::kPhi; }
inline bool family_is_weight_one(Family f) { return f == Family::kA || f == Family::kPsi; }
inline const char* family_name(Family f) {
  switch (f) {
    case Family::kA: return "a";
    case Family::kPsi: return "psi";
    case Family::kPhi: return "phi";
    case Family::kB: return "b";
  }
  return "?";
}

/// One creation variable b^i_n, a^i_n, phi^i_n or psi^i_n. Creation ranges:
/// n <= 0 for b, phi and n <= -1 for a, psi; b^i_0 never survives in a
/// monomial (it is lowered into the coefficient ring by normalization).
struct ModeVar {
  Family family;
  int index;  // 1-based coordinate index
  long mode;  // paper subscript n

  long weight() const { return -mode; }
  bool is_odd() const { return family_is_odd(family); }

  friend bool operator==(const ModeVar& x, const ModeVar& y) {
    return x.family == y.family && x.index == y.index && x.mode == y.mode;
  }
  /// Canonical precedence: true when x comes before y in a canonical word.
  static bool before(const ModeVar& x, const ModeVar& y) {
    if (x.family != y.family) return x.family < y.family;
    if (x.mode != y.mode) return x.mode < y.mode;  // more negative first
    return x.index < y.index;
  }
  std::string str() const;
};

/// Which free fields a system carries.
enum class SystemKind { kHeisenberg, kClifford, kOmega };

/// Immutable descriptor shared by all states of one computation: number of
/// coordinates, which generator families exist, and the coefficient mode.
struct System {
  int nvars = 1;
  SystemKind kind = SystemKind::kOmega;
  CoeffMode coeff_mode = CoeffMode::kPoly;
  int series_order = -1;  // kSeries only

  bool has_bosons() const { return kind != SystemKind::kClifford; }
  bool has_fermions() const { return kind != SystemKind::kHeisenberg; }
  bool allows(Family f) const {
    return family_is_odd(f) ? has_fermions() : has_bosons();
  }
  FunctionElem scalar(const Rational& c) const {
    return FunctionElem::constant(nvars, c, coeff_mode, series_order);
  }
  FunctionElem coordinate(int i) const {
    return FunctionElem::variable(nvars, i, coeff_mode, series_order);
  }

  friend bool operator==(const System& a, const System& b) {
    return a.nvars == b.nvars && a.kind == b.kind && a.coeff_mode == b.coeff_mode &&
           a.series_order == b.series_order;
  }
};

/// Canonically ordered word of creation variables. Odd variables appear at
/// most once; the Koszul sign of sorting is absorbed into the coefficient
/// by State normalization.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<ModeVar> vars) : vars_(std::move(vars)) {}

  const std::vector<ModeVar>& vars() const { return vars_; }
  bool empty() const { return vars_.empty(); }
  size_t size() const { return vars_.size(); }

  long weight() const;
  int charge() const;   // #phi - #psi
  int parity() const;   // #odd mod 2
  int count(Family f) const;

  bool operator==(const Monomial& o) const { return vars_ == o.vars_; }
  bool operator<(const Monomial& o) const;

  /// Shape = the multiset of (family, mode) pairs, dropping coordinate
  /// indices; this is the grading that underlies the tensor-field
  /// filtration. Returned in canonical order.
  std::vector<std::pair<Family, long>> shape() const;

  std::string str() const;

 private:
  std::vector<ModeVar> vars_;
};

struct Grading {
  long weight = 0;
  int charge = 0;
  bool operator==(const Grading& o) const {
    return weight == o.weight && charge == o.charge;
  }
  bool operator<(const Grading& o) const {
    return weight != o.weight ? weight < o.weight : charge < o.charge;
  }
};

/// A state: finite FunctionElem-linear combination of canonical monomials.
/// Zero modes b^i_0 live in the coefficients; phi^i_0 is a monomial
/// variable. Immutable in spirit: all operations return new values.
class State {
 public:
  State() = default;
  explicit State(System sys) : sys_(std::move(sys)) {}

  static State vacuum(const System& sys) {
    State s(sys);
    s.terms_[Monomial{}] = sys.scalar(Rational(1));
    return s;
  }
  static State zero(const System& sys) { return State(sys); }

  /// Builds the canonical state from raw (coefficient, unordered variable
  /// list) data: applies Koszul signs, lowers b^i_0 into the coefficient,
  /// drops odd squares and zero terms. Throws kInvalidMode for variables
  /// outside the creation range or outside the system.
  static State normalize(const System& sys,
                         const std::vector<std::pair<FunctionElem, std::vector<ModeVar>>>& raw);

  /// Single-term convenience: coefficient * vars * vacuum.
  static State term(const System& sys, const FunctionElem& coeff,
                    std::vector<ModeVar> vars) {
    return normalize(sys, {{coeff, std::move(vars)}});
  }

  const System& system() const { return sys_; }
  const std::map<Monomial, FunctionElem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& m, const FunctionElem& c);  // canonical inputs only

  State operator-() const;
  State& operator+=(const State& o);
  State& operator-=(const State& o);
  friend State operator+(State a, const State& b) { a += b; return a; }
  friend State operator-(State a, const State& b) { a -= b; return a; }
  State operator*(const Rational& c) const;
  State operator*(const FunctionElem& c) const;

  friend bool operator==(const State& a, const State& b) {
    return a.sys_ == b.sys_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const State& a, const State& b) { return !(a == b); }

  /// True when a - b vanishes after truncating every coefficient to the
  /// given series order (both sides must be series-expandable).
  bool agrees_to_order(const State& o, int order) const;

  /// Weight of a weight-homogeneous state; throws kDomainError otherwise.
  long weight() const;
  /// Maximum weight over terms (0 for the zero state).
  long max_weight() const;
  bool is_weight_homogeneous() const;
  int parity() const;  // parity of a parity-homogeneous state

  /// Decomposition into (weight, charge)-homogeneous parts.
  std::map<Grading, State> grade() const;

  /// Part of the state lying in filtration level k minus level k-1 for its
  /// weight slice: monomial shapes of the slice are enumerated in
  /// increasing canonical order and k indexes into that list.
  State filtration_symbol(long level) const;
  /// Terms whose shape is maximal among the shapes present in the state.
  State top_symbol() const;

  /// Canonical rendering, e.g. "(3/2*x1^2) a1_{-1} psi1_{-2} |0>".
  std::string str() const;

 private:
  System sys_;
  std::map<Monomial, FunctionElem> terms_;
};

/// All canonical monomial shapes of the given weight, smallest first, for
/// the filtration levels (coordinate indices excluded, phi zero modes
/// included for fermionic systems).
std::vector<std::vector<std::pair<Family, long>>> shapes_of_weight(const System& sys,
                                                                   long weight);

/// All canonical monomials in creation variables of weight >= 1 with total
/// weight exactly w (no phi zero modes, no coefficients): the free-module
/// basis of the weight-w slice over functions tensor the phi_0 exterior
/// algebra.
std::vector<Monomial> monomials_of_weight(const System& sys, long w);

/// As above but including phi zero-mode subsets (still no x powers).
std::vector<Monomial> monomials_of_weight_with_phi0(const System& sys, long w);

/// All x-exponent vectors of total degree exactly d.
std::vector<Exps> exponents_of_degree(int nvars, int d);

}  // namespace vxa
