#pragma once

#include <map>

#include "vxa/state.hpp"

namespace vxa {
namespace engine {

/// Action of the generator mode x^i_m (any m, paper indexing) on a state.
/// Creation modes multiply with the Koszul sign; annihilation modes act as
/// the super-derivation fixed by the brackets [a^j_m, b^i_n] = d_ij d_{m,-n}
/// and {phi^j_m, psi^i_n} = d_ij d_{m,-n} with C = 1. In particular a^i_0
/// differentiates the coefficient ring and b^i_n (n > 0) contracts a^i_{-n}
/// with value -1.
State apply_generator_mode(Family family, int index, long mode, const State& s);

/// Borcherds mode p of the field Y(a) applied to s, computed by structural
/// recursion over a's canonical words: the vacuum coefficient factor is the
/// Taylor-formula field of the coefficient, and each creation variable
/// prepends one normal-ordered factor split as x(z)+ and x(z)- .
State field_mode(const State& a, long p, const State& s);

/// a_{(n)} b.
inline State nth_product(const State& a, long n, const State& b) {
  return field_mode(a, n, b);
}

/// Same recursion over an explicitly ordered word of creation variables
/// (not necessarily canonical); exposes the normal-ordering nesting so the
/// order-independence of iterated products is testable.
State field_mode_word(const FunctionElem& coeff, const std::vector<ModeVar>& word,
                      long p, const State& s);

/// Coefficient of z^{-k} of the Taylor-formula field f(b(z)) applied to s.
/// Enumerates exactly the finitely many contributing mode tuples; for
/// series coefficients enforces the truncation budget
/// order >= (output weight) + (input polynomial degree) + 2.
State taylor_field_mode(const FunctionElem& f, long k, const State& s);

/// Singular part of the operator product a(z)b(w): pole order k >= 1 maps
/// to the state a_{(k-1)} b.
struct OpeSingularPart {
  std::map<long, State> poles;

  long max_order() const { return poles.empty() ? 0 : poles.rbegin()->first; }
  bool regular() const { return poles.empty(); }
  std::string str() const;
};

/// Requires weight-homogeneous inputs; pole orders are bounded by
/// |a| + |b| (locality for these restricted algebras).
OpeSingularPart ope(const State& a, const State& b);

/// L_{-1}: the translation operator, acting as a derivation on words with
/// d(z) applied to each generator field plus the coefficient part
/// sum_i (d f / d x_i) b^i_{-1}.
State translate(const State& s);

/// s |-> a_{(n)} s for a fixed source state.
struct ModeOperator {
  State source;
  long n;
  State operator()(const State& s) const { return field_mode(source, n, s); }
};

/// The derivation int a(z) = a_{(0)}.
inline ModeOperator fourier_derivation(const State& a) { return ModeOperator{a, 0}; }

/// Borcherds index of the subscript of a generator letter
/// (weight-0 families shift by one).
inline long letter_borcherds_mode(Family f, long paper_mode) {
  return family_is_weight_one(f) ? paper_mode : paper_mode - 1;
}

}  // namespace engine
}  // namespace vxa
