#pragma once

#include "vxa/cdr.hpp"
#include "vxa/engine.hpp"
#include "vxa/report.hpp"

namespace vxa {
namespace coord {

/// An invertible coordinate change b~ = g(b), b = f(b~) acting on the
/// states of `sys`. Series changes carry a truncation order; explicit
/// changes (rational coefficients, e.g. b -> 1/b) supply f directly and
/// are verified exactly.
struct CoordChange {
  System sys;
  std::vector<FunctionElem> g;
  std::vector<FunctionElem> f;
  int order = -1;  // -1 for exact changes
};

/// Builds a series change; g must be series of the given order with zero
/// constant term and invertible Jacobian at the origin (f is computed by
/// compose_and_invert).
CoordChange make_series_change(const System& sys, std::vector<FunctionElem> g, int order);

/// Builds an exact change from both directions; verifies f(g(x)) = x.
CoordChange make_explicit_change(const System& sys, std::vector<FunctionElem> g,
                                 std::vector<FunctionElem> f);

/// g2 after g1 (i.e. the change x -> g2(g1(x))).
CoordChange compose_changes(const CoordChange& g2, const CoordChange& g1);

/// The images of the four generator families under the lifted change:
/// b~^i = g^i(b),  phi~^i = (dg^i/db^j) phi^j,
/// a~^i = a^j (df^j/db~^i)(g) + (d2f^k/db~^i db~^l)(g)(dg^l/db^r) phi^r psi^k,
/// psi~^i = (df^j/db~^i)(g) psi^j,
/// together with the substitution x -> g(x) for coefficients.
struct GeneratorImages {
  System sys;
  std::vector<State> b, a, phi, psi;      // indexed by coordinate - 1
  std::vector<FunctionElem> coeff_subst;  // x_i -> g_i
};

/// drop_fermion_correction removes the second summand of the a~ formula
/// (the negative control for the anomaly cancellation).
GeneratorImages tilded_generators(const CoordChange& cc,
                                  bool drop_fermion_correction = false);

/// Monomial-wise transport: every creation letter becomes the matching
/// Fourier mode of its image field, applied right to left to the
/// transformed coefficient.
State transform_state(const GeneratorImages& gi, const State& s);
State transform_state(const CoordChange& cc, const State& s);

/// Verifies the full free-field table for the tilded generator fields,
/// including the double-pairing cancellation in a~(z)a~(w); coefficients
/// are compared on their common valid truncation.
Report verify_ope_preservation(const CoordChange& cc, long wmax,
                               bool drop_fermion_correction = false);

/// Verifies (g2 g1)~ = g2~ g1~ on all generators and on monomials of
/// weight <= wmax.
Report verify_composition(const CoordChange& cc2, const CoordChange& cc1, long wmax);

/// Transforms the structure states and checks the anomaly pattern:
/// L~ = L, G~ = G, J~ - J = (Tr log dg)'-state, and the Q correction
/// built from Tr log of the inverse Jacobian.
struct StructureTransform {
  State dL, dJ, dQ, dG;
  Report report;
};
StructureTransform structure_transform(const CoordChange& cc);

/// Determinant by Laplace expansion (division-free; the matrices here are
/// N x N with N <= 3).
FunctionElem fe_det(const std::vector<std::vector<FunctionElem>>& m);

}  // namespace coord
}  // namespace vxa
