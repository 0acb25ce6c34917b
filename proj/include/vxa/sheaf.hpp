#pragma once

#include "vxa/coord.hpp"

namespace vxa {
namespace sheaf {

/// The chart system shared by U0, U1 and the overlap: the N = 1 Heisenberg
/// algebra over rational-function coefficients (Laurent on the overlap).
System p1_system();

/// The transition U1 -> U01 for the chiral structure sheaf on P^1:
/// coefficients map by x -> 1/x, the b image is x^{-1}|0>, and the a image
/// is the classical vector-field part plus the curve correction in b_{-1}, with
/// the correction coefficient derived from the free-field relations rather
/// than copied in.
coord::GeneratorImages p1_transition();

/// Verifies that the transition images satisfy the Heisenberg table over
/// the Laurent ring and that the transition is an involution on states of
/// weight <= wmax.
Report glue_check_p1(long wmax);

/// Wakimoto sl_2 currents on the big cell:
/// E21 = -a_{-1}|0>, E12 = (x^2 a_{-1} + 2 b_{-1})|0>, E11 = x a_{-1}|0>.
struct WakimotoFields {
  State e21, e12, e11;
};
WakimotoFields wakimoto_fields();

/// All pairwise current OPEs, the single consistent level read off the
/// second-order poles (critical: -2), and the transition intertwining the
/// two charts' currents.
struct WakimotoResult {
  Report report;
  Rational level;
};
WakimotoResult wakimoto_check();

/// Cech computation of the global sections and H^1 of the chiral structure
/// sheaf by conformal weight, over Laurent windows grown until two
/// successive window sizes agree.
struct SectionsResult {
  std::vector<long long> gamma_ranks;           // index = weight
  std::vector<long long> h1_ranks;
  std::vector<std::vector<State>> witnesses;    // global-section bases
  Report report;
};
SectionsResult global_sections(long wmax, int window0 = 4);

/// Per-weight Euler numbers: each monomial a_{-n_1}..a_{-n_r} b_{-m_1}..
/// b_{-m_s} contributes 2s - 2r + 1; asserted against the q-expansion of
/// prod (1-q^n)^{-2}.
struct EulerResult {
  std::vector<long long> coeffs;
  Report report;
};
EulerResult euler_character(long wmax);

/// q-expansions used by the character identities.
std::vector<long long> q_expansion_vacuum(long wmax);        // prod (1-q^n)^{-2}
std::vector<long long> q_expansion_global(long wmax);        // (1-q)^{-1} prod (1-q^n)^{-2}

/// exp(t int X(z)) s computed as a t-series of order torder; every basis
/// coefficient is reconstructed as a rational function of t (fit to degree
/// torder/2 over torder terms, certified on two extra terms) and evaluated
/// at t = 1. Throws kFlowNotRational when reconstruction fails.
State flow_eval(const State& X, const State& s, int torder);

/// The simple-reflection flow r(1): the composite of the three unipotent
/// flows specialized at t = 1, followed by the parity operator
/// (-1)^{eigenvalue} on the integer eigenspaces of int E11(z).
State reflect(const State& s, int torder = 10);

}  // namespace sheaf
}  // namespace vxa
