#pragma once

#include <map>

#include "vxa/engine.hpp"
#include "vxa/linalg.hpp"
#include "vxa/report.hpp"

namespace vxa {
namespace cdr {

/// The structure states of the topological vertex algebra on Omega_N:
/// L = sum b_{-1}a_{-1} + phi_{-1}psi_{-1}, J = sum phi_0 psi_{-1},
/// Q = sum a_{-1} phi_0, G = sum psi_{-1} b_{-1}. Heisenberg and Clifford
/// systems carry L alone.
struct StructureFields {
  State L, J, Q, G;
  int rank = 0;  // d = N
};

StructureFields build_structure(const System& sys);

/// The Virasoro checks L_(0)L = L', L_(1)L = 2L, L_(2)L = 0,
/// L_(3)L = (c/2)|0>.
Report check_virasoro(const State& L, const Rational& expected_c);

/// Every singular coefficient of the ten operator products among
/// {L, J, Q, G} against the topological-algebra table with d = N.
Report check_topological(const StructureFields& sf);

/// The chiral de Rham differential: the charge-raising zero mode of Q with
/// the sign pinned so that the weight-zero restriction is the classical de
/// Rham differential (d x_i = phi^i_0).
engine::ModeOperator chiral_d_operator(const System& sys);
State chiral_d(const State& s);

/// Verifies [G_0, d] = L_0 (= w) on the full weight-w slice with
/// coefficient x-degree up to xdeg_cap.
Report homotopy_check(const System& sys, long w, int xdeg_cap = 4);

/// One finite subcomplex of fixed conformal weight and auxiliary bigrade
/// (r = deg_b + deg_x + deg_phi, s = deg_a + deg_psi), which the
/// differential preserves; charge is the complex direction.
struct CohomologySlice {
  long weight = 0;
  int r = 0;
  int s = 0;
  std::map<int, int> dim_by_charge;
  std::map<int, int> ker_by_charge;
  std::map<int, int> im_into_charge;  // rank of d landing in this charge
  std::map<int, int> h_by_charge;
};

struct CohomologyResult {
  long weight = 0;
  int rmax = 0;
  std::vector<CohomologySlice> slices;
  std::map<int, int> h_by_charge;  // aggregated over slices

  int total_h() const {
    int t = 0;
    for (auto& [p, d] : h_by_charge) t += d;
    return t;
  }
};

/// Exact cohomology of (slice, chiral_d) for all auxiliary bigrades with
/// r <= rmax at the given weight.
CohomologyResult cohomology(const System& sys, long w, int rmax);

/// The commutative associative product on the weight-zero component,
/// a_{(-1)} b; errors on non-weight-zero input.
State weight0_product(const State& a, const State& b);

/// Free-module ranks of the weight/charge slices over the function ring
/// tensor the phi_0 exterior algebra, with Euler numbers per weight.
struct CharacterTable {
  std::map<std::pair<long, int>, long long> ranks;  // (weight, charge) -> rank
  std::map<long, long long> euler;                  // weight -> alternating sum
};

CharacterTable character(const System& sys, long max_weight);

}  // namespace cdr
}  // namespace vxa
