// Temperley-Lieb operators on a pattern space and the two ground-state problems.
#pragma once

#include "gyralab/exactmath.hpp"
#include "gyralab/linkpat.hpp"
#include "gyralab/report.hpp"

namespace gyralab {

// Matrices act on column vectors indexed by the space's canonical order.
PolyMatrix op_R(const PatternSpace& s, int power = 1);
PolyMatrix op_V(const PatternSpace& s);
// e_i with contractible loops weighted tau and puncture loops weighted tau_star.
PolyMatrix op_e(const PatternSpace& s, int i, long tau = 1, long tau_star = 1);
PolyMatrix op_H0(const PatternSpace& s);
PolyMatrix op_X(const PatternSpace& s, int i);  // t*1 + (1-t) e_i
PolyMatrix op_S(const PatternSpace& s, int i);  // X_{i+N-1} ... X_{i+1} X_i

enum class OpKind { R, V, E, H0, X, S };
PolyMatrix op_matrix(const PatternSpace& s, OpKind which, int i = 1);

// Coprime positive integer vector spanning ker H0.
std::vector<BigInt> ground_state_hamiltonian(const PatternSpace& s);

struct GroundState {
  PatternSpace space;
  int site = 1;
  PolyVector components;
  Poly normalization_scale;
  int max_degree() const;
};

GroundState ground_state_scattering(const PatternSpace& s, int i = 1);

PolyVector sym(const PolyVector& v, const PatternSpace& s);  // sum_k R^k v

Report check_equiqkz(const GroundState& gs);
Report check_dihedral_covariance(const PatternSpace& s);
Report check_t0_recursion(const PatternSpace& s, int i);
// Properties of a single solution: scattering equation, S_i invariance, degree, rainbows, positivity.
Report check_ground_state(const GroundState& gs);
// Exhaustive TL / dihedral relations on a space.
Report check_tl_relations(const PatternSpace& s);

nlohmann::json ground_state_to_json(const GroundState& gs);

}  // namespace gyralab
