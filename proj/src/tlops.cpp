#include "gyralab/tlops.hpp"

#include <algorithm>
#include <stdexcept>

namespace gyralab {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

Poly one_minus_t() { return Poly(std::vector<BigInt>{1, -1}); }

std::string poly_vec_str(const PolyVector& v) {
  std::string s = "[";
  for (size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k].str();
  return s + "]";
}

}  // namespace

PolyMatrix op_R(const PatternSpace& s, int power) {
  PolyMatrix m(s.dim(), s.dim());
  for (int c = 0; c < s.dim(); ++c) m.set(s.index_of(rotate(s.at(c), power)), c, Poly(1));
  return m;
}

PolyMatrix op_V(const PatternSpace& s) {
  PolyMatrix m(s.dim(), s.dim());
  for (int c = 0; c < s.dim(); ++c) m.set(s.index_of(reflect(s.at(c))), c, Poly(1));
  return m;
}

PolyMatrix op_e(const PatternSpace& s, int i, long tau, long tau_star) {
  PolyMatrix m(s.dim(), s.dim());
  for (int c = 0; c < s.dim(); ++c) {
    EResult r = apply_e(i, s.at(c));
    BigInt w = 1;
    for (int k = 0; k < r.contractible_loops; ++k) w *= tau;
    for (int k = 0; k < r.puncture_loops; ++k) w *= tau_star;
    m.add(s.index_of(r.pattern), c, Poly(w));
  }
  return m;
}

PolyMatrix op_H0(const PatternSpace& s) {
  PolyMatrix m(s.dim(), s.dim());
  for (int i = 1; i <= s.N(); ++i) m = m + op_e(s, i);
  return m - PolyMatrix::identity(s.dim()).scaled(Poly(s.N()));
}

PolyMatrix op_X(const PatternSpace& s, int i) {
  return PolyMatrix::identity(s.dim()).scaled(Poly::t()) + op_e(s, i).scaled(one_minus_t());
}

PolyMatrix op_S(const PatternSpace& s, int i) {
  PolyMatrix m = op_X(s, i);
  for (int k = 1; k < s.N(); ++k) m = op_X(s, i + k) * m;
  return m;
}

PolyMatrix op_matrix(const PatternSpace& s, OpKind which, int i) {
  switch (which) {
    case OpKind::R: return op_R(s);
    case OpKind::V: return op_V(s);
    case OpKind::E: return op_e(s, i);
    case OpKind::H0: return op_H0(s);
    case OpKind::X: return op_X(s, i);
    case OpKind::S: return op_S(s, i);
  }
  return {};
}

std::vector<BigInt> ground_state_hamiltonian(const PatternSpace& s) {
  auto ns = nullspace_poly(op_H0(s));
  if (ns.size() != 1)
    throw std::runtime_error("H0 nullspace has dimension " + std::to_string(ns.size()));
  std::vector<BigInt> v;
  for (const auto& p : ns[0]) {
    if (p.degree() > 0) throw std::runtime_error("H0 null vector is not constant");
    v.push_back(p.coeff(0));
  }
  return v;
}

int GroundState::max_degree() const {
  int d = Poly::kDegreeZero;
  for (const auto& p : components) d = std::max(d, p.degree());
  return d;
}

GroundState ground_state_scattering(const PatternSpace& s, int i) {
  if (i < 1 || i > s.N()) throw std::invalid_argument("site out of range");
  auto ns = nullspace_poly(op_X(s, i) - op_R(s));
  if (ns.size() != 1)
    throw std::runtime_error("scattering nullspace has dimension " + std::to_string(ns.size()));
  Normalized n = poly_content_normalize(ns[0]);
  return GroundState{s, i, std::move(n.v), std::move(n.scale)};
}

PolyVector sym(const PolyVector& v, const PatternSpace& s) {
  PolyVector out(v.size());
  for (int c = 0; c < s.dim(); ++c) {
    if (v[c].is_zero()) continue;
    for (int k = 0; k < s.N(); ++k) out[s.index_of(rotate(s.at(c), k))] += v[c];
  }
  return out;
}

Report check_ground_state(const GroundState& gs) {
  const PatternSpace& s = gs.space;
  Report rep{"ground-state", lp_kind_name(s.kind()) + "(" + std::to_string(s.N()) + ")"};
  const PolyVector& psi = gs.components;
  rep.require(op_X(s, gs.site).apply(psi) == op_R(s).apply(psi), "X_i psi != R psi");
  PolyVector spsi = op_S(s, gs.site).apply(psi);
  rep.require(spsi == psi, "(S_i - 1) psi != 0");
  const int expect = s.kind() == LpKind::Plain ? s.N() / 2 - 1 : s.N() - 1;
  rep.require(gs.max_degree() == expect, "max degree " + std::to_string(gs.max_degree()) +
                                             " != " + std::to_string(expect));
  for (int c = 0; c < s.dim(); ++c)
    for (const auto& x : psi[c].coeffs())
      if (x < 0) rep.fail("negative coefficient at " + s.at(c).str());
  std::vector<int> exps;
  for (int j = 0; j < s.n_rainbows(); ++j) {
    const Poly& p = psi[s.index_of(s.rainbow(j))];
    if (!p.is_monomial()) {
      rep.fail("rainbow " + s.rainbow(j).str() + " component " + p.str() + " not a monomial");
      continue;
    }
    exps.push_back(p.degree());
  }
  if (!exps.empty()) {
    std::vector<int> sorted = exps;
    std::sort(sorted.begin(), sorted.end());
    for (size_t k = 1; k < sorted.size(); ++k)
      if (sorted[k] > sorted[k - 1] + 1) rep.fail("rainbow exponents not contiguous");
  }
  rep.data["rainbow_exponents"] = exps;
  rep.data["max_degree"] = gs.max_degree();
  return rep;
}

Report check_equiqkz(const GroundState& gs) {
  const PatternSpace& s = gs.space;
  Report rep{"equiqkz", lp_kind_name(s.kind()) + "(" + std::to_string(s.N()) + ")"};
  if (gs.site != 1) {
    rep.fail("requires the site-1 solution");
    return rep;
  }
  const PolyVector& psi = gs.components;
  PolyVector rpsi = op_R(s).apply(psi);
  PolyVector diff(psi.size());
  for (size_t k = 0; k < psi.size(); ++k) diff[k] = psi[k] - rpsi[k];
  PolyVector lhs = op_e(s, 1).apply(diff);
  for (int c = 0; c < s.dim(); ++c)
    if (!lhs[c].is_zero()) {
      rep.fail("e1(1-R)psi nonzero at " + s.at(c).str());
      break;
    }
  for (int c = 0; c < s.dim(); ++c) {
    const Pattern& p = s.at(c);
    if (short_arc_image(1, p)) continue;
    const Poly& back = psi[s.index_of(rotate(p, -1))];
    if (Poly::t() * psi[c] != back) {
      rep.fail("t*psi(" + p.str() + ") = " + (Poly::t() * psi[c]).str() + " but psi(R^-1 pi) = " +
               back.str());
      break;
    }
  }
  return rep;
}

Report check_dihedral_covariance(const PatternSpace& s) {
  Report rep{"dihedral-covariance", lp_kind_name(s.kind()) + "(" + std::to_string(s.N()) + ")"};
  const int N = s.N();
  std::vector<PolyVector> psi;
  for (int i = 1; i <= N; ++i) psi.push_back(ground_state_scattering(s, i).components);
  PolyMatrix R = op_R(s), V = op_V(s);
  for (int i = 1; i <= N; ++i) {
    const PolyVector& next = psi[static_cast<size_t>(mod(i, N))];
    rep.require(R.apply(psi[static_cast<size_t>(i - 1)]) == next,
                "psi^(" + std::to_string(mod(i, N) + 1) + ") != R psi^(" + std::to_string(i) + ")");
  }
  std::vector<int> factors;
  for (int i = 1; i <= N; ++i) {
    const PolyVector& pi = psi[static_cast<size_t>(i - 1)];
    PolyVector target = V.apply(psi[static_cast<size_t>(mod(N - i, N))]);  // site N+1-i
    int d = 0;
    for (const auto& p : pi) d = std::max(d, p.degree());
    PolyVector rev;
    for (const auto& p : pi) rev.push_back(p.reversed(d));
    if (rev == target) {
      factors.push_back(d);
      continue;
    }
    rep.fail("V psi^(N+1-i)(t) != t^" + std::to_string(d) + " psi^(i)(1/t) at i=" +
             std::to_string(i) + ": " + poly_vec_str(target) + " vs " + poly_vec_str(rev));
  }
  rep.data["reversal_exponents"] = factors;
  return rep;
}

Report check_t0_recursion(const PatternSpace& s, int i) {
  const int N = s.N();
  Report rep{"t0-recursion", lp_kind_name(s.kind()) + "(" + std::to_string(N) + "), i=" +
                                 std::to_string(i)};
  if (N < 4) {
    rep.fail("requires N >= 4");
    return rep;
  }
  GroundState gs = ground_state_scattering(s, i);
  PatternSpace small(s.kind(), N - 2);
  std::vector<BigInt> h = ground_state_hamiltonian(small);
  const int a = mod(i - 2, N);  // point i-1, 0-based
  for (int c = 0; c < s.dim(); ++c) {
    const Pattern& p = s.at(c);
    BigInt at0 = gs.components[c].coeff(0);
    if (short_arc_image(a + 1, p)) {
      Pattern q = remove_short_arc(p, a);
      BigInt want = h[static_cast<size_t>(small.index_of(q))];
      if (at0 != want)
        rep.fail("psi(0;" + p.str() + ") = " + at0.get_str() + " but reduced " + q.str() + " = " +
                 want.get_str());
    } else if (at0 != 0) {
      rep.fail("psi(0;" + p.str() + ") = " + at0.get_str() + " without the short arc");
    }
  }
  return rep;
}

Report check_tl_relations(const PatternSpace& s) {
  const int N = s.N();
  Report rep{"tl-relations", lp_kind_name(s.kind()) + "(" + std::to_string(N) + ")"};
  const int dim = s.dim();
  rep.require(dim == PatternSpace::expected_dim(s.kind(), N), "dimension mismatch");
  const PolyMatrix I = PolyMatrix::identity(dim);
  const PolyMatrix R = op_R(s), Rinv = op_R(s, -1), V = op_V(s);
  PolyMatrix RN = I;
  for (int k = 0; k < N; ++k) RN = R * RN;
  rep.require(RN == I, "R^N != 1");
  rep.require(V * V == I, "V^2 != 1");
  rep.require(V * R * V == Rinv, "VRV != R^-1");
  if (N < 2) return rep;
  std::vector<PolyMatrix> e(static_cast<size_t>(N) + 1);
  for (int i = 1; i <= N; ++i) e[i] = op_e(s, i);
  auto E = [&](int i) -> const PolyMatrix& { return e[static_cast<size_t>(mod(i - 1, N) + 1)]; };
  for (int i = 1; i <= N; ++i) {
    const std::string si = std::to_string(i);
    rep.require(E(i) * E(i) == E(i), "e_" + si + "^2 != e_" + si);
    rep.require(E(i) * E(i + 1) * E(i) == E(i), "e_i e_{i+1} e_i != e_i at i=" + si);
    rep.require(E(i) * E(i - 1) * E(i) == E(i), "e_i e_{i-1} e_i != e_i at i=" + si);
    for (int j = 1; j <= N; ++j) {
      int d = mod(i - j, N);
      if (d == 0 || d == 1 || d == N - 1) continue;
      rep.require(E(i) * E(j) == E(j) * E(i), "e_" + si + " e_" + std::to_string(j) + " not commuting");
    }
    rep.require(R * E(i) * Rinv == E(i + 1), "R e_i R^-1 != e_{i+1} at i=" + si);
    rep.require(V * E(i) * V == E(N - i), "V e_i V != e_{N-i} at i=" + si);
    for (int c = 0; c < dim; ++c) {
      EResult r = apply_e(i, s.at(c));
      try {
        validate_pattern(r.pattern);
      } catch (const std::exception& ex) {
        rep.fail(std::string("apply_e produced invalid pattern: ") + ex.what());
      }
    }
    std::vector<bool> in_image(static_cast<size_t>(dim), false);
    for (const auto& [k, p] : E(i).entries()) in_image[static_cast<size_t>(k.first)] = true;
    for (int c = 0; c < dim; ++c)
      if (in_image[static_cast<size_t>(c)] != short_arc_image(i, s.at(c)))
        rep.fail("short_arc_image mismatch for " + s.at(c).str() + " at i=" + si);
  }
  return rep;
}

nlohmann::json ground_state_to_json(const GroundState& gs) {
  nlohmann::json arr = nlohmann::json::array();
  for (int c = 0; c < gs.space.dim(); ++c)
    arr.push_back({{"pattern", pattern_to_json(gs.space.at(c))},
                   {"coeffs", poly_to_json(gs.components[c]).at("coeffs")}});
  return arr;
}

}  // namespace gyralab
