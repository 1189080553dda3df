#include <doctest.h>

#include "gyralab/tlops.hpp"

using namespace gyralab;

namespace {

Poly P(std::initializer_list<long> c) {
  std::vector<BigInt> v;
  for (long x : c) v.emplace_back(x);
  return Poly(v);
}

const Poly& comp(const GroundState& gs, const std::string& name) {
  for (int c = 0; c < gs.space.dim(); ++c)
    if (gs.space.at(c).str() == name) return gs.components[c];
  FAIL("no pattern " << name);
  static Poly none;
  return none;
}

std::vector<PatternSpace> small_spaces() {
  std::vector<PatternSpace> v;
  for (int N = 2; N <= 7; ++N) {
    if (N % 2 == 0) {
      v.emplace_back(LpKind::Plain, N);
      v.emplace_back(LpKind::PuncturedEven, N);
    } else {
      v.emplace_back(LpKind::PuncturedOdd, N);
    }
  }
  return v;
}

}  // namespace

TEST_CASE("H0 column sums vanish") {
  for (int N : {4, 6}) {
    PatternSpace s(LpKind::Plain, N);
    PolyMatrix h = op_H0(s);
    std::vector<Poly> col(s.dim());
    for (const auto& [k, p] : h.entries()) col[k.second] += p;
    for (const auto& p : col) CHECK(p.is_zero());
  }
}

TEST_CASE("X_i(1) and S_i(1) are the identity, dS/dt at 1 is -H0") {
  for (const auto& s : small_spaces()) {
    if (s.N() > 6) continue;
    for (int i = 1; i <= s.N(); ++i) CHECK(op_X(s, i).eval_at(1) == PolyMatrix::identity(s.dim()));
  }
  PatternSpace s6(LpKind::Plain, 6);
  PolyMatrix S = op_S(s6, 1);
  CHECK(S.eval_at(1) == PolyMatrix::identity(s6.dim()));
  CHECK(S.derivative().eval_at(1) == PolyMatrix(s6.dim(), s6.dim()) - op_H0(s6));
}

TEST_CASE("Hamiltonian ground states") {
  PatternSpace s4(LpKind::Plain, 4), s6(LpKind::Plain, 6), s8(LpKind::Plain, 8);
  CHECK(ground_state_hamiltonian(s4) == std::vector<BigInt>{1, 1});
  auto g6 = ground_state_hamiltonian(s6);
  BigInt sum6 = 0;
  for (int c = 0; c < s6.dim(); ++c) {
    CHECK(g6[c] == (s6.is_rainbow(s6.at(c)) ? 1 : 2));
    sum6 += g6[c];
  }
  CHECK(sum6 == 7);
  BigInt sum8 = 0;
  for (const auto& x : ground_state_hamiltonian(s8)) sum8 += x;
  CHECK(sum8 == 42);
}

TEST_CASE("scattering ground states, LP(4) and LP(6)") {
  GroundState g4 = ground_state_scattering(PatternSpace(LpKind::Plain, 4), 1);
  CHECK(comp(g4, "(12)(34)") == Poly::t());
  CHECK(comp(g4, "(14)(23)") == P({1}));

  GroundState g6 = ground_state_scattering(PatternSpace(LpKind::Plain, 6), 1);
  std::vector<Poly> rb, other;
  for (int c = 0; c < g6.space.dim(); ++c)
    (g6.space.is_rainbow(g6.space.at(c)) ? rb : other).push_back(g6.components[c]);
  auto sorted = [](std::vector<Poly> v) {
    std::sort(v.begin(), v.end(), [](const Poly& a, const Poly& b) { return a.str() < b.str(); });
    return v;
  };
  CHECK(sorted(rb) == sorted({P({1}), P({0, 1}), P({0, 0, 1})}));
  CHECK(sorted(other) == sorted({P({1, 1}), P({0, 1, 1})}));
  // at t=1 proportional to the Hamiltonian ground state
  auto h = ground_state_hamiltonian(g6.space);
  for (int c = 0; c < g6.space.dim(); ++c) CHECK(g6.components[c].eval(BigInt(1)) == h[c]);
}

TEST_CASE("ground state properties for all N <= 7") {
  for (const auto& s : small_spaces()) {
    GroundState gs = ground_state_scattering(s, 1);
    Report r = check_ground_state(gs);
    INFO(r.to_json().dump());
    CHECK(r.ok);
    Report q = check_equiqkz(gs);
    INFO(q.to_json().dump());
    CHECK(q.ok);
    // t=1 specialisation is proportional to the H0 ground state
    auto h = ground_state_hamiltonian(s);
    std::vector<Poly> at1;
    for (const auto& p : gs.components) at1.push_back(Poly(p.eval(BigInt(1))));
    auto n = poly_content_normalize(at1).v;
    for (int c = 0; c < s.dim(); ++c) CHECK(n[c] == Poly(h[c]));
  }
}

TEST_CASE("equiqkz detects a perturbed vector") {
  GroundState gs = ground_state_scattering(PatternSpace(LpKind::Plain, 6), 1);
  gs.components[gs.space.index_of(gs.space.rainbow(0))] += Poly(1);
  CHECK_FALSE(check_equiqkz(gs).ok);
  CHECK_FALSE(check_ground_state(gs).ok);
}

TEST_CASE("LP(4) rotation identity by hand") {
  GroundState g4 = ground_state_scattering(PatternSpace(LpKind::Plain, 4), 1);
  // t * psi((23)(41)) = psi((12)(34))
  CHECK(Poly::t() * comp(g4, "(14)(23)") == comp(g4, "(12)(34)"));
}

TEST_CASE("sym") {
  PatternSpace s(LpKind::Plain, 6);
  PolyVector e(s.dim());
  e[0] = P({1});
  PolyVector se = sym(e, s);
  // orbit of (12)(34)(56) under R has size 2, so multiplicity 3
  int nz = 0;
  for (const auto& p : se)
    if (!p.is_zero()) {
      ++nz;
      CHECK(p == P({3}));
    }
  CHECK(nz == 2);
  PolyVector v{P({1, 2}), P({0, 3}), P({5}), Poly(), P({1, 0, 1})};
  CHECK(sym(v, s) == sym(op_R(s).apply(v), s));
  GroundState gs = ground_state_scattering(s, 1);
  PolyVector sg = sym(gs.components, s);
  CHECK(op_R(s).apply(sg) == sg);
}

TEST_CASE("dihedral covariance") {
  for (const auto& s : {PatternSpace(LpKind::Plain, 4), PatternSpace(LpKind::Plain, 6),
                        PatternSpace(LpKind::PuncturedOdd, 5), PatternSpace(LpKind::PuncturedEven, 6)}) {
    Report r = check_dihedral_covariance(s);
    INFO(r.to_json().dump());
    CHECK(r.ok);
    const int expect = s.kind() == LpKind::Plain ? s.N() / 2 - 1 : s.N() - 1;
    for (const auto& f : r.data["reversal_exponents"]) CHECK(f.get<int>() == expect);
  }
}

TEST_CASE("t = 0 recursion") {
  for (const auto& [s, i] : std::vector<std::pair<PatternSpace, int>>{
           {PatternSpace(LpKind::Plain, 6), 2},
           {PatternSpace(LpKind::Plain, 4), 2},
           {PatternSpace(LpKind::Plain, 6), 1},
           {PatternSpace(LpKind::Plain, 8), 3},
           {PatternSpace(LpKind::PuncturedEven, 6), 2},
           {PatternSpace(LpKind::PuncturedEven, 6), 1},
           {PatternSpace(LpKind::PuncturedOdd, 5), 2},
           {PatternSpace(LpKind::PuncturedOdd, 7), 4}}) {
    Report r = check_t0_recursion(s, i);
    INFO(r.to_json().dump());
    CHECK(r.ok);
  }
}

TEST_CASE("TL relations for N <= 7") {
  for (const auto& s : small_spaces()) {
    Report r = check_tl_relations(s);
    INFO(r.to_json().dump());
    CHECK(r.ok);
  }
  CHECK(check_tl_relations(PatternSpace(LpKind::PuncturedOdd, 1)).ok);
}

TEST_CASE("json export") {
  GroundState g4 = ground_state_scattering(PatternSpace(LpKind::Plain, 4), 1);
  auto j = ground_state_to_json(g4);
  REQUIRE(j.size() == 2);
  CHECK(j[0]["coeffs"] == nlohmann::json({"0", "1"}));
  CHECK(j[1]["coeffs"] == nlohmann::json({"1"}));
}
