// Acceptance run: one PASS/FAIL line per criterion, each with a pinned wall-clock limit.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "gyralab/correspondence.hpp"
#include "gyralab/fplenum.hpp"
#include "gyralab/gyration.hpp"
#include "gyralab/tlops.hpp"

using namespace gyralab;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void need(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
  void need(const Report& r) { need(r.ok, r.to_json().dump()); }
};

DomainSpec lam(int lx, int ly, int a2, int a3, int a4) {
  DomainSpec s;
  s.Lx = lx;
  s.Ly = ly;
  s.a = {0, a2, a3, a4};
  return s;
}

BigRat fact(long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return BigRat(r);
}

// number of n x n alternating sign matrices
BigInt asm_count(int n) {
  BigRat r = 1;
  for (int j = 0; j < n; ++j) r *= fact(3 * j + 1) / fact(n + j);
  r.canonicalize();
  return r.get_num();
}

// ASMs of size n whose top-row 1 sits in column k
BigInt refined_asm(int n, int k) {
  BigRat r = fact(n + k - 2) / (fact(k - 1) * fact(n - 1)) * fact(2 * n - k - 1) / fact(n - k);
  for (int j = 0; j <= n - 2; ++j) r *= fact(3 * j + 1) / fact(n + j);
  r.canonicalize();
  return r.get_num();
}

Poly P(std::vector<long> c) { return Poly(std::vector<BigInt>(c.begin(), c.end())); }

Poly component(const PatternSpace& s, const PolyVector& v, const std::string& pat) {
  for (int k = 0; k < s.dim(); ++k)
    if (s.at(k).str() == pat) return v[static_cast<size_t>(k)];
  return Poly(-999);
}

Outcome counting() {
  Outcome o;
  for (int n = 1; n <= 5; ++n) {
    const auto d = build_domain(square_spec(n));
    const BigInt want = asm_count(n);
    o.need(BigInt(static_cast<long>(enumerate_fpl(d, Sector::Plus).size())) == want,
           "Fpl+ count wrong at n=" + std::to_string(n));
    o.need(BigInt(static_cast<long>(enumerate_fpl(d, Sector::B).size())) == want,
           "Fpl_b count wrong at n=" + std::to_string(n));
  }
  return o;
}

Outcome refined() {
  Outcome o;
  for (int n = 3; n <= 5; ++n) {
    const auto hist = refinement_histogram(build_domain(square_spec(n)), Sector::Plus);
    o.need(static_cast<int>(hist.size()) == n, "histogram length");
    for (int k = 1; k <= n && k <= static_cast<int>(hist.size()); ++k)
      o.need(BigInt(hist[static_cast<size_t>(k - 1)]) == refined_asm(n, k),
             "refined count wrong at n=" + std::to_string(n) + ", h=" + std::to_string(k));
  }
  return o;
}

Outcome tl_algebra() {
  Outcome o;
  for (int N : {2, 4, 6}) o.need(check_tl_relations(PatternSpace(LpKind::Plain, N)));
  o.need(check_tl_relations(PatternSpace(LpKind::PuncturedEven, 6)));
  o.need(check_tl_relations(PatternSpace(LpKind::PuncturedOdd, 5)));
  o.need(check_tl_relations(PatternSpace(LpKind::PuncturedOdd, 7)));
  return o;
}

Outcome ground_states() {
  Outcome o;
  {
    const GroundState gs = ground_state_scattering(PatternSpace(LpKind::Plain, 6), 1);
    const auto& s = gs.space;
    o.need(component(s, gs.components, "(16)(25)(34)") == P({1}), "LP(6) rainbow 1");
    o.need(component(s, gs.components, "(14)(23)(56)") == P({0, 1}), "LP(6) rainbow t");
    o.need(component(s, gs.components, "(12)(36)(45)") == P({0, 0, 1}), "LP(6) rainbow t^2");
    o.need(component(s, gs.components, "(16)(23)(45)") == P({1, 1}), "LP(6) 1+t");
    o.need(component(s, gs.components, "(12)(34)(56)") == P({0, 1, 1}), "LP(6) t(1+t)");
  }
  {
    const GroundState gs = ground_state_scattering(PatternSpace(LpKind::Plain, 4), 1);
    o.need(component(gs.space, gs.components, "(12)(34)") == P({0, 1}), "LP(4) (12)(34) = t");
    o.need(component(gs.space, gs.components, "(14)(23)") == P({1}), "LP(4) (14)(23) = 1");
  }
  std::vector<std::pair<LpKind, int>> spaces;
  for (int N = 2; N <= 6; N += 2) spaces.push_back({LpKind::Plain, N});
  for (int N = 2; N <= 6; N += 2) spaces.push_back({LpKind::PuncturedEven, N});
  for (int N = 3; N <= 7; N += 2) spaces.push_back({LpKind::PuncturedOdd, N});  // e_1 needs two points
  for (const auto& [kind, N] : spaces) {
    const PatternSpace s(kind, N);
    const GroundState gs = ground_state_scattering(s, 1);
    const int expect = kind == LpKind::Plain ? N / 2 - 1 : N - 1;
    const std::string tag = lp_kind_name(kind) + "(" + std::to_string(N) + ")";
    o.need(gs.max_degree() == expect, tag + ": wrong degree");
    for (int j = 0; j < s.n_rainbows(); ++j)
      o.need(gs.components[static_cast<size_t>(s.index_of(s.rainbow(j)))].is_monomial(),
             tag + ": rainbow not a monomial");
    o.need(check_ground_state(gs));
  }
  return o;
}

std::vector<DihedralDomain> theorem_domains() {
  return {build_domain(square_spec(3)), build_domain(square_spec(4)), build_domain(lam(4, 4, 0, 0, 2)),
          build_domain(lam(5, 4, 0, 2, 1)), symmetry_class_domain(SymClass::HTASM, 5),
          symmetry_class_domain(SymClass::HTASM, 6)};
}

Outcome theorem_main() {
  Outcome o;
  for (const auto& d : theorem_domains()) {
    const Report r = verify_theorem_main(d);
    o.need(r);
    o.need(r.data.value("slice_identity", false) && r.data.value("rotation_identity", false) &&
               r.data.value("scattering_equation", false),
           d.name() + ": a check did not run");
  }
  return o;
}

Outcome k_factors() {
  Outcome o;
  o.need(k_factor(build_domain(square_spec(3))) == P({1}), "K(3x3) != 1");
  o.need(k_factor(build_domain(square_spec(4))) == P({1}), "K(4x4) != 1");
  o.need(k_factor(build_domain(lam(4, 4, 0, 0, 2))) == P({1, 1}), "K(Lambda(4,4;0,0,0,2)) != 1+t");
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int g = 0; g <= 4; ++g)
        o.need(k_triangoloid(a, b, g, KForm::Determinant) == k_triangoloid(a, b, g, KForm::Closed),
               "determinant != closed form");
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int g = 1; g <= 3; ++g) {
        const Poly w = hexagon_tilings_weighted(a, b, g);
        o.need(w == k_triangoloid(a, b, g, KForm::Closed), "tilings != K");
        BigRat m = 1;
        for (int i = 1; i <= a; ++i)
          for (int j = 1; j <= b; ++j)
            for (int k = 1; k <= g; ++k) m *= BigRat(i + j + k - 1, i + j + k - 2);
        o.need(BigRat(w.eval(BigInt(1))) == m, "tilings(1) != MacMahon");
      }
  return o;
}

Outcome gyration_suite() {
  Outcome o;
  std::vector<DihedralDomain> doms;
  for (int n = 1; n <= 4; ++n) doms.push_back(build_domain(square_spec(n)));
  doms.push_back(build_domain(lam(4, 4, 0, 0, 2)));
  doms.push_back(symmetry_class_domain(SymClass::HTASM, 6));
  for (const auto& d : doms) {
    const Report r = verify_gyration(d);
    o.need(r);
    o.need(r.data.value("configurations", 0L) > 0, d.name() + ": no configurations");
  }
  return o;
}

Outcome df_and_rs() {
  Outcome o;
  for (const auto& d : {build_domain(square_spec(3)), build_domain(square_spec(4)), build_domain(lam(4, 4, 0, 0, 2))}) {
    o.need(verify_df(d));
    o.need(verify_ordinary_rs(d));
  }
  return o;
}

Outcome t0() {
  Outcome o;
  const Report r = verify_t0_fpl(build_domain(lam(8, 8, 2, 2, 2)));
  o.need(r);
  o.need(r.data.value("reduced_total", 0L) == 42, "reduced vector total is not 42");
  for (const auto kind : {LpKind::Plain, LpKind::PuncturedEven}) {
    const PatternSpace s(kind, 6);
    for (int i = 1; i <= 6; ++i) o.need(check_t0_recursion(s, i));
  }
  return o;
}

}  // namespace

// With an argument k only criterion k runs.
int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, "FPL counts on squares 1..5", 60, counting},
      {2, "refined counts on squares 3..5", 60, refined},
      {3, "Temperley-Lieb relations", 30, tl_algebra},
      {4, "scattering ground states", 60, ground_states},
      {5, "main theorem", 300, theorem_main},
      {6, "K factors, triangoloid formulas and tilings", 120, k_factors},
      {7, "gyration suite", 300, gyration_suite},
      {8, "symmetrized refinements and ordinary correspondence", 120, df_and_rs},
      {9, "t -> 0 reduction", 120, t0},
  };
  int failed = 0;
  for (const auto& c : all) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = o.ok && in_time;
    failed += pass ? 0 : 1;
    std::printf("criterion %d: %s  %s  (%.2f s, limit %.0f s)%s%s\n", c.id, pass ? "PASS" : "FAIL", c.name,
                secs, c.limit_s, in_time ? "" : " [too slow]", o.ok ? "" : (" " + o.detail).c_str());
  }
  if (only && (only < 1 || only > static_cast<int>(all.size()))) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
