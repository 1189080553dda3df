#include <doctest.h>

#include <gmpxx.h>

#include <map>
#include <set>

#include "gyralab/fplenum.hpp"

using namespace gyralab;

namespace {

DomainSpec lam(int lx, int ly, int a2, int a3, int a4) {
  DomainSpec s;
  s.Lx = lx;
  s.Ly = ly;
  s.a = {0, a2, a3, a4};
  return s;
}

mpq_class fact(long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return mpq_class(r);
}

// prod_{j<n} (3j+1)!/(n+j)!
mpq_class asm_count(int n) {
  mpq_class r = 1;
  for (int j = 0; j < n; ++j) r *= fact(3 * j + 1) / fact(n + j);
  return r;
}

// Refined count at size m, position j (1-based): E(m-1, j-1) * Z(m) with
// E(n,j) = (n+j)! (2n-j)! (2n+1)! / (n! j! (n-j)! (3n+1)!).
mpq_class refined_count(int m, int j) {
  const int n = m - 1, i = j - 1;
  const mpq_class e = fact(n + i) * fact(2 * n - i) * fact(2 * n + 1) /
                      (fact(n) * fact(i) * fact(n - i) * fact(3 * n + 1));
  return e * asm_count(m);
}

// Textbook refined ASM numbers, as a second source.
mpq_class refined_asm(int n, int k) {
  mpq_class r = fact(n + k - 2) / (fact(k - 1) * fact(n - 1)) * fact(2 * n - k - 1) / fact(n - k);
  for (int j = 0; j <= n - 2; ++j) r *= fact(3 * j + 1) / fact(n + j);
  return r;
}

// Exhaustive colourings of the internal edges, checked vertex by vertex.
std::set<std::string> brute_force(const DihedralDomain& d, bool plus) {
  std::vector<int> internal;
  for (size_t e = 0; e < d.edges.size(); ++e)
    if (!d.edges[e].external()) internal.push_back(static_cast<int>(e));
  REQUIRE(internal.size() <= 22);
  std::vector<std::uint8_t> c(d.edges.size(), 0);
  for (int j = 1; j <= d.n_ext(); ++j)
    c[static_cast<size_t>(d.ext_edge[static_cast<size_t>(j - 1)])] = (j % 2 == 1) == plus;
  std::set<std::string> out;
  for (long mask = 0; mask < (1L << internal.size()); ++mask) {
    for (size_t i = 0; i < internal.size(); ++i) c[static_cast<size_t>(internal[i])] = (mask >> i) & 1;
    bool ok = true;
    for (size_t v = 0; v < d.vertices.size() && ok; ++v) {
      int b = 0;
      for (int e : d.vertices[v].slot)
        if (e >= 0) b += c[static_cast<size_t>(e)];
      ok = b == (d.vertices[v].degree() == 4 ? 2 : 1);
    }
    if (ok) out.insert(std::string(c.begin(), c.end()));
  }
  return out;
}

std::vector<DihedralDomain> assorted_domains() {
  std::vector<DihedralDomain> v;
  for (int n = 1; n <= 4; ++n) v.push_back(build_domain(square_spec(n)));
  v.push_back(build_domain(lam(4, 4, 0, 0, 2)));
  v.push_back(build_domain(lam(5, 4, 0, 2, 1)));
  v.push_back(build_domain(lam(6, 5, 2, 0, 1)));
  v.push_back(symmetry_class_domain(SymClass::HTASM, 5));
  v.push_back(symmetry_class_domain(SymClass::HTASM, 6));
  v.push_back(symmetry_class_domain(SymClass::QTASM, 8));
  v.push_back(symmetry_class_domain(SymClass::QuasiQTASM, 6));
  v.push_back(triangoloid(1, 1, 1));
  return v;
}

}  // namespace

TEST_CASE("square counts follow the product formula") {
  for (int n = 1; n <= 5; ++n) {
    const auto d = build_domain(square_spec(n));
    const auto plus = enumerate_fpl(d, Sector::Plus);
    CHECK(mpq_class(static_cast<long>(plus.size())) == asm_count(n));
    CHECK(enumerate_fpl(d, Sector::Minus).size() == plus.size());
    CHECK(enumerate_fpl(d, Sector::B).size() == plus.size());
  }
  const long expect[] = {1, 2, 7, 42, 429};
  for (int n = 1; n <= 5; ++n) CHECK(asm_count(n) == expect[n - 1]);
}

TEST_CASE("refinement histograms") {
  for (int n = 1; n <= 5; ++n) {
    const auto d = build_domain(square_spec(n));
    const auto h = refinement_histogram(d, Sector::Plus);
    REQUIRE(h.size() == static_cast<size_t>(n));
    long total = 0;
    for (int j = 1; j <= n; ++j) {
      CHECK(mpq_class(h[static_cast<size_t>(j - 1)]) == refined_count(n, j));
      CHECK(mpq_class(h[static_cast<size_t>(j - 1)]) == refined_asm(n, j));
      total += h[static_cast<size_t>(j - 1)];
    }
    CHECK(mpq_class(total) == asm_count(n));
  }
  CHECK(refinement_histogram(build_domain(square_spec(3)), Sector::Plus) == std::vector<long>{2, 3, 2});
  CHECK(refinement_histogram(build_domain(square_spec(4)), Sector::Plus) ==
        std::vector<long>{7, 14, 14, 7});
}

TEST_CASE("small domains from the examples") {
  CHECK(enumerate_fpl(build_domain(lam(4, 4, 0, 0, 2)), Sector::B).size() == 14);
  CHECK(enumerate_fpl(build_domain(lam(4, 3, 0, 0, 0)), Sector::All).empty());
  CHECK(enumerate_fpl(build_domain(lam(5, 7, 0, 0, 0)), Sector::All).empty());
}

TEST_CASE("enumeration agrees with brute force") {
  for (const auto& d : assorted_domains()) {
    int internal = 0;
    for (const auto& e : d.edges) internal += !e.external();
    if (internal > 22) continue;
    CAPTURE(d.name());
    for (bool plus : {true, false}) {
      std::set<std::string> got;
      for (const auto& f : enumerate_fpl_serial(d, plus ? Sector::Plus : Sector::Minus))
        CHECK(got.insert(f.key()).second);
      CHECK(got == brute_force(d, plus));
    }
  }
}

TEST_CASE("parallel enumeration matches the serial reference") {
  auto doms = assorted_domains();
  doms.push_back(build_domain(square_spec(5)));
  doms.push_back(build_domain(lam(8, 8, 2, 2, 2)));
  for (const auto& d : doms) {
    CAPTURE(d.name());
    const auto ref = enumerate_fpl_serial(d, Sector::All);
    for (int jobs : {1, 2, 4}) {
      const auto par = enumerate_fpl_parallel(d, Sector::All, jobs);
      REQUIRE(par.size() == ref.size());
      for (size_t i = 0; i < ref.size(); ++i) CHECK(par[i].color == ref[i].color);
    }
  }
}

TEST_CASE("sectors and conjugation") {
  for (const auto& d : assorted_domains()) {
    CAPTURE(d.name());
    const auto all = enumerate_fpl(d, Sector::All);
    std::set<std::string> keys;
    for (const auto& f : all) keys.insert(f.key());
    long plus = 0, b = 0;
    for (const auto& f : all) {
      plus += f.plus;
      b += f.black_ref;
      // black at the refinement position <=> parity of h agrees with the sector
      CHECK(f.black_ref == ((f.h % 2 == 1) == f.plus));
      const FplConfig s = sigma(d, f);
      CHECK(keys.count(s.key()) == 1);
      CHECK(s.h == f.h);
      CHECK(s.plus != f.plus);
      CHECK(s.black_ref != f.black_ref);
      CHECK(sigma(d, s) == f);
      const FplConfig again = make_config(d, s.color);
      CHECK(again.h == s.h);
      CHECK(again.plus == s.plus);
      CHECK(again.black_ref == s.black_ref);
    }
    CHECK(2 * plus == static_cast<long>(all.size()));
    CHECK(2 * b == static_cast<long>(all.size()));
  }
}

TEST_CASE("tiles along the boundary") {
  for (int n = 1; n <= 4; ++n) {
    const auto d = build_domain(square_spec(n));
    for (const auto& f : enumerate_fpl(d, Sector::All)) {
      for (int side = 0; side < 4; ++side) {
        int c_at = 0;
        for (int k = 1; k <= n; ++k)
          if (boundary_tile(d, f.color, side * n + k) == Tile::C) {
            CHECK(c_at == 0);
            c_at = k;
          }
        REQUIRE(c_at > 0);
        if (side == 0) CHECK(c_at == f.h);
        for (int k = 1; k <= n; ++k) {
          const Tile t = boundary_tile(d, f.color, side * n + k);
          if (k < c_at) CHECK(t == Tile::B);
          if (k > c_at) CHECK(t == Tile::A);
        }
      }
    }
  }
}

TEST_CASE("direction above the refinement position") {
  const auto d1 = build_domain(square_spec(1));
  CHECK_THROWS_AS(direction(d1, enumerate_fpl(d1, Sector::Plus).at(0)), std::domain_error);
  const auto d4 = build_domain(square_spec(4));
  std::map<char, int> seen;
  for (const auto& f : enumerate_fpl(d4, Sector::All)) ++seen[tile_char(direction(d4, f))];
  CHECK(seen.size() == 3);
}

TEST_CASE("pi_map rotation and validity") {
  for (const auto& d : assorted_domains()) {
    if (d.lp_kind == LpKind::Plain && d.n_points() % 2 == 1) continue;
    CAPTURE(d.name());
    for (const auto& f : enumerate_fpl(d, Sector::All)) {
      const int first = f.plus ? 1 : 2;
      const Pattern p0 = pi_map(d, f, first);
      CHECK(p0.kind == d.lp_kind);
      for (int v = first; v <= d.n_ext(); v += 2) {
        const Pattern p = pi_map(d, f, v);
        CHECK(pi_map(d, f, v + 2) == rotate(p, -1));
        CHECK_NOTHROW(validate_pattern(p));
      }
      CHECK_THROWS_AS(pi_map(d, f, first + 1), std::invalid_argument);
      if (f.plus) CHECK(pi_plus(d, f) == p0);
      if (f.black_ref) CHECK(pi_b(d, f) == pi_map(d, f, f.h));
    }
  }
}

TEST_CASE("2x2 square gives both rainbows") {
  const auto d = build_domain(square_spec(2));
  std::set<std::string> pats;
  for (const auto& f : enumerate_fpl(d, Sector::Plus)) pats.insert(pi_plus(d, f).str());
  CHECK(pats == std::set<std::string>{"(12)(34)", "(14)(23)"});
}

TEST_CASE("3x3 pattern histogram under pi_b") {
  const auto d = build_domain(square_spec(3));
  std::map<std::string, std::vector<int>> hs;
  for (const auto& f : enumerate_fpl(d, Sector::B)) hs[pi_b(d, f).str()].push_back(f.h);
  for (auto& [k, v] : hs) std::sort(v.begin(), v.end());
  CHECK(hs["(16)(25)(34)"] == std::vector<int>{1});
  CHECK(hs["(14)(23)(56)"] == std::vector<int>{2});
  CHECK(hs["(12)(36)(45)"] == std::vector<int>{3});
  CHECK(hs["(16)(23)(45)"] == std::vector<int>{1, 2});
  CHECK(hs["(12)(34)(56)"] == std::vector<int>{2, 3});
}

TEST_CASE("loop data") {
  for (const auto& d : assorted_domains()) {
    if (d.lp_kind == LpKind::Plain && d.n_points() % 2 == 1) continue;
    CAPTURE(d.name());
    for (const auto& f : enumerate_fpl(d, Sector::All)) {
      const LoopData a = loop_data(d, f), b = loop_data(d, sigma(d, f));
      CHECK(a.pi_b == b.pi_w);
      CHECK(a.pi_w == b.pi_b);
      CHECK(a.loops_b == b.loops_w);
      CHECK(a.loops_w == b.loops_b);
      CHECK(a.loops_star == b.loops_star);
      CHECK(a.loops_star <= a.loops_b + a.loops_w);
      if (d.lp_kind != LpKind::PuncturedEven) CHECK(a.loops_star == 0);
    }
  }
  // every 3x3 plaquette touches a corner, so closed loops first appear at 4x4
  for (const auto& f : enumerate_fpl(build_domain(square_spec(3)), Sector::All))
    CHECK(loop_data(build_domain(square_spec(3)), f).loops_b == 0);
  const auto d = build_domain(square_spec(4));
  int with_loop = 0;
  for (const auto& f : enumerate_fpl(d, Sector::All)) with_loop += loop_data(d, f).loops_b > 0;
  CHECK(with_loop > 0);
}

TEST_CASE("punctured-even domains see every puncture face") {
  const auto d = symmetry_class_domain(SymClass::HTASM, 6);
  std::set<int> faces;
  for (const auto& f : enumerate_fpl(d, Sector::Plus)) faces.insert(pi_plus(d, f).face);
  CHECK(faces.size() > 1);
}

TEST_CASE("json and svg export") {
  for (const auto& d : assorted_domains()) {
    for (const auto& f : enumerate_fpl(d, Sector::All)) {
      const auto j = config_to_json(d, f);
      CHECK(colors_from_json(d, j) == f.color);
      CHECK(j["h"] == f.h);
    }
    const auto fs = enumerate_fpl(d, Sector::Plus);
    if (!fs.empty()) CHECK(config_svg(d, fs.front()).find("<svg") == 0);
  }
  const auto d = build_domain(square_spec(2));
  auto f = enumerate_fpl(d, Sector::Plus).front();
  auto bad = f.color;
  bad[static_cast<size_t>(d.ext_edge[0])] ^= 1;
  CHECK_THROWS_AS(make_config(d, bad), std::invalid_argument);
  CHECK_THROWS_AS(colors_from_json(d, nlohmann::json{{"colors", {{"0", "x"}}}}), std::invalid_argument);
  CHECK_THROWS_AS(sector_from_name("up"), std::invalid_argument);
}
