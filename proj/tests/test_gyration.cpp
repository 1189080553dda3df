#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "gyralab/gyration.hpp"

using namespace gyralab;

namespace {

using Colors = std::vector<std::uint8_t>;

DomainSpec lam(int lx, int ly, int a2, int a3, int a4) {
  DomainSpec s;
  s.Lx = lx;
  s.Ly = ly;
  s.a = {0, a2, a3, a4};
  return s;
}

std::string show(const Report& r) { return r.to_json().dump(); }

}  // namespace

TEST_CASE("local gyration on short cycles") {
  CHECK(local_gyration({1, 0, 1, 0}, false) == Colors{1, 0, 1, 0});
  CHECK(local_gyration({0, 1, 0, 1}, false) == Colors{0, 1, 0, 1});
  CHECK(local_gyration({1, 1, 1}, false) == Colors{0, 0, 0});
  CHECK(local_gyration({1, 0}, true) == Colors{1, 0});
  CHECK(local_gyration({1, 0}, false) == Colors{0, 1});
  CHECK(local_gyration({1, 1, 0, 0}, false) == Colors{0, 0, 1, 1});
  CHECK(local_gyration({1}, true) == Colors{0});
  CHECK_THROWS_AS(local_gyration({1, 0, 1, 0, 1}, false), std::invalid_argument);
  CHECK_THROWS_AS(local_gyration({}, false), std::invalid_argument);
  // involutive, and complements the black degree of every inner vertex of the cycle unless fixed
  for (int len = 1; len <= 4; ++len)
    for (bool punct : {false, true})
      for (int m = 0; m < (1 << len); ++m) {
        Colors c;
        for (int k = 0; k < len; ++k) c.push_back((m >> k) & 1);
        const Colors g = local_gyration(c, punct);
        CHECK(local_gyration(g, punct) == c);
        if (g != c)
          for (int k = 0; k < len; ++k)
            CHECK(c[k] + c[(k + 1) % len] + g[k] + g[(k + 1) % len] == 2);
      }
}

TEST_CASE("gyration suite on squares and other domains") {
  std::vector<DihedralDomain> doms;
  for (int n = 1; n <= 4; ++n) doms.push_back(build_domain(square_spec(n)));
  doms.push_back(build_domain(lam(4, 4, 0, 0, 2)));
  doms.push_back(build_domain(lam(5, 4, 0, 2, 1)));
  doms.push_back(build_domain(lam(6, 5, 2, 0, 1)));
  doms.push_back(symmetry_class_domain(SymClass::HTASM, 5));
  doms.push_back(symmetry_class_domain(SymClass::HTASM, 6));
  doms.push_back(symmetry_class_domain(SymClass::QTASM, 8));
  doms.push_back(symmetry_class_domain(SymClass::QuasiQTASM, 6));
  doms.push_back(triangoloid(1, 1, 1));
  doms.push_back(triangoloid(1, 2, 1));
  for (const auto& d : doms) {
    const Report r = verify_gyration(d, 2);
    CHECK_MESSAGE(r.ok, show(r));
    CHECK(r.data["fpl_b"].get<long>() * 2 == r.data["configurations"].get<long>());
  }
}

TEST_CASE("parallel gyration permutation matches the serial one") {
  for (const auto& d : {build_domain(square_spec(5)), symmetry_class_domain(SymClass::HTASM, 6),
                        build_domain(lam(8, 8, 2, 2, 2))}) {
    const auto all = enumerate_fpl(d, Sector::All);
    const auto ref = gyration_permutation_serial(d, all);
    for (int jobs : {1, 3}) CHECK(gyration_permutation_parallel(d, all, jobs) == ref);
    std::vector<int> sorted = ref;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == static_cast<int>(i));
  }
}

TEST_CASE("single orbits agree with the decomposition") {
  const auto d = build_domain(square_spec(4));
  const auto orbits = orbit_decomposition(d, 2);
  size_t total = 0;
  for (const auto& tr : orbits) {
    total += static_cast<size_t>(tr.period());
    const OrbitTrace again = orbit(d, tr.configs[0]);
    REQUIRE(again.period() == tr.period());
    for (int t = 0; t < tr.period(); ++t) CHECK(again.configs[t] == tr.configs[t]);
    CHECK(half_gyration_pow(d, tr.configs[0], tr.period()) == tr.configs[0]);
    CHECK(half_gyration_pow(d, tr.configs[0], -tr.period()) == tr.configs[0]);
    CHECK(tr.period() % 2 == 0);
  }
  CHECK(total == 84);
}

TEST_CASE("orbit checker rejects broken traces") {
  const auto d = build_domain(square_spec(4));
  const auto orbits = orbit_decomposition(d);
  const auto it = std::max_element(orbits.begin(), orbits.end(),
                                   [](const auto& a, const auto& b) { return a.period() < b.period(); });
  OrbitTrace tr = *it;
  CHECK(check_orbit(d, tr).ok);
  OrbitTrace bad = tr;
  bad.steps[3].h = bad.steps[3].h == 1 ? 3 : 1;
  CHECK_FALSE(check_orbit(d, bad).ok);
  bad = tr;
  bad.steps[2].dir = bad.steps[2].dir == 'a' ? 'b' : 'a';
  CHECK_FALSE(check_orbit(d, bad).ok);
  bad = tr;
  bad.steps.pop_back();
  CHECK_FALSE(check_orbit(d, bad).ok);
}

TEST_CASE("theta on the 3x3 square") {
  const auto d = build_domain(square_spec(3));
  std::multiset<std::string> plus_pats, b_pats;
  std::set<std::string> image;
  for (const auto& f : enumerate_fpl(d, Sector::Plus)) {
    plus_pats.insert(pi_plus(d, f).str());
    const FplConfig th = theta(d, f);
    CHECK(th.black_ref);
    CHECK(pi_b(d, th) == pi_plus(d, f));
    CHECK(t_star(d, f) == th.h - 1);
    CHECK(theta_inv(d, th) == f);
    image.insert(th.key());
  }
  for (const auto& f : enumerate_fpl(d, Sector::B)) b_pats.insert(pi_b(d, f).str());
  CHECK(image.size() == 7);
  CHECK(plus_pats == b_pats);
  CHECK_THROWS_AS(theta_inv(d, enumerate_fpl(d, Sector::W).front()), std::invalid_argument);
  CHECK_THROWS_AS(t_star(d, enumerate_fpl(d, Sector::Minus).front()), std::invalid_argument);
}

TEST_CASE("H squared rotates the ordinary pattern on 3x3") {
  const auto d = build_domain(square_spec(3));
  for (const auto& f : enumerate_fpl(d, Sector::Plus)) {
    const FplConfig g = half_gyration_pow(d, f, 2);
    CHECK(g.plus);
    CHECK(pi_plus(d, g) == rotate(pi_plus(d, f), 1));
  }
}

TEST_CASE("tilde e acts like e_1 and e_N") {
  for (const auto& d : {build_domain(square_spec(3)), build_domain(lam(4, 4, 0, 0, 2))}) {
    const int N = d.n_points();
    int moved = 0;
    for (const auto& f : enumerate_fpl(d, Sector::B)) {
      for (int w : {1, N}) {
        const FplConfig g = tilde_e(d, f, w);
        moved += !(g == f);
        CHECK(tilde_e(d, g, w, f.h) == f);
        CHECK(pi_map(d, g, f.h) == apply_e(w, pi_b(d, f)).pattern);
      }
    }
    CHECK(moved > 0);
  }
  const auto d = build_domain(square_spec(3));
  CHECK_THROWS_AS(tilde_e(d, enumerate_fpl(d, Sector::B).front(), 2), std::invalid_argument);
}

TEST_CASE("orbit export") {
  const auto d = build_domain(square_spec(3));
  const auto tr = orbit(d, enumerate_fpl(d, Sector::Plus).front());
  const auto j = orbit_to_json(d, tr);
  CHECK(j["period"] == tr.period());
  CHECK(j["rows"].size() == static_cast<size_t>(tr.period()));
  CHECK(j["rows"][0]["t"] == 0);
  CHECK(orbit_svg(d, tr).find("<svg") == 0);
}
