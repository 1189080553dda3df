#include "gyralab/gyration.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "gyralab/svg.hpp"

namespace gyralab {

namespace {

using Colors = std::vector<std::uint8_t>;

bool has_patterns(const DihedralDomain& d) {
  return !(d.lp_kind == LpKind::Plain && d.n_points() % 2 == 1);
}

char dir_or_unknown(const DihedralDomain& d, const FplConfig& f) {
  try {
    return tile_char(direction(d, f));
  } catch (const std::domain_error&) {
    return '?';
  }
}

OrbitStep step_of(const DihedralDomain& d, const FplConfig& f, int idx) {
  return OrbitStep{idx, f.h, dir_or_unknown(d, f), f.plus, f.black_ref};
}

int mod(int a, int m) { return ((a % m) + m) % m; }

std::string where(const DihedralDomain& d, const FplConfig& f) {
  return "h=" + std::to_string(f.h) + (f.plus ? " +" : " -") + (f.black_ref ? "b" : "w") + " on " +
         d.name();
}

}  // namespace

Colors local_gyration(const Colors& cycle, bool punctured) {
  const size_t n = cycle.size();
  if (n == 0 || n > 4) throw std::invalid_argument("local gyration needs a cycle of length 1..4");
  bool alternating = true;
  for (size_t k = 0; k < n; ++k)
    if (cycle[k] == cycle[(k + 1) % n]) alternating = false;
  if (alternating && (n == 4 || (n == 2 && punctured))) return cycle;
  Colors out(cycle);
  for (auto& c : out) c ^= 1;
  return out;
}

Colors apply_gyration_graph(const GyrationGraph& g, const Colors& color) {
  Colors out(color);
  for (const auto& cyc : g.cycles) {
    Colors c;
    for (int e : cyc.edges) c.push_back(color[static_cast<size_t>(e)]);
    c = local_gyration(c, cyc.punctured);
    for (size_t k = 0; k < c.size(); ++k) out[static_cast<size_t>(cyc.edges[k])] = c[k];
  }
  return out;
}

FplConfig H_plus(const DihedralDomain& d, const FplConfig& phi) {
  return make_config(d, apply_gyration_graph(d.gamma_plus, phi.color));
}

FplConfig H_minus(const DihedralDomain& d, const FplConfig& phi) {
  return make_config(d, apply_gyration_graph(d.gamma_minus, phi.color));
}

FplConfig half_gyration(const DihedralDomain& d, const FplConfig& phi) {
  return phi.plus ? H_plus(d, phi) : H_minus(d, phi);
}

FplConfig half_gyration_inv(const DihedralDomain& d, const FplConfig& phi) {
  return phi.plus ? H_minus(d, phi) : H_plus(d, phi);
}

FplConfig half_gyration_pow(const DihedralDomain& d, const FplConfig& phi, int k) {
  FplConfig f = phi;
  for (int i = 0; i < k; ++i) f = half_gyration(d, f);
  for (int i = 0; i > k; --i) f = half_gyration_inv(d, f);
  return f;
}

FplConfig tilde_e(const DihedralDomain& d, const FplConfig& phi, int which, int pos) {
  const int N = d.n_points();
  if (which != 1 && which != N) throw std::invalid_argument("tilde_e acts with index 1 or N");
  if (pos == 0) pos = phi.h;
  if (pos < 1 || pos > d.L) throw std::invalid_argument("tilde_e position off the reference side");
  const int v = d.internal_vertex_of_label(pos);
  const int out = d.ext_slot[static_cast<size_t>(pos - 1)];
  const int in = opposite(out), fwd = rotate_cw(in);
  // gamma_1 is the face between fwd and in (right), gamma_N between in and back (left), in both
  // sectors: this is the choice under which Pi(e~ phi, h) = e Pi_b(phi) holds.
  const bool right = (which == 1);
  const int f = d.vertices[static_cast<size_t>(v)].corner_face[static_cast<size_t>(right ? fwd : in)];
  if (f < 0) return phi;  // corner outside the domain: nothing to flip
  const Face& face = d.faces[static_cast<size_t>(f)];
  const bool flippable = face.sides() == 4 || (face.sides() == 2 && f == d.puncture_face);
  if (!flippable) return phi;
  Colors c;
  for (int e : face.edges) c.push_back(phi.color[static_cast<size_t>(e)]);
  for (size_t k = 0; k < c.size(); ++k)
    if (c[k] == c[(k + 1) % c.size()]) return phi;
  Colors out_c(phi.color);
  for (int e : face.edges) out_c[static_cast<size_t>(e)] ^= 1;
  return make_config(d, std::move(out_c));
}

int OrbitTrace::g(int t) const { return steps[static_cast<size_t>(mod(t, period()))].h - t; }

OrbitTrace orbit(const DihedralDomain& d, const FplConfig& base) {
  OrbitTrace tr;
  FplConfig f = base;
  do {
    tr.steps.push_back(step_of(d, f, static_cast<int>(tr.configs.size())));
    tr.configs.push_back(f);
    f = half_gyration(d, f);
    if (tr.configs.size() > 10'000'000) throw std::logic_error("orbit does not close");
  } while (!(f == base));
  return tr;
}

std::vector<int> gyration_permutation_serial(const DihedralDomain& d,
                                             const std::vector<FplConfig>& configs) {
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < configs.size(); ++i) index.emplace(configs[i].key(), static_cast<int>(i));
  std::vector<int> next(configs.size(), -1);
  for (size_t i = 0; i < configs.size(); ++i) {
    auto it = index.find(half_gyration(d, configs[i]).key());
    if (it == index.end()) throw std::invalid_argument("configuration set is not closed under H");
    next[i] = it->second;
  }
  return next;
}

std::vector<int> gyration_permutation_parallel(const DihedralDomain& d,
                                               const std::vector<FplConfig>& configs, int jobs) {
  jobs = resolve_jobs(jobs);
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < configs.size(); ++i) index.emplace(configs[i].key(), static_cast<int>(i));
  std::vector<int> next(configs.size(), -1);
  const long n = static_cast<long>(configs.size());
  bool closed = true;
#pragma omp parallel for schedule(dynamic, 64) num_threads(jobs) reduction(&& : closed)
  for (long i = 0; i < n; ++i) {
    auto it = index.find(half_gyration(d, configs[static_cast<size_t>(i)]).key());
    if (it == index.end())
      closed = false;
    else
      next[static_cast<size_t>(i)] = it->second;
  }
  if (!closed) throw std::invalid_argument("configuration set is not closed under H");
  return next;
}

std::vector<OrbitTrace> orbit_decomposition(const DihedralDomain& d, int jobs) {
  const auto all = enumerate_fpl(d, Sector::All, jobs);
  const auto next = gyration_permutation_parallel(d, all, jobs);
  std::vector<char> seen(all.size(), 0);
  std::vector<OrbitTrace> out;
  for (size_t i = 0; i < all.size(); ++i) {
    if (seen[i] || !all[i].plus) continue;
    OrbitTrace tr;
    size_t j = i;
    do {
      seen[j] = 1;
      tr.steps.push_back(step_of(d, all[j], static_cast<int>(tr.configs.size())));
      tr.configs.push_back(all[j]);
      j = static_cast<size_t>(next[j]);
    } while (j != i);
    out.push_back(std::move(tr));
  }
  return out;
}

int t_star(const DihedralDomain& d, const FplConfig& phi) {
  if (!phi.plus) throw std::invalid_argument("t_star needs a configuration in Fpl+");
  FplConfig f = phi;
  for (int t = 0;; ++t) {
    const int g = f.h - t;
    if (g == 1) return t;
    if (g < 1) throw std::logic_error("h_t - t skipped the value 1");
    f = half_gyration(d, f);
  }
}

FplConfig theta(const DihedralDomain& d, const FplConfig& phi) {
  return half_gyration_pow(d, phi, t_star(d, phi));
}

FplConfig theta_inv(const DihedralDomain& d, const FplConfig& phi) {
  if (!phi.black_ref) throw std::invalid_argument("theta_inv needs a configuration in Fpl_b");
  return half_gyration_pow(d, phi, -(phi.h - 1));
}

Report check_orbit(const DihedralDomain& d, const OrbitTrace& tr) {
  Report r("orbit", d.name());
  const int p = tr.period();
  auto H = [&](int t) { return tr.steps[static_cast<size_t>(mod(t, p))].h; };
  auto S = [&](int t) -> const OrbitStep& { return tr.steps[static_cast<size_t>(mod(t, p))]; };
  r.require(p % 2 == 0, "odd period " + std::to_string(p));
  const bool plus0 = tr.steps[0].plus;
  std::map<int, std::array<int, 4>> counts;  // h -> (+, -, b, w)
  for (int t = 0; t < p; ++t) {
    const OrbitStep& s = S(t);
    const std::string at = "t=" + std::to_string(t) + " ";
    r.require(s.plus != S(t + 1).plus, at + "sectors do not alternate");
    const bool odd = mod(s.h - t, 2) == 1;
    r.require(s.black_ref == (odd != !plus0), at + "b/w sector disagrees with parity of h_t - t");
    const int dh = H(t + 1) - H(t - 1);
    if (s.dir != '?') {
      r.require(s.black_ref ? (dh == -1 || dh == -2) : (dh == 1 || dh == 2),
                at + "black refinement edge must descend, white ascend");
      const int a = H(t - 1) - s.h, b = H(t + 1) - s.h;
      std::pair<int, int> want;
      if (s.black_ref)
        want = s.dir == 'a' ? std::pair(1, 0) : s.dir == 'c' ? std::pair(1, -1) : std::pair(0, -1);
      else
        want = s.dir == 'a' ? std::pair(0, 1) : s.dir == 'c' ? std::pair(-1, 1) : std::pair(-1, 0);
      r.require(std::pair(a, b) == want, at + "local pattern (" + std::to_string(H(t - 1)) + "," +
                                             std::to_string(s.h) + "," + std::to_string(H(t + 1)) +
                                             ") with d=" + std::string(1, s.dir) + " not in table");
    }
    auto& c = counts[s.h];
    ++c[s.plus ? 0 : 1];
    ++c[s.black_ref ? 2 : 3];
  }
  for (const auto& [h, c] : counts)
    r.require(c[0] == c[1] && c[1] == c[2] && c[2] == c[3],
              "unequal sector counts at height " + std::to_string(h));

  // Plateaux: runs of equal h have length 1 (inside a monotone stretch) or 2 (an extremum).
  bool constant = true;
  for (int t = 0; t < p; ++t) constant = constant && H(t) == H(0);
  if (!constant) {
    int t0 = 0;
    while (H(t0 - 1) == H(t0)) --t0;  // start of a run
    for (int t = t0; t < t0 + p;) {
      int len = 1;
      while (H(t + len) == H(t)) ++len;
      const int before = H(t - 1) - H(t), after = H(t + len) - H(t);
      const bool minimum = before > 0 && after > 0, maximum = before < 0 && after < 0;
      const std::string at = "t=" + std::to_string(mod(t, p)) + " ";
      if (minimum || maximum)
        r.require(len == 2, at + "extremum plateau of length " + std::to_string(len));
      else
        r.require(len == 1, at + "flat step inside a monotone stretch");
      const char want = minimum ? 'a' : maximum ? 'b' : 'c';
      for (int k = 0; k < len; ++k)
        if (S(t + k).dir != '?')
          r.require(S(t + k).dir == want, at + "d_t=" + std::string(1, S(t + k).dir) + ", expected " +
                                              std::string(1, want));
      t += len;
    }
  }

  // h_t - t on three periods of the infinite orbit
  for (int t = 0; t < 3 * p; ++t) {
    const int g0 = tr.g(t), g1 = tr.g(t + 1);
    const bool ok = mod(g0, 2) == 0 ? (g1 == g0 || g1 == g0 - 1) : (g1 == g0 - 2 || g1 == g0 - 1);
    r.require(ok, "g_t step " + std::to_string(g0) + " -> " + std::to_string(g1));
  }
  for (int c = tr.g(3 * p) + 1; c < tr.g(0); ++c) {
    if (mod(c, 2) == 0) continue;
    int k = 0;
    for (int t = 0; t <= 3 * p; ++t) k += tr.g(t) == c;
    r.require(k == 1, "odd value " + std::to_string(c) + " of h_t - t has " + std::to_string(k) +
                          " preimages");
  }
  r.data = {{"period", p}};
  return r;
}

Report verify_gyration(const DihedralDomain& d, int jobs) {
  Report r("gyration", d.name());
  const auto all = enumerate_fpl(d, Sector::All, jobs);
  const int N = d.n_points();
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < all.size(); ++i) index.emplace(all[i].key(), static_cast<int>(i));
  const bool pats = has_patterns(d);

  for (const auto& f : all) {
    const std::string at = where(d, f);
    const FplConfig hp = H_plus(d, f), hm = H_minus(d, f);
    r.require(H_plus(d, hp) == f, "H+ not involutive at " + at);
    r.require(H_minus(d, hm) == f, "H- not involutive at " + at);
    const FplConfig h1 = half_gyration(d, f);
    r.require(h1.plus != f.plus, "H keeps the +/- sector at " + at);
    r.require(half_gyration_inv(d, h1) == f, "H^{-1} H != id at " + at);
    for (int w : {1, N})
      r.require(tilde_e(d, tilde_e(d, f, w), w, f.h) == f, "tilde e not involutive at " + at);
    if (!pats) continue;
    const FplConfig h2 = half_gyration(d, h1);
    for (int v = f.plus ? 1 : 2; v <= d.n_ext(); v += 2) {
      const Pattern p = pi_map(d, f, v);
      r.require(pi_map(d, h1, v + 1) == p, "Pi(H phi, v+1) != Pi(phi, v) at " + at);
      r.require(pi_map(d, h2, v) == rotate(p, 1), "Pi(H^2 phi, v) != R Pi(phi, v) at " + at);
    }
    const LoopData l0 = loop_data(d, f), l1 = loop_data(d, h1), l2 = loop_data(d, h2);
    r.require(l2.pi_b == rotate(l0.pi_b, 1) && l2.pi_w == rotate(l0.pi_w, -1),
              "H^2 does not act as R x R^{-1} on (pi_b, pi_w) at " + at);
    r.require(l0.loops_b + l0.loops_w == l1.loops_b + l1.loops_w,
              "H changes the number of closed loops at " + at);
    r.require(l0.loops_star == l1.loops_star, "H changes the puncture loop count at " + at);
    if (f.black_ref) {
      const Pattern pb = pi_b(d, f);
      r.require(pi_map(d, tilde_e(d, f, N), f.h) == apply_e(N, pb).pattern,
                "Pi(e~_N phi, h) != e_N Pi_b(phi) at " + at);
      r.require(pi_map(d, tilde_e(d, f, 1), f.h) == apply_e(1, pb).pattern,
                "Pi(e~_1 phi, h) != e_1 Pi_b(phi) at " + at);
    }
  }

  // H e~_N, sigma and H^{-1} e~_1 map Fpl_b^[i] onto the same set, Fpl_w^[i].
  long pointwise = 0, nb = 0;
  for (int i = 1; i <= d.L; ++i) {
    std::set<std::string> via_n, via_s, via_1, white;
    for (const auto& f : all) {
      if (f.h != i) continue;
      if (!f.black_ref) {
        white.insert(f.key());
        continue;
      }
      ++nb;
      const FplConfig a = half_gyration(d, tilde_e(d, f, N));
      const FplConfig s = sigma(d, f);
      const FplConfig b = half_gyration_inv(d, tilde_e(d, f, 1));
      via_n.insert(a.key());
      via_s.insert(s.key());
      via_1.insert(b.key());
      pointwise += (a == s && b == s);
    }
    const std::string at = " at slice " + std::to_string(i);
    r.require(via_s == white, "sigma does not map Fpl_b onto Fpl_w" + at);
    r.require(via_n == white, "H e~_N does not map Fpl_b onto Fpl_w" + at);
    r.require(via_1 == white, "H^{-1} e~_1 does not map Fpl_b onto Fpl_w" + at);
  }

  // Orbits
  const auto next = gyration_permutation_parallel(d, all, jobs);
  std::vector<char> seen(all.size(), 0);
  int n_orbits = 0, max_period = 0;
  for (size_t i = 0; i < all.size(); ++i) {
    if (seen[i] || !all[i].plus) continue;
    OrbitTrace tr;
    size_t j = i;
    do {
      seen[j] = 1;
      tr.steps.push_back(step_of(d, all[j], static_cast<int>(tr.configs.size())));
      tr.configs.push_back(all[j]);
      j = static_cast<size_t>(next[j]);
    } while (j != i);
    ++n_orbits;
    max_period = std::max(max_period, tr.period());
    r.merge(check_orbit(d, tr));
  }
  for (size_t i = 0; i < all.size(); ++i) r.require(seen[i], "configuration outside every orbit");

  // Theta
  std::set<std::string> image;
  long nplus = 0;
  for (const auto& f : all) {
    if (!f.plus) continue;
    ++nplus;
    const std::string at = where(d, f);
    const FplConfig th = theta(d, f);
    image.insert(th.key());
    r.require(th.black_ref, "Theta leaves Fpl_b at " + at);
    r.require(t_star(d, f) == th.h - 1, "t* != h(Theta phi) - 1 at " + at);
    r.require(theta_inv(d, th) == f, "Theta^{-1} Theta != id at " + at);
    if (pats) r.require(pi_plus(d, f) == pi_b(d, th), "Pi_+ != Pi_b o Theta at " + at);
  }
  r.require(static_cast<long>(image.size()) == nplus && nb == nplus,
            "Theta is not a bijection onto Fpl_b");

  r.data = {{"configurations", all.size()},
            {"orbits", n_orbits},
            {"max_period", max_period},
            {"gyr_rels_pointwise", pointwise},
            {"fpl_b", nb}};
  return r;
}

nlohmann::json orbit_to_json(const DihedralDomain& d, const OrbitTrace& tr) {
  nlohmann::json rows = nlohmann::json::array();
  for (int t = 0; t < tr.period(); ++t) {
    const auto& s = tr.steps[static_cast<size_t>(t)];
    rows.push_back({{"t", t},
                    {"h", s.h},
                    {"d", std::string(1, s.dir)},
                    {"sector", std::string(s.plus ? "+" : "-") + (s.black_ref ? "b" : "w")},
                    {"g", s.h - t}});
  }
  return {{"domain", d.name()}, {"period", tr.period()}, {"L", d.L}, {"rows", rows}};
}

std::string orbit_svg(const DihedralDomain& d, const OrbitTrace& tr) {
  const int p = tr.period();
  Svg svg(-1.5, -0.5, p + 1.0, d.L + 1.5, 24.0);
  for (int h = 1; h <= d.L; ++h) {
    svg.line(0, h, p, h, "#e5e5e5", 0.03);
    svg.text(-0.7, h - 0.15, std::to_string(h), 0.5);
  }
  std::vector<std::pair<double, double>> pts;
  for (int t = 0; t < p; ++t) {
    const double h = tr.steps[static_cast<size_t>(t)].h;
    pts.push_back({t, h});
    pts.push_back({t + 1, h});
  }
  svg.polyline(pts, "#1f4e9c", 0.08);
  for (int t = 0; t < p; ++t) {
    const auto& s = tr.steps[static_cast<size_t>(t)];
    svg.circle(t + 0.5, s.h, 0.12, s.black_ref ? "#111111" : "#bbbbbb");
  }
  svg.text(p / 2.0, d.L + 0.8, d.name() + ", period " + std::to_string(p), 0.6);
  return svg.str();
}

}  // namespace gyralab
