#include "gyralab/fplenum.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "gyralab/svg.hpp"

namespace gyralab {

namespace {

using Colors = std::vector<std::uint8_t>;

constexpr int kDX[4] = {1, 0, -1, 0};
constexpr int kDY[4] = {0, 1, 0, -1};

int target_black(const Vertex& v) { return v.degree() == 4 ? 2 : 1; }

std::uint8_t boundary_color(int label, bool plus) {
  return static_cast<std::uint8_t>((label % 2 == 1) == plus);
}

int n_black_at(const DihedralDomain& d, const Colors& c, int v) {
  int k = 0;
  for (int e : d.vertices[static_cast<size_t>(v)].slot)
    if (e >= 0 && c[static_cast<size_t>(e)]) ++k;
  return k;
}

// Backtracking over vertices in scan order; each step fixes all still-open edges of one vertex.
class Search {
 public:
  struct State {
    std::vector<std::int8_t> color;
    std::vector<int> black, open;
  };

  Search(const DihedralDomain& d) : d_(d) {
    const int nv = static_cast<int>(d.vertices.size());
    for (int v = 0; v < nv; ++v) order_.push_back(v);
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      const Vertex &va = d.vertices[static_cast<size_t>(a)], &vb = d.vertices[static_cast<size_t>(b)];
      return std::pair(va.y2, va.x2) < std::pair(vb.y2, vb.x2);
    });
  }

  State initial(bool plus) const {
    State s;
    s.color.assign(d_.edges.size(), -1);
    s.black.assign(d_.vertices.size(), 0);
    s.open.assign(d_.vertices.size(), 0);
    for (size_t v = 0; v < d_.vertices.size(); ++v)
      for (int e : d_.vertices[v].slot)
        if (e >= 0) ++s.open[v];
    for (int j = 1; j <= d_.n_ext(); ++j) {
      const int e = d_.ext_edge[static_cast<size_t>(j - 1)];
      const std::uint8_t c = boundary_color(j, plus);
      s.color[static_cast<size_t>(e)] = static_cast<std::int8_t>(c);
      const int u = d_.edges[static_cast<size_t>(e)].u;
      --s.open[static_cast<size_t>(u)];
      s.black[static_cast<size_t>(u)] += c;
    }
    return s;
  }

  int depth() const { return static_cast<int>(order_.size()); }

  // Calls sink(state) for every consistent assignment of the vertices order[k..stop).
  template <class Sink>
  void run(State& s, int k, int stop, Sink&& sink) const {
    if (k == stop) {
      sink(s);
      return;
    }
    const int v = order_[static_cast<size_t>(k)];
    const Vertex& vx = d_.vertices[static_cast<size_t>(v)];
    int free_edges[4], weight[4], nf = 0;
    for (int e : vx.slot) {
      if (e < 0 || s.color[static_cast<size_t>(e)] >= 0) continue;
      bool seen = false;
      for (int i = 0; i < nf; ++i)
        if (free_edges[i] == e) ++weight[i], seen = true;
      if (!seen) free_edges[nf] = e, weight[nf++] = 1;
    }
    const int need = target_black(vx) - s.black[static_cast<size_t>(v)];
    for (int mask = 0; mask < (1 << nf); ++mask) {
      int w = 0;
      for (int i = 0; i < nf; ++i)
        if (mask >> i & 1) w += weight[i];
      if (w != need) continue;
      bool ok = true;
      for (int i = 0; i < nf; ++i) assign(s, free_edges[i], (mask >> i) & 1, +1);
      for (int i = 0; i < nf && ok; ++i) {
        const Edge& e = d_.edges[static_cast<size_t>(free_edges[i])];
        ok = feasible(s, e.u) && feasible(s, e.v);
      }
      if (ok) run(s, k + 1, stop, sink);
      for (int i = 0; i < nf; ++i) assign(s, free_edges[i], (mask >> i) & 1, -1);
    }
  }

 private:
  void assign(State& s, int e, int c, int dir) const {
    const Edge& ed = d_.edges[static_cast<size_t>(e)];
    s.color[static_cast<size_t>(e)] = dir > 0 ? static_cast<std::int8_t>(c) : -1;
    for (int w : {ed.u, ed.v}) {
      s.open[static_cast<size_t>(w)] -= dir;
      s.black[static_cast<size_t>(w)] += dir * c;
    }
  }
  bool feasible(const State& s, int w) const {
    const int t = target_black(d_.vertices[static_cast<size_t>(w)]);
    const int b = s.black[static_cast<size_t>(w)];
    return b <= t && b + s.open[static_cast<size_t>(w)] >= t;
  }

  const DihedralDomain& d_;
  std::vector<int> order_;
};

FplConfig finish(const DihedralDomain& d, const Search::State& s, bool plus) {
  FplConfig f;
  f.color.assign(s.color.begin(), s.color.end());
  f.plus = plus;
  f.h = refinement_position(d, f.color);
  f.black_ref = f.color[static_cast<size_t>(d.ext_edge[static_cast<size_t>(f.h - 1)])] != 0;
  return f;
}

std::vector<bool> boundary_signs(Sector s) {
  if (s == Sector::Plus) return {true};
  if (s == Sector::Minus) return {false};
  return {true, false};
}

// Result of following a monochromatic strand from an external edge.
struct Strand {
  int end_label = 0;  // 0 when the strand stops at the split vertex
  std::vector<int> edges;
};

Strand follow(const DihedralDomain& d, const Colors& c, int label) {
  Strand st;
  int e = d.ext_edge[static_cast<size_t>(label - 1)];
  const std::uint8_t col = c[static_cast<size_t>(e)];
  int w = d.edges[static_cast<size_t>(e)].u;
  int s = d.edges[static_cast<size_t>(e)].su;
  st.edges.push_back(e);
  for (;;) {
    const Vertex& vx = d.vertices[static_cast<size_t>(w)];
    if (vx.degree() == 2) return st;
    int t = -1;
    for (int k = 0; k < 4; ++k)
      if (k != s && vx.slot[static_cast<size_t>(k)] >= 0 &&
          c[static_cast<size_t>(vx.slot[static_cast<size_t>(k)])] == col)
        t = k;
    e = vx.slot[static_cast<size_t>(t)];
    st.edges.push_back(e);
    const Edge& ed = d.edges[static_cast<size_t>(e)];
    if (ed.external()) {
      st.end_label = d.label_of_edge[static_cast<size_t>(e)];
      return st;
    }
    std::tie(w, s) = ed.other(w, t);
  }
}

int ray_crossings(const DihedralDomain& d, const std::vector<int>& edges) {
  int k = 0;
  for (int e : edges)
    if (std::find(d.puncture_ray.begin(), d.puncture_ray.end(), e) != d.puncture_ray.end()) ++k;
  return k;
}

int mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

std::string sector_name(Sector s) {
  switch (s) {
    case Sector::Plus: return "plus";
    case Sector::Minus: return "minus";
    case Sector::B: return "b";
    case Sector::W: return "w";
    case Sector::All: return "all";
  }
  return "?";
}

Sector sector_from_name(const std::string& s) {
  for (Sector x : {Sector::Plus, Sector::Minus, Sector::B, Sector::W, Sector::All})
    if (sector_name(x) == s) return x;
  throw std::invalid_argument("unknown sector '" + s + "'");
}

char tile_char(Tile t) { return t == Tile::A ? 'a' : t == Tile::B ? 'b' : 'c'; }

void check_fpl(const DihedralDomain& d, const Colors& c) {
  if (c.size() != d.edges.size()) throw std::invalid_argument("colour vector has wrong length");
  for (std::uint8_t x : c)
    if (x > 1) throw std::invalid_argument("colours must be 0 or 1");
  for (size_t v = 0; v < d.vertices.size(); ++v)
    if (n_black_at(d, c, static_cast<int>(v)) != target_black(d.vertices[v]))
      throw std::invalid_argument("vertex " + std::to_string(v) + " breaks the packing rule");
  const int M = d.n_ext();
  for (int j = 1; j <= M; ++j) {
    const int e0 = d.ext_edge[static_cast<size_t>(j - 1)];
    const int e1 = d.ext_edge[static_cast<size_t>(j % M)];
    if (c[static_cast<size_t>(e0)] == c[static_cast<size_t>(e1)])
      throw std::invalid_argument("boundary colours do not alternate at label " + std::to_string(j));
  }
}

FplConfig make_config(const DihedralDomain& d, Colors color) {
  check_fpl(d, color);
  FplConfig f;
  f.plus = color[static_cast<size_t>(d.ext_edge[0])] != 0;
  f.color = std::move(color);
  f.h = refinement_position(d, f.color);
  f.black_ref = f.color[static_cast<size_t>(d.ext_edge[static_cast<size_t>(f.h - 1)])] != 0;
  return f;
}

Tile tile_type(const DihedralDomain& d, const Colors& c, int vertex, int out_slot) {
  const Vertex& vx = d.vertices[static_cast<size_t>(vertex)];
  if (vx.degree() != 4) throw std::domain_error("tile type needs a degree-4 vertex");
  const int in = opposite(out_slot), fwd = rotate_cw(in), back = opposite(fwd);
  auto col = [&](int s) { return c[static_cast<size_t>(vx.slot[static_cast<size_t>(s)])]; };
  if (col(back) == col(fwd)) return Tile::C;
  if (col(back) == col(out_slot)) return Tile::A;
  return Tile::B;
}

Tile boundary_tile(const DihedralDomain& d, const Colors& c, int label) {
  return tile_type(d, c, d.internal_vertex_of_label(label), d.ext_slot[static_cast<size_t>(label - 1)]);
}

int refinement_position(const DihedralDomain& d, const Colors& c) {
  int h = 0;
  for (int j = 1; j <= d.L; ++j) {
    if (d.vertices[static_cast<size_t>(d.internal_vertex_of_label(j))].degree() != 4) continue;
    if (boundary_tile(d, c, j) == Tile::C) {
      if (h) throw std::logic_error("two c-tiles on the reference side");
      h = j;
    }
  }
  if (!h) throw std::logic_error("no c-tile on the reference side");
  return h;
}

Tile direction(const DihedralDomain& d, const FplConfig& phi) {
  const int v = d.internal_vertex_of_label(phi.h);
  const int out = d.ext_slot[static_cast<size_t>(phi.h - 1)];
  const int e = d.vertices[static_cast<size_t>(v)].slot[static_cast<size_t>(opposite(out))];
  if (e < 0) throw std::domain_error("no edge above the refinement position");
  const Edge& ed = d.edges[static_cast<size_t>(e)];
  if (ed.external()) throw std::domain_error("domain too small: refinement vertex touches two sides");
  auto [w, arrival] = ed.other(v, opposite(out));
  if (d.vertices[static_cast<size_t>(w)].degree() != 4)
    throw std::domain_error("vertex above the refinement position has degree 2");
  return tile_type(d, phi.color, w, arrival);
}

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  if (const char* env = std::getenv("GYRALAB_JOBS")) {
    const int k = std::atoi(env);
    if (k > 0) return k;
  }
  return std::max(1, omp_get_max_threads());
}

bool in_sector(const FplConfig& phi, Sector sector) {
  switch (sector) {
    case Sector::Plus: return phi.plus;
    case Sector::Minus: return !phi.plus;
    case Sector::B: return phi.black_ref;
    case Sector::W: return !phi.black_ref;
    case Sector::All: return true;
  }
  return false;
}

std::vector<FplConfig> enumerate_fpl_serial(const DihedralDomain& d, Sector sector) {
  Search search(d);
  std::vector<FplConfig> out;
  for (bool plus : boundary_signs(sector)) {
    Search::State s = search.initial(plus);
    search.run(s, 0, search.depth(), [&](const Search::State& st) {
      FplConfig f = finish(d, st, plus);
      if (in_sector(f, sector)) out.push_back(std::move(f));
    });
  }
  return out;
}

std::vector<FplConfig> enumerate_fpl_parallel(const DihedralDomain& d, Sector sector, int jobs) {
  jobs = resolve_jobs(jobs);
  Search search(d);
  std::vector<FplConfig> out;
  for (bool plus : boundary_signs(sector)) {
    // Deepen the prefix until there is enough independent work to balance the threads.
    std::vector<Search::State> prefixes;
    int depth = 0;
    const int max_depth = search.depth() / 2;
    for (depth = std::min(4, max_depth);; depth = std::min(depth + 2, max_depth)) {
      prefixes.clear();
      Search::State s = search.initial(plus);
      search.run(s, 0, depth, [&](const Search::State& st) { prefixes.push_back(st); });
      if (static_cast<int>(prefixes.size()) >= 16 * jobs || depth == max_depth) break;
    }
    std::vector<std::vector<FplConfig>> parts(prefixes.size());
    const long np = static_cast<long>(prefixes.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (long i = 0; i < np; ++i) {
      Search::State st = prefixes[static_cast<size_t>(i)];
      auto& part = parts[static_cast<size_t>(i)];
      search.run(st, depth, search.depth(), [&](const Search::State& leaf) {
        FplConfig f = finish(d, leaf, plus);
        if (in_sector(f, sector)) part.push_back(std::move(f));
      });
    }
    for (auto& p : parts)
      for (auto& f : p) out.push_back(std::move(f));
  }
  return out;
}

std::vector<long> refinement_histogram(const std::vector<FplConfig>& configs, int L) {
  std::vector<long> h(static_cast<size_t>(L), 0);
  for (const auto& f : configs) ++h[static_cast<size_t>(f.h - 1)];
  return h;
}

std::vector<long> refinement_histogram(const DihedralDomain& d, Sector sector, int jobs) {
  return refinement_histogram(enumerate_fpl(d, sector, jobs), d.L);
}

Pattern pi_map(const DihedralDomain& d, const FplConfig& phi, int v) {
  const int M = d.n_ext(), N = d.n_points();
  v = mod(v - 1, M) + 1;
  if (!phi.color[static_cast<size_t>(d.ext_edge[static_cast<size_t>(v - 1)])])
    throw std::invalid_argument("pi_map: external edge at label " + std::to_string(v) + " is white");
  if (d.lp_kind == LpKind::Plain && N % 2 == 1)
    throw std::invalid_argument("pi_map: domain has no pattern space");
  Pattern p;
  p.kind = d.lp_kind;
  p.N = N;
  p.match.assign(static_cast<size_t>(N), -1);
  auto point = [&](int label) { return mod(label - v, M) / 2; };
  std::vector<std::pair<std::pair<int, int>, int>> arcs;  // (i<j), crossings of the ray
  for (int k = 0; k < N; ++k) {
    const int label = mod(v - 1 + 2 * k, M) + 1;
    if (p.match[static_cast<size_t>(k)] >= 0) continue;
    Strand st = follow(d, phi.color, label);
    if (st.end_label == 0) {
      p.match[static_cast<size_t>(k)] = k;
      p.defect = k;
      continue;
    }
    const int m = point(st.end_label);
    p.match[static_cast<size_t>(k)] = m;
    p.match[static_cast<size_t>(m)] = k;
    if (d.lp_kind == LpKind::PuncturedEven)
      arcs.push_back({{std::min(k, m), std::max(k, m)}, ray_crossings(d, st.edges)});
  }
  if (d.lp_kind == LpKind::PuncturedEven) {
    // The ray reaches the boundary in gap g0; an arc holds the puncture iff it holds g0 and the
    // ray crosses it an even number of times, or the other way round.
    const int g0 = mod(d.puncture_exit - v, M) / 2;
    int best = -1, best_len = N + 1;
    for (const auto& [ij, cr] : arcs) {
      const auto [i, j] = ij;
      const bool inside = (i <= g0 && g0 < j) != (cr % 2 == 1);
      if (inside && j - i < best_len) best = i, best_len = j - i;
    }
    p.face = face_min_gap(p.match, best >= 0 ? best : N - 1);
  }
  validate_pattern(p);
  return p;
}

Pattern pi_plus(const DihedralDomain& d, const FplConfig& phi) {
  if (!phi.plus) throw std::invalid_argument("pi_plus needs a configuration in Fpl+");
  return pi_map(d, phi, 1);
}

Pattern pi_b(const DihedralDomain& d, const FplConfig& phi) {
  if (!phi.black_ref) throw std::invalid_argument("pi_b needs a configuration in Fpl_b");
  return pi_map(d, phi, phi.h);
}

FplConfig sigma(const DihedralDomain& d, const FplConfig& phi) {
  (void)d;
  FplConfig s = phi;
  for (auto& x : s.color) x ^= 1;
  s.plus = !phi.plus;
  s.black_ref = !phi.black_ref;
  return s;
}

LoopData loop_data(const DihedralDomain& d, const FplConfig& phi) {
  LoopData out;
  const FplConfig conj = sigma(d, phi);
  if (!(d.lp_kind == LpKind::Plain && d.n_points() % 2 == 1)) {
    out.pi_b = pi_map(d, phi, phi.plus ? 1 : 2);
    out.pi_w = pi_map(d, conj, phi.plus ? 2 : 1);
  }
  // Closed loops: walk from every unvisited internal edge; strands to the boundary are skipped.
  std::vector<char> seen(d.edges.size(), 0);
  for (int j = 1; j <= d.n_ext(); ++j)
    for (int e : follow(d, phi.color, j).edges) seen[static_cast<size_t>(e)] = 1;
  if (d.puncture_vertex >= 0)
    for (int e : d.vertices[static_cast<size_t>(d.puncture_vertex)].slot)
      if (e >= 0) seen[static_cast<size_t>(e)] = 1;
  for (size_t e0 = 0; e0 < d.edges.size(); ++e0) {
    if (seen[e0]) continue;
    const std::uint8_t col = phi.color[e0];
    std::vector<int> cyc;
    int e = static_cast<int>(e0);
    auto [w, s] = d.edges[e0].other(d.edges[e0].u, d.edges[e0].su);
    do {
      seen[static_cast<size_t>(e)] = 1;
      cyc.push_back(e);
      const Vertex& vx = d.vertices[static_cast<size_t>(w)];
      int t = -1;
      for (int k = 0; k < 4; ++k)
        if (k != s && vx.slot[static_cast<size_t>(k)] >= 0 &&
            phi.color[static_cast<size_t>(vx.slot[static_cast<size_t>(k)])] == col)
          t = k;
      e = vx.slot[static_cast<size_t>(t)];
      std::tie(w, s) = d.edges[static_cast<size_t>(e)].other(w, t);
    } while (e != static_cast<int>(e0));
    (col ? out.loops_b : out.loops_w) += 1;
    if (d.lp_kind == LpKind::PuncturedEven && ray_crossings(d, cyc) % 2 == 1) ++out.loops_star;
  }
  return out;
}

nlohmann::json config_to_json(const DihedralDomain& d, const FplConfig& phi) {
  nlohmann::json colors = nlohmann::json::object();
  for (size_t e = 0; e < phi.color.size(); ++e) colors[std::to_string(e)] = phi.color[e] ? "b" : "w";
  nlohmann::json j = {{"domain", d.name()},
                      {"colors", colors},
                      {"h", phi.h},
                      {"sector", std::string(phi.plus ? "+" : "-") + (phi.black_ref ? "b" : "w")}};
  try {
    j["d"] = std::string(1, tile_char(direction(d, phi)));
  } catch (const std::domain_error&) {
    j["d"] = nullptr;
  }
  if (!(d.lp_kind == LpKind::Plain && d.n_points() % 2 == 1)) {
    const LoopData ld = loop_data(d, phi);
    j["pi_b"] = pattern_to_json(ld.pi_b);
    j["pi_w"] = pattern_to_json(ld.pi_w);
    j["loops_b"] = ld.loops_b;
    j["loops_w"] = ld.loops_w;
    j["loops_star"] = ld.loops_star;
  }
  return j;
}

Colors colors_from_json(const DihedralDomain& d, const nlohmann::json& j) {
  const nlohmann::json& cj = j.contains("colors") ? j.at("colors") : j;
  if (!cj.is_object()) throw std::invalid_argument("configuration JSON needs a colors object");
  Colors c(d.edges.size(), 2);
  for (const auto& [k, val] : cj.items()) {
    size_t e = 0;
    try {
      e = std::stoul(k);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad edge id '" + k + "'");
    }
    if (e >= c.size()) throw std::invalid_argument("edge id out of range: " + k);
    const std::string s = val.get<std::string>();
    if (s != "b" && s != "w") throw std::invalid_argument("edge colour must be \"b\" or \"w\"");
    c[e] = s == "b";
  }
  for (auto x : c)
    if (x == 2) throw std::invalid_argument("configuration JSON misses some edges");
  return c;
}

std::string config_svg(const DihedralDomain& d, const FplConfig& phi) {
  const double Lx = d.spec.Lx, Ly = d.spec.Ly;
  Svg svg(-0.5, -0.5, Lx + 1.5, Ly + 1.5, 40.0);
  auto pos = [&](int v) {
    const Vertex& x = d.vertices[static_cast<size_t>(v)];
    return std::pair<double, double>(x.x2 / 2.0, x.y2 / 2.0);
  };
  auto step = [](std::pair<double, double> p, int s, double len) {
    return std::pair<double, double>(p.first + len * kDX[s], p.second + len * kDY[s]);
  };
  for (size_t e = 0; e < d.edges.size(); ++e) {
    const Edge& ed = d.edges[e];
    const bool black = phi.color[e] != 0;
    const std::string stroke = black ? "#111111" : "#cfcfcf";
    const double width = black ? 0.12 : 0.06;
    const auto pu = pos(ed.u);
    std::vector<std::pair<double, double>> pts{pu};
    if (ed.external()) {
      pts.push_back(step(pu, ed.su, 0.5));
      const int label = d.label_of_edge[e];
      const auto tp = step(pu, ed.su, 0.75);
      svg.text(tp.first, tp.second - 0.1, std::to_string(label), 0.28);
    } else {
      const auto pv = pos(ed.v);
      const bool horiz_u = ed.su % 2 == 0, horiz_v = ed.sv % 2 == 0;
      if (ed.u == ed.v) {
        const auto a = step(pu, ed.su, 0.5);
        pts.insert(pts.end(), {a, step(a, ed.sv, 0.5), step(pu, ed.sv, 0.5)});
      } else if (horiz_u != horiz_v) {
        pts.push_back(horiz_u ? std::pair(pv.first, pu.second) : std::pair(pu.first, pv.second));
      } else if (ed.sv != opposite(ed.su) || std::abs(pu.first - pv.first) + std::abs(pu.second - pv.second) > 1.01) {
        const double len = 0.5 + 0.25 * (std::abs(pu.first - pv.first) + std::abs(pu.second - pv.second));
        pts.push_back(step(pu, ed.su, len));
        pts.push_back(step(pv, ed.sv, len));
      }
      pts.push_back(pv);
    }
    svg.polyline(pts, stroke, width);
  }
  if (d.puncture_vertex >= 0) {
    const auto p = pos(d.puncture_vertex);
    svg.circle(p.first, p.second, 0.1, "#c0392b");
  }
  const int hv = d.internal_vertex_of_label(phi.h);
  const auto ph = step(pos(hv), d.ext_slot[static_cast<size_t>(phi.h - 1)], 0.5);
  svg.circle(ph.first, ph.second, 0.09, "#c0392b");
  return svg.str();
}

}  // namespace gyralab
