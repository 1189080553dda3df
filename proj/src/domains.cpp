#include "gyralab/domains.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gyralab {

namespace {

constexpr int kDX[4] = {1, 0, -1, 0};
constexpr int kDY[4] = {0, 1, 0, -1};

[[noreturn]] void bad(const std::string& m) { throw std::invalid_argument(m); }

bool in_rect(const DomainSpec& s, int x, int y) {
  return x >= 1 && x <= s.Lx && y >= 1 && y <= s.Ly;
}

bool cut_away(const DomainSpec& s, int x, int y) {
  const auto& a = s.a;
  return (x <= a[0] && y <= a[0]) || (x > s.Lx - a[1] && y <= a[1]) ||
         (x > s.Lx - a[2] && y > s.Ly - a[2]) || (x <= a[3] && y > s.Ly - a[3]);
}

int next_used_ccw(const Vertex& v, int s) {
  for (int k = 1; k <= 4; ++k) {
    int t = (s + k) % 4;
    if (v.slot[static_cast<size_t>(t)] >= 0) return t;
  }
  return -1;
}

// Plane graph given by a rotation system; darts 2e (u->v) and 2e+1 (v->u).
struct PlaneMap {
  std::vector<std::pair<int, int>> ends;
  std::vector<std::vector<int>> rot;  // counter-clockwise
  std::vector<int> dart_face;
  std::vector<std::vector<int>> faces;  // dart cycles

  int tail(int d) const { return d % 2 == 0 ? ends[d / 2].first : ends[d / 2].second; }
  int head(int d) const { return tail(d ^ 1); }

  void trace() {
    std::vector<int> pos(2 * ends.size(), -1);
    for (const auto& r : rot)
      for (size_t k = 0; k < r.size(); ++k) pos[static_cast<size_t>(r[k])] = static_cast<int>(k);
    for (int p : pos)
      if (p < 0) bad("rotation system misses a dart");
    dart_face.assign(2 * ends.size(), -1);
    faces.clear();
    for (int d0 = 0; d0 < static_cast<int>(dart_face.size()); ++d0) {
      if (dart_face[static_cast<size_t>(d0)] >= 0) continue;
      std::vector<int> cyc;
      int d = d0;
      const int f = static_cast<int>(faces.size());
      while (dart_face[static_cast<size_t>(d)] < 0) {
        dart_face[static_cast<size_t>(d)] = f;
        cyc.push_back(d);
        const int r = d ^ 1;
        const auto& rr = rot[static_cast<size_t>(tail(r))];
        const int deg = static_cast<int>(rr.size());
        d = rr[static_cast<size_t>((pos[static_cast<size_t>(r)] - 1 + deg) % deg)];
      }
      faces.push_back(std::move(cyc));
    }
  }
};

int dart_at(const DihedralDomain& d, int w, int s) {
  const int e = d.vertices[static_cast<size_t>(w)].slot[static_cast<size_t>(s)];
  const Edge& E = d.edges[static_cast<size_t>(e)];
  return (E.u == w && E.su == s) ? 2 * e : 2 * e + 1;
}

struct Stub {
  int v, slot;
  int wx, wy;  // removed neighbour
};

std::pair<std::pair<int, int>, std::pair<int, int>> dual_ends(const Vertex& v, int slot) {
  const int mx = v.x2 + kDX[slot], my = v.y2 + kDY[slot];
  if (kDX[slot] != 0) return {{mx, my - 1}, {mx, my + 1}};
  return {{mx - 1, my}, {mx + 1, my}};
}

// Joins the dangling stubs of the cut boundaries. Stubs are ordered along each dual boundary
// path and paired from the outside in, so the innermost pair sits at the concave corner.
void join_stubs(DihedralDomain& d, const std::vector<Stub>& stubs) {
  using P = std::pair<int, int>;
  std::map<P, std::vector<int>> at;
  for (size_t i = 0; i < stubs.size(); ++i) {
    auto [p, q] = dual_ends(d.vertices[static_cast<size_t>(stubs[i].v)], stubs[i].slot);
    at[p].push_back(static_cast<int>(i));
    at[q].push_back(static_cast<int>(i));
  }
  std::vector<char> used(stubs.size(), 0);
  auto add_pair = [&](const Stub& a, const Stub& b) {
    const int e = static_cast<int>(d.edges.size());
    d.edges.push_back(Edge{a.v, a.slot, b.v, b.slot});
    d.vertices[static_cast<size_t>(a.v)].slot[static_cast<size_t>(a.slot)] = e;
    d.vertices[static_cast<size_t>(b.v)].slot[static_cast<size_t>(b.slot)] = e;
  };
  for (const auto& [pt, list] : at) {
    if (list.size() != 1 || used[static_cast<size_t>(list[0])]) continue;
    std::vector<int> path;
    P cur = pt;
    int st = list[0];
    for (;;) {
      used[static_cast<size_t>(st)] = 1;
      path.push_back(st);
      const Stub& S = stubs[static_cast<size_t>(st)];
      auto [p, q] = dual_ends(d.vertices[static_cast<size_t>(S.v)], S.slot);
      const P nxt = (p == cur) ? q : p;
      const auto& cand = at[nxt];
      int go = -1;
      if (cand.size() == 2) {
        go = cand[0] == st ? cand[1] : cand[0];
      } else if (cand.size() == 4) {
        for (int c : cand) {
          const Stub& C = stubs[static_cast<size_t>(c)];
          if (c != st && C.wx == S.wx && C.wy == S.wy) go = c;
        }
      } else if (cand.size() != 1) {
        bad("unsupported cut geometry");
      }
      if (go < 0) break;
      if (used[static_cast<size_t>(go)]) bad("cut boundary revisits a stub");
      cur = nxt;
      st = go;
    }
    if (path.size() % 2 != 0) bad("odd number of stubs along a cut boundary");
    for (size_t i = 0; i < path.size() / 2; ++i)
      add_pair(stubs[static_cast<size_t>(path[i])],
               stubs[static_cast<size_t>(path[path.size() - 1 - i])]);
  }
  for (char u : used)
    if (!u) bad("closed cut boundary");
}

DihedralDomain build_grid(const DomainSpec& spec) {
  DihedralDomain d;
  d.spec = spec;
  d.grid_index.assign(static_cast<size_t>(spec.Lx) * static_cast<size_t>(spec.Ly), -1);
  for (int y = 1; y <= spec.Ly; ++y)
    for (int x = 1; x <= spec.Lx; ++x) {
      if (cut_away(spec, x, y)) continue;
      d.grid_index[static_cast<size_t>((y - 1) * spec.Lx + (x - 1))] =
          static_cast<int>(d.vertices.size());
      Vertex v;
      v.x2 = 2 * x;
      v.y2 = 2 * y;
      d.vertices.push_back(v);
    }
  if (d.vertices.empty()) bad("domain has no vertices");
  {
    std::vector<char> seen(d.vertices.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
      const int w = stack.back();
      stack.pop_back();
      // diagonal contact counts: touching cuts are bridged by their joined stubs
      for (int k = 0; k < 9; ++k) {
        const int n = d.vertex_at(d.vertices[static_cast<size_t>(w)].x2 / 2 + k % 3 - 1,
                                  d.vertices[static_cast<size_t>(w)].y2 / 2 + k / 3 - 1);
        if (n >= 0 && !seen[static_cast<size_t>(n)]) {
          seen[static_cast<size_t>(n)] = 1;
          ++reached;
          stack.push_back(n);
        }
      }
    }
    if (reached != d.vertices.size()) bad("corner cuts disconnect the domain");
  }
  std::vector<Stub> stubs;
  for (int id = 0; id < static_cast<int>(d.vertices.size()); ++id) {
    const int x = d.vertices[static_cast<size_t>(id)].x2 / 2;
    const int y = d.vertices[static_cast<size_t>(id)].y2 / 2;
    for (int s = 0; s < 4; ++s) {
      if (d.vertices[static_cast<size_t>(id)].slot[static_cast<size_t>(s)] >= 0) continue;
      const int nx = x + kDX[s], ny = y + kDY[s];
      if (!in_rect(spec, nx, ny)) {
        const int e = static_cast<int>(d.edges.size());
        d.edges.push_back(Edge{id, s, -1, -1});
        d.vertices[static_cast<size_t>(id)].slot[static_cast<size_t>(s)] = e;
      } else if (cut_away(spec, nx, ny)) {
        stubs.push_back(Stub{id, s, nx, ny});
      } else {
        const int w = d.vertex_at(nx, ny);
        const int e = static_cast<int>(d.edges.size());
        d.edges.push_back(Edge{id, s, w, opposite(s)});
        d.vertices[static_cast<size_t>(id)].slot[static_cast<size_t>(s)] = e;
        d.vertices[static_cast<size_t>(w)].slot[static_cast<size_t>(opposite(s))] = e;
      }
    }
  }
  join_stubs(d, stubs);
  return d;
}

void label_boundary(DihedralDomain& d) {
  const int start = d.vertex_at(1, 1);
  if (start < 0 || d.vertices[static_cast<size_t>(start)].slot[kD] < 0 ||
      !d.edges[static_cast<size_t>(d.vertices[static_cast<size_t>(start)].slot[kD])].external())
    bad("reference corner (1,1) missing");
  d.ext_edge.clear();
  d.ext_slot.clear();
  int v = start, s = kD;
  const size_t limit = 4 * d.edges.size() + 8;
  for (size_t it = 0;; ++it) {
    if (it > limit) bad("boundary walk does not close");
    const Edge& E = d.edges[static_cast<size_t>(d.vertices[static_cast<size_t>(v)].slot[static_cast<size_t>(s)])];
    if (E.external()) {
      if (!d.ext_edge.empty() && v == start && s == kD) break;
      d.ext_edge.push_back(d.vertices[static_cast<size_t>(v)].slot[static_cast<size_t>(s)]);
      d.ext_slot.push_back(s);
    } else {
      std::tie(v, s) = E.other(v, s);
    }
    s = next_used_ccw(d.vertices[static_cast<size_t>(v)], s);
  }
  size_t n_ext_total = 0;
  for (const auto& e : d.edges) n_ext_total += e.external() ? 1 : 0;
  if (n_ext_total != d.ext_edge.size()) bad("domain boundary is not a single cycle");
  if (d.ext_edge.size() % 2 != 0) bad("odd number of external edges");
  d.label_of_edge.assign(d.edges.size(), 0);
  for (size_t j = 0; j < d.ext_edge.size(); ++j)
    d.label_of_edge[static_cast<size_t>(d.ext_edge[j])] = static_cast<int>(j) + 1;
  d.L = 0;
  const int M = d.n_ext();
  for (int j = 0; j < M; ++j) {
    const int a = d.edges[static_cast<size_t>(d.ext_edge[static_cast<size_t>(j)])].u;
    const int b = d.edges[static_cast<size_t>(d.ext_edge[static_cast<size_t>((j + 1) % M)])].u;
    if (a == b) {
      d.L = j + 1;
      break;
    }
  }
}

struct FaceInfo {
  PlaneMap map;
  std::vector<int> kind;  // 0 internal, 1 gap, 2 outer
  std::vector<int> gap;   // gap faces: l such that the face lies between labels l and l+1
  std::vector<int> internal_id;
};

FaceInfo trace_faces(DihedralDomain& d) {
  const int nI = static_cast<int>(d.vertices.size());
  const int E = static_cast<int>(d.edges.size());
  const int M = d.n_ext();
  FaceInfo fi;
  PlaneMap& pm = fi.map;
  for (const auto& e : d.edges)
    pm.ends.push_back({e.u, e.external() ? nI + d.label_of_edge[&e - d.edges.data()] - 1 : e.v});
  for (int j = 0; j < M; ++j) pm.ends.push_back({nI + j, nI + (j + 1) % M});
  pm.rot.assign(static_cast<size_t>(nI + M), {});
  for (int w = 0; w < nI; ++w)
    for (int s = 0; s < 4; ++s)
      if (d.vertices[static_cast<size_t>(w)].slot[static_cast<size_t>(s)] >= 0)
        pm.rot[static_cast<size_t>(w)].push_back(dart_at(d, w, s));
  for (int j = 0; j < M; ++j)
    pm.rot[static_cast<size_t>(nI + j)] = {2 * d.ext_edge[static_cast<size_t>(j)] + 1,
                                           2 * (E + (j - 1 + M) % M) + 1, 2 * (E + j)};
  pm.trace();

  const int F = static_cast<int>(pm.faces.size());
  if (nI + M - (E + M) + F != 2) bad("embedding fails the Euler relation");
  fi.kind.assign(static_cast<size_t>(F), 0);
  fi.gap.assign(static_cast<size_t>(F), 0);
  fi.internal_id.assign(static_cast<size_t>(F), -1);
  d.faces.clear();
  for (int f = 0; f < F; ++f) {
    int circle = 0, last = -1;
    for (int dd : pm.faces[static_cast<size_t>(f)])
      if (dd / 2 >= E) ++circle, last = dd / 2 - E;
    if (circle == 0) {
      fi.internal_id[static_cast<size_t>(f)] = static_cast<int>(d.faces.size());
      Face face;
      for (int dd : pm.faces[static_cast<size_t>(f)]) {
        face.edges.push_back(dd / 2);
        face.verts.push_back(pm.tail(dd));
      }
      d.faces.push_back(std::move(face));
    } else if (circle == 1) {
      fi.kind[static_cast<size_t>(f)] = 1;
      fi.gap[static_cast<size_t>(f)] = last + 1;
    } else {
      fi.kind[static_cast<size_t>(f)] = 2;
    }
  }
  for (int w = 0; w < nI; ++w) {
    auto& V = d.vertices[static_cast<size_t>(w)];
    for (int s = 0; s < 4; ++s)
      V.corner_face[static_cast<size_t>(s)] =
          V.slot[static_cast<size_t>(s)] < 0
              ? -1
              : fi.internal_id[static_cast<size_t>(pm.dart_face[static_cast<size_t>(dart_at(d, w, s))])];
  }
  return fi;
}

void compute_puncture_ray(DihedralDomain& d, const FaceInfo& fi) {
  const PlaneMap& pm = fi.map;
  int start = -1;
  for (size_t f = 0; f < fi.internal_id.size(); ++f)
    if (fi.internal_id[f] == d.puncture_face) start = static_cast<int>(f);
  const int F = static_cast<int>(pm.faces.size());
  std::vector<int> via(static_cast<size_t>(F), -2);
  std::queue<int> q;
  via[static_cast<size_t>(start)] = -1;
  q.push(start);
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(F));
  for (size_t e = 0; e < d.edges.size(); ++e) {
    if (d.edges[e].external()) continue;
    const int f1 = pm.dart_face[2 * e], f2 = pm.dart_face[2 * e + 1];
    adj[static_cast<size_t>(f1)].push_back({f2, static_cast<int>(e)});
    adj[static_cast<size_t>(f2)].push_back({f1, static_cast<int>(e)});
  }
  int goal = -1;
  while (!q.empty() && goal < 0) {
    const int f = q.front();
    q.pop();
    for (auto [g, e] : adj[static_cast<size_t>(f)]) {
      if (via[static_cast<size_t>(g)] != -2) continue;
      via[static_cast<size_t>(g)] = e;
      if (fi.kind[static_cast<size_t>(g)] == 1) {
        goal = g;
        break;
      }
      q.push(g);
    }
  }
  if (goal < 0) bad("puncture face is not connected to the boundary");
  d.puncture_exit = fi.gap[static_cast<size_t>(goal)];
  d.puncture_ray.clear();
  for (int f = goal; via[static_cast<size_t>(f)] >= 0;) {
    const int e = via[static_cast<size_t>(f)];
    d.puncture_ray.push_back(e);
    const int f1 = pm.dart_face[2 * static_cast<size_t>(e)];
    f = (f1 == f) ? pm.dart_face[2 * static_cast<size_t>(e) + 1] : f1;
  }
  std::reverse(d.puncture_ray.begin(), d.puncture_ray.end());
}

void finalize(DihedralDomain& d) {
  label_boundary(d);
  FaceInfo fi = trace_faces(d);

  int small_faces = 0, deg2 = 0;
  d.curvature = 0;
  d.puncture_face = -1;
  d.puncture_vertex = -1;
  for (size_t f = 0; f < d.faces.size(); ++f) {
    const int sd = d.faces[f].sides();
    if (sd > 4) bad("face with more than four sides");
    d.curvature += 4 - sd;
    if (sd <= 2) {
      ++small_faces;
      d.puncture_face = static_cast<int>(f);
    }
  }
  for (size_t w = 0; w < d.vertices.size(); ++w) {
    const int dg = d.vertices[w].degree();
    if (dg == 2) {
      ++deg2;
      d.curvature += 2;
      d.puncture_vertex = static_cast<int>(w);
    } else if (dg != 4) {
      bad("vertex of unsupported degree");
    }
  }
  if (small_faces > 1) bad("more than one face with one or two sides");
  if (deg2 > 1) bad("more than one vertex of degree two");
  if (small_faces + deg2 > 1) bad("both a small face and a degree-two vertex");
  // a corner is a boundary turn: consecutive labels on the same vertex (a 1x1 square has four)
  d.corners = 0;
  for (int j = 1; j <= d.n_ext(); ++j)
    if (d.internal_vertex_of_label(j) == d.internal_vertex_of_label(j % d.n_ext() + 1)) ++d.corners;
  if (d.corners != 4 - d.curvature) bad("corner count disagrees with total curvature");
  if (d.corners == 0) bad("domain without corners is reducible");

  if (deg2 == 1) {
    d.lp_kind = LpKind::PuncturedOdd;
    d.puncture_face = -1;
  } else if (small_faces == 1 && d.n_points() % 2 == 0) {
    d.lp_kind = LpKind::PuncturedEven;
    compute_puncture_ray(d, fi);
  } else {
    d.lp_kind = LpKind::Plain;
    d.puncture_face = -1;
  }
  auto [gp, gm] = build_gyration_graphs(d);
  d.gamma_plus = std::move(gp);
  d.gamma_minus = std::move(gm);
}

}  // namespace

int Vertex::degree() const {
  int k = 0;
  for (int e : slot) k += e >= 0 ? 1 : 0;
  return k;
}

std::pair<int, int> Edge::other(int w, int s) const {
  if (u == w && su == s) return {v, sv};
  return {u, su};
}

int DihedralDomain::vertex_at(int x, int y) const {
  if (x < 1 || y < 1 || x > spec.Lx || y > spec.Ly) return -1;
  return grid_index[static_cast<size_t>((y - 1) * spec.Lx + (x - 1))];
}

int DihedralDomain::internal_vertex_of_label(int label) const {
  return edges[static_cast<size_t>(ext_edge[static_cast<size_t>(label - 1)])].u;
}

std::string DihedralDomain::name() const { return spec.name.empty() ? spec.str() : spec.name; }

std::string DomainSpec::str() const {
  std::ostringstream o;
  o << "Lambda(" << Lx << "," << Ly << ";" << a[0] << "," << a[1] << "," << a[2] << "," << a[3]
    << ")";
  if (split_edge) {
    const auto& [p, q] = *split_edge;
    o << "/split(" << p.first << "," << p.second << ")-(" << q.first << "," << q.second << ")";
  }
  return o.str();
}

void validate_spec(const DomainSpec& s) {
  if (s.Lx < 1 || s.Ly < 1) bad("Lx and Ly must be positive");
  for (int v : s.a)
    if (v < 0) bad("corner cuts must be nonnegative");
  const auto& a = s.a;
  for (int v : a)
    if (v >= s.Lx || v >= s.Ly) bad("corner cut spans a full side of the rectangle");
  if (s.a[0] != 0) bad("canonical input requires a1 = 0 (use rotate_spec)");
  if (a[0] + a[1] > s.Lx || a[2] + a[3] > s.Lx || a[1] + a[2] > s.Ly || a[3] + a[0] > s.Ly)
    bad("adjacent corner cuts overlap");
  if ((a[0] + a[2] > s.Lx && a[0] + a[2] > s.Ly) || (a[1] + a[3] > s.Lx && a[1] + a[3] > s.Ly))
    bad("opposite corner cuts overlap");
  if (s.kind == DomainKind::Second && !s.split_edge) bad("second-kind domain needs split_edge");
  if (s.kind == DomainKind::First && s.split_edge) bad("split_edge given for a first-kind domain");
  if (s.split_edge) {
    const auto& [p, q] = *s.split_edge;
    if (std::abs(p.first - q.first) + std::abs(p.second - q.second) != 1)
      bad("split_edge endpoints are not grid neighbours");
  }
}

DomainSpec rotate_spec(const DomainSpec& s, int quarter_turns) {
  DomainSpec r = s;
  const int k = ((quarter_turns % 4) + 4) % 4;
  for (int t = 0; t < k; ++t) {
    DomainSpec n = r;
    n.Lx = r.Ly;
    n.Ly = r.Lx;
    for (int i = 0; i < 4; ++i) n.a[static_cast<size_t>(i)] = r.a[static_cast<size_t>((i + 1) % 4)];
    if (r.split_edge) {
      auto rot = [&](std::pair<int, int> p) { return std::pair<int, int>{p.second, r.Lx + 1 - p.first}; };
      n.split_edge = {rot(r.split_edge->first), rot(r.split_edge->second)};
    }
    r = n;
  }
  return r;
}

DihedralDomain build_domain(const DomainSpec& spec) {
  validate_spec(spec);
  DihedralDomain d = build_grid(spec);
  if (spec.kind == DomainKind::First) {
    finalize(d);
    return d;
  }
  DomainSpec base = spec;
  base.kind = DomainKind::First;
  base.split_edge.reset();
  d.spec = base;
  label_boundary(d);
  trace_faces(d);
  const auto [p, q] = *spec.split_edge;
  const int u = d.vertex_at(p.first, p.second), v = d.vertex_at(q.first, q.second);
  if (u < 0 || v < 0) bad("split_edge endpoint outside the domain");
  int s = 0;
  while (kDX[s] != q.first - p.first || kDY[s] != q.second - p.second) ++s;
  const int e = d.vertices[static_cast<size_t>(u)].slot[static_cast<size_t>(s)];
  if (e < 0 || d.edges[static_cast<size_t>(e)].external() ||
      d.edges[static_cast<size_t>(e)].other(u, s) != std::pair<int, int>{v, opposite(s)})
    bad("split_edge is not an internal grid edge");
  const int f1 = d.vertices[static_cast<size_t>(u)].corner_face[static_cast<size_t>(s)];
  const int f2 = d.vertices[static_cast<size_t>(v)].corner_face[static_cast<size_t>(opposite(s))];
  if (f1 < 0 || f2 < 0 || d.faces[static_cast<size_t>(f1)].sides() > 3 ||
      d.faces[static_cast<size_t>(f2)].sides() > 3)
    bad("split_edge must have two adjacent faces with at most three sides");
  Vertex mid;
  mid.kind = VKind::Split;
  mid.x2 = d.vertices[static_cast<size_t>(u)].x2 + kDX[s];
  mid.y2 = d.vertices[static_cast<size_t>(u)].y2 + kDY[s];
  const int m = static_cast<int>(d.vertices.size());
  const int e2 = static_cast<int>(d.edges.size());
  Edge& E = d.edges[static_cast<size_t>(e)];
  const int sv = E.u == u ? E.sv : E.su;
  E = Edge{u, s, m, opposite(s)};
  d.edges.push_back(Edge{m, s, v, sv});
  mid.slot[static_cast<size_t>(opposite(s))] = e;
  mid.slot[static_cast<size_t>(s)] = e2;
  d.vertices.push_back(mid);
  d.vertices[static_cast<size_t>(v)].slot[static_cast<size_t>(sv)] = e2;
  d.spec = spec;
  finalize(d);
  return d;
}

std::pair<GyrationGraph, GyrationGraph> build_gyration_graphs(const DihedralDomain& d) {
  const int nI = static_cast<int>(d.vertices.size());
  const int N = d.n_points();
  const int E = static_cast<int>(d.edges.size());
  std::set<int> punct_edges;
  if (d.puncture_face >= 0)
    for (int e : d.faces[static_cast<size_t>(d.puncture_face)].edges) punct_edges.insert(e);

  auto build = [&](int sign) {
    GyrationGraph g;
    g.sign = sign;
    PlaneMap pm;
    auto merged = [&](int label) { return sign > 0 ? (label - 1) / 2 : (label / 2) % N; };
    for (int e = 0; e < E; ++e) {
      const Edge& ed = d.edges[static_cast<size_t>(e)];
      pm.ends.push_back(
          {ed.u, ed.external() ? nI + merged(d.label_of_edge[static_cast<size_t>(e)]) : ed.v});
    }
    pm.rot.assign(static_cast<size_t>(nI + N), {});
    for (int w = 0; w < nI; ++w)
      for (int s = 0; s < 4; ++s)
        if (d.vertices[static_cast<size_t>(w)].slot[static_cast<size_t>(s)] >= 0)
          pm.rot[static_cast<size_t>(w)].push_back(dart_at(d, w, s));
    for (int j = 1; j <= 2 * N; ++j)
      pm.rot[static_cast<size_t>(nI + merged(j))].push_back(2 * d.ext_edge[static_cast<size_t>(j - 1)] + 1);
    pm.trace();
    const int F = static_cast<int>(pm.faces.size());
    if (nI + N - E + F != 2) bad("gyration graph fails the Euler relation");

    std::vector<int> color(static_cast<size_t>(F), -1);
    std::vector<std::vector<int>> adj(static_cast<size_t>(F));
    for (int e = 0; e < E; ++e) {
      const int f1 = pm.dart_face[2 * static_cast<size_t>(e)];
      const int f2 = pm.dart_face[2 * static_cast<size_t>(e) + 1];
      if (f1 == f2) bad("gyration graph has a bridge");
      adj[static_cast<size_t>(f1)].push_back(f2);
      adj[static_cast<size_t>(f2)].push_back(f1);
    }
    std::queue<int> q;
    color[0] = 0;
    q.push(0);
    while (!q.empty()) {
      const int f = q.front();
      q.pop();
      for (int h : adj[static_cast<size_t>(f)]) {
        if (color[static_cast<size_t>(h)] < 0) {
          color[static_cast<size_t>(h)] = 1 - color[static_cast<size_t>(f)];
          q.push(h);
        } else if (color[static_cast<size_t>(h)] == color[static_cast<size_t>(f)]) {
          bad("faces of the gyration graph are not two-colourable");
        }
      }
    }
    int outer = -1;
    size_t best = 0;
    for (int f = 0; f < F; ++f) {
      std::set<int> ms;
      for (int dd : pm.faces[static_cast<size_t>(f)])
        if (pm.tail(dd) >= nI) ms.insert(pm.tail(dd));
      if (ms.size() > best) best = ms.size(), outer = f;
    }
    g.cycle_of_edge.assign(static_cast<size_t>(E), -1);
    for (int f = 0; f < F; ++f) {
      if (color[static_cast<size_t>(f)] == color[static_cast<size_t>(outer)]) continue;
      // A face may pass a vertex twice (quarter-turn quotients); it is still a closed walk
      // using each of its edges once, which is all local gyration needs.
      GammaCycle c;
      bool has_ext = false;
      for (int dd : pm.faces[static_cast<size_t>(f)]) {
        c.edges.push_back(dd / 2);
        has_ext = has_ext || d.edges[static_cast<size_t>(dd / 2)].external();
      }
      const size_t len = c.edges.size();
      if (len > 4) bad("gyration cycle longer than four");
      if (has_ext && len > 3) bad("external edge in a cycle longer than three");
      if (!punct_edges.empty() && len <= 2) {
        std::set<int> es(c.edges.begin(), c.edges.end());
        c.punctured = es == punct_edges;
      }
      for (int e : c.edges) {
        if (g.cycle_of_edge[static_cast<size_t>(e)] >= 0) bad("edge in two gyration cycles");
        g.cycle_of_edge[static_cast<size_t>(e)] = static_cast<int>(g.cycles.size());
      }
      g.cycles.push_back(std::move(c));
    }
    for (int c : g.cycle_of_edge)
      if (c < 0) bad("edge outside every gyration cycle");
    return g;
  };
  return {build(+1), build(-1)};
}

DomainSpec square_spec(int n) {
  if (n < 1) bad("square size must be positive");
  DomainSpec s;
  s.Lx = s.Ly = n;
  s.name = "square(" + std::to_string(n) + ")";
  return s;
}

DomainSpec triangoloid_spec(int alpha, int beta, int gamma) {
  if (alpha < 0 || beta < 0 || gamma < 0 || alpha + beta + gamma == 0)
    bad("triangoloid parameters must be nonnegative and not all zero");
  // Quarter turn of Lambda(a+2b+c, a+b+2c; 0,0,0,b+c), putting side r(gamma) at the bottom.
  DomainSpec s;
  s.Lx = alpha + beta + 2 * gamma;
  s.Ly = alpha + 2 * beta + gamma;
  s.a = {0, 0, beta + gamma, 0};
  s.name = "T(" + std::to_string(alpha) + "," + std::to_string(beta) + "," + std::to_string(gamma) + ")";
  return s;
}

DihedralDomain triangoloid(int alpha, int beta, int gamma) {
  return build_domain(triangoloid_spec(alpha, beta, gamma));
}

DomainSpec symmetry_class_spec(SymClass c, int size) {
  DomainSpec s;
  switch (c) {
    case SymClass::ASM:
      s = square_spec(size);
      s.name = "ASM(" + std::to_string(size) + ")";
      return s;
    case SymClass::HTASM: {
      const int n = size / 2;
      if (n < 1) bad("HTASM size must be at least 2");
      s.Lx = size;
      s.Ly = 2 * n;
      s.a = {0, n, 0, n};
      if (size % 2 == 1) {
        s.kind = DomainKind::Second;
        s.split_edge = {{n + 1, n}, {n + 1, n + 1}};
      }
      s.name = "HTASM(" + std::to_string(size) + ")";
      return s;
    }
    case SymClass::QTASM: {
      if (size < 4 || size % 4 != 0) bad("QTASM domains exist only for sizes 4n");
      const int n = size / 4;
      s.Lx = s.Ly = 4 * n;
      s.a = {0, 2 * n, 2 * n, 2 * n};
      s.name = "QTASM(" + std::to_string(size) + ")";
      return s;
    }
    case SymClass::QuasiQTASM: {
      if (size < 6 || size % 4 != 2) bad("quasi-QTASM domains exist only for sizes 4n+2");
      const int n = size / 4;
      s.Lx = 4 * n + 1;
      s.Ly = 4 * n;
      s.a = {0, 2 * n, 2 * n, 2 * n};
      s.kind = DomainKind::Second;
      s.split_edge = {{2 * n + 1, 2 * n}, {2 * n + 1, 2 * n + 1}};
      s.name = "quasi-QTASM(" + std::to_string(size) + ")";
      return s;
    }
  }
  bad("unknown symmetry class");
}

DihedralDomain symmetry_class_domain(SymClass c, int size) {
  return build_domain(symmetry_class_spec(c, size));
}

nlohmann::json spec_to_json(const DomainSpec& s) {
  nlohmann::json j = {{"Lx", s.Lx}, {"Ly", s.Ly}, {"a", s.a},
                      {"kind", s.kind == DomainKind::First ? "first" : "second"}};
  if (s.split_edge) {
    const auto& [p, q] = *s.split_edge;
    j["split_edge"] = {{p.first, p.second}, {q.first, q.second}};
  }
  if (!s.name.empty()) j["name"] = s.name;
  return j;
}

DomainSpec spec_from_json(const nlohmann::json& j) {
  DomainSpec s;
  try {
    s.Lx = j.at("Lx").get<int>();
    s.Ly = j.at("Ly").get<int>();
    const auto a = j.at("a").get<std::vector<int>>();
    if (a.size() != 4) bad("'a' must have four entries");
    std::copy(a.begin(), a.end(), s.a.begin());
    const std::string kind = j.value("kind", std::string("first"));
    if (kind == "first") {
      s.kind = DomainKind::First;
    } else if (kind == "second") {
      s.kind = DomainKind::Second;
    } else {
      bad("kind must be 'first' or 'second'");
    }
    if (j.contains("split_edge")) {
      const auto e = j.at("split_edge").get<std::vector<std::vector<int>>>();
      if (e.size() != 2 || e[0].size() != 2 || e[1].size() != 2)
        bad("split_edge must be [[x,y],[x,y]]");
      s.split_edge = {{e[0][0], e[0][1]}, {e[1][0], e[1][1]}};
    }
    s.name = j.value("name", std::string());
  } catch (const nlohmann::json::exception& ex) {
    bad(std::string("malformed domain spec: ") + ex.what());
  }
  validate_spec(s);
  return s;
}

nlohmann::json domain_summary(const DihedralDomain& d) {
  nlohmann::json j = {{"domain", d.name()},
                      {"spec", spec_to_json(d.spec)},
                      {"external_edges", d.n_ext()},
                      {"N", d.n_points()},
                      {"L", d.L},
                      {"corners", d.corners},
                      {"curvature", d.curvature},
                      {"lp_kind", lp_kind_name(d.lp_kind)},
                      {"vertices", d.vertices.size()},
                      {"edges", d.edges.size()},
                      {"faces", d.faces.size()},
                      {"gamma_plus_cycles", d.gamma_plus.cycles.size()},
                      {"gamma_minus_cycles", d.gamma_minus.cycles.size()}};
  if (d.puncture_face >= 0) j["puncture_face_sides"] = d.faces[static_cast<size_t>(d.puncture_face)].sides();
  if (d.puncture_vertex >= 0) {
    const auto& V = d.vertices[static_cast<size_t>(d.puncture_vertex)];
    j["puncture_vertex"] = {V.x2 / 2.0, V.y2 / 2.0};
  }
  return j;
}

}  // namespace gyralab
