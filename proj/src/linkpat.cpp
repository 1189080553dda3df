#include "gyralab/linkpat.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace gyralab {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

bool arc_contains_gap(int i, int j, int g) { return i <= g && g <= j - 1; }

// All noncrossing perfect matchings of the ordered point list `pts`.
void gen_matchings(const std::vector<int>& pts, size_t lo, size_t hi, std::vector<int>& match,
                   const std::function<void()>& emit) {
  if (lo >= hi) {
    emit();
    return;
  }
  for (size_t k = lo + 1; k < hi; k += 2) {
    match[static_cast<size_t>(pts[lo])] = pts[k];
    match[static_cast<size_t>(pts[k])] = pts[lo];
    gen_matchings(pts, lo + 1, k, match, [&] { gen_matchings(pts, k + 1, hi, match, emit); });
  }
}

long catalan(int n) {
  long c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

std::string label(int i, int N) {
  (void)N;
  return std::to_string(i + 1);
}

}  // namespace

std::string lp_kind_name(LpKind k) {
  switch (k) {
    case LpKind::Plain: return "plain";
    case LpKind::PuncturedEven: return "punctured-even";
    case LpKind::PuncturedOdd: return "punctured-odd";
  }
  return "?";
}

LpKind lp_kind_from_name(const std::string& s) {
  if (s == "plain") return LpKind::Plain;
  if (s == "punctured-even") return LpKind::PuncturedEven;
  if (s == "punctured-odd") return LpKind::PuncturedOdd;
  throw std::invalid_argument("unknown pattern kind: " + s);
}

std::vector<std::pair<int, int>> Pattern::arcs() const {
  std::vector<std::pair<int, int>> a;
  for (int i = 0; i < N; ++i) {
    int j = partner(i);
    if (i < j) a.emplace_back(i, j);
  }
  return a;
}

std::optional<std::pair<int, int>> Pattern::cover() const {
  if (kind != LpKind::PuncturedEven) return std::nullopt;
  std::optional<std::pair<int, int>> best;
  for (auto [i, j] : arcs()) {
    if (!arc_contains_gap(i, j, face)) continue;
    if (!best || j - i < best->second - best->first) best = std::make_pair(i, j);
  }
  return best;
}

std::string Pattern::str() const {
  std::ostringstream os;
  const bool wide = N >= 10;
  for (auto [i, j] : arcs()) {
    os << "(" << label(i, N) << (wide ? "," : "") << label(j, N) << ")";
  }
  if (kind == LpKind::PuncturedEven) {
    auto c = cover();
    os << "|*";
    if (c) os << "(" << label(c->first, N) << (wide ? "," : "") << label(c->second, N) << ")";
    else os << "outer";
  } else if (kind == LpKind::PuncturedOdd) {
    os << "|d=" << label(defect, N);
  }
  return os.str();
}

std::vector<int> face_gaps(const std::vector<int>& match, int g) {
  const int N = static_cast<int>(match.size());
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < N; ++i)
    if (i < match[static_cast<size_t>(i)]) arcs.emplace_back(i, match[static_cast<size_t>(i)]);
  std::vector<int> out;
  for (int h = 0; h < N; ++h) {
    bool sep = false;
    for (auto [i, j] : arcs) {
      if (arc_contains_gap(i, j, g) != arc_contains_gap(i, j, h)) {
        sep = true;
        break;
      }
    }
    if (!sep) out.push_back(h);
  }
  return out;
}

int face_min_gap(const std::vector<int>& match, int g) { return face_gaps(match, g).front(); }

void validate_pattern(const Pattern& p) {
  const int N = p.N;
  if (N < 1 || static_cast<int>(p.match.size()) != N)
    throw std::invalid_argument("pattern: bad size");
  int fixed = 0;
  for (int i = 0; i < N; ++i) {
    int j = p.partner(i);
    if (j < 0 || j >= N || p.partner(j) != i) throw std::invalid_argument("pattern: not an involution");
    if (j == i) ++fixed;
  }
  if (p.kind == LpKind::PuncturedOdd) {
    if (N % 2 == 0 || fixed != 1 || p.defect < 0 || p.partner(p.defect) != p.defect)
      throw std::invalid_argument("pattern: bad defect");
  } else {
    if (N % 2 != 0 || fixed != 0) throw std::invalid_argument("pattern: parity/fixed point");
  }
  // noncrossing in the linear order starting after the cut point
  const int start = p.kind == LpKind::PuncturedOdd ? p.defect + 1 : 0;
  auto pos = [&](int i) { return mod(i - start, N); };
  auto arcs = p.arcs();
  for (auto [i, j] : arcs) {
    int a = std::min(pos(i), pos(j)), b = std::max(pos(i), pos(j));
    for (auto [k, l] : arcs) {
      int c = std::min(pos(k), pos(l)), d = std::max(pos(k), pos(l));
      if (a < c && c < b && b < d) throw std::invalid_argument("pattern: crossing arcs");
    }
  }
  if (p.kind == LpKind::PuncturedEven) {
    if (p.face < 0 || p.face >= N || face_min_gap(p.match, p.face) != p.face)
      throw std::invalid_argument("pattern: bad puncture face");
  } else if (p.face != -1) {
    throw std::invalid_argument("pattern: face set on unpunctured-even pattern");
  }
}

Pattern rotate(const Pattern& p, int steps) {
  const int N = p.N;
  const int s = mod(steps, N);
  Pattern r = p;
  for (int i = 0; i < N; ++i)
    r.match[static_cast<size_t>(mod(i + s, N))] = mod(p.partner(i) + s, N);
  if (p.kind == LpKind::PuncturedEven) r.face = face_min_gap(r.match, mod(p.face + s, N));
  if (p.kind == LpKind::PuncturedOdd) r.defect = mod(p.defect + s, N);
  return r;
}

Pattern reflect(const Pattern& p) {
  const int N = p.N;
  Pattern r = p;
  for (int i = 0; i < N; ++i) r.match[static_cast<size_t>(N - 1 - i)] = N - 1 - p.partner(i);
  if (p.kind == LpKind::PuncturedEven) r.face = face_min_gap(r.match, mod(N - 2 - p.face, N));
  if (p.kind == LpKind::PuncturedOdd) r.defect = N - 1 - p.defect;
  return r;
}

bool short_arc_image(int i, const Pattern& p) {
  const int N = p.N;
  if (N < 2) return false;
  const int a = mod(i - 1, N), b = mod(a + 1, N);
  if (p.partner(a) != b || a == b) return false;
  if (p.kind == LpKind::PuncturedEven && p.face == a) return false;
  return true;
}

EResult apply_e(int i, const Pattern& p) {
  const int N = p.N;
  if (N < 2) throw std::invalid_argument("apply_e: needs at least two points");
  const int a = mod(i - 1, N), b = mod(a + 1, N);
  const int pa = p.partner(a), pb = p.partner(b);
  EResult r{p, 0, 0};
  Pattern& q = r.pattern;

  if (p.kind == LpKind::PuncturedOdd && (a == p.defect || b == p.defect)) {
    // the strand to the puncture is rerouted to the former partner of the other point
    const int nd = a == p.defect ? pb : pa;
    q.match[static_cast<size_t>(a)] = b;
    q.match[static_cast<size_t>(b)] = a;
    q.match[static_cast<size_t>(nd)] = nd;
    q.defect = nd;
    return r;
  }
  if (pa == b) {
    if (p.kind == LpKind::PuncturedEven && p.face == a) {
      r.puncture_loops = 1;
      q.face = face_min_gap(q.match, b);
    } else {
      r.contractible_loops = 1;
    }
    return r;
  }
  q.match[static_cast<size_t>(a)] = b;
  q.match[static_cast<size_t>(b)] = a;
  q.match[static_cast<size_t>(pa)] = pb;
  q.match[static_cast<size_t>(pb)] = pa;
  if (p.kind == LpKind::PuncturedEven) {
    int g = -1;
    for (int h : face_gaps(p.match, p.face))
      if (h != a) {
        g = h;
        break;
      }
    q.face = face_min_gap(q.match, g);
  }
  return r;
}

Pattern remove_short_arc(const Pattern& p, int a) {
  const int N = p.N;
  const int b = mod(a + 1, N);
  if (!short_arc_image(a + 1, p)) throw std::invalid_argument("remove_short_arc: no short arc");
  const int M = N - 2;
  auto nl = [&](int j) { return mod(j - a - 2, N); };
  Pattern r;
  r.kind = p.kind;
  r.N = M;
  r.match.assign(static_cast<size_t>(M), -1);
  for (int j = 0; j < N; ++j) {
    if (j == a || j == b) continue;
    r.match[static_cast<size_t>(nl(j))] = nl(p.partner(j));
  }
  if (p.kind == LpKind::PuncturedOdd) r.defect = nl(p.defect);
  if (p.kind == LpKind::PuncturedEven) {
    int g = -1;
    for (int h : face_gaps(p.match, p.face))
      if (h != a) {
        g = h;
        break;
      }
    int ng = (g == mod(a - 1, N) || g == b) ? M - 1 : nl(g);
    r.face = M > 0 ? face_min_gap(r.match, ng) : -1;
  }
  return r;
}

long PatternSpace::expected_dim(LpKind kind, int N) {
  switch (kind) {
    case LpKind::Plain: return catalan(N / 2);
    case LpKind::PuncturedEven: return (N / 2 + 1) * catalan(N / 2);
    case LpKind::PuncturedOdd: return N * catalan(N / 2);
  }
  return 0;
}

PatternSpace::PatternSpace(LpKind kind, int N) : kind_(kind), N_(N) {
  if (N < 1) throw std::invalid_argument("pattern space: N must be positive");
  const bool odd = N % 2 == 1;
  if ((kind == LpKind::PuncturedOdd) != odd)
    throw std::invalid_argument("pattern space: parity of N does not match kind " + lp_kind_name(kind));

  std::vector<int> match(static_cast<size_t>(N), -1);
  if (kind == LpKind::PuncturedOdd) {
    for (int d = 0; d < N; ++d) {
      std::vector<int> pts;
      for (int k = 1; k < N; ++k) pts.push_back(mod(d + k, N));
      match.assign(static_cast<size_t>(N), -1);
      match[static_cast<size_t>(d)] = d;
      gen_matchings(pts, 0, pts.size(), match, [&] {
        Pattern p{kind, N, match, -1, d};
        patterns_.push_back(p);
      });
    }
  } else {
    std::vector<int> pts(static_cast<size_t>(N));
    for (int k = 0; k < N; ++k) pts[static_cast<size_t>(k)] = k;
    gen_matchings(pts, 0, pts.size(), match, [&] {
      if (kind == LpKind::Plain) {
        patterns_.push_back(Pattern{kind, N, match, -1, -1});
        return;
      }
      std::vector<bool> seen(static_cast<size_t>(N), false);
      for (int g = 0; g < N; ++g) {
        int f = face_min_gap(match, g);
        if (seen[static_cast<size_t>(f)]) continue;
        seen[static_cast<size_t>(f)] = true;
        patterns_.push_back(Pattern{kind, N, match, f, -1});
      }
    });
  }
  std::sort(patterns_.begin(), patterns_.end());
  for (size_t k = 0; k < patterns_.size(); ++k)
    index_[{patterns_[k].match, patterns_[k].face}] = static_cast<int>(k);
}

int PatternSpace::index_of(const Pattern& p) const {
  if (p.N != N_ || p.kind != kind_) return -1;
  auto it = index_.find({p.match, p.face});
  return it == index_.end() ? -1 : it->second;
}

int PatternSpace::n_rainbows() const { return kind_ == LpKind::Plain ? N_ / 2 : N_; }

Pattern PatternSpace::rainbow(int j) const {
  if (j < 0 || j >= n_rainbows()) throw std::out_of_range("rainbow index out of range");
  Pattern p{kind_, N_, std::vector<int>(static_cast<size_t>(N_)), -1, -1};
  if (kind_ == LpKind::PuncturedOdd) {
    p.defect = 0;
    p.match[0] = 0;
    for (int k = 1; k < N_; ++k) p.match[static_cast<size_t>(k)] = N_ - k;
  } else {
    for (int k = 0; k < N_; ++k) p.match[static_cast<size_t>(k)] = N_ - 1 - k;
    if (kind_ == LpKind::PuncturedEven) p.face = N_ / 2 - 1;
  }
  return rotate(p, j);
}

bool PatternSpace::is_rainbow(const Pattern& p) const {
  for (int j = 0; j < n_rainbows(); ++j)
    if (rainbow(j) == p) return true;
  return false;
}

PatternSpace enumerate_patterns(LpKind kind, int N) { return PatternSpace(kind, N); }

nlohmann::json pattern_to_json(const Pattern& p) {
  nlohmann::json arcs = nlohmann::json::array();
  for (auto [i, j] : p.arcs()) arcs.push_back({i + 1, j + 1});
  nlohmann::json j = {{"kind", lp_kind_name(p.kind)}, {"N", p.N}, {"arcs", arcs}};
  if (p.kind == LpKind::PuncturedEven) {
    auto c = p.cover();
    if (c) j["cover"] = {c->first + 1, c->second + 1};
    else j["cover"] = "outer";
  }
  if (p.kind == LpKind::PuncturedOdd) j["defect"] = p.defect + 1;
  return j;
}

Pattern pattern_from_json(const nlohmann::json& j) {
  Pattern p;
  p.kind = lp_kind_from_name(j.at("kind").get<std::string>());
  p.N = j.at("N").get<int>();
  if (p.N < 1) throw std::invalid_argument("pattern: N must be positive");
  p.match.assign(static_cast<size_t>(p.N), -1);
  for (const auto& a : j.at("arcs")) {
    int x = a.at(0).get<int>() - 1, y = a.at(1).get<int>() - 1;
    if (x < 0 || y < 0 || x >= p.N || y >= p.N) throw std::invalid_argument("pattern: arc out of range");
    p.match[static_cast<size_t>(x)] = y;
    p.match[static_cast<size_t>(y)] = x;
  }
  if (p.kind == LpKind::PuncturedOdd) {
    p.defect = j.at("defect").get<int>() - 1;
    if (p.defect < 0 || p.defect >= p.N) throw std::invalid_argument("pattern: defect out of range");
    p.match[static_cast<size_t>(p.defect)] = p.defect;
  }
  for (int m : p.match)
    if (m < 0) throw std::invalid_argument("pattern: unmatched point");
  if (p.kind == LpKind::PuncturedEven) {
    const auto& c = j.at("cover");
    int g = p.N - 1;
    if (!c.is_string()) {
      int x = std::min(c.at(0).get<int>(), c.at(1).get<int>()) - 1;
      int y = std::max(c.at(0).get<int>(), c.at(1).get<int>()) - 1;
      if (x < 0 || y >= p.N || p.match[static_cast<size_t>(x)] != y)
        throw std::invalid_argument("pattern: cover arc not in matching");
      g = x;
    } else if (c.get<std::string>() != "outer") throw std::invalid_argument("pattern: bad cover");
    p.face = face_min_gap(p.match, g);
  }
  validate_pattern(p);
  return p;
}

}  // namespace gyralab
