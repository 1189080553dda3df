// Link patterns on N boundary points: plain LP(2n), punctured LP*(2n), punctured LP*(2n-1).
//
// Points are 0-indexed internally and printed 1-indexed. Gap g is the stretch of boundary
// between point g and point g+1 (mod N). For punctured-even patterns the puncture region is
// stored as the smallest gap index of the face that contains it.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace gyralab {

enum class LpKind { Plain, PuncturedEven, PuncturedOdd };

std::string lp_kind_name(LpKind k);
LpKind lp_kind_from_name(const std::string& s);

struct Pattern {
  LpKind kind = LpKind::Plain;
  int N = 0;
  std::vector<int> match;  // partner of each point; match[defect] == defect
  int face = -1;           // punctured-even only
  int defect = -1;         // punctured-odd only

  int partner(int i) const { return match[static_cast<size_t>(i)]; }
  std::vector<std::pair<int, int>> arcs() const;  // 0-indexed, i < j
  // Innermost arc (0-indexed, i<j) whose inside (gaps i..j-1) holds the puncture; empty = outer.
  std::optional<std::pair<int, int>> cover() const;
  std::string str() const;

  auto key() const { return std::tie(match, face); }
  friend bool operator==(const Pattern& a, const Pattern& b) {
    return a.kind == b.kind && a.N == b.N && a.match == b.match && a.face == b.face;
  }
  friend bool operator<(const Pattern& a, const Pattern& b) { return a.key() < b.key(); }
};

// Smallest gap of the face of the matching that contains gap g.
int face_min_gap(const std::vector<int>& match, int g);
// All gaps in that face.
std::vector<int> face_gaps(const std::vector<int>& match, int g);

// Throws std::invalid_argument when the pattern violates its invariants.
void validate_pattern(const Pattern& p);

struct EResult {
  Pattern pattern;
  int contractible_loops = 0;
  int puncture_loops = 0;
};

// i is 1-based and taken mod N.
EResult apply_e(int i, const Pattern& p);
Pattern rotate(const Pattern& p, int steps = 1);  // R^steps
Pattern reflect(const Pattern& p);                 // V
bool short_arc_image(int i, const Pattern& p);

class PatternSpace {
 public:
  PatternSpace() = default;
  PatternSpace(LpKind kind, int N);

  LpKind kind() const { return kind_; }
  int N() const { return N_; }
  int dim() const { return static_cast<int>(patterns_.size()); }
  const std::vector<Pattern>& patterns() const { return patterns_; }
  const Pattern& at(int idx) const { return patterns_[static_cast<size_t>(idx)]; }
  int index_of(const Pattern& p) const;  // -1 if absent
  int n_rainbows() const;
  Pattern rainbow(int j) const;
  bool is_rainbow(const Pattern& p) const;
  static long expected_dim(LpKind kind, int N);

 private:
  LpKind kind_ = LpKind::Plain;
  int N_ = 0;
  std::vector<Pattern> patterns_;
  std::map<std::pair<std::vector<int>, int>, int> index_;
};

PatternSpace enumerate_patterns(LpKind kind, int N);

// Removes the short arc {a, a+1} (0-based, mod N); point a+2 becomes point 0 of the result and
// the cyclic order is kept. Requires short_arc_image(a+1, p).
Pattern remove_short_arc(const Pattern& p, int a);

nlohmann::json pattern_to_json(const Pattern& p);
Pattern pattern_from_json(const nlohmann::json& j);

}  // namespace gyralab
