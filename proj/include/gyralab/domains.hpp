// Dihedral domains: cut-corner grids, their external-edge labeling and the graphs used by
// half-gyration.
//
// Vertex (x,y), 1 <= x <= Lx, 1 <= y <= Ly; corners A1..A4 counter-clockwise from (1,1).
// Every internal vertex has four slots R,U,L,D (counter-clockwise). An edge stub that points
// into a removed corner square is joined with another stub of the same cut boundary, nested
// around the concave corner; the joined edge keeps the two slots it started from.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gyralab/linkpat.hpp"

namespace gyralab {

enum Slot : int { kR = 0, kU = 1, kL = 2, kD = 3 };
inline int opposite(int s) { return (s + 2) % 4; }
inline int rotate_cw(int s) { return (s + 3) % 4; }
inline int rotate_ccw(int s) { return (s + 1) % 4; }

enum class DomainKind { First, Second };

struct DomainSpec {
  int Lx = 0;
  int Ly = 0;
  std::array<int, 4> a{0, 0, 0, 0};
  DomainKind kind = DomainKind::First;
  // second kind: endpoints of the split edge
  std::optional<std::pair<std::pair<int, int>, std::pair<int, int>>> split_edge;
  std::string name;  // optional label for reports

  std::string str() const;
};

// Throws std::invalid_argument on violated spec invariants.
void validate_spec(const DomainSpec& s);
// Rotates the picture clockwise by quarter turns so that corner A_{1+k} becomes the new A1.
DomainSpec rotate_spec(const DomainSpec& s, int quarter_turns);

enum class VKind { Internal, Split };

struct Vertex {
  VKind kind = VKind::Internal;
  int x2 = 0, y2 = 0;                       // doubled coordinates
  std::array<int, 4> slot{-1, -1, -1, -1};  // incident edge per slot (a split vertex uses two)
  // Face in the corner between slot s and the next used slot counter-clockwise; -1 if that
  // corner lies outside the domain.
  std::array<int, 4> corner_face{-1, -1, -1, -1};
  int degree() const;
};

struct Edge {
  int u = -1, su = -1;  // endpoint and its slot
  int v = -1, sv = -1;  // v = -1 for external edges
  bool external() const { return v < 0; }
  // endpoint opposite to (w, s); for loop edges the slot decides
  std::pair<int, int> other(int w, int s) const;
};

struct Face {
  std::vector<int> edges;  // boundary edges in traversal order
  std::vector<int> verts;
  int sides() const { return static_cast<int>(edges.size()); }
};

// A cycle of the Gamma decomposition of one of the two gyration graphs.
struct GammaCycle {
  std::vector<int> edges;  // cyclic order
  bool punctured = false;
};

struct GyrationGraph {
  int sign = +1;  // +1: labels (1,2),(3,4),... merged; -1: (2,3),...,(2N,1)
  std::vector<GammaCycle> cycles;
  std::vector<int> cycle_of_edge;
};

struct DihedralDomain {
  DomainSpec spec;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Face> faces;          // internal faces
  std::vector<int> ext_edge;        // label-1 -> edge id, counter-clockwise from A1
  std::vector<int> ext_slot;        // label-1 -> slot at the internal endpoint
  std::vector<int> label_of_edge;   // edge id -> 1-based label or 0
  int L = 0;                        // reference side length
  int corners = 0;
  int curvature = 0;
  LpKind lp_kind = LpKind::Plain;
  int puncture_face = -1;           // punctured-even
  int puncture_vertex = -1;         // punctured-odd (the split vertex)
  // Punctured-even: edges crossed by a dual path from the puncture face out to the boundary,
  // and the label l such that the path leaves between external edges l and l+1.
  std::vector<int> puncture_ray;
  int puncture_exit = 0;
  GyrationGraph gamma_plus, gamma_minus;

  std::vector<int> grid_index;      // (y-1)*Lx + (x-1) -> vertex id or -1

  int vertex_at(int x, int y) const;  // -1 outside the domain
  int n_ext() const { return static_cast<int>(ext_edge.size()); }
  int n_points() const { return n_ext() / 2; }
  int internal_vertex_of_label(int label) const;
  std::string name() const;
};

DihedralDomain build_domain(const DomainSpec& spec);
std::pair<GyrationGraph, GyrationGraph> build_gyration_graphs(const DihedralDomain& d);

DomainSpec square_spec(int n);
DomainSpec triangoloid_spec(int alpha, int beta, int gamma);  // reference side r(gamma)
DihedralDomain triangoloid(int alpha, int beta, int gamma);

enum class SymClass { ASM, HTASM, QTASM, QuasiQTASM };
DomainSpec symmetry_class_spec(SymClass c, int size);
DihedralDomain symmetry_class_domain(SymClass c, int size);

nlohmann::json spec_to_json(const DomainSpec& s);
DomainSpec spec_from_json(const nlohmann::json& j);
nlohmann::json domain_summary(const DihedralDomain& d);

}  // namespace gyralab
