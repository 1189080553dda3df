// Fully-packed loop configurations on a dihedral domain with alternating boundary colours.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "gyralab/domains.hpp"
#include "gyralab/linkpat.hpp"

namespace gyralab {

enum class Sector { Plus, Minus, B, W, All };
std::string sector_name(Sector s);
Sector sector_from_name(const std::string& s);

enum class Tile { A, B, C };
char tile_char(Tile t);

struct FplConfig {
  std::vector<std::uint8_t> color;  // edge id -> 1 black, 0 white
  bool plus = true;                 // external edge with label 1 is black
  int h = 0;                        // refinement position, 1..L
  bool black_ref = true;            // external edge at h is black (Fpl_b)

  std::string key() const { return std::string(color.begin(), color.end()); }
  friend bool operator==(const FplConfig& a, const FplConfig& b) { return a.color == b.color; }
};

// Checks the packing and boundary rules; throws std::invalid_argument with the reason.
void check_fpl(const DihedralDomain& d, const std::vector<std::uint8_t>& color);
// Validates and fills the derived fields.
FplConfig make_config(const DihedralDomain& d, std::vector<std::uint8_t> color);

// Tile at a degree-4 vertex seen with `out` pointing at the boundary line it sits on.
Tile tile_type(const DihedralDomain& d, const std::vector<std::uint8_t>& color, int vertex,
               int out_slot);
// Tile at the internal end of the external edge with this label.
Tile boundary_tile(const DihedralDomain& d, const std::vector<std::uint8_t>& color, int label);
// The unique c-tile among labels 1..L; throws std::logic_error otherwise.
int refinement_position(const DihedralDomain& d, const std::vector<std::uint8_t>& color);
// Tile one step inside from the refinement position. Throws std::domain_error when that vertex
// is missing, has degree 2, or the step leaves the domain.
Tile direction(const DihedralDomain& d, const FplConfig& phi);

// jobs <= 0: GYRALAB_JOBS, else the OpenMP default.
int resolve_jobs(int jobs);

std::vector<FplConfig> enumerate_fpl_serial(const DihedralDomain& d, Sector sector);
// Same output, same order; search subtrees below a fixed prefix depth run in parallel.
std::vector<FplConfig> enumerate_fpl_parallel(const DihedralDomain& d, Sector sector, int jobs = 0);
inline std::vector<FplConfig> enumerate_fpl(const DihedralDomain& d, Sector sector, int jobs = 0) {
  return enumerate_fpl_parallel(d, sector, jobs);
}
bool in_sector(const FplConfig& phi, Sector sector);

// index j-1 holds the number of configurations with h = j
std::vector<long> refinement_histogram(const std::vector<FplConfig>& configs, int L);
std::vector<long> refinement_histogram(const DihedralDomain& d, Sector sector, int jobs = 0);

// Black link pattern with point 1 at label v; throws std::invalid_argument if v is white.
Pattern pi_map(const DihedralDomain& d, const FplConfig& phi, int v);
Pattern pi_plus(const DihedralDomain& d, const FplConfig& phi);  // requires phi in Fpl+
Pattern pi_b(const DihedralDomain& d, const FplConfig& phi);     // requires phi in Fpl_b

FplConfig sigma(const DihedralDomain& d, const FplConfig& phi);

struct LoopData {
  Pattern pi_b;  // black paths, counted from the first black label
  Pattern pi_w;  // white paths, counted from the first white label
  int loops_b = 0;
  int loops_w = 0;
  int loops_star = 0;  // closed loops around the puncture (punctured-even only)
};
LoopData loop_data(const DihedralDomain& d, const FplConfig& phi);

nlohmann::json config_to_json(const DihedralDomain& d, const FplConfig& phi);
std::vector<std::uint8_t> colors_from_json(const DihedralDomain& d, const nlohmann::json& j);
std::string config_svg(const DihedralDomain& d, const FplConfig& phi);

}  // namespace gyralab
