// Wieland half-gyration on dihedral domains, orbits, the corner involutions and Theta.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gyralab/fplenum.hpp"
#include "gyralab/report.hpp"

namespace gyralab {

// Local gyration of one cycle, given its edge colours in cyclic order. Alternating colourings
// of 4-cycles and of punctured 2-cycles are fixed, everything else is complemented.
// Throws std::invalid_argument for an empty cycle or one longer than 4.
std::vector<std::uint8_t> local_gyration(const std::vector<std::uint8_t>& cycle, bool punctured);

// Applies local gyration to every cycle of g.
std::vector<std::uint8_t> apply_gyration_graph(const GyrationGraph& g,
                                               const std::vector<std::uint8_t>& color);
FplConfig H_plus(const DihedralDomain& d, const FplConfig& phi);
FplConfig H_minus(const DihedralDomain& d, const FplConfig& phi);
FplConfig half_gyration(const DihedralDomain& d, const FplConfig& phi);      // H
FplConfig half_gyration_inv(const DihedralDomain& d, const FplConfig& phi);  // H^{-1}
FplConfig half_gyration_pow(const DihedralDomain& d, const FplConfig& phi, int k);

// Corner involutions at boundary position pos (default: the refinement position of phi);
// which is 1 or N. For fixed pos they are involutions.
FplConfig tilde_e(const DihedralDomain& d, const FplConfig& phi, int which, int pos = 0);

struct OrbitStep {
  int config = 0;  // index into OrbitTrace::configs
  int h = 0;
  char dir = '?';  // d_t, '?' when undefined on this domain
  bool plus = true;
  bool black_ref = true;
};

struct OrbitTrace {
  std::vector<FplConfig> configs;  // configs[t] = H^t(base), t < period
  std::vector<OrbitStep> steps;
  int period() const { return static_cast<int>(steps.size()); }
  int g(int t) const;  // h_t - t on the infinite orbit
};

OrbitTrace orbit(const DihedralDomain& d, const FplConfig& base);

// next[i] = index of H(configs[i]) in configs, which must be closed under H.
std::vector<int> gyration_permutation_serial(const DihedralDomain& d,
                                             const std::vector<FplConfig>& configs);
std::vector<int> gyration_permutation_parallel(const DihedralDomain& d,
                                               const std::vector<FplConfig>& configs, int jobs = 0);
// Orbits of H on Fpl(Lambda), each starting at its first Fpl+ configuration in enumeration order.
std::vector<OrbitTrace> orbit_decomposition(const DihedralDomain& d, int jobs = 0);

// Index t* >= 0 of the unique time with h_t - t = 1 on the orbit of phi in Fpl+.
int t_star(const DihedralDomain& d, const FplConfig& phi);
FplConfig theta(const DihedralDomain& d, const FplConfig& phi);      // Fpl+ -> Fpl_b
FplConfig theta_inv(const DihedralDomain& d, const FplConfig& phi);  // Fpl_b -> Fpl+

// Checks on one orbit: even period, alternating sectors, the (h,d) transition table, plateaux,
// monotonicity of h_t - t and equal-height counts.
Report check_orbit(const DihedralDomain& d, const OrbitTrace& tr);
// The full gyration suite on a domain.
Report verify_gyration(const DihedralDomain& d, int jobs = 0);

nlohmann::json orbit_to_json(const DihedralDomain& d, const OrbitTrace& tr);
std::string orbit_svg(const DihedralDomain& d, const OrbitTrace& tr);

}  // namespace gyralab
