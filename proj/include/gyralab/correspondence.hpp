// Enumeration vectors of FPL link patterns refined by t^(h-1), the K-factor, triangoloid
// formulas and the verifiers tying FPL enumerations to the scattering solution.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gyralab/domains.hpp"
#include "gyralab/exactmath.hpp"
#include "gyralab/linkpat.hpp"
#include "gyralab/report.hpp"

namespace gyralab {

enum class MapKind { PiB, PiPlus };  // Pi_b over Fpl_b, Pi_+ over Fpl_+
std::string map_kind_name(MapKind k);

struct EnumerationVector {
  std::string domain;
  MapKind map_kind = MapKind::PiB;
  PatternSpace space;
  PolyVector components;
  // slices[i-1][idx]: number of configurations with refinement position i and pattern idx
  std::vector<std::vector<long>> slices;

  int L() const { return static_cast<int>(slices.size()); }
  PolyVector at(const BigInt& t) const;  // constant vector
  std::vector<long> unweighted() const;  // sum of the slices
};

// Throw std::invalid_argument when N is odd on a domain without a degree-2 vertex (empty Fpl).
EnumerationVector psi_lambda(const DihedralDomain& d, int jobs = 0);
EnumerationVector psi_prime_lambda(const DihedralDomain& d, int jobs = 0);

// K with Psi_Lambda = K * Psi^(1), Psi^(1) the normalized scattering solution at site 1.
// Throws std::domain_error if the componentwise quotients are not one polynomial.
Poly k_factor(const EnumerationVector& psi);
Poly k_factor(const DihedralDomain& d, int jobs = 0);

enum class KForm { Determinant, Closed };
// Throws std::invalid_argument for negative parameters, or alpha/beta < 1 in the closed form.
Poly k_triangoloid(int alpha, int beta, int gamma, KForm form);

// Lozenge tilings of the hexagon with sides alpha, beta, gamma, alpha, beta, gamma, weighted
// t^(h-1) by the position h of the vertical lozenge touching the bottom side (length gamma).
// Tilings are counted as gamma non-intersecting up-left/up-right lattice paths.
Poly hexagon_tilings_weighted(int alpha, int beta, int gamma);
BigInt macmahon(int a, int b, int c);

Report verify_theorem_main(const DihedralDomain& d, int jobs = 0);
Report verify_df(const DihedralDomain& d, int jobs = 0);
Report verify_ordinary_rs(const DihedralDomain& d, int jobs = 0);
// Requires a first-kind domain with a2, a3, a4 >= 2; throws std::invalid_argument otherwise.
Report verify_t0_fpl(const DihedralDomain& d, int jobs = 0);
// Unweighted Pi_+ counts are invariant under rotation.
Report verify_wieland(const DihedralDomain& d, int jobs = 0);
Report verify_k_factor(const DihedralDomain& d, int jobs = 0);

nlohmann::json enumeration_to_json(const EnumerationVector& v);
// Header "pattern,c0,c1,...", one row per pattern in canonical order.
std::string enumeration_to_csv(const EnumerationVector& v);

}  // namespace gyralab
