#include "gyralab/correspondence.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "gyralab/fplenum.hpp"
#include "gyralab/tlops.hpp"

namespace gyralab {

namespace {

PolyVector constant(const std::vector<long>& v) {
  PolyVector out;
  out.reserve(v.size());
  for (long x : v) out.emplace_back(x);
  return out;
}

bool all_zero(const PolyVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

// First differing component, for witnesses.
std::string diff_witness(const PatternSpace& s, const PolyVector& a, const PolyVector& b) {
  for (size_t k = 0; k < a.size(); ++k)
    if (a[k] != b[k])
      return s.at(static_cast<int>(k)).str() + ": " + a[k].str() + " vs " + b[k].str();
  return "";
}

EnumerationVector build(const DihedralDomain& d, MapKind kind, int jobs) {
  EnumerationVector ev;
  ev.domain = d.name();
  ev.map_kind = kind;
  if (d.lp_kind != LpKind::PuncturedOdd && d.n_points() % 2 != 0)
    throw std::invalid_argument(d.name() + ": odd number of boundary points, no pattern space");
  ev.space = PatternSpace(d.lp_kind, d.n_points());
  const int dim = ev.space.dim();
  ev.slices.assign(static_cast<size_t>(d.L), std::vector<long>(static_cast<size_t>(dim), 0));
  const Sector sector = kind == MapKind::PiB ? Sector::B : Sector::Plus;
  for (const FplConfig& f : enumerate_fpl(d, sector, jobs)) {
    const Pattern p = kind == MapKind::PiB ? pi_b(d, f) : pi_plus(d, f);
    const int idx = ev.space.index_of(p);
    if (idx < 0) throw std::logic_error("pattern outside the space: " + p.str());
    if (f.h < 1 || f.h > d.L) throw std::logic_error("refinement position out of range");
    ++ev.slices[static_cast<size_t>(f.h - 1)][static_cast<size_t>(idx)];
  }
  ev.components.assign(static_cast<size_t>(dim), Poly());
  for (int i = 0; i < d.L; ++i)
    for (int k = 0; k < dim; ++k) {
      const long c = ev.slices[static_cast<size_t>(i)][static_cast<size_t>(k)];
      if (c) ev.components[static_cast<size_t>(k)] += Poly::monomial(c, i);
    }
  return ev;
}

int max_degree(const PolyVector& v) {
  int m = Poly::kDegreeZero;
  for (const auto& p : v) m = std::max(m, p.degree());
  return m;
}

}  // namespace

std::string map_kind_name(MapKind k) { return k == MapKind::PiB ? "pi_b" : "pi_plus"; }

PolyVector EnumerationVector::at(const BigInt& t) const {
  PolyVector out;
  out.reserve(components.size());
  for (const auto& p : components) out.emplace_back(p.eval(t));
  return out;
}

std::vector<long> EnumerationVector::unweighted() const {
  std::vector<long> out(components.size(), 0);
  for (const auto& s : slices)
    for (size_t k = 0; k < s.size(); ++k) out[k] += s[k];
  return out;
}

EnumerationVector psi_lambda(const DihedralDomain& d, int jobs) { return build(d, MapKind::PiB, jobs); }

EnumerationVector psi_prime_lambda(const DihedralDomain& d, int jobs) {
  return build(d, MapKind::PiPlus, jobs);
}

Poly k_factor(const EnumerationVector& psi) {
  const GroundState gs = ground_state_scattering(psi.space, 1);
  Poly k;
  bool have = false;
  for (size_t c = 0; c < psi.components.size(); ++c) {
    const Poly& num = psi.components[c];
    const Poly& den = gs.components[c];
    if (den.is_zero()) {
      if (!num.is_zero())
        throw std::domain_error("k_factor: nonzero component where the solution vanishes");
      continue;
    }
    Poly q;
    if (!try_divexact(num, den, q))
      throw std::domain_error("k_factor: component " + psi.space.at(static_cast<int>(c)).str() +
                              " not divisible");
    if (have && q != k) throw std::domain_error("k_factor: inconsistent quotients");
    k = q;
    have = true;
  }
  return k;
}

Poly k_factor(const DihedralDomain& d, int jobs) { return k_factor(psi_lambda(d, jobs)); }

Poly k_triangoloid(int alpha, int beta, int gamma, KForm form) {
  if (alpha < 0 || beta < 0 || gamma < 0)
    throw std::invalid_argument("k_triangoloid: negative parameter");
  if (form == KForm::Determinant) {
    if (alpha + beta < 1) throw std::invalid_argument("k_triangoloid: alpha + beta < 1");
    if (gamma == 0) return Poly(1);
    const long n = alpha + beta - 1;
    std::vector<std::vector<Poly>> m(static_cast<size_t>(gamma), std::vector<Poly>(static_cast<size_t>(gamma)));
    for (int i = 1; i <= gamma; ++i)
      for (int j = 1; j <= gamma; ++j) {
        const long k = beta - i + j;
        m[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] =
            Poly(std::vector<BigInt>{k >= 0 ? binomial(n, k) : BigInt(0),
                                     k - 1 >= 0 ? binomial(n, k - 1) : BigInt(0)});
      }
    return det_poly(std::move(m));
  }
  if (alpha < 1 || beta < 1) throw std::invalid_argument("k_triangoloid: closed form needs alpha, beta >= 1");
  const BigRat pre(superfactorial(alpha) * superfactorial(beta) * superfactorial(gamma + 1) *
                       superfactorial(alpha + beta + gamma - 1),
                   superfactorial(alpha + beta - 1) * superfactorial(alpha + gamma) *
                       superfactorial(beta + gamma));
  std::vector<BigInt> coeffs;
  for (int i = 0; i <= gamma; ++i) {
    BigRat c = pre * BigRat(binomial(beta - 1 + i, i) * binomial(alpha - 1 + gamma - i, gamma - i));
    c.canonicalize();
    if (c.get_den() != 1) throw std::logic_error("k_triangoloid: non-integral coefficient");
    coeffs.push_back(c.get_num());
  }
  return Poly(std::move(coeffs));
}

BigInt macmahon(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) throw std::invalid_argument("macmahon: negative parameter");
  BigRat r = 1;
  for (int i = 1; i <= a; ++i)
    for (int j = 1; j <= b; ++j)
      for (int k = 1; k <= c; ++k) r *= BigRat(i + j + k - 1, i + j + k - 2);
  r.canonicalize();
  return r.get_num();
}

Poly hexagon_tilings_weighted(int alpha, int beta, int gamma) {
  if (alpha < 1 || beta < 1 || gamma < 1)
    throw std::invalid_argument("hexagon_tilings_weighted: parameters must be >= 1");
  // r[i] counts the up-right steps of path i so far; each path makes beta up-left and alpha
  // up-right steps, and paths i < i+1 stay disjoint iff r[i] <= r[i+1].
  const int left = beta, right = alpha, rows = alpha + beta;
  std::vector<BigInt> coeffs(static_cast<size_t>(gamma + 1), 0);
  for (int k = 0; k <= gamma; ++k) {
    // first row: paths 0..k-1 go up-left, the others up-right; the vertical lozenge sits at k+1
    if ((k > 0 && left < 1) || (k < gamma && right < 1)) continue;
    std::map<std::vector<int>, BigInt> cur;
    std::vector<int> r0(static_cast<size_t>(gamma), 0);
    for (int i = k; i < gamma; ++i) r0[static_cast<size_t>(i)] = 1;
    cur[r0] = 1;
    for (int row = 1; row < rows; ++row) {
      std::map<std::vector<int>, BigInt> next;
      for (const auto& [r, cnt] : cur)
        for (int m = 0; m < (1 << gamma); ++m) {
          std::vector<int> s = r;
          bool ok = true;
          for (int i = 0; i < gamma && ok; ++i) {
            s[static_cast<size_t>(i)] += (m >> i) & 1;
            const int rr = s[static_cast<size_t>(i)];
            ok = rr <= right && (row + 1 - rr) <= left;
            if (ok && i > 0) ok = s[static_cast<size_t>(i - 1)] <= rr;
          }
          if (ok) next[s] += cnt;
        }
      cur.swap(next);
    }
    for (const auto& [r, cnt] : cur) coeffs[static_cast<size_t>(k)] += cnt;
  }
  return Poly(std::move(coeffs));
}

Report verify_theorem_main(const DihedralDomain& d, int jobs) {
  Report rep("theorem-main", d.name());
  const EnumerationVector psi = psi_lambda(d, jobs);
  const PatternSpace& s = psi.space;
  const int N = s.N();
  const PolyMatrix E1 = op_e(s, 1), EN = op_e(s, N), R = op_R(s, 1);
  bool slices_ok = true, rotation_ok = true;
  for (int i = 0; i < psi.L(); ++i) {
    const PolyVector v = constant(psi.slices[static_cast<size_t>(i)]);
    const PolyVector lhs = E1.apply(v), rhs = R.apply(EN.apply(v));
    slices_ok = slices_ok && lhs == rhs;
    rep.require(lhs == rhs, "slice identity fails at slice " + std::to_string(i + 1) + " (" +
                                diff_witness(s, lhs, rhs) + ")");
  }
  int lemma2 = 0;
  for (int k = 0; k < s.dim(); ++k) {
    const Pattern& p = s.at(k);
    if (short_arc_image(1, p)) continue;
    const int j = s.index_of(rotate(p, -1));
    const Poly lhs = Poly::t() * psi.components[static_cast<size_t>(k)];
    rotation_ok = rotation_ok && lhs == psi.components[static_cast<size_t>(j)];
    rep.require(lhs == psi.components[static_cast<size_t>(j)],
                "rotation identity fails at " + p.str());
    ++lemma2;
  }
  const PolyVector x1 = op_X(s, 1).apply(psi.components), r1 = R.apply(psi.components);
  rep.data["slice_identity"] = slices_ok;
  rep.data["rotation_identity"] = rotation_ok;
  rep.data["scattering_equation"] = x1 == r1;
  rep.require(x1 == r1, "X_1 Psi != R Psi (" + diff_witness(s, x1, r1) + ")");
  rep.require(!all_zero(psi.components), "Psi vanishes identically");
  long total = 0;
  for (long c : psi.unweighted()) total += c;
  rep.data["fpl_b"] = total;
  rep.data["slices"] = psi.L();
  rep.data["rotation_patterns"] = lemma2;
  rep.data["max_degree"] = max_degree(psi.components);
  return rep;
}

Report verify_df(const DihedralDomain& d, int jobs) {
  Report rep("df", d.name());
  const EnumerationVector psi = psi_lambda(d, jobs), prime = psi_prime_lambda(d, jobs);
  const PolyVector a = sym(prime.components, prime.space), b = sym(psi.components, psi.space);
  rep.require(a == b, "Sym Psi' != Sym Psi (" + diff_witness(psi.space, a, b) + ")");
  rep.data["componentwise_equal"] = psi.components == prime.components;
  return rep;
}

Report verify_ordinary_rs(const DihedralDomain& d, int jobs) {
  Report rep("ordinary-rs", d.name());
  const EnumerationVector prime = psi_prime_lambda(d, jobs);
  const PolyVector v = prime.at(1);
  const PolyVector h = op_H0(prime.space).eval_at(1).apply(v);
  rep.require(all_zero(h), "H0 Psi'(1) != 0");
  rep.require(!all_zero(v), "Psi'(1) vanishes");
  long total = 0;
  for (long c : prime.unweighted()) total += c;
  rep.data["fpl_plus"] = total;
  return rep;
}

Report verify_wieland(const DihedralDomain& d, int jobs) {
  Report rep("wieland", d.name());
  const EnumerationVector prime = psi_prime_lambda(d, jobs);
  const std::vector<long> v = prime.unweighted();
  for (int k = 0; k < prime.space.dim(); ++k) {
    const Pattern& p = prime.space.at(k);
    const int j = prime.space.index_of(rotate(p, -1));
    rep.require(v[static_cast<size_t>(k)] == v[static_cast<size_t>(j)],
                "count not rotation invariant at " + p.str());
  }
  return rep;
}

Report verify_k_factor(const DihedralDomain& d, int jobs) {
  Report rep("k-factor", d.name());
  const EnumerationVector psi = psi_lambda(d, jobs);
  Poly k;
  try {
    k = k_factor(psi);
  } catch (const std::domain_error& e) {
    rep.fail(e.what());
    return rep;
  }
  rep.data["k"] = k.str();
  rep.require(!k.is_zero(), "K is zero");
  for (const auto& c : k.coeffs()) rep.require(c >= 0, "K has a negative coefficient");
  const GroundState gs = ground_state_scattering(psi.space, 1);
  if (!k.is_zero())
    rep.require(max_degree(psi.components) == k.degree() + gs.max_degree(),
                "degree of Psi is not deg K + deg Psi^(1)");
  return rep;
}

Report verify_t0_fpl(const DihedralDomain& d, int jobs) {
  const DomainSpec& sp = d.spec;
  if (sp.kind != DomainKind::First || sp.a[1] < 2 || sp.a[2] < 2 || sp.a[3] < 2)
    throw std::invalid_argument("verify_t0_fpl: needs a first-kind domain with a2, a3, a4 >= 2");
  DomainSpec red;
  red.Lx = sp.Lx - 4;
  red.Ly = sp.Ly - 4;
  red.a = {0, sp.a[1] - 2, sp.a[2] - 2, sp.a[3] - 2};
  const DihedralDomain dr = build_domain(red);

  Report rep("t0-fpl", d.name());
  const EnumerationVector psi = psi_lambda(d, jobs);
  const PatternSpace& s = psi.space;
  const int N = s.N();
  for (long c : psi.slices[0]) rep.require(c == 0, "slice 1 is not zero");
  const EnumerationVector small = psi_lambda(dr, jobs);
  const PatternSpace& s2 = small.space;
  std::vector<long> mapped(static_cast<size_t>(s2.dim()), 0);
  if (psi.L() >= 2) {
    for (int k = 0; k < s.dim(); ++k) {
      const long c = psi.slices[1][static_cast<size_t>(k)];
      if (c == 0) continue;
      const Pattern& p = s.at(k);
      if (!short_arc_image(N, p)) {
        rep.fail("slice 2 has weight on " + p.str() + " without the arc {1,N}");
        continue;
      }
      const int j = s2.index_of(remove_short_arc(p, N - 1));
      if (j < 0) {
        rep.fail("reduced pattern outside the reduced space");
        continue;
      }
      mapped[static_cast<size_t>(j)] += c;
    }
  }
  const std::vector<long> target = small.unweighted();
  rep.require(mapped == target, "arc removal does not give Psi of the reduced domain at t=1");
  // the reduced vector is also a Hamiltonian ground state
  const std::vector<BigInt> gs = ground_state_hamiltonian(s2);
  BigInt num = 0, den = 0;
  for (size_t k = 0; k < gs.size(); ++k)
    if (gs[k] != 0) {
      num = mapped[k];
      den = gs[k];
      break;
    }
  for (size_t k = 0; k < gs.size(); ++k)
    rep.require(BigInt(mapped[k]) * den == gs[k] * num, "reduced vector not a ground state");
  long total = 0;
  for (long c : mapped) total += c;
  rep.data["reduced_domain"] = dr.name();
  rep.data["reduced_total"] = total;
  return rep;
}

nlohmann::json enumeration_to_json(const EnumerationVector& v) {
  nlohmann::json j;
  j["domain"] = v.domain;
  j["map"] = map_kind_name(v.map_kind);
  j["space"] = {{"kind", lp_kind_name(v.space.kind())}, {"N", v.space.N()}, {"dim", v.space.dim()}};
  nlohmann::json comps = nlohmann::json::array();
  for (int k = 0; k < v.space.dim(); ++k) {
    nlohmann::json row;
    row["pattern"] = v.space.at(k).str();
    row["psi"] = v.components[static_cast<size_t>(k)].str();
    nlohmann::json sl = nlohmann::json::array();
    for (const auto& s : v.slices) sl.push_back(s[static_cast<size_t>(k)]);
    row["slices"] = sl;
    comps.push_back(row);
  }
  j["components"] = comps;
  return j;
}

std::string enumeration_to_csv(const EnumerationVector& v) {
  std::ostringstream os;
  os << "pattern";
  for (int i = 0; i < v.L(); ++i) os << ",c" << i;
  os << "\n";
  for (int k = 0; k < v.space.dim(); ++k) {
    os << '"' << v.space.at(k).str() << '"';
    for (const auto& s : v.slices) os << ',' << s[static_cast<size_t>(k)];
    os << "\n";
  }
  return os.str();
}

}  // namespace gyralab
