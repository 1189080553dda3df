#include "gyralab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "gyralab/correspondence.hpp"
#include "gyralab/fplenum.hpp"
#include "gyralab/gyration.hpp"
#include "gyralab/tlops.hpp"

namespace gyralab {

namespace {

// Size caps; beyond these the exhaustive computations stop being desk-scale.
constexpr int kMaxPatternPoints = 20;
constexpr int kMaxGroundStatePoints = 12;
constexpr int kMaxFplVertices = 120;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainFlags {
  int square = 0;
  std::string file;
  int htasm = 0;
  int qtasm = 0;
  std::vector<int> tri;

  void attach(CLI::App* app) {
    auto* g = app->add_option_group("domain", "domain selection (exactly one)");
    g->add_option("--square", square, "n x n square")->check(CLI::PositiveNumber);
    g->add_option("--domain", file, "domain spec as JSON")->check(CLI::ExistingFile);
    g->add_option("--htasm", htasm, "half-turn symmetric domain of size N")->check(CLI::PositiveNumber);
    g->add_option("--qtasm", qtasm, "quarter-turn symmetric domain of size N")->check(CLI::PositiveNumber);
    g->add_option("--triangoloid", tri, "triangoloid alpha beta gamma")->expected(3);
    g->require_option(0, 1);
  }
  bool given() const { return square || !file.empty() || htasm || qtasm || !tri.empty(); }
};

DomainSpec spec_from_file(const std::string& path) {
  std::ifstream in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (j.contains("class")) {
    const std::string c = j.at("class").get<std::string>();
    const int n = j.at("size").get<int>();
    if (c == "ASM") return symmetry_class_spec(SymClass::ASM, n);
    if (c == "HTASM") return symmetry_class_spec(SymClass::HTASM, n);
    if (c == "QTASM") return symmetry_class_spec(SymClass::QTASM, n);
    if (c == "quasi-QTASM") return symmetry_class_spec(SymClass::QuasiQTASM, n);
    throw std::invalid_argument("unknown domain class '" + c + "'");
  }
  if (j.contains("triangoloid")) {
    const auto t = j.at("triangoloid").get<std::vector<int>>();
    if (t.size() != 3) throw std::invalid_argument("triangoloid needs three parameters");
    return triangoloid_spec(t[0], t[1], t[2]);
  }
  return spec_from_json(j);
}

DihedralDomain load_domain(const DomainFlags& f) {
  if (!f.given()) throw UsageError("a domain is required (--square, --domain, --htasm, --qtasm, --triangoloid)");
  DomainSpec s;
  if (f.square) s = square_spec(f.square);
  else if (!f.file.empty()) s = spec_from_file(f.file);
  else if (f.htasm) s = symmetry_class_spec(SymClass::HTASM, f.htasm);
  else if (f.qtasm) s = symmetry_class_spec(SymClass::QTASM, f.qtasm);
  else s = triangoloid_spec(f.tri[0], f.tri[1], f.tri[2]);
  DihedralDomain d = build_domain(s);
  if (static_cast<int>(d.vertices.size()) > kMaxFplVertices)
    throw UsageError("unsupported size: " + std::to_string(d.vertices.size()) + " vertices (max " +
                     std::to_string(kMaxFplVertices) + ")");
  return d;
}

struct Space {
  std::string kind;
  int N = 0;
  void attach(CLI::App* app) {
    app->add_option("--kind", kind, "pattern kind")
        ->check(CLI::IsMember({"plain", "punctured-even", "punctured-odd"}));
    app->add_option("--N", N, "number of boundary points")->check(CLI::PositiveNumber);
  }
};

PatternSpace load_space(const Space& sp, const DomainFlags& df, int cap) {
  LpKind kind;
  int N;
  if (df.given()) {
    const DihedralDomain d = load_domain(df);
    kind = d.lp_kind;
    N = d.n_points();
  } else {
    if (sp.N == 0) throw UsageError("give --N (and --kind) or a domain");
    kind = sp.kind.empty() ? LpKind::Plain : lp_kind_from_name(sp.kind);
    N = sp.N;
  }
  if (N > cap) throw UsageError("unsupported size: N = " + std::to_string(N) + " (max " + std::to_string(cap) + ")");
  return PatternSpace(kind, N);
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json space_json(const PatternSpace& s) {
  return {{"kind", lp_kind_name(s.kind())}, {"N", s.N()}, {"dim", s.dim()}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact refined Razumov-Stroganov laboratory"};
  app.name("gyralab");
  app.require_subcommand(1);

  std::string format = "json", out_path;
  int jobs = 0;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "svg"}));
  app.add_option("--out", out_path, "write output to this file");
  app.add_option("--jobs", jobs, "parallel workers (default: GYRALAB_JOBS or all cores)")
      ->check(CLI::NonNegativeNumber);

  // options are accepted before or after the subcommand
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "svg"}));
    sub->add_option("--out", out_path, "write output to this file");
    sub->add_option("--jobs", jobs, "parallel workers")->check(CLI::NonNegativeNumber);
  };

  DomainFlags dom;
  Space space;
  std::string sector = "plus", method = "scattering", check;
  int site = 1, index = 0;
  bool histogram = false, list = false, prime = false, all_orbits = false;
  std::vector<int> abc;

  auto* c_patterns = app.add_subcommand("patterns", "enumerate a link-pattern space");
  space.attach(c_patterns);
  dom.attach(c_patterns);
  common(c_patterns);

  auto* c_gs = app.add_subcommand("ground-state", "Hamiltonian or scattering ground state");
  space.attach(c_gs);
  dom.attach(c_gs);
  c_gs->add_option("--method", method)->check(CLI::IsMember({"scattering", "hamiltonian"}));
  c_gs->add_option("--site", site, "scattering site i");
  common(c_gs);

  auto* c_enum = app.add_subcommand("enumerate-fpl", "enumerate FPL configurations");
  dom.attach(c_enum);
  c_enum->add_option("--sector", sector)->check(CLI::IsMember({"plus", "minus", "b", "w", "all"}));
  c_enum->add_flag("--histogram", histogram, "refinement-position histogram");
  c_enum->add_flag("--list", list, "list every configuration");
  c_enum->add_option("--index", index, "configuration drawn with --format svg")->check(CLI::NonNegativeNumber);
  common(c_enum);

  auto* c_psi = app.add_subcommand("psi", "enumeration vector with slices");
  dom.attach(c_psi);
  c_psi->add_flag("--prime", prime, "use Pi_+ over Fpl_+ instead of Pi_b over Fpl_b");
  common(c_psi);

  auto* c_k = app.add_subcommand("kfactor", "K factor of a domain");
  dom.attach(c_k);
  common(c_k);

  auto* c_tri = app.add_subcommand("triangoloid", "triangoloid K in determinant and closed form");
  c_tri->add_option("abc", abc, "alpha beta gamma")->expected(3)->required();
  common(c_tri);

  auto* c_til = app.add_subcommand("tilings", "weighted hexagon tilings");
  c_til->add_option("abc", abc, "alpha beta gamma")->expected(3)->required();
  common(c_til);

  auto* c_orbit = app.add_subcommand("orbit", "gyration orbit trace");
  dom.attach(c_orbit);
  c_orbit->add_option("--sector", sector)->check(CLI::IsMember({"plus", "minus", "b", "w", "all"}));
  c_orbit->add_option("--index", index, "base configuration within the sector")->check(CLI::NonNegativeNumber);
  c_orbit->add_flag("--all", all_orbits, "summary of the whole orbit decomposition");
  common(c_orbit);

  auto* c_verify = app.add_subcommand("verify", "run verifiers");
  c_verify->add_option("check", check, "which check")
      ->required()
      ->check(CLI::IsMember({"main", "df", "rs", "t0", "tl-relations", "gyration", "wieland", "kfactor", "all"}));
  space.attach(c_verify);
  dom.attach(c_verify);
  common(c_verify);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::string text;
  int status = kExitOk;
  try {
    if (*c_patterns) {
      const PatternSpace s = load_space(space, dom, kMaxPatternPoints);
      if (format == "csv") {
        text = "index,pattern\n";
        for (int k = 0; k < s.dim(); ++k) text += std::to_string(k) + ",\"" + s.at(k).str() + "\"\n";
      } else {
        nlohmann::json j = space_json(s);
        j["patterns"] = nlohmann::json::array();
        for (const auto& p : s.patterns()) j["patterns"].push_back(p.str());
        text = dump(j);
      }
    } else if (*c_gs) {
      const PatternSpace s = load_space(space, dom, kMaxGroundStatePoints);
      nlohmann::json j;
      if (method == "hamiltonian") {
        const auto v = ground_state_hamiltonian(s);
        j = space_json(s);
        j["method"] = method;
        j["components"] = nlohmann::json::array();
        for (int k = 0; k < s.dim(); ++k)
          j["components"].push_back({{"pattern", s.at(k).str()}, {"value", v[static_cast<size_t>(k)].get_str()}});
        if (format == "csv") {
          text = "pattern,value\n";
          for (int k = 0; k < s.dim(); ++k)
            text += "\"" + s.at(k).str() + "\"," + v[static_cast<size_t>(k)].get_str() + "\n";
        }
      } else {
        if (site < 1 || site > s.N()) throw UsageError("--site out of range");
        const GroundState gs = ground_state_scattering(s, site);
        j = ground_state_to_json(gs);
        if (format == "csv") {
          text = "pattern,value\n";
          for (int k = 0; k < s.dim(); ++k)
            text += "\"" + s.at(k).str() + "\"," + gs.components[static_cast<size_t>(k)].str() + "\n";
        }
      }
      if (format != "csv") text = dump(j);
    } else if (*c_enum) {
      const DihedralDomain d = load_domain(dom);
      const Sector sec = sector_from_name(sector);
      const auto configs = enumerate_fpl(d, sec, jobs);
      if (format == "svg") {
        if (index >= static_cast<int>(configs.size())) throw UsageError("--index beyond the configuration count");
        text = config_svg(d, configs[static_cast<size_t>(index)]);
      } else if (format == "csv") {
        if (histogram) {
          text = "h,count\n";
          const auto hist = refinement_histogram(configs, d.L);
          for (size_t h = 0; h < hist.size(); ++h) text += std::to_string(h + 1) + "," + std::to_string(hist[h]) + "\n";
        } else {
          text = "index,h,sector,pattern\n";
          for (size_t k = 0; k < configs.size(); ++k)
            text += std::to_string(k) + "," + std::to_string(configs[k].h) + "," +
                    (configs[k].plus ? "plus" : "minus") + ",\"" + pi_plus(d, configs[k]).str() + "\"\n";
        }
      } else {
        nlohmann::json j;
        j["domain"] = domain_summary(d);
        j["sector"] = sector;
        j["count"] = configs.size();
        if (histogram) j["histogram"] = refinement_histogram(configs, d.L);
        if (list) {
          j["configurations"] = nlohmann::json::array();
          for (const auto& f : configs) j["configurations"].push_back(config_to_json(d, f));
        }
        text = dump(j);
      }
    } else if (*c_psi) {
      const DihedralDomain d = load_domain(dom);
      const EnumerationVector v = prime ? psi_prime_lambda(d, jobs) : psi_lambda(d, jobs);
      text = format == "csv" ? enumeration_to_csv(v) : dump(enumeration_to_json(v));
    } else if (*c_k) {
      const DihedralDomain d = load_domain(dom);
      const Report r = verify_k_factor(d, jobs);
      text = dump(r.to_json());
      if (!r.ok) status = kExitFail;
    } else if (*c_tri) {
      const Poly det = k_triangoloid(abc[0], abc[1], abc[2], KForm::Determinant);
      const Poly closed = k_triangoloid(abc[0], abc[1], abc[2], KForm::Closed);
      const nlohmann::json j = {{"alpha", abc[0]},          {"beta", abc[1]},
                                {"gamma", abc[2]},          {"determinant", det.str()},
                                {"closed", closed.str()},   {"agree", det == closed}};
      text = format == "csv" ? "form,value\ndeterminant," + det.str() + "\nclosed," + closed.str() + "\n" : dump(j);
      if (det != closed) status = kExitFail;
    } else if (*c_til) {
      const Poly w = hexagon_tilings_weighted(abc[0], abc[1], abc[2]);
      const Poly k = k_triangoloid(abc[0], abc[1], abc[2], KForm::Closed);
      const BigInt m = macmahon(abc[0], abc[1], abc[2]);
      const bool ok = w == k && w.eval(BigInt(1)) == m;
      text = dump({{"alpha", abc[0]},     {"beta", abc[1]}, {"gamma", abc[2]}, {"tilings", w.str()},
                   {"k_triangoloid", k.str()}, {"macmahon", m.get_str()}, {"agree", ok}});
      if (!ok) status = kExitFail;
    } else if (*c_orbit) {
      const DihedralDomain d = load_domain(dom);
      if (all_orbits) {
        const auto orbits = orbit_decomposition(d, jobs);
        nlohmann::json periods = nlohmann::json::array();
        bool ok = true;
        for (const auto& tr : orbits) {
          periods.push_back(tr.period());
          ok = ok && check_orbit(d, tr).ok;
        }
        text = dump({{"domain", d.name()}, {"orbits", orbits.size()}, {"periods", periods}, {"checks", ok ? "pass" : "fail"}});
        if (!ok) status = kExitFail;
      } else {
        const auto configs = enumerate_fpl(d, sector_from_name(sector), jobs);
        if (index >= static_cast<int>(configs.size())) throw UsageError("--index beyond the configuration count");
        const OrbitTrace tr = orbit(d, configs[static_cast<size_t>(index)]);
        const Report r = check_orbit(d, tr);
        if (format == "svg") {
          text = orbit_svg(d, tr);
        } else {
          nlohmann::json j = orbit_to_json(d, tr);
          j["check"] = r.to_json();
          text = dump(j);
        }
        if (!r.ok) status = kExitFail;
      }
    } else if (*c_verify) {
      std::vector<Report> reps;
      const bool all = check == "all";
      if (check == "tl-relations") {
        reps.push_back(check_tl_relations(load_space(space, dom, kMaxGroundStatePoints)));
      } else {
        const DihedralDomain d = load_domain(dom);
        if (all || check == "main") reps.push_back(verify_theorem_main(d, jobs));
        if (all || check == "df") reps.push_back(verify_df(d, jobs));
        if (all || check == "rs") reps.push_back(verify_ordinary_rs(d, jobs));
        if (all || check == "wieland") reps.push_back(verify_wieland(d, jobs));
        if (all || check == "kfactor") reps.push_back(verify_k_factor(d, jobs));
        if (all || check == "gyration") reps.push_back(verify_gyration(d, jobs));
        const auto& a = d.spec.a;
        const bool t0_ok = d.spec.kind == DomainKind::First && a[1] >= 2 && a[2] >= 2 && a[3] >= 2;
        if (check == "t0" || (all && t0_ok)) reps.push_back(verify_t0_fpl(d, jobs));
        if (all && d.n_points() <= kMaxGroundStatePoints)
          reps.push_back(check_tl_relations(PatternSpace(d.lp_kind, d.n_points())));
      }
      nlohmann::json list_j = nlohmann::json::array();
      bool ok = true;
      for (const auto& r : reps) {
        list_j.push_back(r.to_json());
        ok = ok && r.ok;
      }
      text = dump({{"status", ok ? "pass" : "fail"}, {"reports", list_j}});
      if (!ok) status = kExitFail;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kExitFail;
  }

  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << out_path << "\n";
      return kExitUsage;
    }
    f << text;
  }
  return status;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace gyralab
