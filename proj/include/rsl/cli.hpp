#pragma once

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rsl/catalog.hpp"
#include "rsl/estimates.hpp"
#include "rsl/gelfand.hpp"
#include "rsl/integrate.hpp"
#include "rsl/io.hpp"
#include "rsl/stability.hpp"
#include "rsl/weak.hpp"

namespace rsl::cli {

namespace detail {

/// "exp", "exp:2.5", "power:3", "power:3,scale=0.5", "alpha:-6", "zero",
/// "file:nl.json".  Alpha families take the dimension from context.
inline Nonlinearity parse_nonlinearity(const std::string& spec, int dimension) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string rest =
      (colon == std::string::npos) ? "" : spec.substr(colon + 1);
  if (name == "zero") return Nonlinearity::zero();
  if (name == "exp")
    return Nonlinearity::exponential(rest.empty() ? 1.0 : std::stod(rest));
  if (name == "power") {
    double scale = 1.0;
    std::string head = rest;
    if (const auto comma = rest.find(','); comma != std::string::npos) {
      head = rest.substr(0, comma);
      const std::string tail = rest.substr(comma + 1);
      if (tail.rfind("scale=", 0) != 0)
        throw std::invalid_argument("--g power: expected scale=<value>");
      scale = std::stod(tail.substr(6));
    }
    if (head.empty()) throw std::invalid_argument("--g power: missing exponent");
    return Nonlinearity::power(std::stod(head), scale);
  }
  if (name == "alpha") {
    if (rest.empty()) throw std::invalid_argument("--g alpha: missing exponent");
    return Nonlinearity::alpha_family(std::stod(rest), dimension);
  }
  if (name == "file") {
    const json j = json::parse(read_text_file(rest));
    return Nonlinearity::tabulated(j.at("s").get<std::vector<double>>(),
                                   j.at("f").get<std::vector<double>>(),
                                   j.at("fp").get<std::vector<double>>());
  }
  throw std::invalid_argument("unknown nonlinearity spec: " + spec);
}

inline GridKind parse_grid_kind(const std::string& s) {
  if (s == "uniform") return GridKind::uniform;
  if (s == "logarithmic") return GridKind::logarithmic;
  if (s == "hybrid") return GridKind::hybrid;
  throw std::invalid_argument("unknown grid kind: " + s);
}

inline void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

struct ProfileSource {
  std::string catalog_id;
  std::string profile_path;
  std::string g_spec;

  /// Resolves to a (profile, nonlinearity) pair on the given grid.
  std::pair<RadialProfile, Nonlinearity> load(const Grid& grid) const {
    if (!catalog_id.empty()) {
      CatalogEntry e = catalog_entry_from_id(catalog_id, grid);
      return {std::move(e.profile), std::move(e.nl)};
    }
    if (profile_path.empty())
      throw std::invalid_argument("need --catalog or --profile");
    RadialProfile p =
        profile_from_json(json::parse(read_text_file(profile_path)));
    if (g_spec.empty())
      throw std::invalid_argument("--profile requires --g");
    const int dim = p.dimension;
    return {std::move(p), parse_nonlinearity(g_spec, dim)};
  }
};

inline const char* ok_str(bool ok) { return ok ? "ok" : "MISMATCH"; }

}  // namespace detail

struct VerifyRow {
  std::string id;
  bool residual_ok = true;
  bool stability_ok = true;
  bool energy_ok = true;
  bool weak_ok = true;
  std::string detail;
  bool all_ok() const {
    return residual_ok && stability_ok && energy_ok && weak_ok;
  }
};

/// Runs every catalog entry through the analysis modules and compares with
/// the stored expectations.  The catalog is the cross-module regression
/// suite: any analysis regression shows up as a row mismatch.
inline std::vector<VerifyRow> verify_catalog(const Grid& grid,
                                             const std::string& only = "") {
  std::vector<VerifyRow> rows;
  for (const CatalogEntry& e : standard_catalog(grid)) {
    if (!only.empty() && e.id.rfind(only, 0) != 0) continue;
    VerifyRow row;
    row.id = e.id;
    std::ostringstream note;

    row.residual_ok = scaled_residual_norm(e.profile, e.nl) <= 1e-3;

    if (e.expected.semi_stable) {
      const Verdict got = semistability_verdict(e.profile, e.nl).overall;
      const Verdict want =
          *e.expected.semi_stable ? Verdict::semi_stable : Verdict::unstable;
      row.stability_ok = (got == want);
      if (!row.stability_ok)
        note << "stability: want " << to_string(want) << " got "
             << to_string(got) << "; ";
    }
    if (e.expected.non_energy) {
      const EnergyClass got = energy_blocks(e.profile).classification;
      const EnergyClass want = *e.expected.non_energy ? EnergyClass::non_energy
                                                      : EnergyClass::energy;
      row.energy_ok = (got == want);
      if (!row.energy_ok)
        note << "energy: want " << to_string(want) << " got " << to_string(got)
             << "; ";
    }
    if (e.expected.weak) {
      const WeakVerdict got = classify_weak_solution(e.profile, e.nl).verdict;
      row.weak_ok = (got == *e.expected.weak);
      if (!row.weak_ok)
        note << "weak: want " << to_string(*e.expected.weak) << " got "
             << to_string(got) << "; ";
    }
    row.detail = note.str();
    rows.push_back(std::move(row));
  }
  return rows;
}

inline int run(const std::vector<std::string>& args) {
  CLI::App app{"semi-stable radial solution laboratory"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  std::string out_path;
  app.add_option("--out", out_path, "write output to a file instead of stdout");

  std::size_t grid_n = default_grid_n();
  double r_min = 1e-6;
  std::string grid_kind = "logarithmic";
  app.add_option("--grid-n", grid_n, "grid node count");
  app.add_option("--r-min", r_min, "innermost grid radius");
  app.add_option("--grid-kind", grid_kind, "uniform|logarithmic|hybrid");

  auto* solve = app.add_subcommand("solve", "integrate a radial profile");
  std::string solve_g = "zero";
  int solve_n = 3;
  double solve_m = 0.0;
  bool inward = false, csv = false;
  double u1 = 0.0, ur1 = 0.0;
  solve->add_option("--g", solve_g, "nonlinearity spec");
  solve->add_option("--N", solve_n, "space dimension")->required();
  solve->add_option("--m", solve_m, "center value (outward solve)");
  solve->add_flag("--inward", inward, "integrate from r = 1 inward");
  solve->add_option("--u1", u1, "u(1) for --inward");
  solve->add_option("--ur1", ur1, "u_r(1) for --inward");
  solve->add_flag("--csv", csv, "emit CSV instead of JSON");

  auto* stability = app.add_subcommand("stability", "semi-stability report");
  detail::ProfileSource stab_src;
  std::string stab_expect;
  stability->add_option("--catalog", stab_src.catalog_id, "catalog entry id");
  stability->add_option("--profile", stab_src.profile_path, "profile JSON path");
  stability->add_option("--g", stab_src.g_spec, "nonlinearity for --profile");
  stability->add_option("--expect", stab_expect,
                        "fail (exit 1) unless the verdict matches");

  auto* estimates = app.add_subcommand("estimates", "sharp estimate checks");
  detail::ProfileSource est_src;
  bool est_table = false;
  estimates->add_option("--catalog", est_src.catalog_id, "catalog entry id");
  estimates->add_option("--profile", est_src.profile_path, "profile JSON path");
  estimates->add_option("--g", est_src.g_spec, "nonlinearity for --profile");
  estimates->add_flag("--table", est_table, "print a human-readable table");

  auto* classify = app.add_subcommand("classify", "weak-solution classification");
  detail::ProfileSource cls_src;
  std::string cls_expect;
  classify->add_option("--catalog", cls_src.catalog_id, "catalog entry id");
  classify->add_option("--profile", cls_src.profile_path, "profile JSON path");
  classify->add_option("--g", cls_src.g_spec, "nonlinearity for --profile");
  classify->add_option("--expect", cls_expect,
                       "fail (exit 1) unless the verdict matches");

  auto* branch = app.add_subcommand("branch", "minimal-branch sweep");
  std::string branch_g = "exp";
  int branch_n = 2;
  double m_min = 1e-2, m_max = 1e3;
  std::size_t points = 200;
  bool branch_json = false;
  branch->add_option("--g", branch_g, "exp|power:p");
  branch->add_option("--N", branch_n, "space dimension")->required();
  branch->add_option("--m-min", m_min, "smallest center value");
  branch->add_option("--m-max", m_max, "largest center value");
  branch->add_option("--points", points, "sweep size");
  branch->add_flag("--json", branch_json, "emit JSON instead of CSV");

  auto* catalog = app.add_subcommand("catalog", "closed-form solution roster");
  auto* catalog_list = catalog->add_subcommand("list", "table of entries");
  auto* catalog_emit = catalog->add_subcommand("emit", "profile JSON for one id");
  std::string emit_id;
  catalog_emit->add_option("id", emit_id, "entry id")->required();
  catalog->require_subcommand(1);

  auto* verify = app.add_subcommand(
      "verify-all", "catalog expectations vs computed verdicts");
  std::string only;
  verify->add_option("--only", only, "restrict to ids with this prefix");

  std::vector<const char*> argv;
  argv.push_back("rsl");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    const Grid grid =
        build_grid(detail::parse_grid_kind(grid_kind), grid_n, r_min);

    if (solve->parsed()) {
      const Nonlinearity nl = detail::parse_nonlinearity(solve_g, solve_n);
      const RadialProfile p =
          inward ? integrate_inward(nl, u1, ur1, solve_n, grid)
                 : integrate_regular_ivp(nl, solve_m, solve_n, grid);
      detail::emit(csv ? profile_to_csv(p) : profile_to_json(p).dump(2) + "\n",
                   out_path);
      return 0;
    }

    if (stability->parsed()) {
      auto [p, nl] = stab_src.load(grid);
      const StabilityReport rep = semistability_verdict(p, nl);
      detail::emit(stability_report_to_json(rep).dump(2) + "\n", out_path);
      if (!stab_expect.empty() && to_string(rep.overall) != stab_expect)
        return 1;
      return 0;
    }

    if (estimates->parsed()) {
      auto [p, nl] = est_src.load(grid);
      const EstimateReport rep = run_estimates(p, nl);
      if (est_table) {
        std::ostringstream os;
        os.precision(6);
        os << "check     constant       pass\n";
        os << "lemma24   " << rep.lemma24.fitted_constant << "   "
           << (rep.lemma24.pass ? "yes" : "no") << "\n";
        os << "lemma25   " << rep.lemma25.fitted_constant << "   "
           << (rep.lemma25.pass ? "yes" : "no") << "\n";
        os << "thm11     " << rep.thm11.fitted_constant << "   "
           << (rep.thm11.pass ? "yes" : "no") << "\n";
        if (rep.thm12)
          os << "thm12     " << rep.thm12->lower_fit << "   "
             << (rep.thm12->pass ? "yes" : "no") << "\n";
        else
          os << "thm12     (hypotheses not met)\n";
        detail::emit(os.str(), out_path);
      } else {
        detail::emit(estimate_report_to_json(rep).dump(2) + "\n", out_path);
      }
      return 0;
    }

    if (classify->parsed()) {
      auto [p, nl] = cls_src.load(grid);
      const WeakClassification c = classify_weak_solution(p, nl);
      detail::emit(weak_classification_to_json(c).dump(2) + "\n", out_path);
      if (!cls_expect.empty() && to_string(c.verdict) != cls_expect) return 1;
      return 0;
    }

    if (branch->parsed()) {
      const Nonlinearity g = detail::parse_nonlinearity(branch_g, branch_n);
      std::vector<double> m_grid(points);
      for (std::size_t i = 0; i < points; ++i)
        m_grid[i] =
            m_min * std::pow(m_max / m_min, double(i) / double(points - 1));
      const BifurcationDiagram d = minimal_branch(g, branch_n, m_grid, grid);
      detail::emit(branch_json ? diagram_to_json(d).dump(2) + "\n"
                               : diagram_to_csv(d),
                   out_path);
      return 0;
    }

    if (catalog->parsed()) {
      if (catalog_list->parsed()) {
        std::ostringstream os;
        os << "id | N | semi-stable | non-energy | weak\n";
        for (const CatalogEntry& e : standard_catalog(grid)) {
          os << e.id << " | " << e.profile.dimension << " | ";
          os << (e.expected.semi_stable
                     ? (*e.expected.semi_stable ? "yes" : "no")
                     : "-")
             << " | ";
          os << (e.expected.non_energy ? (*e.expected.non_energy ? "yes" : "no")
                                       : "-")
             << " | ";
          os << (e.expected.weak ? to_string(*e.expected.weak) : "-") << "\n";
        }
        detail::emit(os.str(), out_path);
        return 0;
      }
      CatalogEntry e = catalog_entry_from_id(emit_id, grid);
      detail::emit(profile_to_json(e.profile).dump(2) + "\n", out_path);
      return 0;
    }

    if (verify->parsed()) {
      const auto rows = verify_catalog(grid, only);
      std::ostringstream os;
      bool all_ok = true;
      os << "entry | residual | stability | energy | weak\n";
      for (const VerifyRow& row : rows) {
        os << row.id << " | " << detail::ok_str(row.residual_ok) << " | "
           << detail::ok_str(row.stability_ok) << " | "
           << detail::ok_str(row.energy_ok) << " | "
           << detail::ok_str(row.weak_ok);
        if (!row.detail.empty()) os << "  (" << row.detail << ")";
        os << "\n";
        all_ok = all_ok && row.all_ok();
      }
      os << (all_ok ? "all entries match\n" : "MISMATCHES FOUND\n");
      detail::emit(os.str(), out_path);
      return all_ok ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const rsl::error& e) {
    std::cerr << "analysis error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace rsl::cli
