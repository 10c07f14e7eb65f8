#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rsl/catalog.hpp"
#include "rsl/estimates.hpp"
#include "rsl/gelfand.hpp"
#include "rsl/grid.hpp"
#include "rsl/profile.hpp"
#include "rsl/stability.hpp"
#include "rsl/weak.hpp"

namespace rsl {

using json = nlohmann::json;

inline json profile_to_json(const RadialProfile& p) {
  json j;
  j["N"] = p.dimension;
  j["grid"] = {{"kind", to_string(p.grid.kind)},
               {"r_min", p.grid.r_min()},
               {"n", p.grid.size()}};
  j["nodes"] = p.grid.nodes;
  j["u"] = p.u;
  j["u_r"] = p.u_r;
  j["provenance"] = to_string(p.provenance);
  return j;
}

inline RadialProfile profile_from_json(const json& j) {
  RadialProfile p;
  p.dimension = j.at("N").get<int>();
  p.grid.nodes = j.at("nodes").get<std::vector<double>>();
  const std::string kind = j.at("grid").at("kind").get<std::string>();
  p.grid.kind = (kind == "uniform")      ? GridKind::uniform
                : (kind == "hybrid")     ? GridKind::hybrid
                                         : GridKind::logarithmic;
  p.u = j.at("u").get<std::vector<double>>();
  p.u_r = j.at("u_r").get<std::vector<double>>();
  const std::string prov = j.at("provenance").get<std::string>();
  p.provenance = (prov == "closed-form") ? Provenance::closed_form
                 : (prov == "integrated") ? Provenance::integrated
                                          : Provenance::tabulated;
  p.validate();
  return p;
}

inline std::string profile_to_csv(const RadialProfile& p) {
  std::ostringstream os;
  os.precision(17);
  os << "r,u,u_r\n";
  for (std::size_t i = 0; i < p.size(); ++i)
    os << p.grid[i] << ',' << p.u[i] << ',' << p.u_r[i] << '\n';
  return os.str();
}

inline json stability_report_to_json(const StabilityReport& rep) {
  json j;
  j["hardy"] = {{"sup", rep.hardy.sup_potential},
                {"constant", rep.hardy.constant},
                {"verdict", to_string(rep.hardy.verdict)}};
  json sweep = json::array();
  for (const auto& [eps, lam] : rep.eigen_sweep)
    sweep.push_back({eps, lam});
  j["sweep"] = sweep;
  json reduced = json::array();
  for (const auto& [id, value] : rep.reduced_samples)
    reduced.push_back({id, value});
  j["reduced"] = reduced;
  j["ur_zeros"] = rep.ur_zero_count;
  j["verdict"] = to_string(rep.overall);
  return j;
}

inline json energy_verdict_to_json(const EnergyVerdict& v) {
  return json{{"blocks", v.blocks},
              {"classification", to_string(v.classification)},
              {"tail_slope", v.tail_slope}};
}

inline json estimate_report_to_json(const EstimateReport& rep) {
  json j;
  j["lemma24"] = {{"K_fit", rep.lemma24.fitted_constant},
                  {"pass", rep.lemma24.pass}};
  j["lemma25"] = {{"Mprime_fit", rep.lemma25.fitted_constant},
                  {"pass", rep.lemma25.pass}};
  j["thm11"] = {{"M_fit", rep.thm11.fitted_constant},
                {"r0_used", rep.thm11.r0_used},
                {"pass", rep.thm11.pass}};
  if (rep.thm12) {
    j["thm12"] = {{"M1_fit", rep.thm12->lower_fit},
                  {"M2_fit", rep.thm12->upper_fit},
                  {"alpha_2d", rep.thm12->alpha_2d},
                  {"pass", rep.thm12->pass}};
  } else {
    j["thm12"] = nullptr;
  }
  j["exponents_used"] = {
      {"N", rep.exponents_used.dimension},
      {"omega_N", rep.exponents_used.omega_n},
      {"hardy_constant", rep.exponents_used.hardy_constant},
      {"sharp_exponent", rep.exponents_used.sharp_exponent},
      {"gradient_exponent", rep.exponents_used.gradient_exponent},
      {"lemma24_exponent", rep.exponents_used.lemma24_exponent}};
  j["hypotheses"] = {{"f_nonnegative", rep.hypotheses.f_nonnegative},
                     {"monotone_near_origin", rep.hypotheses.monotone_near_origin}};
  return j;
}

inline json weak_classification_to_json(const WeakClassification& c) {
  return json{
      {"cond_i",
       {{"residual_ok", c.cond_i.residual_ok},
        {"boundary_ok", c.cond_i.boundary_ok}}},
      {"cond_ii", {{"integral", c.cond_ii.f_integral}, {"finite", c.cond_ii.finite}}},
      {"cond_iii", {{"flux", c.cond_iii.flux_limit}, {"zero", c.cond_iii.zero}}},
      {"unbounded_near_origin", c.unbounded_near_origin},
      {"verdict", to_string(c.verdict)}};
}

inline json diagram_to_json(const BifurcationDiagram& d) {
  json pts = json::array();
  for (const BranchPoint& p : d.points)
    pts.push_back({{"m", p.m},
                   {"R", p.first_zero},
                   {"lambda", p.lambda},
                   {"lambda1", p.lambda1}});
  LambdaStar star = lambda_star(d);
  return json{{"g", d.g_descriptor},
              {"N", d.dimension},
              {"points", pts},
              {"lambda_star",
               {{"estimate", star.estimate},
                {"maximizer_m", star.maximizer_m},
                {"monotone", star.monotone}}},
              {"warnings", d.warnings}};
}

inline std::string diagram_to_csv(const BifurcationDiagram& d) {
  std::ostringstream os;
  os.precision(17);
  os << "m,R,lambda,lambda1\n";
  for (const BranchPoint& p : d.points)
    os << p.m << ',' << p.first_zero << ',' << p.lambda << ',' << p.lambda1
       << '\n';
  return os.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << text;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace rsl
