// Acceptance suite: one line per criterion, [PASS]/[FAIL] verdicts, exit 0
// only if every criterion holds.  Each criterion pins its tolerance in code.

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rsl/catalog.hpp"
#include "rsl/cli.hpp"
#include "rsl/estimates.hpp"
#include "rsl/gelfand.hpp"
#include "rsl/grid.hpp"
#include "rsl/integrate.hpp"
#include "rsl/stability.hpp"
#include "rsl/weak.hpp"

using namespace rsl;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] %2d. %s — %s\n", pass ? "PASS" : "FAIL", number,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

const Grid& grid4096() {
  static Grid g = build_grid(GridKind::logarithmic, 4096, 1e-6);
  return g;
}

RadialProfile power_profile(int N, double theta, const Grid& g) {
  return make_closed_form_profile(
      N, g, [theta](double r) { return std::pow(r, -theta) - 1.0; },
      [theta](double r) { return -theta * std::pow(r, -theta - 1.0); });
}

// ---------------------------------------------------------------------------
// 1. Hardy boundary localization in alpha for N in {3, 6, 10}.
void criterion_1() {
  bool pass = true;
  std::ostringstream os;
  for (int N : {3, 6, 10}) {
    double lo = alpha_stability_boundary(N) - 0.5;  // semi-stable side
    double hi = alpha_stability_boundary(N) + 0.5;  // exceeded side
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      CatalogEntry e = make_alpha_family(N, mid, grid4096());
      if (hardy_criterion(e.profile, e.nl).verdict == Verdict::semi_stable)
        lo = mid;
      else
        hi = mid;
    }
    const double found = 0.5 * (lo + hi);
    const double exact = 2.0 - 0.5 * N - std::sqrt(double(N - 1));
    os << "N=" << N << ": " << found << " vs " << exact << "; ";
    if (std::abs(found - exact) > 1e-6) pass = false;
  }
  report(1, "Hardy boundary localization", pass, os.str());
}

// ---------------------------------------------------------------------------
// 2. Sign of the eps->0 trend of lambda_1 for the c/r^2 potential flips at
//    the Hardy constant, N in {3, 10}, grid n=4096, eps down to 1e-4.
bool trend_negative(double c, int N) {
  std::vector<double> lams;
  for (double eps = 0.25; eps >= 1e-4; eps *= 0.5)
    lams.push_back(principal_eigenvalue_potential(
        grid4096(), N, [c](double r) { return c / (r * r); }, eps));
  double min_val = lams[0];
  for (double l : lams) min_val = std::min(min_val, l);
  return min_val < -1e-3 * (1.0 + std::abs(lams.front()));
}

void criterion_2() {
  bool pass = true;
  std::ostringstream os;
  for (int N : {3, 10}) {
    const double H = hardy_constant(N);
    double lo = 0.5 * H, hi = 2.0 * H;
    if (trend_negative(lo, N) || !trend_negative(hi, N)) {
      os << "N=" << N << ": bracket invalid; ";
      pass = false;
      continue;
    }
    for (int it = 0; it < 40; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (trend_negative(mid, N)) hi = mid; else lo = mid;
    }
    const double found = 0.5 * (lo + hi);
    const double rel = std::abs(found - H) / H;
    os << "N=" << N << ": flip at " << found << " vs " << H
       << " (rel " << rel << "); ";
    if (rel > 0.02) pass = false;
  }
  report(2, "eigenvalue-Hardy consistency (2%)", pass, os.str());
}

// ---------------------------------------------------------------------------
// 3. Gelfand extremal parameter for the exponential source.
void criterion_3(const BifurcationDiagram& d2, const BifurcationDiagram& d10) {
  bool pass = true;
  std::ostringstream os;

  const LambdaStar s10 = lambda_star(d10);
  os << "N=10: lambda* = " << s10.estimate << "; ";
  if (std::abs(s10.estimate - 16.0) > 0.2) pass = false;

  const LambdaStar s2 = lambda_star(d2);
  os << "N=2: lambda* = " << s2.estimate << "; ";
  if (std::abs(s2.estimate - 2.0) > 0.02) pass = false;

  // Closed-form oracle over the same center values.
  double oracle = 0.0;
  for (const BranchPoint& pt : d2.points) {
    const double b = std::expm1(0.5 * pt.m);
    oracle = std::max(oracle, 8.0 * b / ((1.0 + b) * (1.0 + b)));
  }
  os << "oracle max " << oracle;
  if (std::abs(s2.estimate - oracle) > 2e-3) pass = false;

  report(3, "Gelfand lambda* (exp source)", pass, os.str());
}

// ---------------------------------------------------------------------------
// 4. Weak-solution classification of the power family agrees with the
//    closed-form criterion across the whole (N, p) table.
void criterion_4() {
  int disagreements = 0, cases = 0;
  for (int N = 2; N <= 10; ++N) {
    for (double p : {1.1, 1.5, 2.0, 3.0, 4.0, 6.0, 10.0}) {
      const double theta = 2.0 / (p - 1.0);
      RadialProfile prof = power_profile(N, theta, grid4096());
      Nonlinearity nl = Nonlinearity::power(p, bv_power_lambda(N, p));
      const bool expected = power_solution_weakness(N, p);
      const bool got =
          classify_weak_solution(prof, nl).verdict != WeakVerdict::not_weak;
      ++cases;
      if (expected != got) ++disagreements;
    }
  }
  std::ostringstream os;
  os << cases << " cases, " << disagreements << " disagreements";
  report(4, "weak classification vs closed-form power criterion",
         disagreements == 0, os.str());
}

// ---------------------------------------------------------------------------
// 5. Sharp-estimate battery on every catalog entry expected to be both
//    semi-stable and non-energy, plus the growth-exponent match.
void criterion_5() {
  bool pass = true;
  std::ostringstream os;
  int covered = 0;
  for (const CatalogEntry& e : standard_catalog(grid4096())) {
    if (!e.expected.semi_stable || !*e.expected.semi_stable) continue;
    if (!e.expected.non_energy || !*e.expected.non_energy) continue;
    ++covered;
    const FitCheck l24 = check_inverse_square_integral(e.profile);
    const FitCheck l25 = check_doubling_gap(e.profile);
    const PointwiseBoundCheck t11 = check_pointwise_lower_bound(e.profile);
    bool entry_ok = l24.pass && l25.pass && t11.pass;
    if (e.expected.power_exponent) {
      const double fitted = fitted_growth_exponent(e.profile);
      if (std::abs(fitted - *e.expected.power_exponent) >
          0.01 * std::abs(*e.expected.power_exponent))
        entry_ok = false;
    }
    if (!entry_ok) {
      pass = false;
      os << e.id << " failed; ";
    }
  }
  os << covered << " entries covered";
  report(5, "sharp-estimate suite on semi-stable non-energy entries", pass,
         os.str());
}

// ---------------------------------------------------------------------------
// 6. Gradient bounds: equality at the sharp exponent; 2d limit positive.
void criterion_6() {
  bool pass = true;
  std::ostringstream os;
  for (int N : {3, 6, 10}) {
    CatalogEntry e =
        make_alpha_family(N, alpha_stability_boundary(N), grid4096());
    const GradientBoundCheck g = check_gradient_bounds(e.profile);
    const double fitted = fitted_gradient_exponent(e.profile);
    const double target = gradient_exponent(N);
    os << "N=" << N << ": M1=" << g.lower_fit << " M2=" << g.upper_fit
       << " slope " << fitted << "; ";
    if (!(g.lower_fit > 0.0) || !(g.upper_fit > 0.0) || !g.pass) pass = false;
    if (std::abs(fitted - target) > 1e-6 * std::max(1.0, std::abs(target)))
      pass = false;
  }
  // Dimension-2 non-energy entries within the hypotheses (f >= 0).
  for (const CatalogEntry& e : standard_catalog(grid4096())) {
    if (e.profile.dimension != 2) continue;
    if (!e.expected.non_energy || !*e.expected.non_energy) continue;
    double fmin = 0.0;
    for (std::size_t i = 0; i < e.profile.size(); ++i)
      fmin = std::min(fmin, e.nl.f(e.profile.u[i]));
    if (fmin < 0.0) continue;  // outside the f >= 0 hypothesis
    const GradientBoundCheck g = check_gradient_bounds(e.profile);
    os << e.id << ": alpha_2d=" << g.alpha_2d << "; ";
    if (!(g.alpha_2d > 0.0) || !std::isfinite(g.alpha_2d) || !g.pass)
      pass = false;
  }
  report(6, "gradient bounds attain the sharp exponent", pass, os.str());
}

// ---------------------------------------------------------------------------
// Corpus shared by criteria 7 and 8.
struct CorpusItem {
  std::string id;
  RadialProfile profile;
  Nonlinearity nl;
};

std::vector<CorpusItem> dimension2_corpus(const BifurcationDiagram& d2) {
  std::vector<CorpusItem> corpus;
  for (const CatalogEntry& e : standard_catalog(grid4096()))
    if (e.profile.dimension == 2)
      corpus.push_back({e.id, e.profile, e.nl});

  // Branch profiles (every fourth point keeps the runtime sane).
  std::size_t idx = 0;
  for (const BranchPoint& pt : d2.points) {
    if (idx++ % 4 != 0) continue;
    ShootResult shot = shoot_first_zero(Nonlinearity::exponential(1.0), pt.m,
                                        2, grid4096());
    corpus.push_back({"branch:m=" + std::to_string(pt.m),
                      std::move(shot.profile),
                      Nonlinearity::exponential(pt.lambda)});
  }

  // Adversarial constructions.
  corpus.push_back(
      {"adversarial:inward-log",
       integrate_inward(Nonlinearity::exponential(0.5), 0.0, -0.7, 2, grid4096()),
       Nonlinearity::exponential(0.5)});
  {
    CatalogEntry li = make_liouville(1.0, grid4096());
    RadialProfile perturbed = li.profile;
    for (auto& u : perturbed.u) u *= 1.05;
    corpus.push_back({"adversarial:perturbed-liouville", std::move(perturbed),
                      li.nl});
  }
  {
    RadialProfile wav = make_closed_form_profile(
        2, grid4096(), [](double r) { return std::sin(9.0 * r) / (9.0 * r); },
        [](double r) {
          return (9.0 * r * std::cos(9.0 * r) - std::sin(9.0 * r)) /
                 (9.0 * r * r);
        });
    corpus.push_back({"adversarial:oscillating", std::move(wav),
                      Nonlinearity::tabulated({-2.0, 2.0}, {-162.0, 162.0},
                                              {81.0, 81.0})});
  }
  return corpus;
}

// 7. In dimension 2, no corpus profile is simultaneously weak-classified,
//    semi-stable, and passing the unbounded-growth check.
void criterion_7(const std::vector<CorpusItem>& corpus) {
  bool pass = true;
  std::ostringstream os;
  for (const CorpusItem& item : corpus) {
    const bool weak =
        classify_weak_solution(item.profile, item.nl).verdict !=
        WeakVerdict::not_weak;
    if (!weak) continue;  // conjunction already broken
    const bool stable =
        semistability_verdict(item.profile, item.nl).overall ==
        Verdict::semi_stable;
    const bool growth = check_pointwise_lower_bound(item.profile).pass;
    if (weak && stable && growth) {
      pass = false;
      os << item.id << " violates regularity; ";
    }
  }
  os << corpus.size() << " profiles scanned";
  report(7, "dimension-2 regularity corpus property", pass, os.str());
}

// 8. Every semi-stable-verdict profile has at most one interior zero of u_r.
void criterion_8(const std::vector<CorpusItem>& corpus) {
  bool pass = true;
  std::ostringstream os;
  int stable_count = 0;
  // The 2d corpus plus all catalog entries in higher dimensions.
  std::vector<CorpusItem> all = corpus;
  for (const CatalogEntry& e : standard_catalog(grid4096()))
    if (e.profile.dimension != 2) all.push_back({e.id, e.profile, e.nl});
  for (const CorpusItem& item : all) {
    const StabilityReport rep = semistability_verdict(item.profile, item.nl);
    if (rep.overall != Verdict::semi_stable) continue;
    ++stable_count;
    if (count_ur_zeros(item.profile) > 1) {
      pass = false;
      os << item.id << " has " << count_ur_zeros(item.profile) << " zeros; ";
    }
  }
  os << stable_count << " semi-stable profiles checked";
  report(8, "semi-stable profiles have at most one critical radius", pass,
         os.str());
}

// ---------------------------------------------------------------------------
// 9. Bisection in p localizes the power-family stability boundary (N=10).
void criterion_9() {
  const int N = 10;
  double lo = 1.26, hi = 1.49;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    CatalogEntry e = make_bv_power(N, mid, grid4096());
    if (hardy_criterion(e.profile, e.nl).verdict == Verdict::semi_stable)
      lo = mid;
    else
      hi = mid;
  }
  const double found = 0.5 * (lo + hi);
  const double exact = critical_power(N);  // 4/3
  const double lambda_p = bv_power_lambda(N, exact) * exact;
  std::ostringstream os;
  os << "flip at " << found << " vs " << exact << ", lambda*p = " << lambda_p;
  report(9, "power-family stability boundary in p",
         std::abs(found - exact) <= 1e-6 && std::abs(lambda_p - 16.0) <= 1e-9,
         os.str());
}

// ---------------------------------------------------------------------------
// 10. Integral-representation fidelity for weak catalog entries and branch
//     solutions.
void criterion_10(const BifurcationDiagram& d2, const BifurcationDiagram& d10) {
  bool pass = true;
  std::ostringstream os;
  double worst = 0.0;
  std::string worst_id = "-";
  auto check = [&](const std::string& id, const RadialProfile& p,
                   const Nonlinearity& nl) {
    const double dev = verify_integral_representation(p, nl);
    if (dev > worst) { worst = dev; worst_id = id; }
    if (dev > 1e-6) { pass = false; os << id << " dev " << dev << "; "; }
  };
  for (const CatalogEntry& e : standard_catalog(grid4096())) {
    if (!e.expected.weak || *e.expected.weak == WeakVerdict::not_weak) continue;
    check(e.id, e.profile, e.nl);
  }
  auto check_branch = [&](const BifurcationDiagram& d, int stride) {
    std::size_t idx = 0;
    for (const BranchPoint& pt : d.points) {
      if (idx++ % stride != 0) continue;
      ShootResult shot = shoot_first_zero(Nonlinearity::exponential(1.0), pt.m,
                                          d.dimension, grid4096());
      check("branch:N=" + std::to_string(d.dimension) +
                ",m=" + std::to_string(pt.m),
            shot.profile, Nonlinearity::exponential(pt.lambda));
    }
  };
  check_branch(d2, 8);
  check_branch(d10, 8);
  os << "worst " << worst << " (" << worst_id << ")";
  report(10, "integral representation within 1e-6", pass, os.str());
}

// ---------------------------------------------------------------------------
// 11. verify-all: every stored catalog expectation matches the computed
//     verdicts, and a corrupted expectation is caught.
void criterion_11() {
  const auto rows = cli::verify_catalog(grid4096());
  bool pass = !rows.empty();
  std::ostringstream os;
  for (const auto& row : rows)
    if (!row.all_ok()) {
      pass = false;
      os << row.id << ": " << row.detail << "; ";
    }
  os << rows.size() << " entries";

  // Negative control: flipping one expectation must produce a mismatch.
  CatalogEntry zero = make_constant(5, 0.0, grid4096());
  const Verdict got = semistability_verdict(zero.profile, zero.nl).overall;
  const bool corrupted_matches = (got == Verdict::unstable);
  if (corrupted_matches) {
    pass = false;
    os << "; corrupted expectation went undetected";
  }
  report(11, "verify-all catalog regression", pass, os.str());
}

}  // namespace

int main() {
  std::printf("acceptance suite (grid n=4096, r_min=1e-6)\n");

  criterion_1();
  criterion_2();

  const BifurcationDiagram d2 =
      minimal_branch(Nonlinearity::exponential(1.0), 2, default_m_grid(),
                     grid4096());
  const BifurcationDiagram d10 =
      minimal_branch(Nonlinearity::exponential(1.0), 10, default_m_grid(),
                     grid4096());
  criterion_3(d2, d10);
  criterion_4();
  criterion_5();
  criterion_6();

  const auto corpus = dimension2_corpus(d2);
  criterion_7(corpus);
  criterion_8(corpus);
  criterion_9();
  criterion_10(d2, d10);
  criterion_11();

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
