// Acceptance checks. One PASS/FAIL line per check; tolerances are fixed here.
//
//   acceptance            run everything
//   acceptance --list     print check names
//   acceptance --only X   run one check

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "srt/analytics.hpp"
#include "srt/cli.hpp"
#include "srt/experiments.hpp"
#include "srt/montecarlo.hpp"

using namespace srt;

namespace {

// ---------------------------------------------------------------------------
// Pinned tolerances

constexpr std::uint64_t kTrials = 1'000'000;
constexpr std::uint64_t kSeed = 20240611;
constexpr double kZ = 3.0;                     // exact forms: |z| <= 3
constexpr double kAsymptoticRel = 0.05;        // limit forms: max(3 se, 5% relative)
constexpr double kRegimeBound = 1e-6;          // 2^{R^o} s2_Sm
constexpr double kDualityAbs = 1e-8;
constexpr double kDuality80dBRel = 0.02;
constexpr double kSubsetAbs = 1e-12;
constexpr double kFloorRel = 0.01;             // IL macro IOP 85 -> 90 dB
constexpr double kStillDecreasingRel = 0.10;   // IC macro IOP 85 -> 90 dB
constexpr std::size_t kCrossoverN = 10;
constexpr std::size_t kSdcGridPoints = 20;
constexpr int kRandomConfigs = 10000;

const std::vector<double> kRates = {1.5, 3.0, 6.0};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[fail] ";
    }
    detail << what << "; ";
  }
};

std::string num(double x, int prec = 6) {
  std::ostringstream s;
  s.precision(prec);
  s << x;
  return s.str();
}

SystemConfig with_rate(SystemConfig c, double r) {
  c.rateMacroOverall = c.rateSmallOverall = r;
  return c;
}

const Topology& topo() {
  static const Topology t = default_topology(16, 30);
  return t;
}

SimulationOptions sim(std::uint64_t trials = kTrials) {
  SimulationOptions o;
  o.trials = trials;
  o.seed = kSeed;
  o.workers = 0;
  return o;
}

// One 10^6-trial pass per scheme, shared by the checks that need it.
const GridEstimate& mc(Scheme s) {
  static std::map<Scheme, GridEstimate> cache;
  auto it = cache.find(s);
  if (it == cache.end())
    it = cache.emplace(s, estimate_srt_grid(s, topo(), SystemConfig{}, RateGrids{kRates, kRates}, sim())).first;
  return it->second;
}

// ---------------------------------------------------------------------------

Outcome exact_forms() {
  Outcome o;
  const auto v = topo().variances();
  for (std::size_t j = 0; j < kRates.size(); ++j) {
    const auto c = with_rate(SystemConfig{}, kRates[j]);
    const std::pair<const char*, std::pair<double, ProbabilityEstimate>> rows[] = {
        {"il macro outage", {il_macro_outage(v, c), mc(Scheme::il).macroOutage[j]}},
        {"il small outage", {il_small_outage(v, c), mc(Scheme::il).smallOutage[j]}},
        {"il macro intercept", {il_macro_intercept(v, c), mc(Scheme::il).macroIntercept[j]}},
        {"il small intercept", {il_small_intercept(v, c), mc(Scheme::il).smallIntercept[j]}},
        {"ic macro outage", {ic_macro_outage(v, c), mc(Scheme::ic).macroOutage[j]}},
    };
    for (const auto& [name, pe] : rows) {
      const double z = pe.second.z_score(pe.first);
      o.require(std::abs(z) <= kZ, std::string(name) + " R=" + num(kRates[j]) + " z=" + num(z, 3));
    }
  }
  return o;
}

Outcome asymptotic(const std::string& which) {
  Outcome o;
  const auto v = topo().variances();
  for (std::size_t j = 0; j < kRates.size(); ++j) {
    const auto c = with_rate(SystemConfig{}, kRates[j]);
    double a = 0;
    ProbabilityEstimate e;
    if (which == "ic-small-outage-integral") {
      a = ic_small_outage(v, c, IcForm::integral).probability;
      e = mc(Scheme::ic).smallOutage[j];
    } else if (which == "ic-small-outage-closed") {
      a = ic_small_outage(v, c, IcForm::closed).probability;
      e = mc(Scheme::ic).smallOutage[j];
    } else if (which == "ic-macro-intercept-closed") {
      a = ic_macro_intercept(v, c, IcForm::closed).probability;
      e = mc(Scheme::ic).macroIntercept[j];
    } else {
      a = ic_small_intercept(v, c, IcForm::closed).probability;
      e = mc(Scheme::ic).smallIntercept[j];
    }
    const double tol = std::max(kZ * e.stdErr, kAsymptoticRel * a);
    o.require(std::abs(e.value - a) <= tol, "R=" + num(kRates[j]) + " analytic=" + num(a) + " mc=" + num(e.value) +
                                                " tol=" + num(tol, 3));
  }
  return o;
}

Outcome regime() {
  Outcome o;
  const double sm = topo().variances().sm;
  for (double r : kRates) {
    const double ind = ic_small_outage(topo(), with_rate(SystemConfig{}, r), IcForm::closed).regimeIndicator;
    o.require(std::abs(ind - std::exp2(r) * sm) <= 1e-12 * ind && ind <= kRegimeBound,
              "R=" + num(r) + " 2^R s2_Sm=" + num(ind, 3));
  }
  return o;
}

Outcome duality_macro_intercept() {
  Outcome o;
  for (double r : kRates) {
    const auto c = with_rate(SystemConfig{}, r);
    const double a = ic_macro_intercept(topo(), c, IcForm::integral).probability;
    const double b = ic_macro_intercept(topo(), c, IcForm::closed).probability;
    o.require(std::abs(a - b) <= kDualityAbs, "R=" + num(r) + " integral=" + num(a, 12) + " closed=" + num(b, 12));
  }
  return o;
}

// Exact integral (noise kept) against the closed form, at the default operating point.
Outcome duality_small_intercept() {
  Outcome o;
  for (double r : kRates) {
    const auto c = with_rate(SystemConfig{}, r);
    const double a = ic_small_intercept(topo(), c, IcForm::integral).probability;
    const double b = ic_small_intercept(topo(), c, IcForm::closed).probability;
    o.require(std::abs(a - b) <= kDualityAbs, "R=" + num(r) + " integral=" + num(a, 12) + " closed=" + num(b, 12));
  }
  return o;
}

// The noise-free limit integral against the closed form, and the exact
// integral against the closed form once the noise term is negligible.
Outcome duality_small_intercept_limit() {
  Outcome o;
  for (double r : kRates) {
    auto c = with_rate(SystemConfig{}, r);
    const double a = ic_small_intercept(topo(), c, IcForm::limitIntegral).probability;
    const double b = ic_small_intercept(topo(), c, IcForm::closed).probability;
    o.require(std::abs(a - b) <= kDualityAbs, "R=" + num(r) + " limit=" + num(a, 12) + " closed=" + num(b, 12));
    c.gammaM_dB = 200;
    const double e = ic_small_intercept(topo(), c, IcForm::integral).probability;
    const double f = ic_small_intercept(topo(), c, IcForm::closed).probability;
    o.require(std::abs(e - f) <= kDualityAbs, "200dB integral=" + num(e, 12) + " closed=" + num(f, 12));
  }
  return o;
}

Outcome duality_small_outage_80db() {
  Outcome o;
  for (double r : kRates) {
    auto c = with_rate(SystemConfig{}, r);
    c.gammaM_dB = 80;
    const double a = ic_small_outage(topo(), c, IcForm::integral).probability;
    const double b = ic_small_outage(topo(), c, IcForm::closed).probability;
    const double rel = std::abs(a - b) / a;
    o.require(rel <= kDuality80dBRel, "R=" + num(r) + " integral=" + num(a) + " closed=" + num(b) + " rel=" +
                                          num(rel, 3));
  }
  return o;
}

Outcome subset_binomial() {
  Outcome o;
  double worstOutage = 0, worstSel = 0, worstSum = 0;
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto v = default_topology(n, 30).variances();
    for (double r : kRates) {
      const auto c = with_rate(SystemConfig{}, r);
      worstOutage = std::max(worstOutage, std::abs(il_macro_outage(v, c, SubsetEvaluation::enumeration) -
                                                   il_macro_outage(v, c, SubsetEvaluation::binomial)));
    }
    for (std::size_t i = 0; i < n; ++i)
      worstSel = std::max(worstSel, std::abs(antenna_selection_prob(v, i, SubsetEvaluation::enumeration) -
                                             antenna_selection_prob(v, i, SubsetEvaluation::binomial)));
  }
  std::mt19937_64 gen(kSeed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int rep = 0; rep < 200; ++rep) {
    auto v = default_topology(1 + rep % 12, 30).variances();
    for (auto& a : v.am) a *= std::pow(10.0, u(gen));
    double s = 0;
    for (std::size_t i = 0; i < v.am.size(); ++i) s += antenna_selection_prob(v, i);
    worstSum = std::max(worstSum, std::abs(s - 1));
  }
  o.require(worstOutage <= kSubsetAbs, "outage enumeration-binomial max diff " + num(worstOutage, 3));
  o.require(worstSel <= kSubsetAbs, "selection enumeration-binomial max diff " + num(worstSel, 3));
  o.require(worstSum <= kSubsetAbs, "non-iid |sum P(A_i) - 1| max " + num(worstSum, 3));
  return o;
}

// IC outage interpolated (log-log) at each IL intercept level inside the IC curve's range.
Outcome srt_dominance() {
  Outcome o;
  const auto grid = default_rate_grid();
  for (double db : {65.0, 75.0}) {
    SystemConfig c;
    c.gammaM_dB = db;
    const auto il = analytic_srt_curve(Scheme::il, Cell::macro, topo(), c, grid);
    const auto ic = analytic_srt_curve(Scheme::ic, Cell::macro, topo(), c, grid);
    int compared = 0, violations = 0;
    double worst = 0;
    for (const auto& p : il) {
      if (!(p.intercept > 0)) continue;
      for (std::size_t k = 1; k < ic.size(); ++k) {
        const double hi = ic[k - 1].intercept, lo = ic[k].intercept;
        if (!(p.intercept <= hi && p.intercept >= lo && lo > 0)) continue;
        double out;
        if (hi == lo) {
          out = ic[k - 1].outage;
        } else {
          const double t = (std::log(p.intercept) - std::log(hi)) / (std::log(lo) - std::log(hi));
          const double a = ic[k - 1].outage, b = ic[k].outage;
          out = (a > 0 && b > 0) ? std::exp(std::log(a) + t * (std::log(b) - std::log(a))) : a + t * (b - a);
        }
        ++compared;
        if (out > p.outage) {
          ++violations;
          worst = std::max(worst, out / p.outage);
        }
        break;
      }
    }
    o.require(compared > 0 && violations == 0, num(db) + "dB: " + std::to_string(compared) + " intercept levels, " +
                                                    std::to_string(violations) + " violations" +
                                                    (violations ? " worst ratio " + num(worst, 4) : ""));
  }
  return o;
}

Outcome iop_vs_snr() {
  Outcome o;
  const auto grid = default_rate_grid();
  for (std::size_t n : {16u, 32u}) {
    const auto t = default_topology(n, 30);
    const auto il = sweep_snr(Scheme::il, Cell::macro, t, SystemConfig{}, {85, 90}, grid);
    const auto ic = sweep_snr(Scheme::ic, Cell::macro, t, SystemConfig{}, {85, 90}, grid);
    const double ilChange = std::abs(il[0].iop - il[1].iop) / il[0].iop;
    const double icDrop = (ic[0].iop - ic[1].iop) / ic[0].iop;
    o.require(ilChange < kFloorRel, "N=" + std::to_string(n) + " IL IOP 85dB=" + num(il[0].iop) +
                                        " 90dB=" + num(il[1].iop) + " change=" + num(ilChange, 3));
    o.require(icDrop > kStillDecreasingRel, "N=" + std::to_string(n) + " IC IOP 85dB=" + num(ic[0].iop) +
                                                " 90dB=" + num(ic[1].iop) + " drop=" + num(icDrop, 3));
  }
  return o;
}

Outcome iop_vs_n() {
  Outcome o;
  const auto grid = default_rate_grid();
  std::vector<std::size_t> ns;
  for (std::size_t n = 1; n <= 32; ++n) ns.push_back(n);
  auto build = [](std::size_t n) { return default_topology(n, 30); };
  for (double db : {65.0, 75.0}) {
    SystemConfig c;
    c.gammaM_dB = db;
    const auto il = sweep_n(Scheme::il, Cell::small, build, c, ns, grid);
    const auto ic = sweep_n(Scheme::ic, Cell::small, build, c, ns, grid);
    double spread = 0;
    for (const auto& p : il) spread = std::max(spread, std::abs(p.iop - il.front().iop));
    o.require(spread <= 1e-12 * il.front().iop, num(db) + "dB IL spread=" + num(spread, 3));
    std::size_t firstRise = 0;
    for (std::size_t k = 1; k < ic.size() && !firstRise; ++k)
      if (!(ic[k].iop < ic[k - 1].iop)) firstRise = ns[k];
    o.require(firstRise == 0, num(db) + "dB IC strictly decreasing" +
                                  (firstRise ? " (not at N=" + std::to_string(firstRise) + ")" : std::string()));
    if (db == 65.0) {
      std::size_t cross = 0;
      for (std::size_t k = 0; k < ic.size() && !cross; ++k)
        if (ic[k].iop < il[k].iop) cross = ns[k];
      o.require(cross != 0 && cross <= kCrossoverN, "65dB crossover at N=" + std::to_string(cross) +
                                                        " (IL=" + num(il.front().iop) + ")");
    }
  }
  return o;
}

Outcome sdc() {
  Outcome o;
  std::vector<double> grid;
  for (std::size_t k = 0; k < kSdcGridPoints; ++k) grid.push_back(1.0 + 0.5 * static_cast<double>(k));
  for (double db : {60.0, 70.0, 80.0}) {
    SystemConfig c;
    c.gammaM_dB = db;
    const auto ic = montecarlo_srt_curves(Scheme::ic, topo(), c, grid, sim()).small;
    const auto sd = montecarlo_srt_curves(Scheme::icSdc, topo(), c, grid, sim()).small;
    int bad = 0;
    double worst = 0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double zo = std::abs(sd[j].outage - ic[j].outage) / std::max(std::hypot(sd[j].outageStdErr, ic[j].outageStdErr), 1e-300);
      const double zi = std::abs(sd[j].intercept - ic[j].intercept) /
                        std::max(std::hypot(sd[j].interceptStdErr, ic[j].interceptStdErr), 1e-300);
      const bool ok = (sd[j].outage == ic[j].outage || zo <= kZ) && (sd[j].intercept == ic[j].intercept || zi <= kZ);
      if (!ok) ++bad;
      if (sd[j].outage != ic[j].outage) worst = std::max(worst, zo);
      if (sd[j].intercept != ic[j].intercept) worst = std::max(worst, zi);
    }
    o.require(bad == 0, num(db) + "dB " + std::to_string(bad) + "/" + std::to_string(grid.size()) +
                            " points outside, max z=" + num(worst, 3));
  }
  return o;
}

Outcome sum_iop_vs_smr() {
  Outcome o;
  const auto grid = default_rate_grid();
  const auto betas = cli::detail::default_beta_grid();
  for (double dss : {20.0, 30.0}) {
    const auto t = default_topology(16, dss);
    const auto ic = srt::sum_iop_vs_smr(Scheme::ic, t, SystemConfig{}, betas, grid);
    const auto il = srt::sum_iop_vs_smr(Scheme::il, t, SystemConfig{}, betas, grid);
    auto best = [](const std::vector<SumIopPoint>& v) {
      return std::min_element(v.begin(), v.end(), [](auto& a, auto& b) { return a.iop < b.iop; });
    };
    const auto bi = best(ic), bl = best(il);
    const bool interior = bi != ic.begin() && bi != ic.end() - 1;
    o.require(interior, "dSs=" + num(dss) + " IC minimum at beta=" + num(bi->beta) + " iop=" + num(bi->iop));
    o.require(bi->iop < bl->iop, "dSs=" + num(dss) + " min IC=" + num(bi->iop) + " < min IL=" + num(bl->iop));
  }
  SystemConfig c;
  c.smr = 300;
  const double atBound = ic_macro_outage(topo(), c);
  c.smr = 299.9;
  const double near = ic_macro_outage(topo(), c);
  o.require(atBound == 1.0 && near > 0.99, "IC macro outage beta=299.9: " + num(near) + ", beta=300: " + num(atBound));
  return o;
}

Outcome trivial_limits() {
  Outcome o;
  const auto v = topo().variances();
  {
    const auto c = with_rate(SystemConfig{}, 0.0);
    SystemConfig z = c;
    z.rateMacroSecrecy = z.rateSmallSecrecy = 0;
    double worst = 0;
    for (double p : {il_macro_outage(v, z), il_small_outage(v, z), ic_macro_outage(v, z),
                     ic_small_outage(v, z, IcForm::integral).probability,
                     ic_small_outage(v, z, IcForm::limitIntegral).probability,
                     ic_small_outage(v, z, IcForm::closed).probability})
      worst = std::max(worst, p);
    for (Scheme s : {Scheme::il, Scheme::ic}) {
      const auto e = estimate_all(s, topo(), z, sim(100000));
      worst = std::max({worst, e.macroOutage.value, e.smallOutage.value});
    }
    o.require(worst == 0.0, "Delta=0 outage max " + num(worst));
  }
  {
    const auto c = with_rate(SystemConfig{}, 1.0);
    double worst = 1;
    for (double p : {il_macro_intercept(v, c), il_small_intercept(v, c),
                     ic_macro_intercept(v, c, IcForm::closed).probability,
                     ic_macro_intercept(v, c, IcForm::integral).probability,
                     ic_small_intercept(v, c, IcForm::integral).probability,
                     ic_small_intercept(v, c, IcForm::closed).probability})
      worst = std::min(worst, p);
    for (Scheme s : {Scheme::il, Scheme::ic}) {
      const auto e = estimate_all(s, topo(), c, sim(100000));
      worst = std::min({worst, e.macroIntercept.value, e.smallIntercept.value});
    }
    o.require(worst == 1.0, "Lambda=0 intercept min " + num(worst));
  }
  {
    const auto c = with_rate(SystemConfig{}, 2000.0);
    double worst = 0;
    for (double p : {il_macro_intercept(v, c), il_small_intercept(v, c),
                     ic_macro_intercept(v, c, IcForm::closed).probability,
                     ic_small_intercept(v, c, IcForm::integral).probability,
                     ic_small_intercept(v, c, IcForm::closed).probability})
      worst = std::max(worst, p);
    o.require(worst == 0.0, "Lambda=inf intercept max " + num(worst));
  }
  {
    double worst = 0;
    for (std::size_t n : {1u, 4u, 16u, 32u})
      for (double r : {1.5, 3.0, 6.0}) {
        auto c = with_rate(SystemConfig{}, r);
        c.smr = 0;
        const auto w = default_topology(n, 30).variances();
        const double a = il_macro_outage(w, c), b = ic_macro_outage(w, c);
        const double iidNoInterference = std::pow(-std::expm1(-std::expm1(r * std::log(2.0)) / c.gammaM() / w.am[0]),
                                                  double(n));
        worst = std::max({worst, std::abs(a - b) / b, std::abs(b - iidNoInterference) / b});
      }
    o.require(worst <= 1e-12, "beta=0 IC vs IL macro outage max rel diff " + num(worst, 3));
  }
  {
    std::mt19937_64 gen(kSeed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int bad = 0;
    std::string firstBad;
    for (int rep = 0; rep < kRandomConfigs; ++rep) {
      const std::size_t n = 1 + rep % 24;
      const bool iid = rep % 2 == 0 || n > 8;
      Topology t = default_topology(n, 5 + 295 * u(gen));
      auto draw = [&] { return LinkSpec{10 + 590 * u(gen), 2 + 2 * u(gen), 0.25 + 1.75 * u(gen)}; };
      const LinkSpec mu = draw(), su = draw(), eve = draw();
      for (std::size_t i = 0; i < n; ++i) {
        t.antennaToMu[i] = iid ? mu : draw();
        t.antennaToSu[i] = iid ? su : draw();
        t.antennaToEve[i] = iid ? eve : draw();
      }
      t.sbsToMu = draw();
      t.sbsToEve = draw();
      SystemConfig c;
      c.gammaM_dB = -10 + 130 * u(gen);
      c.rateMacroSecrecy = 3 * u(gen);
      c.rateSmallSecrecy = 3 * u(gen);
      c.rateMacroOverall = c.rateMacroSecrecy + 10 * u(gen);
      c.rateSmallOverall = c.rateSmallSecrecy + 10 * u(gen);
      const auto w = t.variances();
      c.smr = u(gen) * ic_feasibility(w, c).smrBound;
      std::vector<double> ps = {il_macro_outage(w, c), il_small_outage(w, c), il_macro_intercept(w, c),
                                il_small_intercept(w, c), ic_macro_outage(w, c)};
      if (iid)
        for (IcForm f : {IcForm::integral, IcForm::limitIntegral, IcForm::closed}) {
          ps.push_back(ic_small_outage(w, c, f).probability);
          ps.push_back(ic_small_intercept(w, c, f).probability);
          if (f != IcForm::limitIntegral) ps.push_back(ic_macro_intercept(w, c, f).probability);
        }
      for (std::size_t k = 0; k < ps.size(); ++k)
        if (!(ps[k] >= 0.0 && ps[k] <= 1.0)) {
          if (!bad) firstBad = " first: config " + std::to_string(rep) + " value " + num(ps[k]);
          ++bad;
        }
    }
    o.require(bad == 0, std::to_string(kRandomConfigs) + " random configs, " + std::to_string(bad) +
                            " out-of-range values" + firstBad);
  }
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "srt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

// Monte Carlo figures at several worker counts, then replayed from the
// manifest at several worker counts; every CSV must be byte-identical.
Outcome determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "srt_acceptance_determinism";
  fs::remove_all(root);
  for (const std::string fig : {"2", "6", "7"}) {
    std::map<std::string, std::string> reference;
    bool same = true;
    int runs = 0;
    for (const std::string w : {"1", "4", "8"}) {
      const fs::path dir = root / ("fig" + fig + "_w" + w);
      std::vector<std::string> args = {"figure", fig, "--trials", "20000", "--seed", "7", "--rate-step", "0.25",
                                       "--workers", w, "--out", dir.string()};
      if (fig == "2") args.insert(args.end(), {"--backend", "both"});
      if (run_cli(args) != 0) {
        o.require(false, "fig" + fig + " run failed at workers=" + w);
        continue;
      }
      for (const std::string rw : {"1", "4", "8"}) {
        const fs::path rdir = root / ("fig" + fig + "_w" + w + "_replay" + rw);
        if (run_cli({"replay", (dir / "manifest.json").string(), "--out", rdir.string(), "--workers", rw}) != 0) {
          o.require(false, "fig" + fig + " replay failed");
          continue;
        }
        for (const auto& d : {dir, rdir}) {
          for (const auto& entry : fs::directory_iterator(d)) {
            const auto name = entry.path().filename().string();
            if (name == "manifest.json") continue;
            const auto text = slurp(entry.path());
            auto [it, inserted] = reference.emplace(name, text);
            if (!inserted && it->second != text) same = false;
          }
          ++runs;
        }
      }
    }
    o.require(same && !reference.empty(),
              "fig" + fig + ": " + std::to_string(reference.size()) + " files identical over " +
                  std::to_string(runs) + " runs");
  }
  fs::remove_all(root);
  return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& checks() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> all = {
      {"exact-forms", exact_forms},
      {"asymptotic-forms.ic-small-outage-integral", [] { return asymptotic("ic-small-outage-integral"); }},
      {"asymptotic-forms.ic-small-outage-closed", [] { return asymptotic("ic-small-outage-closed"); }},
      {"asymptotic-forms.ic-macro-intercept-closed", [] { return asymptotic("ic-macro-intercept-closed"); }},
      {"asymptotic-forms.ic-small-intercept-closed", [] { return asymptotic("ic-small-intercept-closed"); }},
      {"asymptotic-forms.regime", regime},
      {"duality.macro-intercept", duality_macro_intercept},
      {"duality.small-intercept", duality_small_intercept},
      {"duality.small-intercept-limit", duality_small_intercept_limit},
      {"duality.small-outage-80db", duality_small_outage_80db},
      {"subset-binomial", subset_binomial},
      {"figure-shape.srt-dominance", srt_dominance},
      {"figure-shape.iop-vs-snr", iop_vs_snr},
      {"figure-shape.iop-vs-n", iop_vs_n},
      {"figure-shape.sdc", sdc},
      {"figure-shape.sum-iop-vs-smr", sum_iop_vs_smr},
      {"trivial-limits", trivial_limits},
      {"determinism", determinism},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::string only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--list") {
      for (const auto& [name, _] : checks()) std::cout << name << '\n';
      return 0;
    }
    if (a == "--only" && i + 1 < argc) {
      only = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--list | --only NAME]\n";
      return 2;
    }
  }
  int failed = 0, ran = 0;
  for (const auto& [name, fn] : checks()) {
    if (!only.empty() && name != only) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (r.pass ? "PASS " : "FAIL ") << name << ": " << r.detail.str() << "(" << num(secs, 3) << " s)"
              << std::endl;
    failed += !r.pass;
  }
  if (ran == 0) {
    std::cerr << "unknown check '" << only << "'\n";
    return 2;
  }
  return failed ? 1 : 0;
}
