#pragma once

// Command-line front end: validate, figure, eval, replay.
//
// Exit codes: 0 success, 1 validation failure, 2 usage or config error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "srt/analytics.hpp"
#include "srt/config.hpp"
#include "srt/csv.hpp"
#include "srt/errors.hpp"
#include "srt/experiments.hpp"
#include "srt/montecarlo.hpp"
#include "srt/special.hpp"

#ifndef SRT_VERSION
#define SRT_VERSION "dev"
#endif

namespace srt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

using nlohmann::json;

// CSV rows keyed by output file name.
using Dataset = std::map<std::string, std::vector<CsvRow>>;

struct FigureRequest {
  int figure = 2;
  ExperimentConfig config;
  std::string backend = "analytic";  // analytic, mc or both
  SimulationOptions sim;
  json overrides = json::object();  // snr_list, n_list, beta_list, dss_list, eve_ranges, rate_step, rate_max
};

namespace detail {

inline const std::map<int, std::set<std::string>>& figure_overrides() {
  static const std::map<int, std::set<std::string>> m = {
      {2, {"snr_list", "rate_step", "rate_max"}},
      {3, {"snr_list", "n_list", "rate_step", "rate_max"}},
      {4, {"n_list", "rate_step", "rate_max"}},
      {5, {"snr_list", "n_list", "rate_step", "rate_max"}},
      {6, {"snr_list", "rate_step", "rate_max"}},
      {7, {"eve_ranges", "rate_step", "rate_max"}},
      {8, {"beta_list", "dss_list", "rate_step", "rate_max"}},
  };
  return m;
}

inline std::vector<double> doubles_or(const json& o, const char* key, std::vector<double> fallback) {
  if (!o.contains(key)) return fallback;
  auto v = o.at(key).get<std::vector<double>>();
  if (v.empty()) throw UsageError(std::string("--") + key + " must not be empty");
  return v;
}

inline std::vector<std::size_t> counts_or(const json& o, const char* key, std::vector<std::size_t> fallback) {
  if (!o.contains(key)) return fallback;
  auto v = o.at(key).get<std::vector<std::size_t>>();
  if (v.empty()) throw UsageError(std::string("--") + key + " must not be empty");
  return v;
}

inline std::vector<Backend> backends_of(const std::string& b) {
  if (b == "analytic") return {Backend::analytic};
  if (b == "mc") return {Backend::montecarlo};
  if (b == "both") return {Backend::analytic, Backend::montecarlo};
  throw UsageError("--backend must be analytic, mc or both");
}

class RowFactory {
 public:
  explicit RowFactory(int figure) : figure_("fig" + std::to_string(figure)) {}

  CsvRow base(Scheme scheme, std::string_view cell, Backend backend, const SystemConfig& sys,
              const Topology& topo) const {
    CsvRow r;
    r.figure = figure_;
    r.scheme = std::string(to_string(scheme));
    r.cell = std::string(cell);
    r.backend = std::string(to_string(backend));
    r.gammaMdB = sys.gammaM_dB;
    r.n = topo.antennaCount();
    r.beta = sys.smr;
    r.dSs = topo.sbsToSu.distance;
    r.rateSecrecy = cell == "small" ? sys.rateSmallSecrecy : sys.rateMacroSecrecy;
    return r;
  }

  void srt(std::vector<CsvRow>& out, CsvRow r, const std::vector<SrtPoint>& curve) const {
    for (const auto& p : curve) {
      r.rateOverall = p.rateOverall;
      r.backend = std::string(to_string(p.backend));
      const bool mc = p.backend == Backend::montecarlo;
      if (mc) r.trials = p.trials;
      r.metric = "outage";
      r.value = p.outage;
      if (mc) r.stdErr = p.outageStdErr;
      out.push_back(r);
      r.metric = "intercept";
      r.value = p.intercept;
      if (mc) r.stdErr = p.interceptStdErr;
      out.push_back(r);
    }
  }

  void iop(std::vector<CsvRow>& out, CsvRow r, const IopPoint& p, const SimulationOptions& sim) const {
    r.rateOverall = p.minimizingRate;
    r.metric = "iop";
    r.value = p.iop;
    if (p.backend == Backend::montecarlo) r.trials = sim.trials;
    out.push_back(r);
  }

 private:
  std::string figure_;
};

inline std::vector<double> rate_grid(const FigureRequest& req) {
  const auto& sys = req.config.system;
  const double lo = std::max(sys.rateMacroSecrecy, sys.rateSmallSecrecy);
  const double step = req.overrides.value("rate_step", 0.05);
  const double max = req.overrides.value("rate_max", 10.0);
  try {
    return default_rate_grid(lo, max, step);
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
}

// Default sweep of beta over (0, 300): log-spaced below 100, then linear.
inline std::vector<double> default_beta_grid() {
  return {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1, 2, 5, 10, 20, 50, 100, 150, 200, 250, 290, 299};
}

}  // namespace detail

inline Dataset run_figure(const FigureRequest& req) {
  const auto& allowed = detail::figure_overrides();
  const auto it = allowed.find(req.figure);
  if (it == allowed.end()) throw UsageError("figure must be between 2 and 8");
  for (const auto& [key, _] : req.overrides.items())
    if (!it->second.count(key))
      throw UsageError("override '" + key + "' is not supported by figure " + std::to_string(req.figure));

  const auto backends = detail::backends_of(req.backend);
  const auto grid = detail::rate_grid(req);
  const auto& cfg = req.config;
  const auto& ov = req.overrides;
  const detail::RowFactory rows(req.figure);
  Dataset data;
  const std::array<Scheme, 2> schemes = {Scheme::il, Scheme::ic};

  auto srtFamily = [&](std::vector<CsvRow>& out, Scheme scheme, Cell cell, const Topology& topo,
                       const SystemConfig& sys, const std::vector<Backend>& which) {
    for (Backend b : which)
      rows.srt(out, rows.base(scheme, to_string(cell), b, sys, topo), srt_curve(scheme, cell, topo, sys, grid, b, req.sim));
  };

  switch (req.figure) {
    case 2: {
      auto& out = data["fig2_srt_macro.csv"];
      for (Scheme s : schemes)
        for (double db : detail::doubles_or(ov, "snr_list", {65, 75})) {
          SystemConfig sys = cfg.system;
          sys.gammaM_dB = db;
          srtFamily(out, s, Cell::macro, cfg.topology, sys, backends);
        }
      break;
    }
    case 3:
    case 5: {
      const bool bySnr = req.figure == 3;
      auto& out = data[bySnr ? "fig3_iop_vs_snr.csv" : "fig5_iop_vs_n.csv"];
      std::vector<std::size_t> defaultN;
      if (bySnr) {
        defaultN = {16, 32};
      } else {
        for (std::size_t n = 1; n <= 32; ++n) defaultN.push_back(n);
      }
      const auto nList = detail::counts_or(ov, "n_list", defaultN);
      const auto snrs = detail::doubles_or(ov, "snr_list", bySnr ? linear_grid(50, 90, 5) : std::vector<double>{65, 75});
      for (Scheme s : schemes)
        for (double db : snrs)
          for (std::size_t n : nList) {
            SystemConfig sys = cfg.system;
            sys.gammaM_dB = db;
            const Topology topo = cfg.with_antennas(n);
            for (Backend b : backends) {
              const auto iops = min_iops(s, topo, sys, grid, b, req.sim);
              rows.iop(out, rows.base(s, "macro", b, sys, topo), iops.macro, req.sim);
              rows.iop(out, rows.base(s, "small", b, sys, topo), iops.small, req.sim);
            }
          }
      break;
    }
    case 4: {
      auto& out = data["fig4_srt_macro.csv"];
      for (Scheme s : schemes)
        for (std::size_t n : detail::counts_or(ov, "n_list", {16, 32}))
          srtFamily(out, s, Cell::macro, cfg.with_antennas(n), cfg.system, backends);
      break;
    }
    case 6: {
      auto& out = data["fig6_srt_small.csv"];
      for (double db : detail::doubles_or(ov, "snr_list", {60, 70, 80})) {
        SystemConfig sys = cfg.system;
        sys.gammaM_dB = db;
        srtFamily(out, Scheme::ic, Cell::small, cfg.topology, sys, backends);
        srtFamily(out, Scheme::icSdc, Cell::small, cfg.topology, sys, {Backend::montecarlo});
      }
      break;
    }
    case 7: {
      auto& out = data["fig7_sum_srt.csv"];
      std::vector<EveDistanceRange> ranges = {{100, 150}, {200, 250}};
      if (ov.contains("eve_ranges")) {
        ranges.clear();
        for (const auto& r : ov.at("eve_ranges")) ranges.push_back({r.at(0).get<double>(), r.at(1).get<double>()});
      }
      for (Scheme s : schemes)
        for (const auto& range : ranges) {
          CsvRow base = rows.base(s, "sum", Backend::montecarlo, cfg.system, cfg.topology);
          base.eveDMin = range.low;
          base.eveDMax = range.high;
          rows.srt(out, base, random_eve_sum_srt(s, cfg.topology, cfg.system, range, grid, req.sim));
        }
      break;
    }
    case 8: {
      auto& out = data["fig8_sum_iop_vs_smr.csv"];
      const auto betas = detail::doubles_or(ov, "beta_list", detail::default_beta_grid());
      for (Scheme s : schemes)
        for (double dss : detail::doubles_or(ov, "dss_list", {20, 30})) {
          Topology topo = cfg.topology;
          topo.sbsToSu.distance = dss;
          for (Backend b : backends)
            for (const auto& p : sum_iop_vs_smr(s, topo, cfg.system, betas, grid, b, req.sim)) {
              SystemConfig sys = cfg.system;
              sys.smr = p.beta;
              rows.iop(out, rows.base(s, "macro", b, sys, topo), p.macro, req.sim);
              rows.iop(out, rows.base(s, "small", b, sys, topo), p.small, req.sim);
              CsvRow sum = rows.base(s, "sum", b, sys, topo);
              sum.metric = "sum_iop";
              sum.value = p.iop;
              if (b == Backend::montecarlo) sum.trials = req.sim.trials;
              out.push_back(sum);
            }
        }
      break;
    }
  }
  return data;
}

inline json figure_manifest(const FigureRequest& req, const std::string& configPath, const std::string& outDir,
                            const Dataset& data) {
  json outputs = json::array();
  for (const auto& [name, _] : data) outputs.push_back(name);
  return json{{"tool", "srt"},
              {"toolVersion", SRT_VERSION},
              {"command", "figure"},
              {"figure", req.figure},
              {"configPath", configPath},
              {"config", to_json(req.config)},
              {"seed", req.sim.seed},
              {"trials", req.sim.trials},
              {"backend", req.backend},
              {"overrides", req.overrides},
              {"outputDir", outDir},
              {"outputs", outputs}};
}

inline void write_dataset(const std::filesystem::path& dir, const Dataset& data, const json& manifest) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, rows] : data) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw UsageError("cannot write " + (dir / name).string());
    write_csv(f, rows);
  }
  std::ofstream m(dir / "manifest.json", std::ios::binary);
  if (!m) throw UsageError("cannot write manifest in " + dir.string());
  m << manifest.dump(2) << '\n';
}

inline FigureRequest request_from_manifest(const json& m) {
  if (m.value("command", "") != "figure") throw UsageError("manifest does not describe a figure run");
  FigureRequest req;
  try {
    req.figure = m.at("figure").get<int>();
    req.config = parse_config(m.at("config"));
    req.sim.seed = m.at("seed").get<std::uint64_t>();
    req.sim.trials = m.at("trials").get<std::uint64_t>();
    req.backend = m.at("backend").get<std::string>();
    req.overrides = m.value("overrides", json::object());
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed manifest: ") + e.what());
  }
  return req;
}

namespace detail {

inline std::string fixed(double x, int prec = 6) {
  std::ostringstream s;
  s << std::setprecision(prec) << x;
  return s.str();
}

inline void print_validation(std::ostream& out, const ValidationReport& report) {
  out << std::left << std::setw(7) << "scheme" << std::setw(17) << "metric" << std::setw(10) << "form"
      << std::setw(14) << "analytic" << std::setw(14) << "estimate" << std::setw(12) << "std_err" << std::setw(10)
      << "z" << std::setw(10) << "rel_err"
      << "result\n";
  for (const auto& r : report.rows) {
    out << std::left << std::setw(7) << to_string(r.scheme) << std::setw(17) << to_string(r.metric) << std::setw(10)
        << (r.exactForm ? "exact" : "limit") << std::setw(14) << fixed(r.analytic) << std::setw(14)
        << fixed(r.estimate.value) << std::setw(12) << fixed(r.estimate.stdErr, 3) << std::setw(10)
        << fixed(r.zScore, 3) << std::setw(10) << fixed(r.relativeError, 3) << (r.pass ? "pass" : "FAIL")
        << (r.estimate.lowCount ? " (low count)" : "") << '\n';
  }
  out << (report.pass() ? "validation passed" : "validation FAILED") << '\n';
}

inline ExperimentConfig load_or_default(const std::string& path) {
  return path.empty() ? ExperimentConfig{} : load_config(path);
}

struct EvalArgs {
  std::string quantity;
  std::optional<double> x;
  std::optional<std::size_t> antenna;
  std::optional<double> gammaMdB, beta, rateOverall, rateSecrecy;
  std::optional<std::size_t> n;
  std::string scheme = "il";
  std::string metric = "macro-outage";
};

inline json evaluate(const EvalArgs& a, ExperimentConfig cfg, const SimulationOptions& sim) {
  if (a.n) cfg.topology = cfg.with_antennas(*a.n);
  auto& s = cfg.system;
  if (a.gammaMdB) s.gammaM_dB = *a.gammaMdB;
  if (a.beta) s.smr = *a.beta;
  if (a.rateOverall) s.rateMacroOverall = s.rateSmallOverall = *a.rateOverall;
  if (a.rateSecrecy) s.rateMacroSecrecy = s.rateSmallSecrecy = *a.rateSecrecy;
  try {
    s.validate();
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
  const auto v = cfg.topology.variances();
  const std::string& q = a.quantity;
  json r{{"quantity", q}};
  auto regime = [&](const AsymptoticValue& av) {
    r["value"] = av.probability;
    r["regime_indicator"] = av.regimeIndicator;
  };
  if (q == "e1") {
    if (!a.x) throw UsageError("e1 needs --x");
    r["x"] = *a.x;
    r["value"] = exp_integral_e1(*a.x);
  } else if (q == "il-macro-outage") {
    r["value"] = il_macro_outage(v, s);
  } else if (q == "il-small-outage") {
    r["value"] = il_small_outage(v, s);
  } else if (q == "il-macro-intercept") {
    r["value"] = il_macro_intercept(v, s);
  } else if (q == "il-small-intercept") {
    r["value"] = il_small_intercept(v, s);
  } else if (q == "ic-macro-outage") {
    r["value"] = ic_macro_outage(v, s);
  } else if (q == "ic-small-outage") {
    regime(ic_small_outage(v, s, IcForm::integral));
  } else if (q == "ic-small-outage-limit") {
    regime(ic_small_outage(v, s, IcForm::limitIntegral));
  } else if (q == "ic-small-outage-asymptotic") {
    regime(ic_small_outage(v, s, IcForm::closed));
  } else if (q == "ic-macro-intercept") {
    regime(ic_macro_intercept(v, s, IcForm::closed));
  } else if (q == "ic-macro-intercept-integral") {
    regime(ic_macro_intercept(v, s, IcForm::integral));
  } else if (q == "ic-small-intercept") {
    regime(ic_small_intercept(v, s, IcForm::integral));
  } else if (q == "ic-small-intercept-limit") {
    regime(ic_small_intercept(v, s, IcForm::limitIntegral));
  } else if (q == "ic-small-intercept-closed") {
    regime(ic_small_intercept(v, s, IcForm::closed));
  } else if (q == "selection-prob") {
    const std::size_t i = a.antenna.value_or(0);
    r["antenna"] = i;
    r["value"] = antenna_selection_prob(v, i);
  } else if (q == "ic-feasibility") {
    const auto f = ic_feasibility(v, s);
    r["value"] = f.smrBound;
    r["feasible"] = f.feasible;
    r["strictly_feasible"] = f.strictlyFeasible;
  } else if (q == "mc-estimate") {
    const auto e = estimate_all(parse_scheme(a.scheme), cfg.topology, s, sim).of(parse_metric(a.metric));
    r["scheme"] = a.scheme;
    r["metric"] = a.metric;
    r["value"] = e.value;
    r["std_err"] = e.stdErr;
    r["trials"] = e.trials;
    r["seed"] = e.seed;
    r["wilson_low"] = e.wilsonLow;
    r["wilson_high"] = e.wilsonHigh;
  } else {
    throw UsageError("unknown quantity '" + q + "'");
  }
  return r;
}

inline std::vector<std::string> eval_quantities() {
  return {"e1",
          "il-macro-outage",
          "il-small-outage",
          "il-macro-intercept",
          "il-small-intercept",
          "ic-macro-outage",
          "ic-small-outage",
          "ic-small-outage-limit",
          "ic-small-outage-asymptotic",
          "ic-macro-intercept",
          "ic-macro-intercept-integral",
          "ic-small-intercept",
          "ic-small-intercept-limit",
          "ic-small-intercept-closed",
          "selection-prob",
          "ic-feasibility",
          "mc-estimate"};
}

inline std::pair<double, double> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("--eve-range expects LOW:HIGH");
  try {
    return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError("--eve-range expects LOW:HIGH");
  }
}

}  // namespace detail

// Entry point; `argv[0]` is the program name.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Security-reliability tradeoff of distributed-antenna selection in a two-tier network"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SRT_VERSION);

  std::string configPath;
  std::uint64_t seed = 1;
  std::uint64_t trials = 1'000'000;
  unsigned workers = 0;
  std::string outDir = "out";
  std::string backend = "analytic";

  auto addCommon = [&](CLI::App* c, bool withOut) {
    c->add_option("--config", configPath, "JSON config file (defaults apply when omitted)");
    c->add_option("--seed", seed, "master seed");
    c->add_option("--trials", trials, "Monte Carlo trials per estimate")->check(CLI::PositiveNumber);
    c->add_option("--workers", workers, "worker threads (0: all cores); results do not depend on it");
    if (withOut) c->add_option("--out", outDir, "output directory");
  };

  auto* validate = app.add_subcommand("validate", "compare every closed form with simulation at one operating point");
  addCommon(validate, false);
  std::string simConfigPath;
  validate->add_option("--sim-config", simConfigPath, "simulate with this config instead (negative control)");

  auto* figure = app.add_subcommand("figure", "write the CSV datasets of one figure");
  addCommon(figure, true);
  int figureId = 0;
  figure->add_option("figure,--figure", figureId, "figure number (2-8)")->required();
  figure->add_option("--backend", backend, "analytic, mc or both")->check(CLI::IsMember({"analytic", "mc", "both"}));
  std::vector<double> snrList, betaList, dssList;
  std::vector<std::size_t> nList;
  std::vector<std::string> eveRanges;
  double rateStep = 0.0, rateMax = 0.0;
  auto* oSnr = figure->add_option("--snr-list", snrList, "gammaM values [dB]")->delimiter(',');
  auto* oN = figure->add_option("--n-list", nList, "antenna counts")->delimiter(',');
  auto* oBeta = figure->add_option("--beta-list", betaList, "power ratios")->delimiter(',');
  auto* oDss = figure->add_option("--dss-list", dssList, "small-cell link distances [m]")->delimiter(',');
  auto* oEve = figure->add_option("--eve-range", eveRanges, "eavesdropper distance range LOW:HIGH (repeatable)");
  auto* oStep = figure->add_option("--rate-step", rateStep, "overall-rate grid step");
  auto* oMax = figure->add_option("--rate-max", rateMax, "largest overall rate");

  auto* eval = app.add_subcommand("eval", "print one analytic or simulated quantity");
  addCommon(eval, false);
  detail::EvalArgs ea;
  eval->add_option("quantity", ea.quantity, "quantity to evaluate")->required()->check(
      CLI::IsMember(detail::eval_quantities()));
  eval->add_option("--x", ea.x, "argument of e1");
  eval->add_option("--antenna", ea.antenna, "antenna index for selection-prob");
  eval->add_option("--gamma-m-db", ea.gammaMdB, "override gammaM [dB]");
  eval->add_option("--beta", ea.beta, "override the power ratio");
  eval->add_option("--rate-overall", ea.rateOverall, "override both overall rates");
  eval->add_option("--rate-secrecy", ea.rateSecrecy, "override both secrecy rates");
  eval->add_option("--n", ea.n, "override the antenna count");
  eval->add_option("--scheme", ea.scheme, "scheme for mc-estimate")->check(CLI::IsMember({"il", "ic", "ic-sdc"}));
  eval->add_option("--metric", ea.metric, "metric for mc-estimate")
      ->check(CLI::IsMember({"macro-outage", "small-outage", "macro-intercept", "small-intercept"}));

  auto* replay = app.add_subcommand("replay", "re-run a figure from its manifest");
  std::string manifestPath;
  std::string replayOut;
  replay->add_option("manifest", manifestPath, "manifest.json of a previous run")->required();
  replay->add_option("--out", replayOut, "output directory (default: the recorded one)");
  replay->add_option("--workers", workers, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    SimulationOptions sim;
    sim.seed = seed;
    sim.trials = trials;
    sim.workers = workers;

    if (*validate) {
      const auto cfg = detail::load_or_default(configPath);
      const auto simCfg = simConfigPath.empty() ? cfg : load_config(simConfigPath);
      const auto report = validate_operating_point(cfg.topology, simCfg.topology, cfg.system, sim);
      detail::print_validation(out, report);
      return report.pass() ? kExitOk : kExitValidationFailed;
    }

    if (*figure) {
      FigureRequest req;
      req.figure = figureId;
      req.config = detail::load_or_default(configPath);
      req.backend = backend;
      req.sim = sim;
      if (oSnr->count()) req.overrides["snr_list"] = snrList;
      if (oN->count()) req.overrides["n_list"] = nList;
      if (oBeta->count()) req.overrides["beta_list"] = betaList;
      if (oDss->count()) req.overrides["dss_list"] = dssList;
      if (oEve->count()) {
        json ranges = json::array();
        for (const auto& r : eveRanges) {
          const auto [lo, hi] = detail::parse_range(r);
          ranges.push_back({lo, hi});
        }
        req.overrides["eve_ranges"] = ranges;
      }
      if (oStep->count()) req.overrides["rate_step"] = rateStep;
      if (oMax->count()) req.overrides["rate_max"] = rateMax;
      const auto data = run_figure(req);
      write_dataset(outDir, data, figure_manifest(req, configPath, outDir, data));
      for (const auto& [name, _] : data) out << (std::filesystem::path(outDir) / name).string() << '\n';
      return kExitOk;
    }

    if (*eval) {
      const auto r = detail::evaluate(ea, detail::load_or_default(configPath), sim);
      out << ea.quantity << " = " << format_double(r.at("value").get<double>()) << '\n';
      out << r.dump() << '\n';
      return kExitOk;
    }

    if (*replay) {
      std::ifstream in(manifestPath);
      if (!in) throw UsageError("cannot open manifest '" + manifestPath + "'");
      json m;
      try {
        m = json::parse(in);
      } catch (const json::parse_error& e) {
        throw UsageError(std::string("manifest is not valid JSON: ") + e.what());
      }
      auto req = request_from_manifest(m);
      req.sim.workers = workers;
      const std::string dir = replayOut.empty() ? m.value("outputDir", std::string("out")) : replayOut;
      const auto data = run_figure(req);
      write_dataset(dir, data, figure_manifest(req, m.value("configPath", std::string()), dir, data));
      for (const auto& [name, _] : data) out << (std::filesystem::path(dir) / name).string() << '\n';
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidParameter& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace srt::cli
