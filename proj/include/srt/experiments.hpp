#pragma once

// Rate sweeps, IOP minimization and the parameter sweeps built on them, for
// both the analytic and the Monte Carlo backend.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "srt/analytics.hpp"
#include "srt/channel_model.hpp"
#include "srt/errors.hpp"
#include "srt/montecarlo.hpp"
#include "srt/schemes.hpp"

namespace srt {

enum class Cell { macro, small };
enum class Backend { analytic, montecarlo };

inline std::string_view to_string(Cell c) { return c == Cell::macro ? "macro" : "small"; }
inline std::string_view to_string(Backend b) { return b == Backend::analytic ? "analytic" : "mc"; }

inline Cell parse_cell(std::string_view s) {
  if (s == "macro") return Cell::macro;
  if (s == "small") return Cell::small;
  throw InvalidParameter("unknown cell '" + std::string(s) + "'");
}

inline Backend parse_backend(std::string_view s) {
  if (s == "analytic") return Backend::analytic;
  if (s == "mc" || s == "montecarlo") return Backend::montecarlo;
  throw InvalidParameter("unknown backend '" + std::string(s) + "'");
}

inline constexpr double kNoStdErr = std::numeric_limits<double>::quiet_NaN();

struct SrtPoint {
  double rateOverall = 0.0;
  double outage = 0.0;
  double intercept = 0.0;
  Backend backend = Backend::analytic;
  double outageStdErr = kNoStdErr;
  double interceptStdErr = kNoStdErr;
  std::uint64_t trials = 0;
};

struct IopPoint {
  double sweepVar = 0.0;
  double iop = 0.0;
  double minimizingRate = 0.0;
  Backend backend = Backend::analytic;
};

// Normalized sum IOP: the mean of the two cells' minimized IOPs.
struct SumIopPoint {
  double beta = 0.0;
  double iop = 0.0;
  IopPoint macro;
  IopPoint small;
};

// Linear grid lo, lo + step, ..., hi (hi included when it lies on the grid).
inline std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi))
    throw InvalidParameter("rate grid: need lo <= hi and step > 0");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> g;
  g.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) g.push_back(std::min(hi, lo + static_cast<double>(k) * step));
  return g;
}

// Overall rates from the secrecy rate up to 10 bit/s/Hz in steps of 0.05.
inline std::vector<double> default_rate_grid(double secrecyRate = 1.0, double max = 10.0, double step = 0.05) {
  return linear_grid(secrecyRate, max, step);
}

namespace detail {

inline SystemConfig with_overall_rate(SystemConfig cfg, double rate) {
  cfg.rateMacroOverall = rate;
  cfg.rateSmallOverall = rate;
  return cfg;
}

inline double cell_secrecy_rate(const SystemConfig& cfg, Cell cell) {
  return cell == Cell::macro ? cfg.rateMacroSecrecy : cfg.rateSmallSecrecy;
}

inline std::pair<double, double> analytic_pair(Scheme scheme, Cell cell, const ChannelVariances& v,
                                               const SystemConfig& cfg) {
  if (scheme == Scheme::icSdc) throw InvalidParameter("no analytic backend for the SDC variant");
  if (scheme == Scheme::il) {
    if (cell == Cell::macro) return {il_macro_outage(v, cfg), il_macro_intercept(v, cfg)};
    return {il_small_outage(v, cfg), il_small_intercept(v, cfg)};
  }
  if (cell == Cell::macro) return {ic_macro_outage(v, cfg), ic_macro_intercept(v, cfg, IcForm::closed).probability};
  return {ic_small_outage(v, cfg, IcForm::integral).probability,
          ic_small_intercept(v, cfg, IcForm::integral).probability};
}

inline void require_grid(const std::vector<double>& grid, const SystemConfig& cfg, Cell cell) {
  if (grid.empty()) throw InvalidParameter("rate grid must not be empty");
  require_ascending(grid, "overall");
  if (grid.front() < cell_secrecy_rate(cfg, cell))
    throw InvalidParameter("rate grid must not go below the secrecy rate");
}

}  // namespace detail

inline std::vector<SrtPoint> analytic_srt_curve(Scheme scheme, Cell cell, const Topology& topology,
                                                const SystemConfig& cfg, const std::vector<double>& grid) {
  detail::require_grid(grid, cfg, cell);
  const auto v = topology.variances();
  std::vector<SrtPoint> out;
  out.reserve(grid.size());
  for (double r : grid) {
    const auto [o, i] = detail::analytic_pair(scheme, cell, v, detail::with_overall_rate(cfg, r));
    out.push_back({r, o, i, Backend::analytic, kNoStdErr, kNoStdErr, 0});
  }
  return out;
}

// Both cells' Monte Carlo curves from a single pass over the draws.
struct SrtCurves {
  std::vector<SrtPoint> macro;
  std::vector<SrtPoint> small;

  const std::vector<SrtPoint>& of(Cell c) const { return c == Cell::macro ? macro : small; }
};

inline SrtCurves montecarlo_srt_curves(Scheme scheme, const Topology& topology, const SystemConfig& cfg,
                                       const std::vector<double>& grid, const SimulationOptions& opt) {
  detail::require_grid(grid, cfg, Cell::macro);
  detail::require_grid(grid, cfg, Cell::small);
  const auto g = estimate_srt_grid(scheme, topology, cfg, RateGrids{grid, grid}, opt);
  SrtCurves out;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    out.macro.push_back({grid[j], g.macroOutage[j].value, g.macroIntercept[j].value, Backend::montecarlo,
                         g.macroOutage[j].stdErr, g.macroIntercept[j].stdErr, opt.trials});
    out.small.push_back({grid[j], g.smallOutage[j].value, g.smallIntercept[j].value, Backend::montecarlo,
                         g.smallOutage[j].stdErr, g.smallIntercept[j].stdErr, opt.trials});
  }
  return out;
}

inline std::vector<SrtPoint> srt_curve(Scheme scheme, Cell cell, const Topology& topology, const SystemConfig& cfg,
                                       const std::vector<double>& grid, Backend backend,
                                       const SimulationOptions& opt = {}) {
  if (backend == Backend::analytic) return analytic_srt_curve(scheme, cell, topology, cfg, grid);
  return montecarlo_srt_curves(scheme, topology, cfg, grid, opt).of(cell);
}

// Grid-search minimum of (outage + intercept) / 2; ties go to the lowest rate.
inline IopPoint min_iop(const std::vector<SrtPoint>& curve, double sweepVar = 0.0) {
  if (curve.empty()) throw InvalidParameter("min_iop: empty curve");
  IopPoint best;
  best.sweepVar = sweepVar;
  best.iop = std::numeric_limits<double>::infinity();
  for (const auto& p : curve) {
    const double iop = 0.5 * (p.outage + p.intercept);
    if (iop < best.iop) {
      best.iop = iop;
      best.minimizingRate = p.rateOverall;
      best.backend = p.backend;
    }
  }
  return best;
}

inline IopPoint min_iop(Scheme scheme, Cell cell, const Topology& topology, const SystemConfig& cfg,
                        const std::vector<double>& grid, Backend backend = Backend::analytic,
                        const SimulationOptions& opt = {}) {
  return min_iop(srt_curve(scheme, cell, topology, cfg, grid, backend, opt));
}

// Minimized IOP of both cells at one operating point.
struct CellIops {
  IopPoint macro;
  IopPoint small;
};

inline CellIops min_iops(Scheme scheme, const Topology& topology, const SystemConfig& cfg,
                         const std::vector<double>& grid, Backend backend, const SimulationOptions& opt) {
  if (backend == Backend::analytic)
    return {min_iop(analytic_srt_curve(scheme, Cell::macro, topology, cfg, grid)),
            min_iop(analytic_srt_curve(scheme, Cell::small, topology, cfg, grid))};
  const auto c = montecarlo_srt_curves(scheme, topology, cfg, grid, opt);
  return {min_iop(c.macro), min_iop(c.small)};
}

// Minimized IOP of one cell against gammaM [dB].
inline std::vector<IopPoint> sweep_snr(Scheme scheme, Cell cell, const Topology& topology, const SystemConfig& cfg,
                                       const std::vector<double>& snrDb, const std::vector<double>& grid,
                                       Backend backend = Backend::analytic, const SimulationOptions& opt = {}) {
  std::vector<IopPoint> out;
  for (double db : snrDb) {
    SystemConfig c = cfg;
    c.gammaM_dB = db;
    auto p = min_iop(scheme, cell, topology, c, grid, backend, opt);
    p.sweepVar = db;
    out.push_back(p);
  }
  return out;
}

using TopologyBuilder = std::function<Topology(std::size_t)>;

// Minimized IOP of one cell against the number of antennas.
inline std::vector<IopPoint> sweep_n(Scheme scheme, Cell cell, const TopologyBuilder& build, const SystemConfig& cfg,
                                     const std::vector<std::size_t>& nValues, const std::vector<double>& grid,
                                     Backend backend = Backend::analytic, const SimulationOptions& opt = {}) {
  std::vector<IopPoint> out;
  for (std::size_t n : nValues) {
    if (n < 1) throw InvalidParameter("sweep_n: antenna counts must be at least 1");
    auto p = min_iop(scheme, cell, build(n), cfg, grid, backend, opt);
    p.sweepVar = static_cast<double>(n);
    out.push_back(p);
  }
  return out;
}

// Normalized sum SRT with the eavesdropper distances redrawn every trial.
inline std::vector<SrtPoint> random_eve_sum_srt(Scheme scheme, const Topology& topology, const SystemConfig& cfg,
                                                EveDistanceRange range, const std::vector<double>& grid,
                                                SimulationOptions opt) {
  range.validate();
  opt.eveRange = range;
  const auto c = montecarlo_srt_curves(scheme, topology, cfg, grid, opt);
  std::vector<SrtPoint> out;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto& m = c.macro[j];
    const auto& s = c.small[j];
    SrtPoint p;
    p.rateOverall = grid[j];
    p.outage = 0.5 * (m.outage + s.outage);
    p.intercept = 0.5 * (m.intercept + s.intercept);
    p.backend = Backend::montecarlo;
    // The two cells share draws; report the conservative (fully correlated) bound.
    p.outageStdErr = 0.5 * (m.outageStdErr + s.outageStdErr);
    p.interceptStdErr = 0.5 * (m.interceptStdErr + s.interceptStdErr);
    p.trials = opt.trials;
    out.push_back(p);
  }
  return out;
}

// Normalized sum IOP against the power ratio beta.
inline std::vector<SumIopPoint> sum_iop_vs_smr(Scheme scheme, const Topology& topology, const SystemConfig& cfg,
                                               const std::vector<double>& betas, const std::vector<double>& grid,
                                               Backend backend = Backend::analytic,
                                               const SimulationOptions& opt = {}) {
  std::vector<SumIopPoint> out;
  for (double beta : betas) {
    if (!(beta > 0.0)) throw InvalidParameter("sum_iop_vs_smr: beta must be positive");
    SystemConfig c = cfg;
    c.smr = beta;
    if (scheme != Scheme::il && !ic_feasibility(topology, c).feasible)
      throw SchemeInfeasible("sum_iop_vs_smr: beta " + std::to_string(beta) + " exceeds the cancelation bound");
    auto iops = min_iops(scheme, topology, c, grid, backend, opt);
    iops.macro.sweepVar = beta;
    iops.small.sweepVar = beta;
    out.push_back({beta, 0.5 * (iops.macro.iop + iops.small.iop), iops.macro, iops.small});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Theory against simulation at one operating point.

struct ValidationRow {
  Scheme scheme = Scheme::il;
  Metric metric = Metric::macroOutage;
  bool exactForm = true;  // false: derived under a high-SNR limit
  double analytic = 0.0;
  ProbabilityEstimate estimate;
  double zScore = 0.0;
  double relativeError = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  bool pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
};

inline constexpr double kZTolerance = 3.0;
inline constexpr double kRegimeSlack = 0.05;

// Exact forms must lie within kZTolerance standard errors; limit forms
// within max(kZTolerance standard errors, kRegimeSlack relative).
inline bool agrees(double analytic, const ProbabilityEstimate& e, bool exactForm) {
  const double z = e.z_score(analytic);
  if (exactForm) return std::abs(z) <= kZTolerance;
  const double tol = std::max(kZTolerance * e.stdErr, kRegimeSlack * analytic);
  return std::abs(e.value - analytic) <= tol;
}

// Analytic values come from `theory`, simulations from `simulated` (the two
// differ only in negative-control runs).
inline ValidationReport validate_operating_point(const Topology& theory, const Topology& simulated,
                                                 const SystemConfig& cfg, const SimulationOptions& opt) {
  ValidationReport report;
  for (Scheme scheme : {Scheme::il, Scheme::ic}) {
    const auto m = analytic_metrics(scheme, theory.variances(), cfg);
    const auto est = estimate_all(scheme, simulated, cfg, opt);
    const std::array<double, 4> values = {m.macroOutage, m.smallOutage, m.macroIntercept, m.smallIntercept};
    for (std::size_t k = 0; k < kAllMetrics.size(); ++k) {
      ValidationRow row;
      row.scheme = scheme;
      row.metric = kAllMetrics[k];
      row.exactForm = scheme == Scheme::il || row.metric == Metric::macroOutage;
      row.analytic = values[k];
      row.estimate = est.of(row.metric);
      row.zScore = row.estimate.z_score(row.analytic);
      row.relativeError = row.analytic > 0.0 ? std::abs(row.estimate.value - row.analytic) / row.analytic
                                             : (row.estimate.value == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
      row.pass = agrees(row.analytic, row.estimate, row.exactForm);
      report.rows.push_back(row);
    }
  }
  return report;
}

}  // namespace srt
