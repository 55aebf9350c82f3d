#pragma once

// Monte Carlo estimation of outage and intercept probabilities from the
// exact instantaneous capacities of each scheme.
//
// Trial t always consumes the stream TrialRng(seed, t). Trials are grouped in
// fixed chunks that workers claim from a shared counter; every accumulator is
// an integer count, so the reduction is exact and results do not depend on
// the number of workers.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "srt/channel_model.hpp"
#include "srt/errors.hpp"
#include "srt/rng.hpp"
#include "srt/schemes.hpp"

namespace srt {

enum class Metric { macroOutage, smallOutage, macroIntercept, smallIntercept };

inline constexpr std::array<Metric, 4> kAllMetrics = {Metric::macroOutage, Metric::smallOutage,
                                                      Metric::macroIntercept, Metric::smallIntercept};

inline std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::macroOutage: return "macro-outage";
    case Metric::smallOutage: return "small-outage";
    case Metric::macroIntercept: return "macro-intercept";
    case Metric::smallIntercept: return "small-intercept";
  }
  return "?";
}

inline Metric parse_metric(std::string_view s) {
  for (Metric m : kAllMetrics)
    if (to_string(m) == s) return m;
  throw InvalidParameter("unknown metric '" + std::string(s) + "'");
}

struct ProbabilityEstimate {
  double value = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t count = 0;
  double stdErr = 0.0;  // sqrt(value (1 - value) / trials)
  std::uint64_t seed = 0;
  double wilsonLow = 0.0;  // 95% Wilson score interval
  double wilsonHigh = 0.0;
  bool lowCount = false;  // fewer than kLowCount events (or non-events)

  static constexpr std::uint64_t kLowCount = 10;

  static ProbabilityEstimate from_count(std::uint64_t count, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw InvalidParameter("estimate: trials must be at least 1");
    ProbabilityEstimate e;
    const double n = static_cast<double>(trials);
    e.count = count;
    e.trials = trials;
    e.seed = seed;
    e.value = static_cast<double>(count) / n;
    e.stdErr = std::sqrt(e.value * (1.0 - e.value) / n);
    constexpr double z = 1.959963984540054;
    const double denom = 1.0 + z * z / n;
    const double centre = (e.value + z * z / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(e.value * (1.0 - e.value) / n + z * z / (4.0 * n * n));
    e.wilsonLow = count == 0 ? 0.0 : std::max(0.0, centre - half);
    e.wilsonHigh = count == trials ? 1.0 : std::min(1.0, centre + half);
    e.lowCount = std::min(count, trials - count) < kLowCount;
    return e;
  }

  // Deviation from a reference probability p in units of the binomial
  // standard error under p.
  double z_score(double p) const {
    const double sd = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    if (sd == 0.0) return value == p ? 0.0 : std::numeric_limits<double>::infinity();
    return (value - p) / sd;
  }
};

// Eavesdropper distances redrawn uniformly per trial, independently for every
// antenna link and the small-BS link.
struct EveDistanceRange {
  double low = 0.0;
  double high = 0.0;

  void validate() const {
    if (!(low > 0.0) || !(high >= low) || !std::isfinite(high))
      throw InvalidParameter("eavesdropper distance range must satisfy 0 < low <= high < inf");
  }
};

// Instantaneous capacities of one scheme at one operating point.
class CapacityModel {
 public:
  CapacityModel(Scheme scheme, const ChannelVariances& var, const SystemConfig& cfg) : scheme_(scheme) {
    if (scheme == Scheme::il)
      il_.emplace(cfg);
    else
      ic_.emplace(var, cfg);
  }

  CapacityTuple operator()(const FadingDraw& d) const {
    switch (scheme_) {
      case Scheme::il: return il_->capacities(d);
      case Scheme::ic: return ic_->capacities(d);
      case Scheme::icSdc: return ic_->sdc_capacities(d);
    }
    return {};
  }

 private:
  Scheme scheme_;
  std::optional<IlScheme> il_;
  std::optional<IcScheme> ic_;
};

inline unsigned resolve_workers(unsigned workers) {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs body(trial, acc) for every trial in [0, trials). Each worker owns one
// accumulator created by make(); they are merged with merge(into, from).
template <class Acc, class Make, class Body, class Merge>
Acc run_trials(std::uint64_t trials, unsigned workers, Make&& make, Body&& body, Merge&& merge) {
  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), std::max<std::uint64_t>(chunks, 1)));
  std::atomic<std::uint64_t> next{0};
  std::vector<Acc> accs;
  accs.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) accs.push_back(make());
  auto work = [&](Acc& acc) {
    for (std::uint64_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
      const std::uint64_t end = std::min(trials, (c + 1) * kChunk);
      for (std::uint64_t t = c * kChunk; t < end; ++t) body(t, acc);
    }
  };
  if (workers == 1) {
    work(accs[0]);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          work(accs[w]);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          next.store(chunks);
        }
      });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  for (unsigned w = 1; w < workers; ++w) merge(accs[0], accs[w]);
  return std::move(accs[0]);
}

// Overall-rate grids for the two cells; the secrecy rates come from the
// SystemConfig. Grids must be ascending.
struct RateGrids {
  std::vector<double> macro;
  std::vector<double> small;
};

// Per-rate estimates of the four metrics over one shared set of draws.
struct GridEstimate {
  RateGrids rates;
  std::vector<ProbabilityEstimate> macroOutage;
  std::vector<ProbabilityEstimate> smallOutage;
  std::vector<ProbabilityEstimate> macroIntercept;
  std::vector<ProbabilityEstimate> smallIntercept;

  const std::vector<ProbabilityEstimate>& of(Metric m) const {
    switch (m) {
      case Metric::macroOutage: return macroOutage;
      case Metric::smallOutage: return smallOutage;
      case Metric::macroIntercept: return macroIntercept;
      case Metric::smallIntercept: return smallIntercept;
    }
    return macroOutage;
  }
};

struct SimulationOptions {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  unsigned workers = 0;  // 0: hardware concurrency
  std::optional<EveDistanceRange> eveRange;
};

namespace detail {

struct GridHistograms {
  // Position of each trial's capacity within the rate grid, as histograms.
  std::vector<std::uint64_t> macroOut, smallOut, macroInt, smallInt;
};

inline void require_ascending(std::span<const double> grid, std::string_view name) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0)
      throw InvalidParameter(std::string(name) + " rate grid entries must be finite and non-negative");
    if (i > 0 && grid[i] < grid[i - 1]) throw InvalidParameter(std::string(name) + " rate grid must be ascending");
  }
}

// outage[j] counts trials with C < r_j; intercept[j] trials with C_e > r_j - R^s.
inline std::vector<ProbabilityEstimate> cumulative_from_below(const std::vector<std::uint64_t>& hist,
                                                              std::uint64_t trials, std::uint64_t seed) {
  std::vector<ProbabilityEstimate> out;
  std::uint64_t run = 0;
  for (std::size_t j = 0; j + 1 < hist.size(); ++j) {
    run += hist[j];
    out.push_back(ProbabilityEstimate::from_count(run, trials, seed));
  }
  return out;
}

inline std::vector<ProbabilityEstimate> cumulative_from_above(const std::vector<std::uint64_t>& hist,
                                                              std::uint64_t trials, std::uint64_t seed) {
  std::vector<ProbabilityEstimate> out(hist.size() - 1);
  std::uint64_t run = 0;
  for (std::size_t j = hist.size() - 1; j-- > 0;) {
    run += hist[j + 1];
    out[j] = ProbabilityEstimate::from_count(run, trials, seed);
  }
  return out;
}

}  // namespace detail

// One pass of `opt.trials` draws evaluating every metric at every grid rate.
inline GridEstimate estimate_srt_grid(Scheme scheme, const Topology& topology, const SystemConfig& cfg,
                                      const RateGrids& grids, const SimulationOptions& opt) {
  cfg.validate();
  if (opt.trials < 1) throw InvalidParameter("estimate: trials must be at least 1");
  detail::require_ascending(grids.macro, "macro");
  detail::require_ascending(grids.small, "small-cell");
  const ChannelVariances var = topology.variances();
  const CapacityModel model(scheme, var, cfg);
  const double rsM = cfg.rateMacroSecrecy;
  const double rsS = cfg.rateSmallSecrecy;
  const std::size_t gm = grids.macro.size();
  const std::size_t gs = grids.small.size();

  ChannelVariances drawVar = var;
  std::vector<LinkSpec> eveLinks;
  LinkSpec sbsEve;
  if (opt.eveRange) {
    opt.eveRange->validate();
    std::fill(drawVar.ae.begin(), drawVar.ae.end(), 1.0);
    drawVar.se = 1.0;
    eveLinks = topology.antennaToEve;
    sbsEve = topology.sbsToEve;
  }

  struct Acc {
    detail::GridHistograms h;
    FadingDraw draw;
  };
  auto make = [&] {
    Acc a;
    a.h.macroOut.assign(gm + 1, 0);
    a.h.macroInt.assign(gm + 1, 0);
    a.h.smallOut.assign(gs + 1, 0);
    a.h.smallInt.assign(gs + 1, 0);
    return a;
  };
  auto body = [&](std::uint64_t t, Acc& a) {
    TrialRng rng(opt.seed, t);
    sample_fading(drawVar, rng, a.draw);
    if (opt.eveRange) {
      // Fading first, then distances: a degenerate range reproduces the
      // fixed-distance draw exactly.
      for (std::size_t i = 0; i < eveLinks.size(); ++i) {
        LinkSpec l = eveLinks[i];
        l.distance = rng.uniform(opt.eveRange->low, opt.eveRange->high);
        a.draw.hAe2[i] *= l.largeScaleVar();
      }
      LinkSpec l = sbsEve;
      l.distance = rng.uniform(opt.eveRange->low, opt.eveRange->high);
      a.draw.hSe2 *= l.largeScaleVar();
    }
    const CapacityTuple c = model(a.draw);
    auto pos = [](const std::vector<double>& g, auto pred) {
      return static_cast<std::size_t>(std::partition_point(g.begin(), g.end(), pred) - g.begin());
    };
    ++a.h.macroOut[pos(grids.macro, [&](double r) { return r <= c.cMacroMain; })];
    ++a.h.smallOut[pos(grids.small, [&](double r) { return r <= c.cSmallMain; })];
    ++a.h.macroInt[pos(grids.macro, [&](double r) { return r - rsM < c.cMacroEve; })];
    ++a.h.smallInt[pos(grids.small, [&](double r) { return r - rsS < c.cSmallEve; })];
  };
  auto merge = [](Acc& into, const Acc& from) {
    auto add = [](std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y) {
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    };
    add(into.h.macroOut, from.h.macroOut);
    add(into.h.smallOut, from.h.smallOut);
    add(into.h.macroInt, from.h.macroInt);
    add(into.h.smallInt, from.h.smallInt);
  };
  const Acc acc = run_trials<Acc>(opt.trials, opt.workers, make, body, merge);

  GridEstimate out;
  out.rates = grids;
  out.macroOutage = detail::cumulative_from_below(acc.h.macroOut, opt.trials, opt.seed);
  out.smallOutage = detail::cumulative_from_below(acc.h.smallOut, opt.trials, opt.seed);
  out.macroIntercept = detail::cumulative_from_above(acc.h.macroInt, opt.trials, opt.seed);
  out.smallIntercept = detail::cumulative_from_above(acc.h.smallInt, opt.trials, opt.seed);
  return out;
}

// The four metrics at the rates of `cfg`.
struct EstimateSet {
  ProbabilityEstimate macroOutage;
  ProbabilityEstimate smallOutage;
  ProbabilityEstimate macroIntercept;
  ProbabilityEstimate smallIntercept;

  const ProbabilityEstimate& of(Metric m) const {
    switch (m) {
      case Metric::macroOutage: return macroOutage;
      case Metric::smallOutage: return smallOutage;
      case Metric::macroIntercept: return macroIntercept;
      case Metric::smallIntercept: return smallIntercept;
    }
    return macroOutage;
  }
};

inline EstimateSet estimate_all(Scheme scheme, const Topology& topology, const SystemConfig& cfg,
                                const SimulationOptions& opt) {
  const auto g = estimate_srt_grid(scheme, topology, cfg,
                                   RateGrids{{cfg.rateMacroOverall}, {cfg.rateSmallOverall}}, opt);
  return {g.macroOutage[0], g.smallOutage[0], g.macroIntercept[0], g.smallIntercept[0]};
}

inline ProbabilityEstimate estimate(Scheme scheme, Metric metric, const Topology& topology, const SystemConfig& cfg,
                                    std::uint64_t trials, std::uint64_t seed, unsigned workers = 1) {
  SimulationOptions opt;
  opt.trials = trials;
  opt.seed = seed;
  opt.workers = workers;
  return estimate_all(scheme, topology, cfg, opt).of(metric);
}

struct EstimateRequest {
  Scheme scheme = Scheme::il;
  Metric metric = Metric::macroOutage;
  Topology topology;
  SystemConfig cfg;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
};

inline std::vector<ProbabilityEstimate> estimate_batch(std::span<const EstimateRequest> requests, unsigned workers) {
  if (workers < 1) throw InvalidParameter("estimate_batch: workers must be at least 1");
  std::vector<ProbabilityEstimate> out;
  out.reserve(requests.size());
  for (const auto& r : requests) out.push_back(estimate(r.scheme, r.metric, r.topology, r.cfg, r.trials, r.seed, workers));
  return out;
}

// Empirical frequency with which each antenna is chosen by the scheme.
inline std::vector<ProbabilityEstimate> selection_frequencies(Scheme scheme, const Topology& topology,
                                                              const SystemConfig& cfg, const SimulationOptions& opt) {
  const ChannelVariances var = topology.variances();
  const CapacityModel model(scheme, var, cfg);
  const std::size_t n = var.antennaCount();
  struct Acc {
    std::vector<std::uint64_t> counts;
    FadingDraw draw;
  };
  auto make = [&] { return Acc{std::vector<std::uint64_t>(n, 0), {}}; };
  auto body = [&](std::uint64_t t, Acc& a) {
    TrialRng rng(opt.seed, t);
    sample_fading(var, rng, a.draw);
    ++a.counts[scheme == Scheme::il ? il_select(a.draw) : model(a.draw).selectedAntenna];
  };
  auto merge = [](Acc& into, const Acc& from) {
    for (std::size_t i = 0; i < into.counts.size(); ++i) into.counts[i] += from.counts[i];
  };
  const Acc acc = run_trials<Acc>(opt.trials, opt.workers, make, body, merge);
  std::vector<ProbabilityEstimate> out;
  for (auto c : acc.counts) out.push_back(ProbabilityEstimate::from_count(c, opt.trials, opt.seed));
  return out;
}

}  // namespace srt
