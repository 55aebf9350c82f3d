#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "srt/errors.hpp"
#include "srt/rng.hpp"

namespace srt {

// One radio link: distance [m], path-loss exponent and small-scale fading
// power E|g|^2. The squared channel magnitude |h|^2 = d^-alpha |g|^2 is
// exponentially distributed with mean largeScaleVar().
struct LinkSpec {
  double distance = 1.0;
  double pathLossExp = 1.0;
  double smallScaleVar = 1.0;

  void validate(const std::string& name = "link") const {
    if (!(distance > 0.0) || !std::isfinite(distance))
      throw InvalidParameter(name + ": distance must be positive and finite");
    if (!(pathLossExp > 0.0) || !std::isfinite(pathLossExp))
      throw InvalidParameter(name + ": path-loss exponent must be positive and finite");
    if (!(smallScaleVar > 0.0) || !std::isfinite(smallScaleVar))
      throw InvalidParameter(name + ": fading variance must be positive and finite");
  }

  double largeScaleVar() const {
    validate();
    const double v = std::pow(distance, -pathLossExp) * smallScaleVar;
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidParameter("link: large-scale variance is not a positive finite number");
    return v;
  }

  bool operator==(const LinkSpec&) const = default;
};

inline double large_scale_variance(const LinkSpec& link) { return link.largeScaleVar(); }

// Mean squared channel magnitudes of every link in a topology.
struct ChannelVariances {
  std::vector<double> am;  // antenna i -> macro user
  std::vector<double> as;  // antenna i -> small user
  std::vector<double> ae;  // antenna i -> eavesdropper
  double sm = 0.0;         // small BS -> macro user
  double ss = 0.0;         // small BS -> small user
  double se = 0.0;         // small BS -> eavesdropper

  std::size_t antennaCount() const { return am.size(); }
};

namespace detail {
inline bool all_equal(std::span<const double> v) {
  for (double x : v)
    if (x != v.front()) return false;
  return true;
}
}  // namespace detail

// Network geometry: N distributed macro antennas, one small base station, the
// two legitimate users and the eavesdropper.
struct Topology {
  std::vector<LinkSpec> antennaToMu;
  std::vector<LinkSpec> antennaToSu;
  std::vector<LinkSpec> antennaToEve;
  LinkSpec sbsToMu;
  LinkSpec sbsToSu;
  LinkSpec sbsToEve;

  std::size_t antennaCount() const { return antennaToMu.size(); }

  void validate() const {
    if (antennaToMu.empty()) throw InvalidParameter("topology: at least one antenna is required");
    if (antennaToSu.size() != antennaToMu.size() || antennaToEve.size() != antennaToMu.size())
      throw InvalidParameter("topology: antenna link sequences differ in length");
    for (std::size_t i = 0; i < antennaToMu.size(); ++i) {
      antennaToMu[i].validate("antenna_mu[" + std::to_string(i) + "]");
      antennaToSu[i].validate("antenna_su[" + std::to_string(i) + "]");
      antennaToEve[i].validate("antenna_eve[" + std::to_string(i) + "]");
    }
    sbsToMu.validate("sbs_mu");
    sbsToSu.validate("sbs_su");
    sbsToEve.validate("sbs_eve");
  }

  ChannelVariances variances() const {
    validate();
    ChannelVariances v;
    const auto n = antennaCount();
    v.am.reserve(n);
    v.as.reserve(n);
    v.ae.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      v.am.push_back(antennaToMu[i].largeScaleVar());
      v.as.push_back(antennaToSu[i].largeScaleVar());
      v.ae.push_back(antennaToEve[i].largeScaleVar());
    }
    v.sm = sbsToMu.largeScaleVar();
    v.ss = sbsToSu.largeScaleVar();
    v.se = sbsToEve.largeScaleVar();
    return v;
  }

  // True iff, within each antenna sequence, all large-scale variances agree.
  bool iid() const {
    const auto v = variances();
    return detail::all_equal(v.am) && detail::all_equal(v.as) && detail::all_equal(v.ae);
  }

  bool operator==(const Topology&) const = default;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Scalar operating point. Noise power is normalized to one, so transmit
// powers and SNRs coincide numerically: P_M = gammaM(), P_S = gammaS().
struct SystemConfig {
  double gammaM_dB = 70.0;
  double smr = 0.1;  // beta = P_S / P_M
  double rateMacroOverall = 3.0;
  double rateSmallOverall = 3.0;
  double rateMacroSecrecy = 1.0;
  double rateSmallSecrecy = 1.0;

  double gammaM() const { return db_to_linear(gammaM_dB); }
  double gammaS() const { return smr * gammaM(); }

  void validate() const {
    if (std::isnan(gammaM_dB) || gammaM_dB == HUGE_VAL)
      throw InvalidParameter("config: gamma_m_db must be a number below +inf");
    if (!(smr >= 0.0) || !std::isfinite(smr))
      throw InvalidParameter("config: beta must be non-negative and finite");
    if (!(rateMacroSecrecy >= 0.0) || !(rateMacroOverall >= rateMacroSecrecy))
      throw InvalidParameter("config: macro rates must satisfy R_o >= R_s >= 0");
    if (!(rateSmallSecrecy >= 0.0) || !(rateSmallOverall >= rateSmallSecrecy))
      throw InvalidParameter("config: small-cell rates must satisfy R_o >= R_s >= 0");
  }

  bool operator==(const SystemConfig&) const = default;
};

// One Monte Carlo realization of every squared channel magnitude.
struct FadingDraw {
  std::vector<double> hAm2;
  std::vector<double> hAs2;
  std::vector<double> hAe2;
  double hSm2 = 0.0;
  double hSs2 = 0.0;
  double hSe2 = 0.0;

  std::size_t antennaCount() const { return hAm2.size(); }
};

// Fills `out` in a fixed consumption order: per antenna (mu, su, eve), then
// the three small-BS links. Each entry is a unit exponential scaled by the
// link variance.
inline void sample_fading(const ChannelVariances& var, TrialRng& rng, FadingDraw& out) {
  const auto n = var.antennaCount();
  out.hAm2.resize(n);
  out.hAs2.resize(n);
  out.hAe2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.hAm2[i] = var.am[i] * rng.unit_exponential();
    out.hAs2[i] = var.as[i] * rng.unit_exponential();
    out.hAe2[i] = var.ae[i] * rng.unit_exponential();
  }
  out.hSm2 = var.sm * rng.unit_exponential();
  out.hSs2 = var.ss * rng.unit_exponential();
  out.hSe2 = var.se * rng.unit_exponential();
}

inline FadingDraw sample_fading(const Topology& topology, TrialRng& rng) {
  FadingDraw draw;
  sample_fading(topology.variances(), rng, draw);
  return draw;
}

// Default geometry: every link 300 m except the small cell's own link
// (dSs); exponent 2.5 on main and wiretap links, 3.5 on the two
// cross-interference links; unit small-scale fading power.
inline Topology default_topology(std::size_t n = 16, double dSs = 30.0) {
  if (n < 1) throw InvalidParameter("default_topology: n must be at least 1");
  constexpr double kDistance = 300.0;
  constexpr double kMainExp = 2.5;
  constexpr double kCrossExp = 3.5;
  Topology t;
  t.antennaToMu.assign(n, LinkSpec{kDistance, kMainExp, 1.0});
  t.antennaToSu.assign(n, LinkSpec{kDistance, kCrossExp, 1.0});
  t.antennaToEve.assign(n, LinkSpec{kDistance, kMainExp, 1.0});
  t.sbsToMu = LinkSpec{kDistance, kCrossExp, 1.0};
  t.sbsToSu = LinkSpec{dSs, kMainExp, 1.0};
  t.sbsToEve = LinkSpec{kDistance, kMainExp, 1.0};
  t.validate();
  return t;
}

}  // namespace srt
