#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "srt/channel_model.hpp"
#include "srt/errors.hpp"

namespace srt {

enum class Scheme { il, ic, icSdc };

inline std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::il: return "il";
    case Scheme::ic: return "ic";
    case Scheme::icSdc: return "ic-sdc";
  }
  return "?";
}

inline Scheme parse_scheme(std::string_view s) {
  if (s == "il") return Scheme::il;
  if (s == "ic") return Scheme::ic;
  if (s == "ic-sdc") return Scheme::icSdc;
  throw InvalidParameter("unknown scheme '" + std::string(s) + "' (expected il, ic or ic-sdc)");
}

// Unit-power information symbols of both base stations.
struct SignalModel {
  static constexpr double xMPower = 1.0;
  static constexpr double xSPower = 1.0;
};

// Instantaneous capacities [bit/s/Hz] for one scheme and one fading draw.
struct CapacityTuple {
  double cMacroMain = 0.0;
  double cSmallMain = 0.0;
  double cMacroEve = 0.0;
  double cSmallEve = 0.0;
  std::size_t selectedAntenna = 0;
};

struct SmallCellCapacities {
  double cSmallMain = 0.0;
  double cSmallEve = 0.0;
};

// Cancelation signal bookkeeping for the selected antenna.
struct IcSignalDesign {
  std::size_t selectedAntenna = 0;
  double instPower = 0.0;          // P_A  = |h_Sm|^2 / s2_Am * P_S
  double avgPower = 0.0;           // P̄_A = s2_Sm / s2_Am * P_S
  double weightMagnitudeSq = 0.0;  // |w_S|^2 = |h_Am|^2 / s2_Am
  double gSm = 0.0;                // (|h_Sm|^2 - s2_Sm) / s2_Am
};

struct FeasibilityReport {
  bool feasible = false;          // 0 <= P̄_A <= P_M for every antenna
  bool strictlyFeasible = false;  // P_M / P_S > s2_Sm / s2_Am for every antenna
  double smrBound = 0.0;          // min_i s2_{A_i m} / s2_Sm
  std::vector<double> margins;    // gammaM s2_{A_i m} - gammaS s2_Sm
};

namespace detail {

inline std::size_t argmax_lowest(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

// Relative slack under which a feasibility margin counts as exactly zero, so
// that beta set to the analytic bound is accepted despite round-off.
inline constexpr double kBoundarySlack = 1e-12;

}  // namespace detail

inline std::size_t il_select(const FadingDraw& draw) {
  if (draw.hAm2.empty()) throw InvalidParameter("il_select: empty antenna set");
  return detail::argmax_lowest(draw.hAm2);
}

// Interference-limited opportunistic antenna selection.
class IlScheme {
 public:
  explicit IlScheme(const SystemConfig& cfg) : gammaM_(cfg.gammaM()), gammaS_(cfg.gammaS()) {
    cfg.validate();
  }

  CapacityTuple capacities(const FadingDraw& d) const {
    const std::size_t a = il_select(d);
    CapacityTuple c;
    c.selectedAntenna = a;
    c.cMacroMain = std::log2(1.0 + gammaM_ * d.hAm2[a] / (gammaS_ * d.hSm2 + 1.0));
    c.cSmallMain = std::log2(1.0 + gammaS_ * d.hSs2 / (gammaM_ * d.hAs2[a] + 1.0));
    c.cMacroEve = std::log2(1.0 + gammaM_ * d.hAe2[a] / (gammaS_ * d.hSe2 + 1.0));
    c.cSmallEve = std::log2(1.0 + gammaS_ * d.hSe2 / (gammaM_ * d.hAe2[a] + 1.0));
    return c;
  }

 private:
  double gammaM_;
  double gammaS_;
};

inline CapacityTuple il_capacities(const FadingDraw& draw, const SystemConfig& cfg) {
  return IlScheme(cfg).capacities(draw);
}

inline FeasibilityReport ic_feasibility(const ChannelVariances& var, const SystemConfig& cfg) {
  const double gm = cfg.gammaM();
  const double gs = cfg.gammaS();
  FeasibilityReport r;
  r.feasible = true;
  r.strictlyFeasible = true;
  r.smrBound = std::numeric_limits<double>::infinity();
  for (double am : var.am) {
    double margin = gm * am - gs * var.sm;
    if (std::abs(margin) <= detail::kBoundarySlack * gm * am) margin = 0.0;
    r.margins.push_back(margin);
    r.smrBound = std::min(r.smrBound, am / var.sm);
    if (margin < 0.0 || std::isnan(margin)) r.feasible = false;
    if (!(margin > 0.0)) r.strictlyFeasible = false;
  }
  return r;
}

inline FeasibilityReport ic_feasibility(const Topology& topology, const SystemConfig& cfg) {
  return ic_feasibility(topology.variances(), cfg);
}

// Interference-canceled opportunistic antenna selection. Construction
// rejects configurations in which any antenna would need more average
// cancelation power than the macro budget.
class IcScheme {
 public:
  IcScheme(const ChannelVariances& var, const SystemConfig& cfg)
      : var_(var), gammaM_(cfg.gammaM()), gammaS_(cfg.gammaS()) {
    cfg.validate();
    const auto report = ic_feasibility(var_, cfg);
    if (!report.feasible)
      throw SchemeInfeasible("IC scheme infeasible: beta must not exceed " +
                             std::to_string(report.smrBound));
    coeff_.reserve(var_.am.size());
    for (std::size_t i = 0; i < var_.am.size(); ++i) coeff_.push_back(report.margins[i] / var_.am[i]);
  }

  IcScheme(const Topology& topology, const SystemConfig& cfg) : IcScheme(topology.variances(), cfg) {}

  // Effective macro SNR coefficient gammaM - gammaS s2_Sm / s2_{A_i m}.
  double coefficient(std::size_t i) const { return coeff_.at(i); }

  std::size_t select(const FadingDraw& d) const {
    if (d.hAm2.size() != coeff_.size()) throw InvalidParameter("ic_select: draw/topology size mismatch");
    std::size_t best = 0;
    double bestW = coeff_[0] * d.hAm2[0];
    for (std::size_t i = 1; i < coeff_.size(); ++i) {
      const double w = coeff_[i] * d.hAm2[i];
      if (w > bestW) {
        bestW = w;
        best = i;
      }
    }
    return best;
  }

  IcSignalDesign design(const FadingDraw& d, std::size_t a) const {
    const double am = var_.am.at(a);
    IcSignalDesign s;
    s.selectedAntenna = a;
    s.instPower = d.hSm2 / am * gammaS_;
    s.avgPower = var_.sm / am * gammaS_;
    s.weightMagnitudeSq = d.hAm2[a] / am;
    s.gSm = (d.hSm2 - var_.sm) / am;
    if (s.avgPower > gammaM_ * (1.0 + detail::kBoundarySlack))
      throw SchemeInfeasible("IC design: average cancelation power exceeds the macro budget");
    return s;
  }

  CapacityTuple capacities(const FadingDraw& d) const {
    const std::size_t a = select(d);
    const double am = var_.am[a];
    const double wS2 = d.hAm2[a] / am;
    const double gSm = (d.hSm2 - var_.sm) / am;
    const double interfGain = gammaM_ + gammaS_ * gSm;
    CapacityTuple c;
    c.selectedAntenna = a;
    c.cMacroMain = std::log2(1.0 + coeff_[a] * d.hAm2[a]);
    c.cSmallMain = std::log2(1.0 + gammaS_ * d.hSs2 * wS2 / (interfGain * d.hAs2[a] + 1.0));
    const double eveNum = coeff_[a] * am * d.hAe2[a];
    const double eveDen = gammaS_ * (d.hAe2[a] * d.hSm2 + d.hSe2 * d.hAm2[a]) + am;
    c.cMacroEve = std::log2(1.0 + eveNum / eveDen);
    c.cSmallEve = std::log2(1.0 + gammaS_ * d.hSe2 * wS2 / (interfGain * d.hAe2[a] + 1.0));
    return c;
  }

  // Selection diversity combining at both small-cell receivers: decode x_S
  // from whichever of the direct branch and the cancelation-signal branch
  // has the higher SINR, every other received term acting as interference.
  SmallCellCapacities sdc_small(const FadingDraw& d) const {
    const std::size_t a = select(d);
    const double am = var_.am[a];
    const double wS2 = d.hAm2[a] / am;
    const double instA = d.hSm2 / am * gammaS_;
    const double macroData = coeff_[a];  // P_M - P̄_A
    // Same expression as capacities(), so the direct branch rounds identically.
    const double gSm = (d.hSm2 - var_.sm) / am;
    const double interfGain = gammaM_ + gammaS_ * gSm;
    auto branch = [&](double hBs2, double hAnt2) {
      const double direct = gammaS_ * hBs2 * wS2 / (interfGain * hAnt2 + 1.0);
      const double cancel = instA * hAnt2 / (gammaS_ * hBs2 * wS2 + macroData * hAnt2 + 1.0);
      return std::log2(1.0 + std::max(direct, cancel));
    };
    return {branch(d.hSs2, d.hAs2[a]), branch(d.hSe2, d.hAe2[a])};
  }

  CapacityTuple sdc_capacities(const FadingDraw& d) const {
    CapacityTuple c = capacities(d);
    const auto s = sdc_small(d);
    c.cSmallMain = s.cSmallMain;
    c.cSmallEve = s.cSmallEve;
    return c;
  }

  const ChannelVariances& variances() const { return var_; }

 private:
  ChannelVariances var_;
  double gammaM_;
  double gammaS_;
  std::vector<double> coeff_;
};

inline std::size_t ic_select(const FadingDraw& draw, const Topology& topology, const SystemConfig& cfg) {
  return IcScheme(topology, cfg).select(draw);
}

inline IcSignalDesign ic_design(const FadingDraw& draw, std::size_t selected, const Topology& topology,
                                const SystemConfig& cfg) {
  return IcScheme(topology, cfg).design(draw, selected);
}

inline CapacityTuple ic_capacities(const FadingDraw& draw, const Topology& topology, const SystemConfig& cfg) {
  return IcScheme(topology, cfg).capacities(draw);
}

inline SmallCellCapacities ic_sdc_small_capacities(const FadingDraw& draw, const Topology& topology,
                                                   const SystemConfig& cfg) {
  return IcScheme(topology, cfg).sdc_small(draw);
}

// Complex-baseband form of the cancelation design: returns the signal x_A
// emitted on the selected antenna and the small-BS weight w_S. Only the
// channel phases enter here; every capacity depends on magnitudes alone.
struct CancelationPair {
  std::complex<double> xA;
  std::complex<double> wS;
};

inline CancelationPair ic_cancelation_pair(std::complex<double> hAm, std::complex<double> hSm, double varAm,
                                           double powerS, std::complex<double> xS) {
  const double sigma = std::sqrt(varAm);
  const auto unitAm = std::polar(1.0, -std::arg(hAm));
  const auto unitSm = std::polar(1.0, -std::arg(hSm));
  return {-std::abs(hSm) * unitAm * std::sqrt(powerS) * xS / sigma, std::abs(hAm) * unitSm / sigma};
}

}  // namespace srt
