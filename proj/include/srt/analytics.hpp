#pragma once

// Closed-form outage and intercept probabilities of both schemes over
// Rayleigh fading, together with the quadratures their integrals need.
//
// Alternating subset/binomial sums are accumulated in long double. When the
// magnitude of the accumulated terms leaves fewer than ~6 significant digits
// in the result (tiny probabilities at high SNR, large N), the same
// probability is evaluated by quadrature of its defining expectation instead,
// which is cancellation-free.

#include <cfloat>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srt/channel_model.hpp"
#include "srt/errors.hpp"
#include "srt/quadrature.hpp"
#include "srt/schemes.hpp"
#include "srt/special.hpp"

namespace srt {

// Largest antenna count for which heterogeneous statistics are summed over
// all 2^N - 1 subsets.
inline constexpr std::size_t kMaxEnumeratedAntennas = 20;

namespace detail {

// 2^r - 1 without cancellation for small r.
inline double rate_excess(double rate) { return std::expm1(rate * std::numbers::ln2); }

// (2^r - 1) / snr; zero when the rate is zero, infinite when snr is zero.
inline double rate_threshold(double rate, double snr) {
  const double num = rate_excess(rate);
  if (num == 0.0) return 0.0;
  return num / snr;
}

class CancellingSum {
 public:
  void add(long double t) {
    sum_ += t;
    abs_ += std::fabs(t);
  }
  long double value() const { return sum_; }
  long double errorBound() const { return abs_ * LDBL_EPSILON * 8; }
  // True when `target` (the sum or a quantity derived from it with the same
  // absolute error) keeps at least ~10 significant digits.
  bool resolves(long double target) const { return target > 1e10L * errorBound(); }

 private:
  long double sum_ = 0;
  long double abs_ = 0;
};

// Calls visit(size, sum) for every non-empty subset of `weights`, where sum
// is the subset total.
template <class Visit>
void for_each_nonempty_subset(std::span<const long double> weights, Visit&& visit) {
  auto rec = [&](auto& self, std::size_t start, std::size_t size, long double s) -> void {
    for (std::size_t i = start; i < weights.size(); ++i) {
      const long double s2 = s + weights[i];
      visit(size + 1, s2);
      self(self, i + 1, size + 1, s2);
    }
  };
  rec(rec, 0, 0, 0.0L);
}

inline long double binomial(std::size_t n, std::size_t k) {
  long double c = 1;
  for (std::size_t j = 1; j <= k; ++j) c = c * static_cast<long double>(n - k + j) / static_cast<long double>(j);
  return c;
}

inline bool iid_antennas(const ChannelVariances& v) {
  return all_equal(v.am) && all_equal(v.as) && all_equal(v.ae);
}

inline void require_iid(const ChannelVariances& v, std::string_view what) {
  if (!iid_antennas(v))
    throw ModelAssumption(std::string(what) + " requires i.i.d. antenna statistics");
}

inline void require_enumerable(std::size_t n, std::string_view what) {
  if (n > kMaxEnumeratedAntennas)
    throw ComplexityLimit(std::string(what) + ": heterogeneous statistics with N > " +
                          std::to_string(kMaxEnumeratedAntennas) + " antennas");
}

// sum_{k=0}^{N-1} (-1)^k C(N, k+1) f(k): the binomial expansion of
// E[g(X)] for X the normalized maximum of N i.i.d. unit exponentials.
template <class F>
CancellingSum max_gain_binomial_sum(std::size_t n, F&& f) {
  CancellingSum s;
  long double c = static_cast<long double>(n);  // C(N, 1)
  for (std::size_t k = 0; k < n; ++k) {
    const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
    s.add(sign * c * f(k));
    c = c * static_cast<long double>(n - k - 1) / static_cast<long double>(k + 2);
  }
  return s;
}

}  // namespace detail

// Normalized rate thresholds of both cells.
struct Thresholds {
  double deltaM = 0.0;   // (2^{R_M^o} - 1) / gammaM
  double deltaS = 0.0;   // (2^{R_S^o} - 1) / gammaS
  double lambdaM = 0.0;  // (2^{R_M^o - R_M^s} - 1) / gammaM
  double lambdaS = 0.0;  // (2^{R_S^o - R_S^s} - 1) / gammaS

  static Thresholds from(const SystemConfig& cfg) {
    cfg.validate();
    Thresholds t;
    t.deltaM = detail::rate_threshold(cfg.rateMacroOverall, cfg.gammaM());
    t.deltaS = detail::rate_threshold(cfg.rateSmallOverall, cfg.gammaS());
    t.lambdaM = detail::rate_threshold(cfg.rateMacroOverall - cfg.rateMacroSecrecy, cfg.gammaM());
    t.lambdaS = detail::rate_threshold(cfg.rateSmallOverall - cfg.rateSmallSecrecy, cfg.gammaS());
    return t;
  }
};

// Auxiliary quantities of the interference-canceled asymptotic analysis
// (i.i.d. antennas, so s2_Am, s2_As, s2_Ae are scalars).
struct AsymptoticTerms {
  double varAm = 0.0, varAs = 0.0, varAe = 0.0;
  double varSm = 0.0, varSs = 0.0, varSe = 0.0;
  double beta = 0.0;
  double excessSmall = 0.0;        // 2^{R_S^o} - 1
  double excessMacroWire = 0.0;    // 2^{R_M^o - R_M^s} - 1
  double excessSmallWire = 0.0;    // 2^{R_S^o - R_S^s} - 1
  double omegaSm = 0.0;            // 1 - beta s2_Sm 2^{R_M^o - R_M^s} / s2_Am

  static AsymptoticTerms from(const ChannelVariances& v, const SystemConfig& cfg) {
    detail::require_iid(v, "asymptotic analysis");
    AsymptoticTerms t;
    t.varAm = v.am.front();
    t.varAs = v.as.front();
    t.varAe = v.ae.front();
    t.varSm = v.sm;
    t.varSs = v.ss;
    t.varSe = v.se;
    t.beta = cfg.smr;
    t.excessSmall = detail::rate_excess(cfg.rateSmallOverall);
    t.excessMacroWire = detail::rate_excess(cfg.rateMacroOverall - cfg.rateMacroSecrecy);
    t.excessSmallWire = detail::rate_excess(cfg.rateSmallOverall - cfg.rateSmallSecrecy);
    t.omegaSm = 1.0 - t.beta * t.varSm * (t.excessMacroWire + 1.0) / t.varAm;
    return t;
  }

  double phiSs(std::size_t k) const { return (k + 1) * excessSmall * varAs / (beta * varSs); }
  double phiAe(std::size_t k) const { return (k + 1) * omegaSm * varAe / (excessMacroWire * beta * varSe); }
  double phiSe(std::size_t k) const { return (k + 1) * excessSmallWire * varAe / (beta * varSe); }

  double xSm(double hSm2) const { return excessSmall * (hSm2 - varSm); }
  double xSmPrime(double hSm2) const { return excessSmallWire * (hSm2 - varSm); }
  double zSm(double hSm2) const { return 1.0 - beta / varAm * (excessMacroWire * hSm2 + varSm); }
};

// Closed-form probability carrying the value of 2^{R^o} s2_Sm, the quantity
// whose vanishing the derivation assumes.
struct AsymptoticValue {
  double probability = 0.0;
  double regimeIndicator = 0.0;
};

enum class SubsetEvaluation { automatic, enumeration, binomial };

// integral: the single-integral form with the actual finite-SNR terms.
// limitIntegral: the same integral after letting gammaS -> infinity.
// closed: the E1 closed form (itself a gammaS -> infinity expression for the
// small-cell metrics).
enum class IcForm { integral, limitIntegral, closed };

inline std::string_view to_string(IcForm f) {
  switch (f) {
    case IcForm::integral: return "integral";
    case IcForm::limitIntegral: return "limit-integral";
    case IcForm::closed: return "closed";
  }
  return "?";
}

inline IcForm parse_ic_form(std::string_view s) {
  if (s == "integral") return IcForm::integral;
  if (s == "limit-integral") return IcForm::limitIntegral;
  if (s == "closed" || s == "asymptotic") return IcForm::closed;
  throw InvalidParameter("unknown form '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Antenna selection probability

namespace detail {

inline double selection_prob_enumerated(const ChannelVariances& v, std::size_t i) {
  const std::size_t n = v.am.size();
  std::vector<long double> inv;
  for (std::size_t k = 0; k < n; ++k)
    if (k != i) inv.push_back(1.0L / v.am[k]);
  const long double si = v.am[i];
  CancellingSum s;
  s.add(1.0L);
  for_each_nonempty_subset(inv, [&](std::size_t size, long double sum) {
    s.add(((size % 2) ? -1.0L : 1.0L) / (1.0L + si * sum));
  });
  if (s.resolves(s.value())) return static_cast<double>(s.value());
  // P(A_i) = int_0^1 prod_{k != i} (1 - u^{s2_i / s2_k}) du
  return integrate_unit_interval([&](double u) {
    double p = 1.0;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) p *= -std::expm1(v.am[i] / v.am[k] * std::log(u));
    return p;
  });
}

inline double selection_prob_binomial(std::size_t n) {
  // sum_k C(N-1, k) (-1)^k / (k + 1), which equals 1/N.
  CancellingSum s;
  for (std::size_t k = 0; k < n; ++k)
    s.add(((k % 2) ? -1.0L : 1.0L) * binomial(n - 1, k) / static_cast<long double>(k + 1));
  if (s.resolves(s.value())) return static_cast<double>(s.value());
  return 1.0 / static_cast<double>(n);
}

}  // namespace detail

inline double antenna_selection_prob(const ChannelVariances& v, std::size_t i,
                                     SubsetEvaluation eval = SubsetEvaluation::automatic) {
  const std::size_t n = v.am.size();
  if (i >= n) throw InvalidParameter("antenna_selection_prob: antenna index out of range");
  if (eval == SubsetEvaluation::automatic)
    eval = detail::all_equal(v.am) ? SubsetEvaluation::binomial : SubsetEvaluation::enumeration;
  if (eval == SubsetEvaluation::binomial) {
    if (!detail::all_equal(v.am))
      throw ModelAssumption("antenna_selection_prob: binomial form requires i.i.d. antenna statistics");
    return detail::selection_prob_binomial(n);
  }
  detail::require_enumerable(n, "antenna_selection_prob");
  return detail::selection_prob_enumerated(v, i);
}

inline double antenna_selection_prob(const Topology& t, std::size_t i,
                                     SubsetEvaluation eval = SubsetEvaluation::automatic) {
  return antenna_selection_prob(t.variances(), i, eval);
}

namespace detail {

// sum_i P(A_i) t_i with the selection probabilities renormalized to sum to
// one, which keeps the result inside [min t, max t].
inline double selection_weighted(const ChannelVariances& v, std::span<const double> terms) {
  const std::size_t n = terms.size();
  if (all_equal(v.am)) {
    double s = 0.0;
    for (double t : terms) s += t;
    return s / static_cast<double>(n);
  }
  require_enumerable(n, "selection-weighted probability");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = selection_prob_enumerated(v, i);
    num += p * terms[i];
    den += p;
  }
  return num / den;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Interference-limited scheme

inline double il_macro_outage(const ChannelVariances& v, const SystemConfig& cfg,
                              SubsetEvaluation eval = SubsetEvaluation::automatic) {
  const auto th = Thresholds::from(cfg);
  const double delta = th.deltaM;
  if (delta == 0.0) return 0.0;
  if (std::isinf(delta)) return 1.0;
  const std::size_t n = v.am.size();
  const long double c = static_cast<long double>(delta) * cfg.gammaS() * v.sm;
  if (eval == SubsetEvaluation::automatic)
    eval = detail::all_equal(v.am) ? SubsetEvaluation::binomial : SubsetEvaluation::enumeration;

  detail::CancellingSum s;
  s.add(1.0L);
  if (eval == SubsetEvaluation::binomial) {
    if (!detail::all_equal(v.am))
      throw ModelAssumption("il_macro_outage: binomial form requires i.i.d. antenna statistics");
    const long double inv = 1.0L / v.am.front();
    for (std::size_t k = 1; k <= n; ++k) {
      const long double sum = k * inv;
      s.add(((k % 2) ? -1.0L : 1.0L) * detail::binomial(n, k) * std::exp(-delta * sum) / (1.0L + c * sum));
    }
  } else {
    detail::require_enumerable(n, "il_macro_outage");
    std::vector<long double> inv;
    for (double a : v.am) inv.push_back(1.0L / a);
    detail::for_each_nonempty_subset(inv, [&](std::size_t size, long double sum) {
      s.add(((size % 2) ? -1.0L : 1.0L) * std::exp(-delta * sum) / (1.0L + c * sum));
    });
  }
  const long double value = s.value();
  if (s.resolves(value) && value <= 1.0L) return static_cast<double>(value);

  // E_Y[F_X(Delta (gammaS Y + 1))] with Y = -s2_Sm ln w.
  const double gs = cfg.gammaS() * v.sm;
  return integrate_unit_interval([&](double w) {
    const double x = delta * (1.0 - gs * std::log(w));
    double p = 1.0;
    for (double a : v.am) p *= -std::expm1(-x / a);
    return p;
  });
}

inline double il_small_outage(const ChannelVariances& v, const SystemConfig& cfg) {
  const auto th = Thresholds::from(cfg);
  const double delta = th.deltaS;
  if (delta == 0.0) return 0.0;
  if (std::isinf(delta)) return 1.0;
  const double gm = cfg.gammaM();
  std::vector<double> terms;
  for (double as : v.as) {
    const double c = gm * as * delta;
    // 1 - s2_Ss / (s2_Ss + c) e^{-Delta / s2_Ss}, arranged without cancellation
    // and with numerator <= denominator under rounding
    terms.push_back((c + v.ss * -std::expm1(-delta / v.ss)) / (v.ss + c));
  }
  return detail::selection_weighted(v, terms);
}

inline double il_macro_intercept(const ChannelVariances& v, const SystemConfig& cfg) {
  const auto th = Thresholds::from(cfg);
  const double lambda = th.lambdaM;
  if (lambda == 0.0) return 1.0;
  if (std::isinf(lambda)) return 0.0;
  const double gs = cfg.gammaS();
  std::vector<double> terms;
  for (double ae : v.ae) terms.push_back(ae / (ae + lambda * gs * v.se) * std::exp(-lambda / ae));
  return detail::selection_weighted(v, terms);
}

inline double il_small_intercept(const ChannelVariances& v, const SystemConfig& cfg) {
  const auto th = Thresholds::from(cfg);
  const double lambda = th.lambdaS;
  if (lambda == 0.0) return 1.0;
  if (std::isinf(lambda)) return 0.0;
  const double gm = cfg.gammaM();
  std::vector<double> terms;
  for (double ae : v.ae) terms.push_back(v.se / (v.se + gm * ae * lambda) * std::exp(-lambda / v.se));
  return detail::selection_weighted(v, terms);
}

// ---------------------------------------------------------------------------
// Interference-canceled scheme

inline double ic_macro_outage(const ChannelVariances& v, const SystemConfig& cfg) {
  const auto report = ic_feasibility(v, cfg);
  if (!report.feasible) throw SchemeInfeasible("ic_macro_outage: configuration violates the power constraint");
  const double excess = detail::rate_excess(cfg.rateMacroOverall);
  if (excess == 0.0) return 0.0;
  double p = 1.0;
  for (double margin : report.margins) p *= -std::expm1(-excess / margin);
  return p;
}

namespace detail {

inline double scaled_e1_times(long double phi) {
  return static_cast<double>(phi * scaled_exp_integral_e1<long double>(phi));
}

}  // namespace detail

inline AsymptoticValue ic_small_outage(const ChannelVariances& v, const SystemConfig& cfg,
                                       IcForm form = IcForm::integral) {
  const auto terms = AsymptoticTerms::from(v, cfg);
  AsymptoticValue out;
  out.regimeIndicator = (terms.excessSmall + 1.0) * v.sm;
  if (terms.excessSmall == 0.0) return out;
  if (terms.beta == 0.0) {
    out.probability = 1.0;
    return out;
  }
  const MaxGainDensity px{v.am.size()};
  // Interference-to-signal scale (2^{R_S^o} - 1) s2_As / beta.
  const double c = terms.excessSmall * terms.varAs / terms.beta;
  auto limitIntegral = [&] { return px.expectation([&](double x) { return c / (terms.varSs * x + c); }); };

  switch (form) {
    case IcForm::integral: {
      const double delta = Thresholds::from(cfg).deltaS;
      out.probability = px.expectation([&](double x) {
        const double sx = terms.varSs * x;
        return (c + sx * -std::expm1(-delta / sx)) / (sx + c);
      });
      break;
    }
    case IcForm::limitIntegral:
      out.probability = limitIntegral();
      break;
    case IcForm::closed: {
      // 1 - sum (-1)^k C(N,k+1) [1 - phi e^phi E1(phi)]; the binomial
      // weights sum to one, leaving sum (-1)^k C(N,k+1) phi e^phi E1(phi).
      const auto s = detail::max_gain_binomial_sum(
          v.am.size(), [&](std::size_t k) { return detail::scaled_e1_times(terms.phiSs(k)); });
      out.probability = s.resolves(s.value()) ? static_cast<double>(s.value()) : limitIntegral();
      break;
    }
  }
  return out;
}

inline AsymptoticValue ic_macro_intercept(const ChannelVariances& v, const SystemConfig& cfg,
                                          IcForm form = IcForm::closed) {
  const auto terms = AsymptoticTerms::from(v, cfg);
  AsymptoticValue out;
  out.regimeIndicator = detail::rate_excess(cfg.rateMacroOverall) * v.sm + v.sm;
  const double lambda = Thresholds::from(cfg).lambdaM;
  if (!(terms.omegaSm > 0.0) || std::isinf(lambda)) return out;
  const double scale = terms.omegaSm * terms.varAe;
  const double pre = std::exp(-lambda / scale);
  const double k = terms.excessMacroWire * terms.beta;  // Lambda_M gammaS
  if (k == 0.0) {
    out.probability = pre;
    return out;
  }
  const MaxGainDensity px{v.am.size()};
  auto integral = [&] { return px.expectation([&](double x) { return scale / (scale + k * terms.varSe * x); }); };
  if (form == IcForm::closed) {
    const auto s = detail::max_gain_binomial_sum(
        v.am.size(), [&](std::size_t j) { return detail::scaled_e1_times(terms.phiAe(j)); });
    out.probability = pre * (s.resolves(s.value()) ? static_cast<double>(s.value()) : integral());
  } else {
    out.probability = pre * integral();
  }
  return out;
}

inline AsymptoticValue ic_small_intercept(const ChannelVariances& v, const SystemConfig& cfg,
                                          IcForm form = IcForm::integral) {
  const auto terms = AsymptoticTerms::from(v, cfg);
  AsymptoticValue out;
  out.regimeIndicator = (terms.excessSmall + 1.0) * v.sm;
  if (terms.excessSmallWire == 0.0) {
    out.probability = 1.0;
    return out;
  }
  if (terms.beta == 0.0) return out;
  const MaxGainDensity px{v.am.size()};
  // (Lambda_S gammaM) s2_Ae = (2^{R_S^o - R_S^s} - 1) s2_Ae / beta
  const double c = terms.excessSmallWire * terms.varAe / terms.beta;
  auto limitIntegral = [&] {
    return px.expectation([&](double x) {
      const double sx = terms.varSe * x;
      return sx / (sx + c);
    });
  };
  switch (form) {
    case IcForm::integral: {
      const double lambda = Thresholds::from(cfg).lambdaS;
      out.probability = px.expectation([&](double x) {
        const double sx = terms.varSe * x;
        return sx / (sx + c) * std::exp(-lambda / sx);
      });
      break;
    }
    case IcForm::limitIntegral:
      out.probability = limitIntegral();
      break;
    case IcForm::closed: {
      // sum (-1)^k C(N,k+1) [1 - phi e^phi E1(phi)] = 1 - S
      const auto s = detail::max_gain_binomial_sum(
          v.am.size(), [&](std::size_t j) { return detail::scaled_e1_times(terms.phiSe(j)); });
      const long double value = 1.0L - s.value();
      out.probability = s.resolves(value) ? static_cast<double>(value) : limitIntegral();
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Topology-level overloads

inline double il_macro_outage(const Topology& t, const SystemConfig& cfg,
                              SubsetEvaluation eval = SubsetEvaluation::automatic) {
  return il_macro_outage(t.variances(), cfg, eval);
}
inline double il_small_outage(const Topology& t, const SystemConfig& cfg) { return il_small_outage(t.variances(), cfg); }
inline double il_macro_intercept(const Topology& t, const SystemConfig& cfg) {
  return il_macro_intercept(t.variances(), cfg);
}
inline double il_small_intercept(const Topology& t, const SystemConfig& cfg) {
  return il_small_intercept(t.variances(), cfg);
}
inline double ic_macro_outage(const Topology& t, const SystemConfig& cfg) { return ic_macro_outage(t.variances(), cfg); }
inline AsymptoticValue ic_small_outage(const Topology& t, const SystemConfig& cfg, IcForm form = IcForm::integral) {
  return ic_small_outage(t.variances(), cfg, form);
}
inline AsymptoticValue ic_macro_intercept(const Topology& t, const SystemConfig& cfg, IcForm form = IcForm::closed) {
  return ic_macro_intercept(t.variances(), cfg, form);
}
inline AsymptoticValue ic_small_intercept(const Topology& t, const SystemConfig& cfg, IcForm form = IcForm::integral) {
  return ic_small_intercept(t.variances(), cfg, form);
}

// The four probabilities of one scheme at one operating point.
struct MetricSet {
  double macroOutage = 0.0;
  double smallOutage = 0.0;
  double macroIntercept = 0.0;
  double smallIntercept = 0.0;
};

// Theory curves: the subset sums for the interference-limited scheme; for
// the interference-canceled scheme the product form, the small-cell outage
// and intercept integrals, and the E1 closed form of the macro intercept.
inline MetricSet analytic_metrics(Scheme scheme, const ChannelVariances& v, const SystemConfig& cfg) {
  MetricSet m;
  switch (scheme) {
    case Scheme::il:
      m.macroOutage = il_macro_outage(v, cfg);
      m.smallOutage = il_small_outage(v, cfg);
      m.macroIntercept = il_macro_intercept(v, cfg);
      m.smallIntercept = il_small_intercept(v, cfg);
      break;
    case Scheme::ic:
      m.macroOutage = ic_macro_outage(v, cfg);
      m.smallOutage = ic_small_outage(v, cfg, IcForm::integral).probability;
      m.macroIntercept = ic_macro_intercept(v, cfg, IcForm::closed).probability;
      m.smallIntercept = ic_small_intercept(v, cfg, IcForm::integral).probability;
      break;
    case Scheme::icSdc:
      throw InvalidParameter("no closed form exists for the SDC variant; use Monte Carlo");
  }
  return m;
}

}  // namespace srt
