#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "srt/errors.hpp"

namespace srt {

struct QuadratureOptions {
  double tolerance = 1e-12;  // relative change between refinement levels
};

namespace detail {

// Abscissa tables are built once per thread (Boost 1.74 extends them lazily
// through a non-const integrate()).
inline boost::math::quadrature::tanh_sinh<double>& tanh_sinh_rule() {
  thread_local boost::math::quadrature::tanh_sinh<double> q(15);
  return q;
}

inline boost::math::quadrature::exp_sinh<double>& exp_sinh_rule() {
  thread_local boost::math::quadrature::exp_sinh<double> q(15);
  return q;
}

}  // namespace detail

// Tanh-sinh on [0, 1]. Nodes cluster doubly exponentially at the end points
// and never touch them, so integrable end-point singularities are fine.
template <class F>
double integrate_unit_interval(F&& f, const QuadratureOptions& opt = {}) {
  return detail::tanh_sinh_rule().integrate(std::forward<F>(f), 0.0, 1.0, opt.tolerance);
}

// int_0^inf f(x) dx by exp-sinh.
template <class F>
double integrate_half_line(F&& f, const QuadratureOptions& opt = {}) {
  return detail::exp_sinh_rule().integrate(std::forward<F>(f), opt.tolerance);
}

// Law of X = max_i |h_{A_i m}|^2 / s2_Am for N i.i.d. exponential antennas:
// F(x) = (1 - e^-x)^N, p(x) = N e^-x (1 - e^-x)^(N-1).
struct MaxGainDensity {
  std::size_t n = 1;

  double cdf(double x) const {
    if (!(x > 0.0)) return 0.0;
    return std::pow(-std::expm1(-x), static_cast<double>(n));
  }

  double pdf(double x) const {
    if (x < 0.0) return 0.0;
    return static_cast<double>(n) * std::exp(-x) * std::pow(-std::expm1(-x), static_cast<double>(n - 1));
  }

  // E[g(X)]. With u = e^-x the density becomes the polynomial N (1-u)^(N-1)
  // on (0, 1], so only g(-ln u) needs resolving.
  template <class G>
  double expectation(G&& g, const QuadratureOptions& opt = {}) const {
    if (n < 1) throw InvalidParameter("MaxGainDensity: n must be at least 1");
    const double nn = static_cast<double>(n);
    return integrate_unit_interval(
        [&](double u) { return nn * std::pow(1.0 - u, nn - 1.0) * g(-std::log(u)); }, opt);
  }
};

}  // namespace srt
