#pragma once

#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>

#include "srt/errors.hpp"

namespace srt {

namespace detail {

// E1 by its convergent series, for 0 < x < 1.
template <std::floating_point T>
T e1_series(T x) {
  const T eps = std::numeric_limits<T>::epsilon() / 4;
  T sum = 0;
  T term = 1;  // (-1)^(k+1) x^k / k!
  for (int k = 1; k < 200; ++k) {
    term *= -x / static_cast<T>(k);
    const T contrib = term / static_cast<T>(k);
    sum -= contrib;
    if (std::abs(contrib) < eps * std::abs(sum)) break;
  }
  return -std::numbers::egamma_v<T> - std::log(x) + sum;
}

// e^x E1(x) by the modified Lentz continued fraction, for x >= 1.
template <std::floating_point T>
T scaled_e1_fraction(T x) {
  const T eps = std::numeric_limits<T>::epsilon() / 4;
  const T tiny = std::numeric_limits<T>::min() / eps;
  T b = x + 1;
  T c = 1 / tiny;
  T d = 1 / b;
  T h = d;
  for (int i = 1; i < 10000; ++i) {
    const T an = -static_cast<T>(i) * static_cast<T>(i);
    b += 2;
    d = 1 / (an * d + b);
    c = b + an / c;
    const T del = c * d;
    h *= del;
    if (std::abs(del - 1) < eps) break;
  }
  return h;
}

}  // namespace detail

// Exponential integral E1(x) = int_x^inf e^-t / t dt, x > 0.
template <std::floating_point T>
T exp_integral_e1(T x) {
  if (std::isnan(x) || !(x > 0)) throw DomainError("exp_integral_e1: argument must be positive");
  if (std::isinf(x)) return 0;
  if (x < 1) return detail::e1_series(x);
  return std::exp(-x) * detail::scaled_e1_fraction(x);
}

// e^x E1(x), finite for every x > 0 (tends to 1/x as x grows).
template <std::floating_point T>
T scaled_exp_integral_e1(T x) {
  if (std::isnan(x) || !(x > 0)) throw DomainError("scaled_exp_integral_e1: argument must be positive");
  if (std::isinf(x)) return 0;
  if (x < 1) return std::exp(x) * detail::e1_series(x);
  return detail::scaled_e1_fraction(x);
}

inline double exp_integral_e1(double x) { return exp_integral_e1<double>(x); }

}  // namespace srt
