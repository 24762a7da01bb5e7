#pragma once

// Summation and closed-form moment integrals shared by the spectral engine and
// the geometry modules. Everything here works in `wide` (x87 extended on
// x86-64) because regulated comb sums and their continuum counterparts are
// each O(eps^-4) while their difference is O(1).

#include <cmath>
#include <cstddef>
#include <limits>

namespace vacspec::detail {

using wide = long double;

inline constexpr wide kWideEpsilon = std::numeric_limits<wide>::epsilon();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Neumaier-compensated accumulator. Also tracks sum |x_i|, which bounds the
/// rounding error committed while producing the individual terms.
template <typename T>
class Accumulator {
 public:
  void add(T x) {
    const T t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
    abs_ += std::fabs(x);
    ++count_;
  }

  Accumulator& operator+=(T x) {
    add(x);
    return *this;
  }

  [[nodiscard]] T sum() const { return sum_ + carry_; }
  [[nodiscard]] T abs_sum() const { return abs_; }
  [[nodiscard]] std::size_t count() const { return count_; }

 private:
  T sum_{0};
  T carry_{0};
  T abs_{0};
  std::size_t count_{0};
};

/// b^n - a^n without cancellation for nearby a, b: (b - a) * sum b^i a^(n-1-i).
inline wide power_difference(int n, wide a, wide b) {
  if (n == 0) return 0;
  wide acc = 0;
  wide bp = 1;
  for (int i = 0; i < n; ++i) {
    acc += bp * std::pow(a, n - 1 - i);
    bp *= b;
  }
  return (b - a) * acc;
}

/// \int_a^b w^k dw for finite 0 <= a <= b.
inline wide power_integral(int k, wide a, wide b) {
  return power_difference(k + 1, a, b) / static_cast<wide>(k + 1);
}

inline wide factorial(int k) {
  wide f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<wide>(i);
  return f;
}

/// e^-x sum_{j<=k} x^j/j!, the regularized upper incomplete gamma Q(k+1, x).
inline wide upper_gamma_q(int k, wide x) {
  wide term = 1;
  wide acc = 1;
  for (int j = 1; j <= k; ++j) {
    term *= x / static_cast<wide>(j);
    acc += term;
  }
  return std::exp(-x) * acc;
}

/// Regularized lower incomplete gamma P(k+1, x) for integer k >= 0. The series
/// branch avoids the 1 - Q cancellation when x is small.
inline wide lower_gamma_p(int k, wide x) {
  if (x <= 0) return 0;
  if (x > static_cast<wide>(k + 1)) return 1 - upper_gamma_q(k, x);
  // e^-x x^(k+1)/(k+1)! * sum_n x^n / ((k+2)...(k+1+n))
  wide term = 1;
  wide acc = 1;
  for (int n = 1; n < 400; ++n) {
    term *= x / static_cast<wide>(k + 1 + n);
    acc += term;
    if (term < acc * kWideEpsilon * 0.25L) break;
  }
  wide lead = std::exp(-x);
  for (int j = 1; j <= k + 1; ++j) lead *= x / static_cast<wide>(j);
  return lead * acc;
}

/// \int_a^b w^k e^(-eps w) dw for 0 <= a <= b <= +inf, eps > 0.
inline wide exp_power_integral(int k, wide eps, wide a, wide b) {
  if (!(b > a)) return 0;
  const wide scale = factorial(k) / std::pow(eps, k + 1);
  const wide xa = eps * a;
  const wide xb = std::isinf(b) ? std::numeric_limits<wide>::infinity() : eps * b;
  if (xa >= static_cast<wide>(k + 1)) {
    const wide qb = std::isinf(xb) ? 0 : upper_gamma_q(k, xb);
    return scale * (upper_gamma_q(k, xa) - qb);
  }
  const wide pb = std::isinf(xb) ? 1 : lower_gamma_p(k, xb);
  return scale * (pb - lower_gamma_p(k, xa));
}

}  // namespace vacspec::detail
