#pragma once

// Bernoulli numbers and the Hurwitz zeta function zeta(s, q) = sum_{n>=0} (n+q)^-s
// for real s > 1 and complex q with Re q > 0.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>

#include "vacspec/detail/numeric.hpp"
#include "vacspec/error.hpp"

namespace vacspec::specfun {

using Complex = std::complex<double>;

inline constexpr int kMaxBernoulliOrder = 60;

namespace detail {

// B_0, B_2, ..., B_60 rounded from the exact rationals.
inline constexpr std::array<double, 31> kEvenBernoulli = {
    1.00000000000000000000,  // B_0 = 1
    1.66666666666666666667e-1,  // B_2 = 1/6
    -3.33333333333333333333e-2,  // B_4 = -1/30
    2.38095238095238095238e-2,  // B_6 = 1/42
    -3.33333333333333333333e-2,  // B_8 = -1/30
    7.57575757575757575758e-2,  // B_10 = 5/66
    -2.53113553113553113553e-1,  // B_12 = -691/2730
    1.16666666666666666667,  // B_14 = 7/6
    -7.09215686274509803922,  // B_16 = -3617/510
    5.49711779448621553885e+1,  // B_18 = 43867/798
    -5.29124242424242424242e+2,  // B_20 = -174611/330
    6.19212318840579710145e+3,  // B_22 = 854513/138
    -8.65802531135531135531e+4,  // B_24 = -236364091/2730
    1.42551716666666666667e+6,  // B_26 = 8553103/6
    -2.72982310678160919540e+7,  // B_28 = -23749461029/870
    6.01580873900642368384e+8,  // B_30 = 8615841276005/14322
    -1.51163157670921568627e+10,  // B_32 = -7709321041217/510
    4.29614643061166666667e+11,  // B_34 = 2577687858367/6
    -1.37116552050883327722e+13,  // B_36 = -26315271553053477373/1919190
    4.88332318973593166667e+14,  // B_38 = 2929993913841559/6
    -1.92965793419400681486e+16,  // B_40 = -261082718496449122051/13530
    8.41693047573682615001e+17,  // B_42 = 1520097643918070802691/1806
    -4.03380718540594554131e+19,  // B_44 = -27833269579301024235023/690
    2.11507486380819916056e+21,  // B_46 = 596451111593912163277961/282
    -1.20866265222965259346e+23,  // B_48 = -5609403368997817686249127547/46410
    7.50086674607696436686e+24,  // B_50 = 495057205241079648212477525/66
    -5.03877810148106891414e+26,  // B_52 = -801165718135489957347924991853/1590
    3.65287764848181233351e+28,  // B_54 = 29149963634884862421418123812691/798
    -2.84987693024508822263e+30,  // B_56 = -2479392929313226753685415739663229/870
    2.38654274996836276446e+32,  // B_58 = 84483613348880041862046775994036021/354
    -2.13999492572253336658e+34,  // B_60 = -1215233140483755572040304994079820246041491/56786730
};

}  // namespace detail

/// B_n with the B_1 = -1/2 convention, for 0 <= n <= 60.
inline double bernoulli(int n) {
  if (n < 0) throw DomainError("bernoulli: negative order " + std::to_string(n));
  if (n > kMaxBernoulliOrder) {
    throw UnsupportedOrderError("bernoulli: order " + std::to_string(n) + " exceeds " +
                                std::to_string(kMaxBernoulliOrder));
  }
  if (n == 1) return -0.5;
  if (n % 2 == 1) return 0.0;
  return detail::kEvenBernoulli[static_cast<std::size_t>(n / 2)];
}

/// Number of Bernoulli correction terms in the Euler-Maclaurin tail.
inline constexpr int kEulerMaclaurinTerms = 8;

struct HurwitzResult {
  Complex value;
  double error_bound = 0.0;   // magnitude of the first omitted Bernoulli term
  std::size_t head_terms = 0;
};

/// Head length for the Euler-Maclaurin evaluation. |N + q| has to exceed both
/// |Im q| and s / pi for the Bernoulli corrections to decrease.
inline std::size_t default_head_terms(double s, Complex q) {
  const double by_imag = std::ceil(std::fabs(q.imag()));
  const double by_order = std::ceil((s + 2.0 * kEulerMaclaurinTerms + 1.0) / std::numbers::pi);
  return static_cast<std::size_t>(std::fmax(12.0, std::fmax(by_imag, by_order)));
}

/// exp(s * log_scale) * zeta(s, q) with an explicit head length. Every term is
/// formed as exp(-s (log(n+q) - log_scale)) so that huge orders (s ~ 10^4) with
/// |q| ~ 10^3 neither underflow nor overflow as long as the scaled sum is
/// representable.
inline HurwitzResult hurwitz_zeta_scaled(double s, Complex q, double log_scale,
                                         std::size_t head_terms) {
  if (!std::isfinite(s) || !(s > 1.0)) {
    throw DomainError("hurwitz_zeta: requires s > 1, got s = " + std::to_string(s));
  }
  if (!std::isfinite(q.real()) || !std::isfinite(q.imag()) || !(q.real() > 0.0)) {
    throw DomainError("hurwitz_zeta: requires finite q with Re q > 0");
  }
  if (head_terms == 0) throw ArgumentError("hurwitz_zeta: head_terms must be positive");

  vacspec::detail::Accumulator<double> re;
  vacspec::detail::Accumulator<double> im;
  for (std::size_t n = 0; n < head_terms; ++n) {
    const Complex w = Complex(static_cast<double>(n), 0.0) + q;
    const Complex term = std::exp(-s * (std::log(w) - log_scale));
    re.add(term.real());
    im.add(term.imag());
  }

  const Complex w = Complex(static_cast<double>(head_terms), 0.0) + q;
  const Complex inv_w = 1.0 / w;
  const Complex base = std::exp(-s * (std::log(w) - log_scale));  // scaled w^-s

  Complex tail = base * w / (s - 1.0) + 0.5 * base;
  // d_k = (s)_{2k-1} w^{-(2k-1)} * base / (2k)!  built incrementally.
  Complex d = base * s * inv_w / 2.0;  // k = 1: s / w / 2!
  for (int k = 1; k <= kEulerMaclaurinTerms; ++k) {
    tail += bernoulli(2 * k) * d;
    // advance to k+1: times (s+2k-1)(s+2k) / w^2 / ((2k+1)(2k+2))
    d *= (s + 2.0 * k - 1.0) * (s + 2.0 * k) * inv_w * inv_w /
         ((2.0 * k + 1.0) * (2.0 * k + 2.0));
  }
  const double omitted = std::abs(bernoulli(2 * kEulerMaclaurinTerms + 2) * d);

  HurwitzResult out;
  out.value = Complex(re.sum(), im.sum()) + tail;
  out.error_bound = omitted;
  out.head_terms = head_terms;
  return out;
}

inline HurwitzResult hurwitz_zeta_result(double s, Complex q, std::size_t head_terms) {
  return hurwitz_zeta_scaled(s, q, 0.0, head_terms);
}

inline HurwitzResult hurwitz_zeta_result(double s, Complex q) {
  return hurwitz_zeta_scaled(s, q, 0.0, default_head_terms(s, q));
}

/// zeta(s, q) for real s > 1 and Re q > 0.
inline Complex hurwitz_zeta(double s, Complex q) { return hurwitz_zeta_result(s, q).value; }

/// Riemann zeta at an integer n >= 2.
inline double riemann_zeta(int n) {
  if (n < 2) throw DomainError("riemann_zeta: requires n >= 2");
  return hurwitz_zeta(static_cast<double>(n), Complex(1.0, 0.0)).real();
}

}  // namespace vacspec::specfun
