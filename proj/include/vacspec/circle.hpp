#pragma once

// Massless scalar on R x S^1 with circumference L. Modes omega_n = 2 pi n / L,
// reference continuum sigma = -omega; the renormalised energy density is
// -pi / (6 L^2).

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "vacspec/detail/numeric.hpp"
#include "vacspec/error.hpp"
#include "vacspec/extrapolate.hpp"
#include "vacspec/series_result.hpp"
#include "vacspec/specfun.hpp"
#include "vacspec/spectral.hpp"

namespace vacspec::circle {

struct CircleParams {
  double L = 1.0;

  void validate() const {
    if (!std::isfinite(L) || !(L > 0.0)) throw ArgumentError("circle: L must be > 0");
  }
};

inline constexpr std::size_t kDefaultSplitTerms = 20000;

/// Modes n = 1..n_max as deltas of weight omega_n / L, minus the continuum
/// omega on [0, inf).
inline SpectralDistribution circle_distribution(const CircleParams& p,
                                                std::size_t n_max = kUnbounded) {
  p.validate();
  if (n_max < 1) throw ArgumentError("circle_distribution: n_max must be >= 1");
  const Real L = p.L;
  DeltaSequence comb(
      n_max,
      [L](std::size_t i) {
        const Real omega = kTwoPiWide * static_cast<Real>(i + 1) / L;
        return Delta{omega, omega / L};
      },
      Envelope{1.0 / p.L, 1, kTwoPi / p.L});
  PieceSequence continuum(std::vector<ContinuumPiece>{PowerLaw{-1.0, 1, 0.0, detail::kInf}});
  return {std::move(comb), std::move(continuum)};
}

/// Spectrum seen through the Laplace-type weight function of order m, as a
/// function of x0 = L omega / 2 pi. Evaluated from two Hurwitz zeta values at
/// order 2m + 2, with the (m / pi x0)^(2m+1) prefactor folded into the zeta sum.
inline SeriesResult sigma_weight_result(int m, double x0, const CircleParams& p) {
  p.validate();
  if (m < 1) throw ArgumentError("sigma_weight: m must be >= 1");
  if (!std::isfinite(x0) || !(x0 > 0.0)) throw ArgumentError("sigma_weight: x0 must be > 0");
  const double y = m / (std::numbers::pi * x0);
  const double s = 2.0 * m + 2.0;
  const specfun::Complex q(1.0, y);
  // conj(zeta(s, 1 + iy)) = zeta(s, 1 - iy), so the bracket is 2 Re zeta(s, 1 + iy)
  const auto z =
      specfun::hurwitz_zeta_scaled(s, q, std::log(y), specfun::default_head_terms(s, q));
  const double sign = (m % 2 == 1) ? 1.0 : -1.0;
  const double scale = (2.0 * m + 1.0) / (p.L * p.L) * 2.0 / y;
  SeriesResult out;
  out.value = sign * scale * z.value.real();
  if (!std::isfinite(out.value)) throw NonFiniteError("sigma_weight: exponent range exceeded");
  // scaled terms are <= 1 in modulus; each carries a phase error ~ s |log| ulp
  const double phase = s * (std::fabs(std::log(y)) + std::log(static_cast<double>(z.head_terms) + y));
  out.error_bound = scale * (z.error_bound + static_cast<double>(z.head_terms) * phase *
                                                 std::numeric_limits<double>::epsilon());
  out.terms_used = z.head_terms;
  return out;
}

inline double sigma_weight(int m, double x0, const CircleParams& p) {
  return sigma_weight_result(m, x0, p).value;
}

/// Point-split energy density with separation tau and regulator eps:
/// -(1/4 pi L^2) sum_k [1/(k + w)^2 over w = (+-tau +- i eps)/L].
inline SeriesResult point_split_density(double tau, double eps, const CircleParams& p,
                                        std::size_t k_max = kDefaultSplitTerms) {
  p.validate();
  if (!std::isfinite(tau)) throw ArgumentError("point_split_density: tau must be finite");
  if (!std::isfinite(eps) || !(eps > 0.0)) throw ArgumentError("point_split_density: eps must be > 0");
  using specfun::Complex;
  const double L = p.L;
  // keep the Hurwitz tail parameter in the right half plane
  const auto min_head = static_cast<std::size_t>(std::ceil(std::fabs(tau) / L)) + 1;
  const std::size_t head = std::max(k_max, min_head);
  const Complex shifts[4] = {Complex(tau, eps) / L, Complex(-tau, eps) / L, Complex(-tau, -eps) / L,
                             Complex(tau, -eps) / L};
  detail::Accumulator<double> acc;
  double error = 0.0;
  for (const Complex& w : shifts) {
    for (std::size_t k = 1; k <= head; ++k) {
      const Complex t = 1.0 / ((static_cast<double>(k) + w) * (static_cast<double>(k) + w));
      acc += t.real();
    }
    const auto tail = specfun::hurwitz_zeta_result(2.0, static_cast<double>(head + 1) + w);
    acc += tail.value.real();
    error += tail.error_bound;
  }
  const double scale = 1.0 / (4.0 * std::numbers::pi * L * L);
  SeriesResult out;
  out.value = -scale * acc.sum();
  out.error_bound = scale * (error + 4.0 * std::numeric_limits<double>::epsilon() * acc.abs_sum());
  out.terms_used = 4 * head;
  return out;
}

/// \int_0^omega0 sigma_ps(omega) domega / 2pi for the point-split spectrum
/// sigma_ps = 2 omega sum_k cos(k L omega) e^(-eps omega). eps = 0 is allowed.
/// The 1/k part of the oscillatory sum is done in closed form; the rest is
/// summed to k_max with an Abel-summation bound for the remainder.
inline SeriesResult point_split_sigma_integral(double omega0, double eps, const CircleParams& p,
                                               std::size_t k_max = kDefaultSplitTerms) {
  p.validate();
  if (!std::isfinite(omega0) || !(omega0 > 0.0)) {
    throw ArgumentError("point_split_sigma_integral: omega0 must be > 0");
  }
  if (!std::isfinite(eps) || eps < 0.0) throw ArgumentError("point_split_sigma_integral: eps must be >= 0");
  if (k_max < 1) throw ArgumentError("point_split_sigma_integral: k_max must be >= 1");
  using specfun::Complex;
  const double pi = std::numbers::pi;
  const double L = p.L;
  const double X = omega0;
  const double damp = std::exp(-eps * X);
  const double theta = std::fmod(L * X, 2.0 * pi);

  // sum_k (1/pi) Re 1/z^2, z = eps - i k L
  const auto zeta = specfun::hurwitz_zeta_result(2.0, Complex(1.0, eps / L));
  const double smooth = -zeta.value.real() / (pi * L * L);

  // sum_k e^{ik theta}/k = -log(1 - e^{i theta}); arg(1 - e^{i theta}) = (theta - pi)/2
  const double arg = theta == 0.0 ? 0.0 : (theta - pi) / 2.0;
  const double kummer = -X * damp * arg / (pi * L);

  detail::Accumulator<double> rest;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double kd = static_cast<double>(k);
    const Complex z(eps, -kd * L);
    const Complex phase = std::polar(damp, kd * theta);
    const Complex g = -(X * (1.0 / z - Complex(0.0, 1.0 / (kd * L))) + 1.0 / (z * z));
    rest += (phase * g).real() / pi;
  }

  // |g(k)| <= A/k^2 and |g'(k)| <= B/k^3
  const double K = static_cast<double>(k_max);
  const double A = damp * (X * eps + 1.0) / (pi * L * L);
  const double B = damp * (2.0 + 2.0 * X * eps + X * eps * eps / (K * L)) / (pi * L * L);
  double tail = A / K;
  const double s = std::fabs(std::sin(theta / 2.0));
  if (s > 0.0) tail = std::min(tail, (A / ((K + 1.0) * (K + 1.0)) + B / (2.0 * K * K)) / s);

  SeriesResult out;
  out.value = smooth + kummer + rest.sum();
  out.error_bound = tail + zeta.error_bound / (pi * L * L) +
                    4.0 * std::numeric_limits<double>::epsilon() *
                        (rest.abs_sum() + std::fabs(smooth) + std::fabs(kummer));
  out.terms_used = k_max;
  return out;
}

/// Cumulative energy with the sharp cut-off H(q - omega); exact partial sums.
inline double F1(double q, double omega0, const CircleParams& p) {
  p.validate();
  if (!std::isfinite(q) || !(q > 0.0)) throw ArgumentError("F1: q must be > 0");
  if (!std::isfinite(omega0) || omega0 < 0.0) throw ArgumentError("F1: omega0 must be >= 0");
  using detail::wide;
  const wide L = p.L;
  const wide step = static_cast<wide>(kTwoPi) / L;
  const double c = std::min(q, omega0);
  // modes strictly below c
  auto below = static_cast<long long>(std::ceil(static_cast<wide>(c) / step)) - 1;
  while (below > 0 && !(static_cast<double>(step * static_cast<wide>(below)) < c)) --below;
  while (static_cast<double>(step * static_cast<wide>(below + 1)) < c) ++below;
  const wide n = static_cast<wide>(below);
  wide comb = std::numbers::pi_v<wide> * n * (n + 1) / (L * L);
  const double next = static_cast<double>(step * (n + 1));
  if (next == c) {
    const double half_window = next == omega0 ? 0.5 : 1.0;
    const double half_reg = next == q ? 0.5 : 1.0;
    comb += static_cast<wide>(next) / L * half_window * half_reg;
  }
  const wide cw = c;
  return static_cast<double>(comb - cw * cw / (4 * std::numbers::pi_v<wide>));
}

/// Cumulative energy with the exponential cut-off e^(-omega / q).
inline SeriesResult F2(double q, double omega0, const CircleParams& p) {
  p.validate();
  if (!std::isfinite(q) || !(q > 0.0)) throw ArgumentError("F2: q must be > 0");
  if (!std::isfinite(omega0) || omega0 < 0.0) throw ArgumentError("F2: omega0 must be >= 0");
  if (omega0 == 0.0) return {};
  return integrate(circle_distribution(p), Window::interval(0.0, omega0),
                   Regulator::exponential(1.0 / q));
}

/// Full-range energy density at fixed eps.
inline SeriesResult circle_energy(const CircleParams& p, double eps) {
  return integrate(circle_distribution(p), Window::interval(0.0, detail::kInf),
                   Regulator::exponential(eps));
}

/// eps -> 0 limit of the full-range energy density.
inline ExtrapolationResult circle_energy_extrapolated(const CircleParams& p, double eps0 = 1e-2,
                                                      int levels = 3) {
  p.validate();
  return extrapolate_eps_detailed([&](double eps) { return circle_energy(p, eps).value; }, eps0,
                                  levels);
}

}  // namespace vacspec::circle
