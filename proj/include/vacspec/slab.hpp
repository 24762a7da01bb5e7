#pragma once

// Massless scalar on R^3 x S^1 with period L. The transverse momenta are
// integrated out analytically, so the renormalised spectrum is a saw-tooth
// times omega^2; the energy density is -pi^2 / (90 L^4).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>

#include "vacspec/detail/numeric.hpp"
#include "vacspec/error.hpp"
#include "vacspec/extrapolate.hpp"
#include "vacspec/series_result.hpp"
#include "vacspec/spectral.hpp"

namespace vacspec::slab {

struct SlabParams {
  double L = 1.0;

  void validate() const {
    if (!std::isfinite(L) || !(L > 0.0)) throw ArgumentError("slab: L must be > 0");
  }
};

inline constexpr std::size_t kDefaultFourierTerms = 10000;
inline constexpr std::size_t kDefaultSplitTerms = 100000;

/// Number of open thresholds 2 pi l / L (l >= 1) below omega; one sitting
/// exactly at omega counts 1/2.
inline double open_thresholds(double omega, double L) {
  const double x = omega * L / kTwoPi;
  const double f = std::floor(x);
  return (x == f && f >= 1.0) ? f - 0.5 : f;
}

/// Bare density (omega^2 / 2L)(1 + 2 #thresholds below omega).
inline double slab_sigma_bare(double omega, const SlabParams& p) {
  p.validate();
  if (!std::isfinite(omega) || omega < 0.0) throw ArgumentError("slab_sigma_bare: omega must be >= 0");
  return omega * omega / (2.0 * p.L) * (1.0 + 2.0 * open_thresholds(omega, p.L));
}

/// Bare density minus the flat-space omega^3 / 2pi.
inline double slab_sigma(double omega, const SlabParams& p) {
  return slab_sigma_bare(omega, p) - omega * omega * omega / kTwoPi;
}

/// Saw-tooth density (omega^2 / 2 pi L)(pi - omega L + 2 pi l) on
/// [2 pi l / L, 2 pi (l+1) / L), stored as an omega^2 and an omega^3 piece per
/// interval.
inline SpectralDistribution slab_distribution(const SlabParams& p) {
  p.validate();
  const Real L = p.L;
  PieceSequence pieces(
      kUnbounded,
      [L](std::size_t i) -> ContinuumPiece {
        const auto l = static_cast<Real>(i / 2);
        const Real lo = kTwoPiWide * l / L;
        const Real hi = kTwoPiWide * (l + 1) / L;
        if (i % 2 == 0) return PowerLaw{(1 + 2 * l) / (2 * L), 2, lo, hi};
        return PowerLaw{-1 / kTwoPiWide, 3, lo, hi};
      },
      Envelope{1.0 / (2.0 * p.L), 2, 0.0});
  return {DeltaSequence{}, std::move(pieces)};
}

/// \int_0^omega0 sigma_F(omega) domega / 2pi for the Fourier form
/// sigma_F = (omega^2 / 2 pi L) sum_j (2 sin(j L omega) / j) e^(-eps omega).
/// The eps = 0 part of the oscillating boundary terms is summed in closed form.
inline SeriesResult slab_fourier_sigma_integral(double omega0, double eps, const SlabParams& p,
                                                std::size_t j_max = kDefaultFourierTerms) {
  p.validate();
  if (!std::isfinite(omega0) || !(omega0 > 0.0)) {
    throw ArgumentError("slab_fourier_sigma_integral: omega0 must be > 0");
  }
  if (!std::isfinite(eps) || eps < 0.0) throw ArgumentError("slab_fourier_sigma_integral: eps must be >= 0");
  if (j_max < 1) throw ArgumentError("slab_fourier_sigma_integral: j_max must be >= 1");
  using C = std::complex<double>;
  const double pi = std::numbers::pi;
  const double L = p.L;
  const double X = omega0;
  const double damp = std::exp(-eps * X);
  const double theta = std::fmod(L * X, 2.0 * pi);

  // sum cos(j t)/j^2 and sum sin(j t)/j^3 on [0, 2pi]
  const double cos2 = pi * pi / 6.0 - pi * theta / 2.0 + theta * theta / 4.0;
  const double sin3 = pi * pi * theta / 6.0 - pi * theta * theta / 4.0 + theta * theta * theta / 12.0;
  const double closed = (-X * X * damp / L * cos2 + 2.0 * X * damp / (L * L) * sin3) /
                        (2.0 * pi * pi * L);

  detail::Accumulator<double> acc;
  for (std::size_t j = 1; j <= j_max; ++j) {
    const double jd = static_cast<double>(j);
    const C u = 1.0 / C(eps, -jd * L);
    const C u0(0.0, 1.0 / (jd * L));
    const C e = std::polar(damp, jd * theta);
    const C bracket = 2.0 * u * u * u - e * (X * X * (u - u0) + 2.0 * X * (u * u - u0 * u0) + 2.0 * u * u * u);
    acc += bracket.imag() / (2.0 * pi * pi * L * jd);
  }

  const double J = static_cast<double>(j_max);
  const double quartic = (2.0 + damp * (4.0 * X * eps + 2.0)) / (L * L * L);
  const double cubic = damp * X * X * eps / (L * L);
  const double tail = (quartic / (3.0 * J * J * J) + cubic / (2.0 * J * J)) / (2.0 * pi * pi * L);

  SeriesResult out;
  out.value = closed + acc.sum();
  out.error_bound =
      tail + 8.0 * std::numeric_limits<double>::epsilon() * (acc.abs_sum() + std::fabs(closed));
  out.terms_used = j_max;
  return out;
}

/// Point-split energy density:
/// (1/4 pi^2 L^4) sum_j (1/j)[1/(w- - j)^3 - 1/(w- + j)^3 + 1/(w+ - j)^3 - 1/(w+ + j)^3],
/// w+- = (tau +- i eps)/L.
inline SeriesResult point_split_density_slab(double tau, double eps, const SlabParams& p,
                                             std::size_t j_max = kDefaultSplitTerms) {
  p.validate();
  if (!std::isfinite(tau)) throw ArgumentError("point_split_density_slab: tau must be finite");
  if (!std::isfinite(eps) || !(eps > 0.0)) {
    throw ArgumentError("point_split_density_slab: eps must be > 0");
  }
  using C = std::complex<double>;
  const double L = p.L;
  const C wp(tau / L, eps / L);
  const C wm = std::conj(wp);
  const double radius = std::abs(wp);
  const std::size_t head =
      std::max(j_max, static_cast<std::size_t>(std::ceil(radius)) + 2);

  auto cube = [](C z) { return z * z * z; };
  detail::Accumulator<double> acc;
  for (std::size_t j = 1; j <= head; ++j) {
    const double jd = static_cast<double>(j);
    const C b = 1.0 / cube(wm - jd) - 1.0 / cube(wm + jd) + 1.0 / cube(wp - jd) - 1.0 / cube(wp + jd);
    acc += b.real() / jd;
  }
  const double J = static_cast<double>(head);
  const double scale = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi * L * L * L * L);
  SeriesResult out;
  out.value = scale * acc.sum();
  out.error_bound = scale * (4.0 / (3.0 * std::pow(J - radius, 3.0)) +
                             8.0 * std::numeric_limits<double>::epsilon() * acc.abs_sum());
  out.terms_used = head;
  return out;
}

/// Full-range energy density at fixed eps.
inline SeriesResult slab_energy(const SlabParams& p, double eps) {
  return integrate(slab_distribution(p), Window::interval(0.0, detail::kInf),
                   Regulator::exponential(eps));
}

/// eps -> 0 limit of the full-range energy density.
inline ExtrapolationResult slab_energy_extrapolated(const SlabParams& p, double eps0 = 1e-2,
                                                    int levels = 3) {
  p.validate();
  return extrapolate_eps_detailed([&](double eps) { return slab_energy(p, eps).value; }, eps0,
                                  levels);
}

}  // namespace vacspec::slab
