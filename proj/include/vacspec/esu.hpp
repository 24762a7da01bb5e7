#pragma once

// Scalar field with mass mu and curvature coupling xi on the Einstein static
// universe R x S^3 of radius R. Modes omega_l = sqrt(((l+1)/R)^2 + a^2) with
// degeneracy (l+1)^2, a^2 = mu^2 + (6 xi - 1)/R^2.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <utility>

#include <boost/math/tools/roots.hpp>

#include "vacspec/detail/numeric.hpp"
#include "vacspec/error.hpp"
#include "vacspec/extrapolate.hpp"
#include "vacspec/series_result.hpp"
#include "vacspec/spectral.hpp"

namespace vacspec::esu {

inline constexpr double kUnitSphereVolume = 2.0 * std::numbers::pi * std::numbers::pi;

struct EsuParams {
  double R = 1.0;
  double mu2 = 0.0;
  double xi = 1.0 / 6.0;

  /// Massless field at radius R whose coupling gives a^2 R^2 = aR2.
  static EsuParams from_aR2(double aR2, double R = 1.0) {
    return EsuParams{R, 0.0, (aR2 + 1.0) / 6.0};
  }

  [[nodiscard]] double a2() const { return mu2 + (6.0 * xi - 1.0) / (R * R); }
  [[nodiscard]] double aR2() const { return a2() * R * R; }
  [[nodiscard]] double volume() const { return kUnitSphereVolume * R * R * R; }

  void validate() const {
    if (!std::isfinite(R) || !(R > 0.0)) throw ArgumentError("esu: R must be > 0");
    if (!std::isfinite(mu2) || mu2 < 0.0) throw ArgumentError("esu: mu2 must be >= 0");
    if (!std::isfinite(xi)) throw ArgumentError("esu: xi must be finite");
    if (!(aR2() > -1.0)) {
      throw DomainError("esu: a^2 R^2 <= -1 makes the lowest mode tachyonic");
    }
  }
};

struct EsuMode {
  int ell = 0;
  double omega = 0.0;
  std::int64_t degeneracy = 1;
};

inline EsuMode esu_mode(const EsuParams& p, int ell) {
  p.validate();
  if (ell < 0) throw ArgumentError("esu_mode: ell must be >= 0");
  const double k = (ell + 1.0) / p.R;
  const std::int64_t d = static_cast<std::int64_t>(ell + 1) * (ell + 1);
  return {ell, std::sqrt(k * k + p.a2()), d};
}

/// Comb of modes l = 0..ell_max, each contributing d omega / 2V, minus the
/// flat continuum (R^3 / 2V) omega^2 sqrt(omega^2 - a^2) (per domega/2pi).
inline SpectralDistribution esu_distribution(const EsuParams& p,
                                             std::size_t ell_max = kUnbounded - 1) {
  p.validate();
  const Real R = p.R;
  const Real a2 = static_cast<Real>(p.mu2) + (6 * static_cast<Real>(p.xi) - 1) / (R * R);
  const Real V = 2 * std::numbers::pi_v<Real> * std::numbers::pi_v<Real> * R * R * R;
  auto mode = [R, a2, V](std::size_t i) {
    const Real k = static_cast<Real>(i + 1) / R;
    const Real omega = std::sqrt(k * k + a2);
    const Real d = static_cast<Real>(i + 1) * static_cast<Real>(i + 1);
    return Delta{omega, d * omega / (2 * V)};
  };
  const auto omega0 = static_cast<double>(mode(0).frequency);
  const double a2d = p.a2();
  const double spacing =
      a2d > 0.0 ? static_cast<double>(mode(1).frequency) - omega0 : 1.0 / p.R;
  const double coef =
      p.R * p.R * (1.0 + std::max(0.0, -a2d) / (omega0 * omega0)) / (2.0 * p.volume());
  const std::size_t count = ell_max == kUnbounded - 1 ? kUnbounded : ell_max + 1;
  DeltaSequence comb(count, mode, Envelope{coef, 3, spacing});
  PieceSequence continuum(
      std::vector<ContinuumPiece>{SqrtBranch{-std::numbers::pi_v<Real> / V * R * R * R, a2}});
  return {std::move(comb), std::move(continuum)};
}

/// Integrated spectrum 2 * 2pi^2 * \int_0^omega0 sigma e^(-omega/q) domega/2pi
/// at R = 1; omega0 may be +inf.
inline SeriesResult esu_F(double q, double aR2, double omega0) {
  if (!std::isfinite(q) || !(q > 0.0)) throw ArgumentError("esu_F: q must be > 0");
  if (std::isnan(omega0) || omega0 < 0.0) throw ArgumentError("esu_F: omega0 must be >= 0");
  const auto p = EsuParams::from_aR2(aR2);
  p.validate();
  if (omega0 == 0.0) return {};
  auto r = integrate(esu_distribution(p), Window::interval(0.0, omega0),
                     Regulator::exponential(1.0 / q));
  const double scale = 2.0 * kUnitSphereVolume;
  return {scale * r.value, scale * r.error_bound, r.terms_used};
}

/// Regulated full-range energy density.
inline SeriesResult esu_regulated_energy(const EsuParams& p, double eps) {
  return integrate(esu_distribution(p), Window::interval(0.0, detail::kInf),
                   Regulator::exponential(eps));
}

// The eps-expansion of the regulated energy has odd powers once a^2 < 0, so
// the ladder eliminates every integer power.
inline constexpr double kEnergyEps0 = 0.05;
inline constexpr int kEnergyLevels = 6;

/// Renormalised energy density (eps -> 0 limit of the regulated one).
inline ExtrapolationResult esu_energy_result(const EsuParams& p) {
  p.validate();
  const double R = p.R;
  // extrapolate in the dimensionless eps / R
  return extrapolate_eps_detailed(
      [&](double e) { return esu_regulated_energy(p, e * R).value; }, kEnergyEps0, kEnergyLevels,
      ErrorSeries::AllPowers);
}

inline double esu_energy(const EsuParams& p) { return esu_energy_result(p).value; }

/// Renormalised energy density at R = 1 for a massless field with a^2 = aR2.
inline double esu_energy(double aR2) { return esu_energy(EsuParams::from_aR2(aR2)); }

/// rho + 3p = 2 rho, valid for the massless field.
inline double esu_strong_energy(double aR2) { return 2.0 * esu_energy(aR2); }

struct ZeroCrossing {
  double a02 = 0.0;
  double bracket_width = 0.0;
};

/// a0^2 in (0.49, 0.81) with esu_energy(-a0^2) = 0.
inline ZeroCrossing esu_zero_crossing_result() {
  const double lo = 0.49;
  const double hi = 0.81;
  auto f = [](double a02) { return esu_energy(-a02); };
  const double flo = f(lo);
  const double fhi = f(hi);
  if (!(flo * fhi < 0.0)) {
    throw ConsistencyError("esu_zero_crossing: energy does not change sign on [0.49, 0.81]");
  }
  std::uintmax_t iterations = 100;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(40), iterations);
  return {0.5 * (a + b), b - a};
}

inline double esu_zero_crossing() { return esu_zero_crossing_result().a02; }

}  // namespace vacspec::esu
