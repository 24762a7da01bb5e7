#pragma once

// Spectral distributions: a comb of delta functions minus (or plus) a
// piecewise-analytic continuum. The renormalised spectral density of a
// geometry is stored as bare comb minus reference continuum, unregulated; a
// number only comes out of integrate()/cumulative(), where a window and a
// regulator are applied.
//
// Normalisation: integrate() returns \int w(omega) reg(omega) sigma(omega) domega / 2pi.
// A delta carries its contribution to that integral directly (i.e. it is the
// coefficient of 2 pi delta(omega - omega_n) in sigma).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "vacspec/detail/numeric.hpp"
#include "vacspec/error.hpp"
#include "vacspec/series_result.hpp"

namespace vacspec {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr detail::wide kTwoPiWide = 2 * std::numbers::pi_v<detail::wide>;
inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

// Stored in extended precision: regulated comb and continuum sums are each
// O(eps^-4) while their difference is O(1).
using Real = detail::wide;

struct Delta {
  Real frequency = 0;
  Real weight = 0;  // contribution to \int sigma domega/2pi
};

/// coef * omega^exponent on [lo, hi); hi may be +inf.
struct PowerLaw {
  Real coef = 0;
  int exponent = 0;
  Real lo = 0;
  Real hi = detail::kInf;
};

/// coef * omega^2 * sqrt(omega^2 - a2) for omega >= omega_min, where
/// omega_min = sqrt(a2) if a2 > 0 and 0 otherwise.
struct SqrtBranch {
  Real coef = 0;
  Real a2 = 0;
};

using ContinuumPiece = std::variant<PowerLaw, SqrtBranch>;

inline Real branch_start(Real a2) { return a2 > 0 ? std::sqrt(a2) : Real{0}; }

inline Real piece_lo(const ContinuumPiece& p) {
  return std::visit(
      [](const auto& x) -> Real {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PowerLaw>) {
          return x.lo;
        } else {
          return branch_start(x.a2);
        }
      },
      p);
}

inline Real piece_hi(const ContinuumPiece& p) {
  if (const auto* pl = std::get_if<PowerLaw>(&p)) return pl->hi;
  return detail::kInf;
}

/// Growth bound used to bound exponentially regulated tails of unbounded
/// sequences: beyond any frequency Omega >= power/eps, delta weights (or
/// continuum density magnitudes) are <= coef * omega^power and consecutive
/// delta frequencies are at least `spacing` apart.
struct Envelope {
  double coef = 0.0;
  int power = 0;
  double spacing = 1.0;
};

/// Random-access, frequency-ordered sequence of deltas. Finite sequences are
/// stored; geometric combs are generated on demand and may be unbounded.
class DeltaSequence {
 public:
  using Generator = std::function<Delta(std::size_t)>;

  DeltaSequence() = default;

  explicit DeltaSequence(std::vector<Delta> deltas) : count_(deltas.size()) {
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      const Delta& d = deltas[i];
      if (!std::isfinite(d.frequency) || d.frequency < 0 || !std::isfinite(d.weight)) {
        throw ArgumentError("DeltaSequence: frequencies must be finite and non-negative");
      }
      if (i > 0 && !(d.frequency > deltas[i - 1].frequency)) {
        throw ArgumentError("DeltaSequence: frequencies must be strictly increasing");
      }
    }
    auto shared = std::make_shared<const std::vector<Delta>>(std::move(deltas));
    generator_ = [shared](std::size_t i) { return (*shared)[i]; };
  }

  DeltaSequence(std::size_t count, Generator generator, Envelope envelope)
      : count_(count), generator_(std::move(generator)), envelope_(envelope) {
    if (count_ == kUnbounded && !(envelope_.coef > 0.0 && envelope_.spacing > 0.0)) {
      throw ArgumentError("DeltaSequence: an unbounded comb needs a growth envelope");
    }
  }

  [[nodiscard]] std::size_t size() const { return count_; }
  [[nodiscard]] bool empty() const { return count_ == 0; }
  [[nodiscard]] bool unbounded() const { return count_ == kUnbounded; }
  [[nodiscard]] const Envelope& envelope() const { return envelope_; }
  [[nodiscard]] Delta operator[](std::size_t i) const { return generator_(i); }

 private:
  std::size_t count_ = 0;
  Generator generator_;
  Envelope envelope_;
};

/// Continuum pieces ordered by lower edge (and non-decreasing upper edge).
class PieceSequence {
 public:
  using Generator = std::function<ContinuumPiece(std::size_t)>;

  PieceSequence() = default;

  explicit PieceSequence(std::vector<ContinuumPiece> pieces) : count_(pieces.size()) {
    for (const auto& p : pieces) {
      if (const auto* pl = std::get_if<PowerLaw>(&p)) {
        if (pl->exponent < 0) throw ArgumentError("PowerLaw: exponent must be >= 0");
        if (!(pl->lo >= 0) || !(pl->lo < pl->hi)) {
          throw ArgumentError("PowerLaw: requires 0 <= lo < hi");
        }
      }
    }
    std::stable_sort(pieces.begin(), pieces.end(), [](const auto& a, const auto& b) {
      return piece_lo(a) < piece_lo(b);
    });
    auto shared = std::make_shared<const std::vector<ContinuumPiece>>(std::move(pieces));
    generator_ = [shared](std::size_t i) { return (*shared)[i]; };
  }

  PieceSequence(std::size_t count, Generator generator, Envelope envelope)
      : count_(count), generator_(std::move(generator)), envelope_(envelope) {
    if (count_ == kUnbounded && !(envelope_.coef > 0.0)) {
      throw ArgumentError("PieceSequence: an unbounded continuum needs a growth envelope");
    }
  }

  [[nodiscard]] std::size_t size() const { return count_; }
  [[nodiscard]] bool empty() const { return count_ == 0; }
  [[nodiscard]] bool unbounded() const { return count_ == kUnbounded; }
  [[nodiscard]] const Envelope& envelope() const { return envelope_; }
  [[nodiscard]] ContinuumPiece operator[](std::size_t i) const { return generator_(i); }

 private:
  std::size_t count_ = 0;
  Generator generator_;
  Envelope envelope_;
};

class SpectralDistribution {
 public:
  SpectralDistribution() = default;
  SpectralDistribution(DeltaSequence deltas, PieceSequence continuum)
      : deltas_(std::move(deltas)), continuum_(std::move(continuum)) {
    if (!continuum_.empty()) {
      omega_min_ = piece_lo(continuum_[0]);
    }
  }

  [[nodiscard]] const DeltaSequence& deltas() const { return deltas_; }
  [[nodiscard]] const PieceSequence& continuum() const { return continuum_; }
  /// Start of the continuum support.
  [[nodiscard]] double omega_min() const { return static_cast<double>(omega_min_); }

 private:
  DeltaSequence deltas_;
  PieceSequence continuum_;
  Real omega_min_ = 0;
};

class Regulator {
 public:
  enum class Kind { None, Exponential, Sharp };

  static Regulator none() { return Regulator(Kind::None, 0.0); }

  /// Weight e^(-eps omega).
  static Regulator exponential(double eps) {
    if (!std::isfinite(eps) || !(eps > 0.0)) {
      throw ArgumentError("Regulator: exponential requires eps > 0");
    }
    return Regulator(Kind::Exponential, eps);
  }

  /// Weight H(q - omega), with H(0) = 1/2.
  static Regulator sharp(double q) {
    if (!std::isfinite(q) || !(q > 0.0)) throw ArgumentError("Regulator: sharp requires q > 0");
    return Regulator(Kind::Sharp, q);
  }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double parameter() const { return parameter_; }

  [[nodiscard]] Real weight(Real omega) const {
    switch (kind_) {
      case Kind::Exponential:
        return std::exp(-static_cast<Real>(parameter_) * omega);
      case Kind::Sharp:
        return omega < parameter_ ? Real{1} : (omega == parameter_ ? Real{0.5} : Real{0});
      case Kind::None:
        break;
    }
    return 1;
  }

 private:
  Regulator(Kind kind, double parameter) : kind_(kind), parameter_(parameter) {}
  Kind kind_;
  double parameter_;
};

/// Integration window: an interval [lo, hi] (hi may be +inf) or the band
/// f_j = 1 on ((2 pi j - pi)/L, (2 pi j + pi)/L).
class Window {
 public:
  static Window interval(double lo, double hi) {
    if (!std::isfinite(lo) || lo < 0.0 || std::isnan(hi) || !(lo < hi)) {
      throw ArgumentError("Window: requires 0 <= lo < hi");
    }
    return Window(lo, hi);
  }

  static Window band(int j, double L) {
    if (j < 1) throw ArgumentError("Window: band index must be positive");
    if (!std::isfinite(L) || !(L > 0.0)) throw ArgumentError("Window: band requires L > 0");
    // wide endpoints: the band integral cancels to ~eps_wide * omega^2
    const Real pi = std::numbers::pi_v<Real>;
    const Real len = L;
    return Window((2 * pi * j - pi) / len, (2 * pi * j + pi) / len);
  }

  [[nodiscard]] Real lo() const { return lo_; }
  [[nodiscard]] Real hi() const { return hi_; }

  /// 1 inside, 1/2 on a boundary, 0 outside. A delta at omega = 0 sits at the
  /// edge of the spectrum rather than of the window and counts fully.
  [[nodiscard]] Real weight(Real omega) const {
    if (omega < lo_ || omega > hi_) return 0;
    if ((omega == lo_ && lo_ > 0) || omega == hi_) return 0.5;
    return 1;
  }

 private:
  Window(Real lo, Real hi) : lo_(lo), hi_(hi) {}
  Real lo_;
  Real hi_;
};

struct IntegrationBreakdown {
  SeriesResult total;
  double delta_part = 0.0;
  double continuum_part = 0.0;
  std::size_t deltas_used = 0;
  std::size_t pieces_used = 0;
};

namespace detail {

// Stop summing an exponentially regulated sequence once the bounded tail is
// below this fraction of sum |terms|, i.e. below extended-precision rounding.
inline constexpr wide kTailFraction = kWideEpsilon / 16;
inline constexpr std::size_t kTailCheckStride = 16;

inline wide delta_tail_bound(const Envelope& env, wide eps, wide omega) {
  if (env.coef == 0.0) return 0;
  const wide head = env.coef * std::pow(omega, env.power) * std::exp(-eps * omega);
  return head + env.coef / env.spacing * exp_power_integral(env.power, eps, omega, kInf);
}

inline wide piece_tail_bound(const Envelope& env, wide eps, wide omega) {
  if (env.coef == 0.0) return 0;
  return env.coef / kTwoPiWide * exp_power_integral(env.power, eps, omega, kInf);
}

/// Smallest index in [0, count) with pred(index) true, for a predicate that is
/// false then true along the sequence; count if none. Gallops first so that
/// unbounded generated sequences work.
template <typename Pred>
std::size_t first_index(std::size_t count, Pred pred) {
  if (count == 0 || pred(std::size_t{0})) return 0;
  std::size_t bad = 0;
  std::size_t good = count;
  for (std::size_t step = 1;; step *= 2) {
    if (count - bad <= step) break;
    const std::size_t probe = bad + step;
    if (pred(probe)) {
      good = probe;
      break;
    }
    bad = probe;
  }
  while (good - bad > 1) {
    const std::size_t mid = bad + (good - bad) / 2;
    if (pred(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return good;
}

/// Regulated integral of one continuum piece over [a, b] (b may be +inf),
/// without the 1/2pi normalisation. Adds quadrature/tail error to `error`.
inline wide piece_integral(const ContinuumPiece& piece, const Regulator& reg, wide a, wide b,
                           double& error) {
  const bool exp_reg = reg.kind() == Regulator::Kind::Exponential;
  const wide eps = reg.parameter();

  auto moment = [&](int k, wide lo, wide hi) -> wide {
    if (!(hi > lo)) return 0;
    if (exp_reg) return exp_power_integral(k, eps, lo, hi);
    if (std::isinf(hi)) throw DivergenceError("integrate: unregulated continuum on an unbounded range");
    return power_integral(k, lo, hi);
  };

  if (const auto* pl = std::get_if<PowerLaw>(&piece)) {
    const wide lo = std::max(a, pl->lo);
    const wide hi = std::min(b, pl->hi);
    if (!(hi > lo) || pl->coef == 0) return 0;
    return pl->coef * moment(pl->exponent, lo, hi);
  }

  const auto& sb = std::get<SqrtBranch>(piece);
  const wide lo = std::max(a, branch_start(sb.a2));
  const wide hi = b;
  if (!(hi > lo) || sb.coef == 0) return 0;

  // omega^2 sqrt(omega^2 - a2) = omega^3 - (a2/2) omega - T(omega) with
  // T = a2^2 omega / (2 (omega + s)^2) >= 0, s = sqrt(omega^2 - a2).
  wide value = moment(3, lo, hi) - sb.a2 / 2 * moment(1, lo, hi);
  if (sb.a2 == 0) return sb.coef * value;

  // With omega = |a| cosh u (a2 > 0) or |a| sinh u (a2 < 0), T domega equals
  // (a2^2 / 8)(1 - e^{-4u}) du. This part is O(a^4 log(1/eps)), so double
  // precision quadrature is plenty.
  const auto a2 = static_cast<double>(sb.a2);
  const double scale = std::sqrt(std::fabs(a2));
  const bool massive = a2 > 0.0;
  auto u_of = [&](double omega) {
    return massive ? std::acosh(std::max(1.0, omega / scale)) : std::asinh(omega / scale);
  };
  auto omega_of = [&](double u) { return massive ? scale * std::cosh(u) : scale * std::sinh(u); };
  const double prefactor = a2 * a2 / 8.0;
  const auto lo_d = static_cast<double>(lo);
  const auto hi_d = static_cast<double>(hi);
  const double coef_abs = std::fabs(static_cast<double>(sb.coef));

  double t_integral = 0.0;
  if (!exp_reg) {
    if (std::isinf(hi_d)) throw DivergenceError("integrate: unregulated continuum on an unbounded range");
    auto antiderivative = [](double u) { return u + std::exp(-4.0 * u) / 4.0; };
    t_integral = prefactor * (antiderivative(u_of(hi_d)) - antiderivative(u_of(lo_d)));
  } else {
    // beyond the cut the integrand is below a2^2/(2 omega) e^{-eps omega}
    const double e = reg.parameter();
    const double cut = lo_d + 80.0 / e;
    const double upper = std::min(hi_d, cut);
    const double u0 = u_of(lo_d);
    const double u1 = u_of(upper);
    // |T part| <= prefactor (u1 - u0); a2 ~ 1e-16 from rounded couplings lands here
    const double crude = prefactor * std::max(0.0, u1 - u0);
    if (u1 > u0 && crude <= static_cast<double>(detail::kWideEpsilon * std::fabs(value))) {
      error += coef_abs * crude;
    } else if (u1 > u0) {
      // tighter tolerances stall on the roundoff floor of the error estimate
      double quad_error = 0.0;
      auto f = [&](double u) { return (1.0 - std::exp(-4.0 * u)) * std::exp(-e * omega_of(u)); };
      t_integral = prefactor * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                                   f, u0, u1, 10, 1e-11, &quad_error);
      error += coef_abs * prefactor * quad_error;
    }
    if (hi_d > cut) error += coef_abs * a2 * a2 / (2.0 * cut) * std::exp(-e * cut) / e;
  }
  error += coef_abs * std::fabs(t_integral) * 4.0 * std::numeric_limits<double>::epsilon();
  value -= t_integral;
  return sb.coef * value;
}

}  // namespace detail

/// Integral split into its comb and continuum contributions.
inline IntegrationBreakdown integrate_detailed(const SpectralDistribution& dist,
                                               const Window& window, const Regulator& reg) {
  using detail::wide;
  const Real lo = window.lo();
  Real cutoff = window.hi();
  if (reg.kind() == Regulator::Kind::Sharp) cutoff = std::min(cutoff, Real{reg.parameter()});
  const bool exp_reg = reg.kind() == Regulator::Kind::Exponential;
  const wide eps = reg.parameter();

  IntegrationBreakdown out;
  double error = 0.0;

  const DeltaSequence& deltas = dist.deltas();
  if (!exp_reg && std::isinf(cutoff) && deltas.unbounded()) {
    throw DivergenceError("integrate: unregulated comb on an unbounded window diverges");
  }

  detail::Accumulator<wide> comb;
  if (cutoff >= lo) {
    const Envelope& env = deltas.envelope();
    std::size_t i = detail::first_index(deltas.size(),
                                        [&](std::size_t k) { return deltas[k].frequency >= lo; });
    Real previous = -1;
    for (; i < deltas.size(); ++i) {
      const Delta d = deltas[i];
      if (!(d.frequency > previous)) {
        throw ConsistencyError("integrate: delta frequencies are not increasing");
      }
      previous = d.frequency;
      if (d.frequency > cutoff) break;
      const wide reg_w = exp_reg ? std::exp(-eps * static_cast<wide>(d.frequency))
                                 : static_cast<wide>(reg.weight(d.frequency));
      comb += static_cast<wide>(d.weight) * window.weight(d.frequency) * reg_w;
      if (exp_reg && env.coef > 0.0 && comb.count() % detail::kTailCheckStride == 0 &&
          eps * d.frequency >= env.power) {
        // bound from the current frequency on, so it also covers what follows
        const wide tail = detail::delta_tail_bound(env, eps, d.frequency);
        if (tail <= detail::kTailFraction * std::max(std::fabs(comb.sum()), comb.abs_sum())) {
          error += static_cast<double>(tail);
          ++i;
          break;
        }
      }
    }
  }
  out.deltas_used = comb.count();

  const PieceSequence& pieces = dist.continuum();
  detail::Accumulator<wide> cont;
  if (cutoff > lo) {
    const Envelope& env = pieces.envelope();
    std::size_t j =
        detail::first_index(pieces.size(), [&](std::size_t k) { return piece_hi(pieces[k]) > lo; });
    for (; j < pieces.size(); ++j) {
      const ContinuumPiece piece = pieces[j];
      const Real start = piece_lo(piece);
      if (start >= cutoff) break;
      if (pieces.unbounded()) {
        if (!exp_reg && std::isinf(cutoff)) {
          throw DivergenceError("integrate: unregulated continuum on an unbounded window diverges");
        }
        if (exp_reg && eps * start >= env.power && j % detail::kTailCheckStride == 0) {
          const wide tail = detail::piece_tail_bound(env, eps, start);
          if (tail <= detail::kTailFraction * std::max(std::fabs(cont.sum()), cont.abs_sum())) {
            error += static_cast<double>(tail);
            break;
          }
        }
      }
      cont += detail::piece_integral(piece, reg, lo, cutoff, error) / kTwoPiWide;
    }
  }
  out.pieces_used = cont.count();

  const wide total = comb.sum() + cont.sum();
  error += static_cast<double>(8 * detail::kWideEpsilon * (comb.abs_sum() + cont.abs_sum()));
  error += std::numeric_limits<double>::epsilon() * std::fabs(static_cast<double>(total));

  out.delta_part = static_cast<double>(comb.sum());
  out.continuum_part = static_cast<double>(cont.sum());
  out.total.value = static_cast<double>(total);
  out.total.error_bound = error;
  out.total.terms_used = out.deltas_used + out.pieces_used;
  if (!std::isfinite(out.total.value)) throw NonFiniteError("integrate: non-finite result");
  return out;
}

/// \int window(omega) reg(omega) sigma(omega) domega / 2pi.
inline SeriesResult integrate(const SpectralDistribution& dist, const Window& window,
                              const Regulator& reg) {
  return integrate_detailed(dist, window, reg).total;
}

struct CumulativePoint {
  double omega0 = 0.0;
  double value = 0.0;
  double error_bound = 0.0;
};

/// Running integral over [0, omega0] for each grid point, computed in a single
/// sweep. A grid point of 0 gives 0.
inline std::vector<CumulativePoint> cumulative(const SpectralDistribution& dist,
                                               const Regulator& reg,
                                               const std::vector<double>& grid) {
  using detail::wide;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0) {
      throw ArgumentError("cumulative: grid points must be finite and non-negative");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw ArgumentError("cumulative: grid must be strictly increasing");
    }
  }
  const bool exp_reg = reg.kind() == Regulator::Kind::Exponential;
  const wide eps = reg.parameter();
  auto reg_weight = [&](Real w) -> wide {
    return exp_reg ? std::exp(-eps * static_cast<wide>(w)) : static_cast<wide>(reg.weight(w));
  };
  const double reg_end = reg.kind() == Regulator::Kind::Sharp ? reg.parameter() : detail::kInf;

  const DeltaSequence& deltas = dist.deltas();
  const PieceSequence& pieces = dist.continuum();
  detail::Accumulator<wide> comb;
  detail::Accumulator<wide> cont;
  double quad_error = 0.0;
  std::size_t di = 0;
  std::size_t pj = 0;
  double prev = 0.0;

  std::vector<CumulativePoint> out;
  out.reserve(grid.size());
  for (double g : grid) {
    if (g == 0.0) {
      out.push_back({0.0, 0.0, 0.0});
      continue;
    }
    // deltas strictly below g count fully, a delta at g counts half
    while (di < deltas.size()) {
      const Delta d = deltas[di];
      if (d.frequency >= g) break;
      if (d.frequency <= reg_end) comb += static_cast<wide>(d.weight) * reg_weight(d.frequency);
      ++di;
    }
    wide boundary = 0;
    if (di < deltas.size()) {
      const Delta d = deltas[di];
      if (d.frequency == g && d.frequency <= reg_end) {
        boundary = static_cast<wide>(d.weight) * reg_weight(d.frequency) / 2;
      }
    }
    // continuum over [prev, g]
    const double upper = std::min(g, reg_end);
    if (upper > prev) {
      while (pj < pieces.size() && piece_hi(pieces[pj]) <= prev) ++pj;
      for (std::size_t k = pj; k < pieces.size(); ++k) {
        const ContinuumPiece piece = pieces[k];
        if (piece_lo(piece) >= upper) break;
        cont += detail::piece_integral(piece, reg, prev, upper, quad_error) / kTwoPiWide;
      }
    }
    prev = std::max(prev, upper);

    const wide total = comb.sum() + boundary + cont.sum();
    const double value = static_cast<double>(total);
    if (!std::isfinite(value)) throw NonFiniteError("cumulative: non-finite result");
    double error = quad_error;
    error += static_cast<double>(8 * detail::kWideEpsilon *
                                 (comb.abs_sum() + std::fabs(boundary) + cont.abs_sum()));
    error += std::numeric_limits<double>::epsilon() * std::fabs(value);
    out.push_back({g, value, error});
  }
  return out;
}

/// Continuum density at omega (pieces are half-open [lo, hi)); deltas are not
/// included.
inline double continuum_density(const SpectralDistribution& dist, double omega) {
  const PieceSequence& pieces = dist.continuum();
  const Real w = omega;
  Real value = 0;
  std::size_t j =
      detail::first_index(pieces.size(), [&](std::size_t k) { return piece_hi(pieces[k]) > w; });
  for (; j < pieces.size(); ++j) {
    const ContinuumPiece piece = pieces[j];
    if (piece_lo(piece) > w) break;
    if (const auto* pl = std::get_if<PowerLaw>(&piece)) {
      if (w >= pl->lo && w < pl->hi) value += pl->coef * std::pow(w, pl->exponent);
    } else {
      const auto& sb = std::get<SqrtBranch>(piece);
      if (w >= branch_start(sb.a2)) {
        value += sb.coef * w * w * std::sqrt(std::max(Real{0}, w * w - sb.a2));
      }
    }
  }
  return static_cast<double>(value);
}

}  // namespace vacspec
