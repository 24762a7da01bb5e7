#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "vacspec/circle.hpp"
#include "vacspec/extrapolate.hpp"
#include "vacspec/spectral.hpp"

using namespace vacspec;

namespace {

const double kPi = std::numbers::pi;

SpectralDistribution unit_circle() { return circle::circle_distribution({1.0}); }

SpectralDistribution small_comb() {
  return {DeltaSequence(std::vector<Delta>{{1.0, 2.0}, {2.0, 3.0}, {3.5, 1.0}}), PieceSequence{}};
}

}  // namespace

TEST(Integrate, BandWindowsCancel) {
  const auto d = unit_circle();
  for (int j = 1; j <= 50; ++j) {
    const auto r = integrate(d, Window::band(j, 1.0), Regulator::none());
    EXPECT_NEAR(r.value, 0.0, 1e-12 * (1.0 + 2.0 * kPi * j)) << "j=" << j;
  }
}

TEST(Integrate, FirstIntervalUnregulated) {
  const auto r = integrate(unit_circle(), Window::interval(0.0, kPi), Regulator::none());
  EXPECT_NEAR(r.value, -kPi / 4.0, 1e-15);
}

TEST(Integrate, EmptyDistributionGivesZero) {
  const SpectralDistribution empty;
  EXPECT_EQ(integrate(empty, Window::interval(0.0, 5.0), Regulator::none()).value, 0.0);
  EXPECT_EQ(integrate(empty, Window::band(2, 1.0), Regulator::exponential(0.1)).value, 0.0);
  EXPECT_EQ(integrate(empty, Window::interval(0.0, INFINITY), Regulator::none()).value, 0.0);
}

TEST(Integrate, UnregulatedInfiniteCombDiverges) {
  EXPECT_THROW(integrate(unit_circle(), Window::interval(0.0, INFINITY), Regulator::none()),
               DivergenceError);
  const SpectralDistribution cont_only{DeltaSequence{},
                                       PieceSequence(std::vector<ContinuumPiece>{PowerLaw{1.0, 2}})};
  EXPECT_THROW(integrate(cont_only, Window::interval(1.0, INFINITY), Regulator::none()),
               DivergenceError);
}

TEST(Integrate, BoundaryDeltasGetHalfWeight) {
  const auto d = small_comb();
  EXPECT_DOUBLE_EQ(integrate(d, Window::interval(0.5, 2.0), Regulator::none()).value, 2.0 + 1.5);
  EXPECT_DOUBLE_EQ(integrate(d, Window::interval(1.0, 3.0), Regulator::none()).value, 1.0 + 3.0);
  EXPECT_DOUBLE_EQ(integrate(d, Window::interval(0.0, 10.0), Regulator::sharp(2.0)).value, 2.0 + 1.5);
}

TEST(Integrate, HalfWeightsMakePartitionsExact) {
  const auto d = unit_circle();
  const double wn = 2.0 * kPi * 3.0;
  const double X = 31.0;
  const auto reg = Regulator::exponential(0.05);
  const double whole = integrate(d, Window::interval(0.0, X), reg).value;
  const double left = integrate(d, Window::interval(0.0, wn), reg).value;
  const double right = integrate(d, Window::interval(wn, X), reg).value;
  EXPECT_NEAR(left + right, whole, 1e-12 * std::fabs(whole) + 1e-14);
}

TEST(Integrate, AdditiveOverPartitions) {
  const auto d = unit_circle();
  const auto reg = Regulator::exponential(0.01);
  const std::vector<double> cuts{0.0, 1.3, 7.9, 20.0, 55.5, 300.0, INFINITY};
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    sum += integrate(d, Window::interval(cuts[i], cuts[i + 1]), reg).value;
  }
  const double whole = integrate(d, Window::interval(0.0, INFINITY), reg).value;
  EXPECT_NEAR(sum, whole, 1e-12 * std::fabs(whole) + 1e-11);
}

TEST(Integrate, ExponentialMonotoneOnPositiveComb) {
  const SpectralDistribution comb{
      DeltaSequence(
          kUnbounded,
          [](std::size_t i) {
            const Real w = static_cast<Real>(i + 1);
            return Delta{w, w * w};
          },
          Envelope{1.0, 2, 1.0}),
      PieceSequence{}};
  double previous = INFINITY;
  for (double eps : {0.01, 0.02, 0.05, 0.1, 0.3, 1.0}) {
    const double v = integrate(comb, Window::interval(0.0, INFINITY), Regulator::exponential(eps)).value;
    EXPECT_LT(v, previous);
    previous = v;
  }
}

TEST(Integrate, ExponentialTruncationMatchesClosedForm) {
  // sum n e^{-eps n} = e^{-eps} / (1 - e^{-eps})^2
  const SpectralDistribution comb{
      DeltaSequence(
          kUnbounded,
          [](std::size_t i) {
            const Real w = static_cast<Real>(i + 1);
            return Delta{w, w};
          },
          Envelope{1.0, 1, 1.0}),
      PieceSequence{}};
  const double eps = 0.003;
  const auto r = integrate(comb, Window::interval(0.0, INFINITY), Regulator::exponential(eps));
  const long double d = std::expm1(-static_cast<long double>(eps));
  const double exact = static_cast<double>(std::exp(-static_cast<long double>(eps)) / (d * d));
  EXPECT_NEAR(r.value, exact, 1e-15 * exact);
  EXPECT_LE(std::fabs(r.value - exact), r.error_bound + 1e-16 * exact);
}

TEST(Integrate, SqrtBranchReducesToCubic) {
  const SpectralDistribution a{DeltaSequence{},
                               PieceSequence(std::vector<ContinuumPiece>{SqrtBranch{1.5, 0.0}})};
  const SpectralDistribution b{DeltaSequence{},
                               PieceSequence(std::vector<ContinuumPiece>{PowerLaw{1.5, 3}})};
  for (const auto& reg : {Regulator::none(), Regulator::exponential(0.2)}) {
    const auto w = Window::interval(0.3, 4.0);
    const double va = integrate(a, w, reg).value;
    const double vb = integrate(b, w, reg).value;
    EXPECT_NEAR(va, vb, 1e-10 * std::fabs(vb));
  }
}

TEST(Integrate, SqrtBranchAgainstQuadrature) {
  for (double a2 : {0.64, -0.5, 2.0}) {
    const SpectralDistribution d{DeltaSequence{},
                                 PieceSequence(std::vector<ContinuumPiece>{SqrtBranch{1.0, a2}})};
    const double eps = 0.7;
    const double lo = 0.0;
    const double start = a2 > 0 ? std::sqrt(a2) : 0.0;
    auto f = [&](double w) { return w * w * std::sqrt(w * w - a2) * std::exp(-eps * w) / (2 * kPi); };
    // substitute w = start + t^2 to tame the branch point
    auto g = [&](double t) { return 2.0 * t * f(start + t * t); };
    const double ref = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, 12.0, 15, 1e-14);
    const double got = integrate(d, Window::interval(lo, INFINITY), Regulator::exponential(eps)).value;
    EXPECT_NEAR(got, ref, 1e-11 * std::fabs(ref)) << "a2=" << a2;
    // unregulated on a finite window
    const double hi = 3.0;
    auto h = [&](double t) {
      const double w = start + t * t;
      return 2.0 * t * w * w * std::sqrt(w * w - a2) / (2 * kPi);
    };
    const double ref2 = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        h, 0.0, std::sqrt(hi - start), 15, 1e-14);
    const double got2 = integrate(d, Window::interval(lo, hi), Regulator::none()).value;
    EXPECT_NEAR(got2, ref2, 1e-11 * std::fabs(ref2)) << "a2=" << a2;
  }
}

TEST(Integrate, ErrorsOnBadWindowsAndRegulators) {
  EXPECT_THROW(Window::interval(2.0, 1.0), ArgumentError);
  EXPECT_THROW(Window::interval(-1.0, 1.0), ArgumentError);
  EXPECT_THROW(Window::band(0, 1.0), ArgumentError);
  EXPECT_THROW(Regulator::exponential(0.0), ArgumentError);
  EXPECT_THROW(Regulator::sharp(-1.0), ArgumentError);
  EXPECT_THROW(DeltaSequence(std::vector<Delta>{{2.0, 1.0}, {1.0, 1.0}}), ArgumentError);
  EXPECT_GT(Window::band(1, 1.0).lo(), 0.0);
}

TEST(Regulator, Weights) {
  EXPECT_EQ(Regulator::exponential(0.3).weight(0), 1);
  EXPECT_EQ(Regulator::sharp(2.0).weight(0), 1);
  EXPECT_EQ(Regulator::sharp(2.0).weight(2.0), 0.5L);
  EXPECT_EQ(Regulator::sharp(2.0).weight(2.5), 0);
  EXPECT_LT(Regulator::exponential(0.3).weight(2.0), Regulator::exponential(0.3).weight(1.0));
}

TEST(Cumulative, MatchesIntegratePointwise) {
  const auto d = unit_circle();
  const auto reg = Regulator::exponential(0.01);
  std::vector<double> grid;
  for (int i = 0; i <= 200; ++i) grid.push_back(0.37 * i);
  grid.push_back(2.0 * kPi * 12.0);  // exact hit on a mode
  const auto c = cumulative(d, reg, grid);
  ASSERT_EQ(c.size(), grid.size());
  EXPECT_EQ(c[0].value, 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double ref = integrate(d, Window::interval(0.0, grid[i]), reg).value;
    EXPECT_NEAR(c[i].value, ref, 1e-12 * (1.0 + std::fabs(ref))) << grid[i];
  }
}

TEST(Cumulative, SharpRegulatorMatchesIntegrate) {
  const auto d = unit_circle();
  const auto reg = Regulator::sharp(40.0);
  const std::vector<double> grid{5.0, 12.0, 39.0, 40.0, 60.0};
  const auto c = cumulative(d, reg, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double ref = integrate(d, Window::interval(0.0, grid[i]), reg).value;
    EXPECT_NEAR(c[i].value, ref, 1e-12 * (1.0 + std::fabs(ref)));
  }
}

TEST(Cumulative, RejectsUnsortedGrid) {
  EXPECT_THROW(cumulative(unit_circle(), Regulator::none(), {1.0, 0.5}), ArgumentError);
  EXPECT_THROW(cumulative(unit_circle(), Regulator::none(), {1.0, 1.0}), ArgumentError);
  EXPECT_THROW(cumulative(unit_circle(), Regulator::none(), {-1.0}), ArgumentError);
}

TEST(Cumulative, ConvergesWithExponentialRegulator) {
  // far beyond q the cumulative integral sits on the eps-regulated energy
  const auto c = cumulative(unit_circle(), Regulator::exponential(1e-3), {60000.0});
  EXPECT_NEAR(c[0].value, -kPi / 6.0, 1e-4);
}

TEST(Cumulative, SharpCutoffKeepsOscillating) {
  std::vector<double> grid;
  for (int i = 1; i <= 2000; ++i) grid.push_back(0.05 * i);
  const auto c = cumulative(unit_circle(), Regulator::sharp(100.0), grid);
  double lo = INFINITY;
  double hi = -INFINITY;
  for (const auto& p : c) {
    if (p.omega0 < 50.0) continue;
    lo = std::min(lo, p.value);
    hi = std::max(hi, p.value);
  }
  EXPECT_GT(hi - lo, 10.0);
}

TEST(Extrapolate, EvenPowerModelIsExact) {
  const double c = 0.123456789;
  const double v = extrapolate_eps([&](double e) { return c + e * e; }, 0.1, 2);
  EXPECT_NEAR(v, c, 1e-12);
  const double w = extrapolate_eps([&](double e) { return c + 3 * e * e - 7 * std::pow(e, 4); }, 0.1, 3);
  EXPECT_NEAR(w, c, 1e-12);
}

TEST(Extrapolate, AllPowerModelIsExact) {
  const double c = -2.5;
  const double v = extrapolate_eps([&](double e) { return c + 0.3 * e - e * e + 2 * e * e * e; }, 0.2, 4,
                                   ErrorSeries::AllPowers);
  EXPECT_NEAR(v, c, 1e-12);
}

TEST(Extrapolate, RejectsBadInput) {
  EXPECT_THROW(extrapolate_eps([](double) { return 1.0; }, 0.1, 1), ArgumentError);
  EXPECT_THROW(extrapolate_eps([](double) { return NAN; }, 0.1, 2), NonFiniteError);
}

TEST(Extrapolate, CircleEnergy) {
  const double v = extrapolate_eps(
      [](double e) { return circle::circle_energy({1.0}, e).value; }, 1e-2, 3);
  EXPECT_NEAR(v, -kPi / 6.0, 1e-8);
}
