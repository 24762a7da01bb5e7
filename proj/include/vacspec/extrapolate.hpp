#pragma once

// Richardson extrapolation of a regulated quantity to eps -> 0 along the
// ladder eps0, eps0/2, eps0/4, ...

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "vacspec/error.hpp"
#include "vacspec/series_result.hpp"

namespace vacspec {

enum class ErrorSeries {
  EvenPowers,  // c + a eps^2 + b eps^4 + ...
  AllPowers,   // c + a eps + b eps^2 + ...
};

struct ExtrapolationResult {
  double value = 0.0;
  double error_estimate = 0.0;  // |last two diagonal entries|
  std::vector<double> samples;  // evaluator values on the ladder
};

inline ExtrapolationResult extrapolate_eps_detailed(const std::function<double(double)>& evaluator,
                                                    double eps0, int levels,
                                                    ErrorSeries series = ErrorSeries::EvenPowers) {
  if (levels < 2) throw ArgumentError("extrapolate_eps: levels must be >= 2");
  if (!std::isfinite(eps0) || !(eps0 > 0.0)) throw ArgumentError("extrapolate_eps: eps0 must be > 0");
  const double ratio = series == ErrorSeries::EvenPowers ? 4.0 : 2.0;

  ExtrapolationResult out;
  std::vector<double> row;  // previous row of the tableau
  double eps = eps0;
  for (int i = 0; i < levels; ++i, eps /= 2.0) {
    const double sample = evaluator(eps);
    if (!std::isfinite(sample)) throw NonFiniteError("extrapolate_eps: evaluator returned non-finite value");
    out.samples.push_back(sample);
    std::vector<double> next{sample};
    double factor = 1.0;
    for (int j = 1; j <= i; ++j) {
      factor *= ratio;
      next.push_back(next[j - 1] + (next[j - 1] - row[j - 1]) / (factor - 1.0));
    }
    if (i > 0) out.error_estimate = std::fabs(next[i] - row[i - 1]);
    row = std::move(next);
  }
  out.value = row.back();
  return out;
}

/// Level-`levels` Richardson estimate of lim_{eps->0} evaluator(eps).
inline double extrapolate_eps(const std::function<double(double)>& evaluator, double eps0,
                              int levels, ErrorSeries series = ErrorSeries::EvenPowers) {
  return extrapolate_eps_detailed(evaluator, eps0, levels, series).value;
}

}  // namespace vacspec
