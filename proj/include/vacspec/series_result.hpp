#pragma once

#include <cstddef>

namespace vacspec {

/// A summed or integrated quantity together with what is known about its
/// accuracy. `error_bound` covers series/quadrature truncation plus a
/// worst-case estimate of accumulated rounding.
struct SeriesResult {
  double value = 0.0;
  double error_bound = 0.0;
  std::size_t terms_used = 0;
};

}  // namespace vacspec
