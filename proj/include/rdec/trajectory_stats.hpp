#pragma once

#include <vector>

#include "rdec/dec.hpp"

namespace rdec {

struct GammaStats {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double min = 0.0;
  double max = 0.0;
  int step_count = 0;
};

/// Linear-interpolation quantile of a sample (midpoint median for even
/// counts).
double quantile(std::vector<double> values, double q);

/// Order statistics of the per-step relaxation factors.
GammaStats gamma_stats(const Trajectory& trajectory);

}  // namespace rdec
