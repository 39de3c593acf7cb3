#include "rdec/trajectory_stats.hpp"

#include <algorithm>
#include <cmath>

#include "rdec/errors.hpp"

namespace rdec {

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw ConfigError("quantile: empty sample");
  if (q < 0.0 || q > 1.0) throw ConfigError("quantile: q outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * (values.size() - 1);
  const auto lo = static_cast<size_t>(std::floor(pos));
  const auto hi = static_cast<size_t>(std::ceil(pos));
  const double frac = pos - lo;
  return (1.0 - frac) * values[lo] + frac * values[hi];
}

GammaStats gamma_stats(const Trajectory& trajectory) {
  if (trajectory.step_count() < 1)
    throw ConfigError("gamma_stats: trajectory has no steps");
  std::vector<double> gammas;
  gammas.reserve(trajectory.step_count());
  for (size_t i = 1; i < trajectory.records.size(); ++i)
    gammas.push_back(trajectory.records[i].gamma);

  GammaStats stats;
  stats.step_count = static_cast<int>(gammas.size());
  stats.median = quantile(gammas, 0.5);
  stats.q1 = quantile(gammas, 0.25);
  stats.q3 = quantile(gammas, 0.75);
  stats.min = *std::min_element(gammas.begin(), gammas.end());
  stats.max = *std::max_element(gammas.begin(), gammas.end());
  return stats;
}

}  // namespace rdec
