#include "rdec/convergence.hpp"

#include <cmath>
#include <limits>

#include "rdec/errors.hpp"

namespace rdec {

double fitted_slope(const ConvergenceTable& table, double floor) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (const auto& row : table.rows) {
    if (!(row.error > floor)) continue;
    const double x = std::log(row.step);
    const double y = std::log(row.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw ConfigError("fitted_slope: need at least two usable rows");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double final_error(const Trajectory& trajectory, const OdeProblem& problem) {
  if (!problem.exact)
    throw ConfigError("final_error: problem has no exact solution");
  const TrajectoryRecord& last = trajectory.records.back();
  return (last.y - problem.exact(last.t)).norm();
}

ConvergenceTable ode_convergence(const DecConfig& cfg,
                                 const OdeProblem& problem, double t_final,
                                 double dt0, int refinements, double ratio) {
  if (refinements < 2)
    throw ConfigError("ode_convergence: need at least two refinements");
  if (ratio <= 1.0) throw ConfigError("ode_convergence: ratio must exceed 1");

  ConvergenceTable table;
  table.label = std::string("dec") + std::to_string(std::min(cfg.K, cfg.M + 1)) +
                "-" + to_string(cfg.family) + "-" + to_string(cfg.relaxation);
  table.ratio = ratio;
  double dt = dt0;
  for (int i = 0; i < refinements; ++i, dt /= ratio) {
    const Trajectory traj =
        integrate(cfg, problem, 0.0, problem.y0, dt, t_final);
    ConvergenceRow row;
    row.step = dt;
    row.error = final_error(traj, problem);
    row.slope = std::numeric_limits<double>::quiet_NaN();
    if (!table.rows.empty() && table.rows.back().error > 0.0 && row.error > 0.0)
      row.slope = std::log(table.rows.back().error / row.error) /
                  std::log(ratio);
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace rdec
