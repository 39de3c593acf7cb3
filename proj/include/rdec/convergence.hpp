#pragma once

#include <string>
#include <vector>

#include "rdec/dec.hpp"
#include "rdec/problems.hpp"

namespace rdec {

struct ConvergenceRow {
  double step = 0.0;   // dt or h
  double error = 0.0;
  double slope = 0.0;  // vs the previous row; NaN on the first row
};

struct ConvergenceTable {
  std::string label;
  double ratio = 2.0;
  std::vector<ConvergenceRow> rows;
};

/// Least-squares slope of log(error) vs log(step). Rows with error <= floor
/// are dropped so a round-off plateau does not pollute the fit.
double fitted_slope(const ConvergenceTable& table, double floor = 0.0);

/// Error of the final state against the exact solution, evaluated at the time
/// the run actually reached.
double final_error(const Trajectory& trajectory, const OdeProblem& problem);

/// Refinement study: integrate to t_final with dt0, dt0/ratio, ... and record
/// the final-state errors. Requires an exact solution.
ConvergenceTable ode_convergence(const DecConfig& cfg,
                                 const OdeProblem& problem, double t_final,
                                 double dt0, int refinements,
                                 double ratio = 2.0);

}  // namespace rdec
