#pragma once

#include <string>

#include "rdec/types.hpp"

namespace rdec {

/// An initial value problem with optional entropy pair and exact solution.
/// Any of the function members except rhs may be empty.
struct OdeProblem {
  std::string name;
  int dim = 0;
  Rhs rhs;
  std::function<double(const Vector&)> entropy;
  std::function<Vector(const Vector&)> entropy_derivative;
  std::function<Vector(double)> exact;
  Vector y0;
};

/// u' = (-u2/n, u1/n), n = |u|; rotation at rate 1/n, energy n^2/2 conserved.
OdeProblem nonlinear_oscillator(double u1_0 = 1.0, double u2_0 = 0.0);

/// Damped variant with decay rate alpha; energy decays as exp(-2 alpha t).
OdeProblem damped_oscillator(double u1_0, double u2_0, double alpha = 0.01);

/// u' = (-sin u2, u1) from (1.5, 0); entropy u1^2/2 - cos u2, no exact
/// solution.
OdeProblem pendulum();

}  // namespace rdec
