#pragma once

#include "rdec/problems.hpp"
#include "rdec/types.hpp"

namespace rdec {

/// Periodic grid of equally spaced points on [-1, 1], dx = 2/N.
struct FvGrid {
  int n_cells = 0;
  double dx = 0.0;
  Vector x;
};

FvGrid make_fv_grid(int n_cells);

/// Entropy-conservative flux-differencing right-hand side for Burgers,
///
///   rhs_i = -(F_{i+1/2} - F_{i-1/2}) / dx,
///   F_{i+1/2} = (u_i^2 + u_i u_{i+1} + u_{i+1}^2) / 6,
///
/// with periodic wraparound. The symmetric flux makes sum_i u_i rhs_i vanish
/// to round-off.
Vector burgers_ec_rhs(const FvGrid& grid, const Vector& u);

/// Burgers on [-1, 1] with u0(x) = exp(-30 x^2) sampled at the grid points,
/// discrete energy eta(u) = dx/2 sum u_i^2.
OdeProblem burgers_problem(int n_cells);

/// Time step from the CFL number: dt = cfl * dx / max|u|.
double burgers_cfl_dt(const FvGrid& grid, const Vector& u, double cfl);

}  // namespace rdec
