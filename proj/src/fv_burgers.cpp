#include "rdec/fv_burgers.hpp"

#include <cmath>

#include "rdec/errors.hpp"

namespace rdec {

FvGrid make_fv_grid(int n_cells) {
  if (n_cells < 3) throw ConfigError("make_fv_grid: need at least 3 cells");
  FvGrid grid;
  grid.n_cells = n_cells;
  grid.dx = 2.0 / n_cells;
  grid.x.resize(n_cells);
  for (int i = 0; i < n_cells; ++i) grid.x(i) = -1.0 + i * grid.dx;
  return grid;
}

Vector burgers_ec_rhs(const FvGrid& grid, const Vector& u) {
  const int n = grid.n_cells;
  if (u.size() != n) throw ConfigError("burgers_ec_rhs: state size mismatch");
  if (!u.allFinite()) throw NumericalAbort("burgers_ec_rhs: non-finite state");

  // flux(i) sits between cells i and i+1 (periodic)
  Vector flux(n);
  for (int i = 0; i < n; ++i) {
    const double ul = u(i);
    const double ur = u((i + 1) % n);
    flux(i) = (ul * ul + ul * ur + ur * ur) / 6.0;
  }
  Vector rhs(n);
  for (int i = 0; i < n; ++i) {
    const double fl = flux((i + n - 1) % n);
    rhs(i) = -(flux(i) - fl) / grid.dx;
  }
  return rhs;
}

OdeProblem burgers_problem(int n_cells) {
  const FvGrid grid = make_fv_grid(n_cells);
  OdeProblem p;
  p.name = "fv-burgers";
  p.dim = n_cells;
  p.y0 = (-30.0 * grid.x.array().square()).exp().matrix();
  p.rhs = [grid](double, const Vector& u) { return burgers_ec_rhs(grid, u); };
  const double dx = grid.dx;
  p.entropy = [dx](const Vector& u) { return 0.5 * dx * u.squaredNorm(); };
  p.entropy_derivative = [dx](const Vector& u) { return Vector(dx * u); };
  return p;
}

double burgers_cfl_dt(const FvGrid& grid, const Vector& u, double cfl) {
  if (cfl <= 0.0) throw ConfigError("burgers_cfl_dt: cfl must be positive");
  const double umax = u.cwiseAbs().maxCoeff();
  if (umax == 0.0) throw ConfigError("burgers_cfl_dt: zero wave speed");
  return cfl * grid.dx / umax;
}

}  // namespace rdec
