#pragma once

#include <functional>
#include <vector>

#include "rdec/types.hpp"

namespace rdec {

enum class RootMethod { Bisection, Brent, Newton };

struct RootSolverConfig {
  RootMethod method = RootMethod::Brent;
  double bracket_radius = 0.5;  // initial bracket [1 - r, 1 + r], in (0, 1)
  double tol = 1e-13;           // on |r(gamma)| relative to |eta(y0)| + 1
  int max_iter = 100;
};

struct GammaResult {
  double gamma = 1.0;
  double residual = 0.0;  // |r(gamma)| for root solves, 0 for closed forms
  int iterations = 0;
  bool fallback_used = false;  // degenerate update, gamma forced to 1
};

/// Relaxation factor for the squared-norm energy, computed from the Butcher
/// data of a completed step:
///
///   gamma = 2 sum_ij b_i A_ij <f_i, f_j> / ||sum_i b_i f_i||^2.
///
/// The b weight rides the row index of A; that is what cancels the
/// O(dt^2) energy terms and makes sum_ij b_i A_ij = 1/2 for second order
/// methods. Falls back to gamma = 1 when the update direction vanishes.
GammaResult gamma_energy(const Matrix& A, const Vector& b,
                         const std::vector<Vector>& stage_derivatives);

/// Relaxation factor for the squared-norm energy from the unrelaxed update
/// increment d. Imposes eta(y0 + gamma d) - eta(y0) = gamma * estimate for
/// eta = 1/2 <y, y>_W, whose nonzero root is
///
///   gamma = 2 (estimate - <y0, d>_W) / <d, d>_W.
///
/// `estimate` is the semidiscrete entropy-change rate per unit gamma; pass 0
/// to enforce exact norm conservation. `weight` is an optional diagonal of
/// the inner product (empty = identity).
GammaResult gamma_energy_from_direction(const Vector& y0,
                                        const Vector& direction,
                                        double estimate,
                                        const Vector& weight = Vector());

using EntropyFn = std::function<double(const Vector&)>;

/// Relaxation factor for a general convex entropy: the root near 1 of
///
///   r(gamma) = eta(y0 + gamma d) - eta(y0) - gamma * estimate.
///
/// The bracket starts at [1 - bracket_radius, 1 + bracket_radius] and doubles
/// outward up to four times while r has no sign change (the lower end is kept
/// strictly positive to exclude the trivial root at 0). Throws SolverFailure
/// when no bracket is found or the iteration does not converge.
GammaResult gamma_entropy_root(const EntropyFn& eta, const Vector& y0,
                               const Vector& direction, double estimate,
                               const RootSolverConfig& cfg = {});

}  // namespace rdec
