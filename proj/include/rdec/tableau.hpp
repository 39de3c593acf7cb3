#pragma once

#include <vector>

#include "rdec/coefficients.hpp"
#include "rdec/types.hpp"

namespace rdec {

/// Explicit Runge-Kutta coefficients. A is strictly lower triangular and
/// c_i equals the i-th row sum of A.
struct ButcherTableau {
  Matrix A;
  Vector b;
  Vector c;
  int stages() const { return static_cast<int>(b.size()); }
};

/// Shu-Osher rewrite of an explicit tableau. Row i of either matrix carries
/// the combination producing stage u_i (u_0 = y^n is implicit, so row 0 is
/// zero); the final row produces y^{n+1}. Read directly off the tableau,
/// alpha has a single 1 per row pointing at u_0 and beta stacks A over b.
struct ShuOsherForm {
  Matrix alpha;    // (s+1) x s
  Matrix beta_so;  // (s+1) x s
};

enum class NamedMethod { SSPRK22, SSPRK33, RK44 };

ButcherTableau named_tableau(NamedMethod method);

/// Butcher tableau of the deferred-correction method with the given
/// coefficients and number of correction sweeps. Intermediate subtimesteps
/// of the last sweep are dropped, so the standard choice corrections = M+1
/// yields (d-1)^2 + 1 stages for design order d = M+1.
ButcherTableau dec_to_butcher(const CoefficientSet& coeffs, int corrections);

ShuOsherForm butcher_to_shu_osher(const ButcherTableau& t);

struct RkStepResult {
  std::vector<Vector> stage_states;
  std::vector<Vector> stage_derivatives;
  Vector y_end;
};

/// One explicit RK step; stage derivatives are returned for relaxation use.
RkStepResult rk_step(const ButcherTableau& t, const Rhs& f, double tn,
                     const Vector& yn, double dt);

}  // namespace rdec
