#pragma once

#include <vector>

#include "rdec/coefficients.hpp"
#include "rdec/problems.hpp"
#include "rdec/relaxation.hpp"
#include "rdec/tableau.hpp"
#include "rdec/types.hpp"

namespace rdec {

/// None: plain DeC. IDT: scale the final update by gamma but advance time by
/// dt (costs one order). Relaxation: scale by gamma and advance by gamma*dt.
enum class RelaxationMode { None, IDT, Relaxation };

/// Energy: closed-form gamma for the squared norm. General: scalar root solve
/// on the problem's entropy.
enum class EntropyMode { Energy, General };

const char* to_string(RelaxationMode mode);
const char* to_string(EntropyMode mode);

struct DecConfig {
  int M = 1;
  int K = 2;  // corrections; design order d = min(K, M+1)
  NodeFamily family = NodeFamily::GaussLobatto;
  RelaxationMode relaxation = RelaxationMode::None;
  EntropyMode entropy = EntropyMode::Energy;
  // false enforces exact conservation (estimate = 0); true tracks the
  // semidiscrete entropy-change estimate, for dissipative problems.
  bool track_dissipation = false;
  RootSolverConfig root_solver;
};

/// Standard configuration of design order d: M = d-1 subintervals, K = d
/// corrections.
DecConfig dec_config(int order, NodeFamily family = NodeFamily::GaussLobatto,
                     RelaxationMode relaxation = RelaxationMode::None,
                     EntropyMode entropy = EntropyMode::Energy);

struct TrajectoryRecord {
  double t = 0.0;
  Vector y;
  double gamma = 1.0;
  double eta = 0.0;  // NaN when the problem has no entropy
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;  // records[0] is the initial state
  int step_count() const { return static_cast<int>(records.size()) - 1; }
};

struct DecStepResult {
  Vector y_end;
  double gamma = 1.0;
  GammaResult gamma_info;
  std::vector<Vector> stage_states;       // y^{r,(K-1)}, r = 0..M
  std::vector<Vector> stage_derivatives;  // f at those states
};

/// One DeC step of the simplified sweep
///
///   y^{m,(k)} = y^n + dt sum_r theta_r^m f(y^{r,(k-1)}),  m = 1..M,
///
/// run for k = 1..K-1, with the final correction evaluated at m = M only.
/// With relaxation active the final increment is scaled by gamma.
DecStepResult dec_step(const DecConfig& cfg, const CoefficientSet& coeffs,
                       const OdeProblem& problem, double tn, const Vector& yn,
                       double dt);

/// Integrate to t_final. The last step is clipped to land on t_final; in
/// Relaxation mode time advances by gamma*dt, so the final recorded time can
/// differ from t_final by O(gamma - 1) * dt. Aborts on gamma <= 0 or a
/// non-finite state.
Trajectory integrate(const DecConfig& cfg, const OdeProblem& problem,
                     double t0, const Vector& y0, double dt, double t_final);

/// Same driver for a plain RK tableau; gamma comes from the Butcher-level
/// energy formula or the entropy root solve on the b-weighted update.
Trajectory integrate_rk(const ButcherTableau& tableau,
                        const OdeProblem& problem, RelaxationMode relaxation,
                        EntropyMode entropy, const RootSolverConfig& rootcfg,
                        double t0, const Vector& y0, double dt,
                        double t_final);

}  // namespace rdec
