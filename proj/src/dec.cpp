#include "rdec/dec.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "rdec/errors.hpp"

namespace rdec {

const char* to_string(RelaxationMode mode) {
  switch (mode) {
    case RelaxationMode::None: return "none";
    case RelaxationMode::IDT: return "idt";
    case RelaxationMode::Relaxation: return "relaxation";
  }
  return "?";
}

const char* to_string(EntropyMode mode) {
  return mode == EntropyMode::Energy ? "energy" : "general";
}

DecConfig dec_config(int order, NodeFamily family, RelaxationMode relaxation,
                     EntropyMode entropy) {
  if (order < 2) throw ConfigError("dec_config: order must be >= 2");
  DecConfig cfg;
  cfg.M = order - 1;
  cfg.K = order;
  cfg.family = family;
  cfg.relaxation = relaxation;
  cfg.entropy = entropy;
  return cfg;
}

DecStepResult dec_step(const DecConfig& cfg, const CoefficientSet& coeffs,
                       const OdeProblem& problem, double tn, const Vector& yn,
                       double dt) {
  if (dt <= 0.0) throw ConfigError("dec_step: dt must be positive");
  if (cfg.K < 1) throw ConfigError("dec_step: need at least one correction");
  if (coeffs.M != cfg.M)
    throw ConfigError("dec_step: coefficient set does not match config");

  const int M = cfg.M;
  std::vector<Vector> y(M + 1, yn);
  std::vector<Vector> f(M + 1);
  const Vector f0 = problem.rhs(tn, yn);
  for (int r = 0; r <= M; ++r) f[r] = f0;

  for (int k = 1; k < cfg.K; ++k) {
    for (int m = 1; m <= M; ++m) {
      Vector u = yn;
      for (int r = 0; r <= M; ++r)
        u += dt * coeffs.theta(m - 1, r) * f[r];
      y[m] = std::move(u);
    }
    for (int m = 1; m <= M; ++m)
      f[m] = problem.rhs(tn + coeffs.nodes(m) * dt, y[m]);
  }

  // Final correction: only the update at m = M feeds y^{n+1}. The stage
  // derivatives are reused for the relaxation factor.
  Vector direction = Vector::Zero(yn.size());
  for (int r = 0; r <= M; ++r)
    direction += dt * coeffs.theta(M - 1, r) * f[r];

  DecStepResult res;
  res.stage_states = std::move(y);
  res.stage_derivatives = std::move(f);
  if (cfg.relaxation == RelaxationMode::None) {
    res.y_end = yn + direction;
    return res;
  }

  double estimate = 0.0;
  if (cfg.track_dissipation) {
    if (cfg.entropy == EntropyMode::Energy) {
      for (int r = 0; r <= M; ++r)
        estimate += dt * coeffs.theta(M - 1, r) *
                    res.stage_states[r].dot(res.stage_derivatives[r]);
    } else {
      if (!problem.entropy_derivative)
        throw ConfigError("dec_step: dissipation tracking needs entropy'");
      for (int r = 0; r <= M; ++r)
        estimate += dt * coeffs.theta(M - 1, r) *
                    problem.entropy_derivative(res.stage_states[r])
                        .dot(res.stage_derivatives[r]);
    }
  }

  if (cfg.entropy == EntropyMode::Energy) {
    res.gamma_info = gamma_energy_from_direction(yn, direction, estimate);
  } else {
    if (!problem.entropy)
      throw ConfigError("dec_step: General entropy mode needs an entropy");
    res.gamma_info = gamma_entropy_root(problem.entropy, yn, direction,
                                        estimate, cfg.root_solver);
  }
  res.gamma = res.gamma_info.gamma;
  res.y_end = yn + res.gamma * direction;
  return res;
}

namespace {

double eta_or_nan(const OdeProblem& problem, const Vector& y) {
  if (!problem.entropy) return std::numeric_limits<double>::quiet_NaN();
  return problem.entropy(y);
}

template <typename StepFn>
Trajectory run_steps(const OdeProblem& problem, RelaxationMode relaxation,
                     double t0, const Vector& y0, double dt, double t_final,
                     StepFn&& take_step) {
  if (dt <= 0.0) throw ConfigError("integrate: dt must be positive");
  if (!(t_final > t0)) throw ConfigError("integrate: t_final must exceed t0");

  Trajectory traj;
  traj.records.push_back({t0, y0, 1.0, eta_or_nan(problem, y0)});
  double t = t0;
  Vector y = y0;
  const double snap = 1e-12 * std::max(1.0, std::abs(t_final));
  while (t < t_final - snap) {
    const double h = std::min(dt, t_final - t);
    const bool clipped = h < dt;
    auto [y_next, gamma] = take_step(t, y, h);
    if (relaxation != RelaxationMode::None && gamma <= 0.0)
      throw NumericalAbort("integrate: nonpositive relaxation factor at t=" +
                           std::to_string(t));
    if (!y_next.allFinite())
      throw NumericalAbort("integrate: non-finite state at t=" +
                           std::to_string(t));
    y = std::move(y_next);
    t += (relaxation == RelaxationMode::Relaxation) ? gamma * h : h;
    traj.records.push_back({t, y, gamma, eta_or_nan(problem, y)});
    if (clipped) break;
  }
  return traj;
}

}  // namespace

Trajectory integrate(const DecConfig& cfg, const OdeProblem& problem,
                     double t0, const Vector& y0, double dt, double t_final) {
  const CoefficientSet coeffs = make_coefficients(cfg.M, cfg.family);
  return run_steps(problem, cfg.relaxation, t0, y0, dt, t_final,
                   [&](double t, const Vector& y, double h) {
                     DecStepResult s = dec_step(cfg, coeffs, problem, t, y, h);
                     return std::pair<Vector, double>(std::move(s.y_end),
                                                      s.gamma);
                   });
}

Trajectory integrate_rk(const ButcherTableau& tableau,
                        const OdeProblem& problem, RelaxationMode relaxation,
                        EntropyMode entropy, const RootSolverConfig& rootcfg,
                        double t0, const Vector& y0, double dt,
                        double t_final) {
  return run_steps(
      problem, relaxation, t0, y0, dt, t_final,
      [&](double t, const Vector& y, double h) {
        RkStepResult s = rk_step(tableau, problem.rhs, t, y, h);
        if (relaxation == RelaxationMode::None)
          return std::pair<Vector, double>(std::move(s.y_end), 1.0);
        GammaResult g;
        if (entropy == EntropyMode::Energy) {
          g = gamma_energy(tableau.A, tableau.b, s.stage_derivatives);
        } else {
          if (!problem.entropy)
            throw ConfigError("integrate_rk: General mode needs an entropy");
          const Vector direction = s.y_end - y;
          g = gamma_entropy_root(problem.entropy, y, direction, 0.0, rootcfg);
        }
        Vector y_next = y + g.gamma * (s.y_end - y);
        return std::pair<Vector, double>(std::move(y_next), g.gamma);
      });
}

}  // namespace rdec
