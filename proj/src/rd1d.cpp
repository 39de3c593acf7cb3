#include "rdec/rd1d.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "rdec/errors.hpp"

namespace rdec {

RdMesh make_rd_mesh(int n_elem, int degree, double length) {
  if (n_elem < 2) throw ConfigError("make_rd_mesh: need at least 2 elements");
  if (degree < 1) throw ConfigError("make_rd_mesh: degree must be >= 1");
  if (length <= 0.0) throw ConfigError("make_rd_mesh: length must be > 0");
  RdMesh mesh;
  mesh.n_elem = n_elem;
  mesh.degree = degree;
  mesh.length = length;
  mesh.h = length / n_elem;
  mesh.ref_nodes = gauss_lobatto_points(degree);
  mesh.dof_x.resize(mesh.n_dofs());
  for (int e = 0; e < n_elem; ++e)
    for (int j = 0; j < degree; ++j)
      mesh.dof_x(e * degree + j) = e * mesh.h + mesh.h * mesh.ref_nodes(j);
  return mesh;
}

RdOperatorSet make_rd_operators(const RdMesh& mesh) {
  const int p = mesh.degree;
  const LagrangeBasis basis(mesh.ref_nodes);
  const QuadratureRule rule = gauss_legendre(p + 1, 0.0, 1.0);

  RdOperatorSet ops;
  ops.quad_weights = rule.weights;
  ops.basis_values = basis.values_at(rule.points);
  ops.basis_derivs = basis.derivatives_at(rule.points);
  ops.dphi_left.resize(p + 1);
  ops.dphi_right.resize(p + 1);
  for (int a = 0; a <= p; ++a) {
    ops.dphi_left(a) = basis.derivative(a, 0.0);
    ops.dphi_right(a) = basis.derivative(a, 1.0);
  }

  // local mass m_ab = h * int phi_a phi_b dxi, assembled periodically
  Matrix local = Matrix::Zero(p + 1, p + 1);
  for (int q = 0; q < rule.points.size(); ++q)
    local += mesh.h * rule.weights(q) *
             (ops.basis_values.row(q).transpose() * ops.basis_values.row(q));

  const int n = mesh.n_dofs();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(mesh.n_elem) * (p + 1) * (p + 1));
  ops.lumped = Eigen::VectorXd::Zero(n);
  for (int e = 0; e < mesh.n_elem; ++e) {
    for (int a = 0; a <= p; ++a) {
      const int ga = mesh.global_dof(e, a);
      for (int b = 0; b <= p; ++b)
        triplets.emplace_back(ga, mesh.global_dof(e, b), local(a, b));
      ops.lumped(ga) += local.row(a).sum();
    }
  }
  ops.mass.resize(n, n);
  ops.mass.setFromTriplets(triplets.begin(), triplets.end());

  for (int i = 0; i < n; ++i)
    if (!(ops.lumped(i) > 0.0))
      throw NumericalAbort("make_rd_operators: nonpositive lumped mass");
  return ops;
}

RdResidualConfig linear_transport_config(CorrectionMode mode, double nu) {
  RdResidualConfig cfg;
  cfg.flux = [](double u) { return u; };
  cfg.flux_deriv = [](double) { return 1.0; };
  cfg.entropy = [](double u) { return 0.5 * u * u; };
  cfg.entropy_var = [](double u) { return u; };
  cfg.entropy_flux = [](double u) { return 0.5 * u * u; };
  cfg.correction = mode;
  cfg.nu = nu;
  return cfg;
}

RdResidualConfig burgers_rd_config(CorrectionMode mode, double nu) {
  RdResidualConfig cfg;
  cfg.flux = [](double u) { return 0.5 * u * u; };
  cfg.flux_deriv = [](double u) { return u; };
  cfg.entropy = [](double u) { return 0.5 * u * u; };
  cfg.entropy_var = [](double u) { return u; };
  cfg.entropy_flux = [](double u) { return u * u * u / 3.0; };
  cfg.correction = mode;
  cfg.nu = nu;
  return cfg;
}

CorrectionResult entropy_correct(const Eigen::VectorXd& element_residuals,
                                 const Eigen::VectorXd& v_values,
                                 double boundary_entropy_flux) {
  const auto n = element_residuals.size();
  if (n < 2) throw ConfigError("entropy_correct: element needs >= 2 DOFs");
  if (v_values.size() != n)
    throw ConfigError("entropy_correct: size mismatch");

  CorrectionResult out;
  const double imbalance =
      boundary_entropy_flux - v_values.dot(element_residuals);
  out.imbalance = imbalance;

  const double vbar = v_values.mean();
  const Eigen::VectorXd dv = v_values.array() - vbar;
  const double denom = dv.squaredNorm();
  const double vmax2 = v_values.cwiseAbs2().maxCoeff();
  if (denom <= 1e-28 * (1.0 + vmax2)) {
    // Constant entropy variables: a consistent residual must already be in
    // balance, there is nothing to distribute the defect over.
    const double scale =
        1.0 + std::abs(boundary_entropy_flux) +
        v_values.cwiseAbs().maxCoeff() * element_residuals.cwiseAbs().sum();
    if (std::abs(imbalance) > 1e-10 * scale)
      throw NumericalAbort(
          "entropy_correct: degenerate element with nonzero entropy defect");
    out.r = Eigen::VectorXd::Zero(n);
    out.corrected = element_residuals;
    return out;
  }
  out.r = (imbalance / denom) * dv;
  out.corrected = element_residuals + out.r;
  return out;
}

RdResidual assemble_space_residual(const RdMesh& mesh,
                                   const RdOperatorSet& ops,
                                   const RdResidualConfig& cfg,
                                   const Eigen::VectorXd& u) {
  const int p = mesh.degree;
  const int n = mesh.n_dofs();
  if (u.size() != n)
    throw ConfigError("assemble_space_residual: state size mismatch");
  if (!u.allFinite())
    throw NumericalAbort("assemble_space_residual: non-finite state");

  RdResidual res;
  res.phi = Eigen::VectorXd::Zero(n);
  res.element_phi.resize(p + 1, mesh.n_elem);

  const auto nq = ops.quad_weights.size();
  Eigen::VectorXd ue(p + 1), integrand(nq);
  for (int e = 0; e < mesh.n_elem; ++e) {
    for (int a = 0; a <= p; ++a) ue(a) = u(mesh.global_dof(e, a));
    const Eigen::VectorXd uq = ops.basis_values * ue;
    const Eigen::VectorXd duq = ops.basis_derivs * ue;
    // int phi_a d_x F(u^h) dx = int phi_a F'(u) du/dxi dxi; the h from the
    // measure cancels the 1/h of the derivative.
    for (int q = 0; q < nq; ++q)
      integrand(q) = ops.quad_weights(q) * cfg.flux_deriv(uq(q)) * duq(q);
    Eigen::VectorXd phi_loc = ops.basis_values.transpose() * integrand;

    if (cfg.correction != CorrectionMode::None) {
      Eigen::VectorXd v(p + 1);
      for (int a = 0; a <= p; ++a) v(a) = cfg.entropy_var(ue(a));
      const double gflux = cfg.entropy_flux(ue(p)) - cfg.entropy_flux(ue(0));
      phi_loc = entropy_correct(phi_loc, v, gflux).corrected;
    }
    res.element_phi.col(e) = phi_loc;
    for (int a = 0; a <= p; ++a) res.phi(mesh.global_dof(e, a)) += phi_loc(a);
  }

  if (cfg.correction == CorrectionMode::ConservativePlusJump && cfg.nu > 0.0) {
    // Interface i sits at the left end of element i; the left neighbour is
    // element i-1. Jumps are differences of one-sided physical derivatives.
    Eigen::VectorXd ul(p + 1), ur(p + 1);
    for (int e = 0; e < mesh.n_elem; ++e) {
      const int el = (e + mesh.n_elem - 1) % mesh.n_elem;
      for (int a = 0; a <= p; ++a) {
        ul(a) = u(mesh.global_dof(el, a));
        ur(a) = u(mesh.global_dof(e, a));
      }
      const double du_left = ops.dphi_right.dot(ul) / mesh.h;
      const double du_right = ops.dphi_left.dot(ur) / mesh.h;
      const double jump_u = du_left - du_right;
      const double factor = cfg.nu * mesh.h * mesh.h * jump_u;
      for (int a = 0; a <= p; ++a) {
        res.phi(mesh.global_dof(el, a)) +=
            factor * ops.dphi_right(a) / mesh.h;
        res.phi(mesh.global_dof(e, a)) -= factor * ops.dphi_left(a) / mesh.h;
      }
    }
  }
  return res;
}

GammaResult rd_gamma(const Eigen::VectorXd& u0, const Eigen::VectorXd& du,
                     double estimate, const Eigen::VectorXd& lumped) {
  return gamma_energy_from_direction(u0, du, estimate, lumped);
}

GammaResult rd_gamma_appendix(double d_term, double e_term, double csq_term) {
  GammaResult res;
  if (csq_term < 0.0)
    throw ConfigError("rd_gamma_appendix: csq_term must be >= 0");
  const double scale = std::abs(d_term) + std::abs(e_term) + csq_term;
  if (csq_term <= 1e-28 * (1.0 + scale)) {
    if (e_term == 0.0)
      throw SolverFailure("rd_gamma_appendix: degenerate linear equation");
    res.gamma = -d_term / e_term;
    if (!(res.gamma > 0.0))
      throw SolverFailure("rd_gamma_appendix: no positive root");
    return res;
  }
  const double disc = e_term * e_term - 4.0 * csq_term * d_term;
  if (disc < 0.0)
    throw SolverFailure("rd_gamma_appendix: no real root (NoPositiveRoot)");
  const double sq = std::sqrt(disc);
  const double r1 = (-e_term + sq) / (2.0 * csq_term);
  const double r2 = (-e_term - sq) / (2.0 * csq_term);
  double best = 0.0;
  bool found = false;
  for (const double r : {r1, r2}) {
    if (r <= 0.0) continue;
    if (!found || std::abs(r - 1.0) < std::abs(best - 1.0)) {
      best = r;
      found = true;
    }
  }
  if (!found)
    throw SolverFailure("rd_gamma_appendix: no positive root (NoPositiveRoot)");
  res.gamma = best;
  return res;
}

AppendixTerms rd_appendix_terms(const RdOperatorSet& ops,
                                const Eigen::VectorXd& u0,
                                const Eigen::VectorXd& u_last,
                                const Eigen::VectorXd& dt_theta_flux) {
  const Eigen::VectorXd dinv_m_u0 =
      ops.lumped.cwiseInverse().cwiseProduct(ops.mass * u0);
  const Eigen::VectorXd dinv_m_ul =
      ops.lumped.cwiseInverse().cwiseProduct(ops.mass * u_last);
  const Eigen::VectorXd ab = dinv_m_u0 + (u_last - dinv_m_ul);
  const Eigen::VectorXd c = -dt_theta_flux;
  const auto wdot = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return a.cwiseProduct(ops.lumped).dot(b);
  };
  AppendixTerms terms;
  terms.d_term = wdot(ab, ab) - wdot(u0, u0);
  terms.e_term = 2.0 * wdot(ab, c);
  terms.csq_term = wdot(c, c);
  return terms;
}

RdStepResult rd_dec_step(const RdMesh& mesh, const RdOperatorSet& ops,
                         const RdResidualConfig& cfg, const RdDecOptions& opts,
                         const CoefficientSet& coeffs,
                         const Eigen::VectorXd& u0, double dt,
                         RdStepDiagnostics* diag) {
  if (dt <= 0.0) throw ConfigError("rd_dec_step: dt must be positive");
  const int M = opts.time.M;
  const int K = opts.time.K;
  if (coeffs.M != M)
    throw ConfigError("rd_dec_step: coefficient set does not match config");

  const Eigen::VectorXd dinv = ops.lumped.cwiseInverse();
  const auto apply_mass = [&](const Eigen::VectorXd& w) -> Eigen::VectorXd {
    if (opts.lumped_mass) return ops.lumped.cwiseProduct(w);
    return ops.mass * w;
  };

  std::vector<Eigen::VectorXd> u(M + 1, u0);
  std::vector<Eigen::VectorXd> phi(M + 1);
  phi[0] = assemble_space_residual(mesh, ops, cfg, u0).phi;
  for (int r = 1; r <= M; ++r) phi[r] = phi[0];

  const auto record_defect = [&]() {
    if (!diag) return;
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(u0.size());
    for (int r = 0; r <= M; ++r) sum += coeffs.theta(M - 1, r) * phi[r];
    diag->l2_defect.push_back((ops.mass * (u[M] - u0) + dt * sum).norm());
  };
  record_defect();

  std::vector<Eigen::VectorXd> u_new(M + 1);
  for (int k = 1; k < K; ++k) {
    for (int m = 1; m <= M; ++m) {
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(u0.size());
      for (int r = 0; r <= M; ++r) sum += coeffs.theta(m - 1, r) * phi[r];
      u_new[m] =
          u[m] - dinv.cwiseProduct(apply_mass(u[m] - u0) + dt * sum);
    }
    for (int m = 1; m <= M; ++m) {
      u[m] = std::move(u_new[m]);
      phi[m] = assemble_space_residual(mesh, ops, cfg, u[m]).phi;
    }
    record_defect();
  }

  Eigen::VectorXd theta_sum = Eigen::VectorXd::Zero(u0.size());
  for (int r = 0; r <= M; ++r) theta_sum += coeffs.theta(M - 1, r) * phi[r];
  const Eigen::VectorXd du =
      (u[M] - u0) - dinv.cwiseProduct(apply_mass(u[M] - u0)) -
      dt * dinv.cwiseProduct(theta_sum);

  if (diag) {
    diag->u_last = u[M];
    diag->dt_theta_flux = dt * dinv.cwiseProduct(theta_sum);
  }

  RdStepResult res;
  if (opts.time.relaxation == RelaxationMode::None) {
    res.u_end = u0 + du;
    return res;
  }
  double estimate = 0.0;
  if (opts.track_dissipation) {
    // <V, D^-1 Phi>_D collapses to the plain dot product V . Phi.
    for (int r = 0; r <= M; ++r) {
      double dot = 0.0;
      for (int i = 0; i < u0.size(); ++i)
        dot += cfg.entropy_var(u[r](i)) * phi[r](i);
      estimate -= dt * coeffs.theta(M - 1, r) * dot;
    }
  }
  res.gamma_info = rd_gamma(u0, du, estimate, ops.lumped);
  res.gamma = res.gamma_info.gamma;
  if (res.gamma <= 0.0)
    throw NumericalAbort("rd_dec_step: nonpositive relaxation factor");
  res.u_end = u0 + res.gamma * du;
  return res;
}

double rd_energy(const RdOperatorSet& ops, const Eigen::VectorXd& u) {
  return 0.5 * u.cwiseProduct(ops.lumped).dot(u);
}

RdRunResult rd_integrate(const RdMesh& mesh, const RdOperatorSet& ops,
                         const RdResidualConfig& cfg, const RdDecOptions& opts,
                         const Eigen::VectorXd& u0, double dt,
                         double t_final) {
  if (dt <= 0.0) throw ConfigError("rd_integrate: dt must be positive");
  if (!(t_final > 0.0))
    throw ConfigError("rd_integrate: t_final must be positive");
  const CoefficientSet coeffs =
      make_coefficients(opts.time.M, opts.time.family);

  RdRunResult run;
  run.records.push_back({0.0, 1.0, rd_energy(ops, u0)});
  double t = 0.0;
  Eigen::VectorXd u = u0;
  const double snap = 1e-12 * std::max(1.0, std::abs(t_final));
  while (t < t_final - snap) {
    const double h = std::min(dt, t_final - t);
    const bool clipped = h < dt;
    RdStepResult step = rd_dec_step(mesh, ops, cfg, opts, coeffs, u, h);
    if (!step.u_end.allFinite())
      throw NumericalAbort("rd_integrate: non-finite state at t=" +
                           std::to_string(t));
    u = std::move(step.u_end);
    t += (opts.time.relaxation == RelaxationMode::Relaxation) ? step.gamma * h
                                                              : h;
    run.records.push_back({t, step.gamma, rd_energy(ops, u)});
    if (clipped) break;
  }
  run.u_end = std::move(u);
  return run;
}

Eigen::VectorXd rd_interpolate(const RdMesh& mesh,
                               const std::function<double(double)>& f) {
  Eigen::VectorXd u(mesh.n_dofs());
  for (int i = 0; i < mesh.n_dofs(); ++i) u(i) = f(mesh.dof_x(i));
  return u;
}

double rd_l2_error(const RdMesh& mesh, const Eigen::VectorXd& u,
                   const std::function<double(double)>& f) {
  const int p = mesh.degree;
  const QuadratureRule rule = gauss_legendre(p + 3, 0.0, 1.0);
  const LagrangeBasis basis(mesh.ref_nodes);
  const Matrix values = basis.values_at(rule.points);

  double err2 = 0.0;
  Eigen::VectorXd ue(p + 1);
  for (int e = 0; e < mesh.n_elem; ++e) {
    for (int a = 0; a <= p; ++a) ue(a) = u(mesh.global_dof(e, a));
    const Eigen::VectorXd uq = values * ue;
    for (int q = 0; q < rule.points.size(); ++q) {
      const double x = e * mesh.h + mesh.h * rule.points(q);
      const double diff = uq(q) - f(x);
      err2 += mesh.h * rule.weights(q) * diff * diff;
    }
  }
  return std::sqrt(err2);
}

}  // namespace rdec
