#pragma once

#include <Eigen/SparseCore>
#include <functional>
#include <vector>

#include "rdec/dec.hpp"
#include "rdec/quadrature.hpp"
#include "rdec/relaxation.hpp"
#include "rdec/types.hpp"

namespace rdec {

/// Uniform periodic mesh on [0, length] with degree-p Lagrange elements on
/// Gauss-Lobatto points. Interface DOFs are shared, so there are
/// n_elem * degree global DOFs.
struct RdMesh {
  int n_elem = 0;
  int degree = 0;
  double length = 2.0;
  double h = 0.0;
  Eigen::VectorXd ref_nodes;  // degree+1 Gauss-Lobatto points on [0, 1]
  Eigen::VectorXd dof_x;      // global DOF coordinates

  int n_dofs() const { return n_elem * degree; }
  int global_dof(int elem, int local) const {
    return (elem * degree + local) % n_dofs();
  }
};

RdMesh make_rd_mesh(int n_elem, int degree, double length = 2.0);

/// Element-level operators shared by assembly and the DeC-RD update: the
/// consistent mass matrix, its lumped diagonal |C_sigma|, and the basis
/// values at a Gauss-Legendre rule exact to degree 2p+1.
struct RdOperatorSet {
  Eigen::SparseMatrix<double> mass;
  Eigen::VectorXd lumped;
  Eigen::MatrixXd basis_values;  // q x (p+1)
  Eigen::MatrixXd basis_derivs;  // q x (p+1), derivative w.r.t. xi
  Eigen::VectorXd quad_weights;  // q, on [0, 1]
  Eigen::VectorXd dphi_left;     // phi'(0), reference derivative
  Eigen::VectorXd dphi_right;    // phi'(1)
};

RdOperatorSet make_rd_operators(const RdMesh& mesh);

enum class CorrectionMode { None, Conservative, ConservativePlusJump };

/// Scalar flux plus entropy pair; g' = v F' must hold.
struct RdResidualConfig {
  std::function<double(double)> flux;
  std::function<double(double)> flux_deriv;
  std::function<double(double)> entropy;
  std::function<double(double)> entropy_var;   // v(u) = eta'(u)
  std::function<double(double)> entropy_flux;  // g(u)
  CorrectionMode correction = CorrectionMode::Conservative;
  double nu = 0.0;  // jump-stabilization coefficient
};

RdResidualConfig linear_transport_config(
    CorrectionMode mode = CorrectionMode::Conservative, double nu = 0.0);
RdResidualConfig burgers_rd_config(
    CorrectionMode mode = CorrectionMode::Conservative, double nu = 0.0);

struct RdResidual {
  Eigen::VectorXd phi;          // assembled per-DOF residual (+ jump terms)
  Eigen::MatrixXd element_phi;  // (p+1) x n_elem, after entropy correction
};

/// Galerkin residuals Phi_sigma^K = \oint_K phi_sigma d_x F(u^h) dx per
/// element, entropy-corrected when requested, scattered to global DOFs.
/// With nu > 0 and ConservativePlusJump the interface penalty
/// nu h^2 [d_x phi_sigma][d_x u^h] is added to the assembled vector, each
/// interface counted once with the full across-interface derivative jumps.
RdResidual assemble_space_residual(const RdMesh& mesh,
                                   const RdOperatorSet& ops,
                                   const RdResidualConfig& cfg,
                                   const Eigen::VectorXd& u);

struct CorrectionResult {
  Eigen::VectorXd corrected;
  Eigen::VectorXd r;
  double imbalance = 0.0;  // E, the entropy defect the correction removes
};

/// Element entropy correction r_sigma = alpha (V_sigma - Vbar) with
/// alpha = E / sum (V_sigma - Vbar)^2 and
/// E = boundary entropy flux - sum_sigma V_sigma Phi_sigma. Guarantees
/// sum r = 0 and sum V r = E. Degenerate (constant-V) elements return r = 0
/// after checking that E is consistent with zero.
CorrectionResult entropy_correct(const Eigen::VectorXd& element_residuals,
                                 const Eigen::VectorXd& v_values,
                                 double boundary_entropy_flux);

struct RdDecOptions {
  DecConfig time;          // entropy mode is ignored; RD relaxation is energy
  bool lumped_mass = false;       // replace M by D (ODE-equivalence oracle)
  bool track_dissipation = false; // estimate from <V, D^-1 Phi> instead of 0
};

struct RdStepDiagnostics {
  std::vector<double> l2_defect;    // defect of the collocation operator per sweep
  Eigen::VectorXd u_last;           // U^{M,(K-1)}
  Eigen::VectorXd dt_theta_flux;    // dt sum_r theta_r^M D^-1 Phi(U^r)
};

struct RdStepResult {
  Eigen::VectorXd u_end;
  double gamma = 1.0;
  GammaResult gamma_info;
};

/// One DeC step of the mass-matrix-free RD update
///
///   U^{l,(k)} = U^{l,(k-1)} - D^-1 [ M (U^{l,(k-1)} - U^0)
///                                    + dt sum_r theta_r^l Phi(U^{r,(k-1)}) ],
///
/// whose final increment is dU = (I - D^-1 M)(U^M - U^0)
/// - dt sum_r theta_r^M D^-1 Phi(U^r). With relaxation on, U_end = U^0 +
/// gamma dU with gamma from rd_gamma.
RdStepResult rd_dec_step(const RdMesh& mesh, const RdOperatorSet& ops,
                         const RdResidualConfig& cfg, const RdDecOptions& opts,
                         const CoefficientSet& coeffs,
                         const Eigen::VectorXd& u0, double dt,
                         RdStepDiagnostics* diag = nullptr);

/// Energy relaxation under the lumped inner product <a,b>_D = sum D_ii a_i b_i.
GammaResult rd_gamma(const Eigen::VectorXd& u0, const Eigen::VectorXd& du,
                     double estimate, const Eigen::VectorXd& lumped);

/// Root of d_term + gamma e_term + gamma^2 csq_term = 0 closest to 1 among
/// the positive real roots; linear fallback when csq_term vanishes. Throws
/// SolverFailure when no positive root exists.
GammaResult rd_gamma_appendix(double d_term, double e_term, double csq_term);

struct AppendixTerms {
  double d_term = 0.0;
  double e_term = 0.0;
  double csq_term = 0.0;
};

/// Global scalars of the alternative relaxation split U_end = A + B + gamma C
/// with A = D^-1 M U^0, B = (I - D^-1 M) U^M, C = -dt sum theta D^-1 Phi:
/// d = <A+B,A+B>_D - <U^0,U^0>_D, e = 2 <A+B,C>_D, csq = <C,C>_D.
AppendixTerms rd_appendix_terms(const RdOperatorSet& ops,
                                const Eigen::VectorXd& u0,
                                const Eigen::VectorXd& u_last,
                                const Eigen::VectorXd& dt_theta_flux);

struct RdTrajectoryRecord {
  double t = 0.0;
  double gamma = 1.0;
  double energy = 0.0;
};

struct RdRunResult {
  std::vector<RdTrajectoryRecord> records;  // records[0] = initial state
  Eigen::VectorXd u_end;
  int step_count() const { return static_cast<int>(records.size()) - 1; }
};

/// Step the RD-DeC scheme to t_final with the same clipping policy as the
/// ODE integrator. Energy records use the lumped norm 1/2 <u,u>_D.
RdRunResult rd_integrate(const RdMesh& mesh, const RdOperatorSet& ops,
                         const RdResidualConfig& cfg, const RdDecOptions& opts,
                         const Eigen::VectorXd& u0, double dt, double t_final);

double rd_energy(const RdOperatorSet& ops, const Eigen::VectorXd& u);

/// Interpolate f at the global DOF coordinates.
Eigen::VectorXd rd_interpolate(const RdMesh& mesh,
                               const std::function<double(double)>& f);

/// Quadrature L2 norm of (u^h - f) over the mesh.
double rd_l2_error(const RdMesh& mesh, const Eigen::VectorXd& u,
                   const std::function<double(double)>& f);

}  // namespace rdec
