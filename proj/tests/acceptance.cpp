// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rdec/convergence.hpp"
#include "rdec/dec.hpp"
#include "rdec/fv_burgers.hpp"
#include "rdec/problems.hpp"
#include "rdec/rd1d.hpp"
#include "rdec/relaxation.hpp"
#include "rdec/tableau.hpp"
#include "test_support.hpp"

using namespace rdec;

namespace {

struct Criterion {
  int id;
  bool pass = true;
  std::string detail;
  std::string failures;
  double seconds = 0.0;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!failures.empty()) failures += "; ";
      failures += what;
    }
  }

  std::string report() const {
    if (failures.empty()) return detail;
    if (detail.empty()) return failures;
    return detail + " | " + failures;
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// 1. one dec_step equals rk_step with the generated tableau, (d-1)^2+1 stages
void criterion1(Criterion& c) {
  std::mt19937 rng(987654321);
  double worst = 0.0;
  for (int d = 2; d <= 6; ++d) {
    for (const auto family :
         {NodeFamily::Equispaced, NodeFamily::GaussLobatto}) {
      const CoefficientSet cs = make_coefficients(d - 1, family);
      const ButcherTableau tab = dec_to_butcher(cs, d);
      c.require(tab.stages() == (d - 1) * (d - 1) + 1,
                "stage count mismatch at d=" + std::to_string(d));
      const DecConfig cfg = dec_config(d, family);
      for (int trial = 0; trial < 50; ++trial) {
        OdeProblem p;
        p.dim = 3;
        p.rhs = testing::random_smooth_rhs(rng, 3);
        p.y0 = testing::random_state(rng, 3);
        const DecStepResult ds = dec_step(cfg, cs, p, 0.3, p.y0, 0.1);
        const RkStepResult rs = rk_step(tab, p.rhs, 0.3, p.y0, 0.1);
        worst = std::max(worst, testing::rel_diff(ds.y_end, rs.y_end));
      }
    }
  }
  c.require(worst <= 1e-13, "max step difference " + fmt(worst));
  c.detail = "max rel diff " + fmt(worst) + " over 500 random steps";
}

// 2. oscillator, dt 0.9 to T=1000: relaxed energy flat, unrelaxed DeC2 grows
void criterion2(Criterion& c) {
  const OdeProblem p = nonlinear_oscillator();
  const double eta0 = p.entropy(p.y0);
  double worst = 0.0;
  for (int d = 2; d <= 6; ++d) {
    const auto start = std::chrono::steady_clock::now();
    const DecConfig cfg =
        dec_config(d, NodeFamily::GaussLobatto, RelaxationMode::Relaxation);
    const Trajectory traj = integrate(cfg, p, 0.0, p.y0, 0.9, 1000.0);
    double dev = 0.0;
    for (const auto& rec : traj.records)
      dev = std::max(dev, std::abs(rec.eta - eta0));
    worst = std::max(worst, dev);
    c.require(dev <= 1e-11 * eta0,
              "d=" + std::to_string(d) + " energy dev " + fmt(dev));
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    c.require(secs < 10.0, "d=" + std::to_string(d) + " run took " + fmt(secs) + "s");
  }
  const Trajectory plain =
      integrate(dec_config(2), p, 0.0, p.y0, 0.9, 1000.0);
  bool monotone = true;
  for (size_t i = 1; i < plain.records.size(); ++i)
    monotone = monotone && plain.records[i].eta > plain.records[i - 1].eta;
  c.require(monotone, "unrelaxed DeC2 energy not monotonically increasing");
  c.detail = "relaxed max dev " + fmt(worst) + ", DeC2 monotone=" +
             (monotone ? "yes" : "no");
}

// 3. pendulum with the general-entropy root solver
void criterion3(Criterion& c) {
  const OdeProblem p = pendulum();
  const double eta0 = p.entropy(p.y0);
  double worst = 0.0;
  for (int d = 2; d <= 4; ++d) {
    const DecConfig cfg = dec_config(d, NodeFamily::GaussLobatto,
                                     RelaxationMode::Relaxation,
                                     EntropyMode::General);
    const Trajectory traj = integrate(cfg, p, 0.0, p.y0, 0.9, 1000.0);
    double dev = 0.0;
    for (const auto& rec : traj.records)
      dev = std::max(dev, std::abs(rec.eta - eta0));
    worst = std::max(worst, dev);
    c.require(dev <= 1e-10,
              "d=" + std::to_string(d) + " entropy dev " + fmt(dev));
  }
  const Trajectory plain = integrate(dec_config(2), p, 0.0, p.y0, 0.9, 1000.0);
  c.require(plain.step_count() == 1112,
            "unrelaxed steps " + std::to_string(plain.step_count()));
  c.detail = "max entropy dev " + fmt(worst) + ", unrelaxed steps " +
             std::to_string(plain.step_count());
}

// 4. first-step |gamma - 1| slope >= d - 1.2
void criterion4(Criterion& c) {
  const OdeProblem p = nonlinear_oscillator();
  const std::vector<double> dts{0.2, 0.1, 0.05, 0.025};
  std::string slopes;
  for (int d = 2; d <= 4; ++d) {
    const DecConfig cfg =
        dec_config(d, NodeFamily::GaussLobatto, RelaxationMode::Relaxation);
    const CoefficientSet cs = make_coefficients(cfg.M, cfg.family);
    std::vector<double> devs;
    for (const double dt : dts)
      devs.push_back(std::abs(dec_step(cfg, cs, p, 0.0, p.y0, dt).gamma - 1.0));
    // deviations superconverge into round-off for d = 4, fit above the floor
    const double slope = testing::loglog_slope(dts, devs, 1e-13);
    slopes += " d" + std::to_string(d) + "=" + fmt(slope);
    c.require(slope >= d - 1.2,
              "d=" + std::to_string(d) + " gamma slope " + fmt(slope));
  }
  c.detail = "slopes" + slopes;
}

// 5. convergence orders on the oscillator at t = 10
//
// The IDT window encodes the generic one-order loss, which rests on
// gamma - 1 = O(dt^{d-1}) with a nonvanishing constant. On this benchmark the
// constant vanishes: |f| is constant along the circle, so the stage inner
// products carry no odd dt-powers, and the quadrature-exact b/A rows of the
// DeC tableau kill the low even powers too; gamma - 1 = O(dt^d) or better
// (measured slopes 2/4/8 for d = 2/3/4) and IDT keeps full order. The window
// checks below therefore fail on this problem by its symmetry, not by a
// defect of the integrator; the pendulum test in test_dec.cpp shows the d-1
// rate where the generic constant is alive.
void criterion5(Criterion& c) {
  const OdeProblem p = nonlinear_oscillator();
  std::string notes;
  for (int d = 2; d <= 5; ++d) {
    for (const auto family :
         {NodeFamily::Equispaced, NodeFamily::GaussLobatto}) {
      const double dec_slope = fitted_slope(
          ode_convergence(dec_config(d, family), p, 10.0, 0.5, 5), 1e-12);
      const double rdec_slope = fitted_slope(
          ode_convergence(
              dec_config(d, family, RelaxationMode::Relaxation), p, 10.0, 0.5,
              5),
          1e-12);
      c.require(dec_slope >= d - 0.2, "DeC d=" + std::to_string(d) +
                                          " slope " + fmt(dec_slope));
      c.require(rdec_slope >= d - 0.2, "RDeC d=" + std::to_string(d) +
                                           " slope " + fmt(rdec_slope));
    }
    const double idt_slope = fitted_slope(
        ode_convergence(
            dec_config(d, NodeFamily::GaussLobatto, RelaxationMode::IDT), p,
            10.0, 0.5, 5),
        1e-12);
    notes += " idt-d" + std::to_string(d) + "=" + fmt(idt_slope);
    c.require(idt_slope >= d - 1.3 && idt_slope <= d - 0.7,
              "IDT d=" + std::to_string(d) + " slope " + fmt(idt_slope) +
                  " outside [" + fmt(d - 1.3) + "," + fmt(d - 0.7) + "]");
  }
  c.detail = "DeC/RDeC slopes >= d-0.2;" + notes;
}

// 6. FV Burgers semidiscrete identity and fully discrete energy behaviour
void criterion6(Criterion& c) {
  const FvGrid grid = make_fv_grid(100);
  std::mt19937 rng(5150);
  double worst_energy = 0.0, worst_mass = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Vector u = testing::random_state(rng, 100);
    const Vector rhs = burgers_ec_rhs(grid, u);
    const double scale = 100.0 * u.cwiseAbs().maxCoeff() *
                         std::max(1.0, rhs.cwiseAbs().maxCoeff());
    worst_energy = std::max(worst_energy, std::abs(u.dot(rhs)) / scale);
    worst_mass = std::max(worst_mass, std::abs(rhs.sum()) / scale);
  }
  c.require(worst_energy <= 1e-14, "semidiscrete energy " + fmt(worst_energy));
  c.require(worst_mass <= 1e-14, "semidiscrete mass " + fmt(worst_mass));

  const OdeProblem p = burgers_problem(100);
  const double dt = burgers_cfl_dt(grid, p.y0, 0.3);
  const double eta0 = p.entropy(p.y0);
  double worst_dev = 0.0;
  for (int d = 2; d <= 4; ++d) {
    const DecConfig cfg =
        dec_config(d, NodeFamily::GaussLobatto, RelaxationMode::Relaxation);
    const Trajectory traj = integrate(cfg, p, 0.0, p.y0, dt, 0.2);
    for (const auto& rec : traj.records)
      worst_dev = std::max(worst_dev, std::abs(rec.eta - eta0));
  }
  c.require(worst_dev <= 1e-12 * eta0, "relaxed energy dev " + fmt(worst_dev));

  const auto final_eta = [&](int d) {
    return integrate(dec_config(d), p, 0.0, p.y0, dt, 0.2).records.back().eta;
  };
  c.require(final_eta(2) > eta0, "unrelaxed DeC2 energy did not increase");
  c.require(final_eta(3) < eta0, "unrelaxed DeC3 energy did not decrease");
  c.require(final_eta(4) < eta0, "unrelaxed DeC4 energy did not decrease");
  c.detail = "semidiscrete " + fmt(std::max(worst_energy, worst_mass)) +
             ", relaxed dev " + fmt(worst_dev) + ", signs ok";
}

// 7. entropy correction identities on random element states
void criterion7(Criterion& c) {
  const RdMesh mesh = make_rd_mesh(2, 3);
  const RdOperatorSet ops = make_rd_operators(mesh);
  const RdResidualConfig cfg = burgers_rd_config(CorrectionMode::None);
  std::mt19937 rng(777);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd u(mesh.n_dofs());
    for (int i = 0; i < u.size(); ++i) u(i) = testing::random_state(rng, 1)(0);
    const RdResidual raw = assemble_space_residual(mesh, ops, cfg, u);
    const int p = mesh.degree;
    Eigen::VectorXd v(p + 1);
    for (int a = 0; a <= p; ++a)
      v(a) = cfg.entropy_var(u(mesh.global_dof(0, a)));
    const double gflux = cfg.entropy_flux(u(mesh.global_dof(0, p))) -
                         cfg.entropy_flux(u(mesh.global_dof(0, 0)));
    const CorrectionResult out =
        entropy_correct(raw.element_phi.col(0), v, gflux);
    const double scale = 1.0 + std::abs(out.imbalance) +
                         v.cwiseAbs().maxCoeff() *
                             raw.element_phi.col(0).cwiseAbs().sum();
    worst = std::max(worst, std::abs(out.r.sum()) / scale);
    worst = std::max(worst, std::abs(v.dot(out.r) - out.imbalance) / scale);
    worst = std::max(worst, std::abs(v.dot(out.corrected) - gflux) / scale);
  }
  c.require(worst <= 1e-13, "identity residual " + fmt(worst));
  c.detail = "worst identity residual " + fmt(worst) + " over 100 elements";
}

// 8. RD transport convergence and energy conservation
void criterion8(Criterion& c) {
  const auto u_init = [](double x) { return 0.1 * std::sin(M_PI * x); };
  const double nu = 0.01;
  std::string slopes;
  double coarsest_plain_dev = 0.0;
  for (int p = 1; p <= 3; ++p) {
    std::vector<double> hs, errs;
    for (const int ne : {16, 32, 64, 128}) {
      const RdMesh mesh = make_rd_mesh(ne, p);
      const RdOperatorSet ops = make_rd_operators(mesh);
      const RdResidualConfig cfg = linear_transport_config(
          CorrectionMode::ConservativePlusJump, nu);
      const Eigen::VectorXd u0 = rd_interpolate(mesh, u_init);
      const double dt = 0.1 * mesh.h / p;

      RdDecOptions relaxed;
      relaxed.time = dec_config(p + 1, NodeFamily::GaussLobatto,
                                RelaxationMode::Relaxation);
      const RdRunResult rr = rd_integrate(mesh, ops, cfg, relaxed, u0, dt, 1.0);
      const double t_end = rr.records.back().t;
      errs.push_back(rd_l2_error(mesh, rr.u_end,
                                 [&](double x) { return u_init(x - t_end); }));
      hs.push_back(mesh.h);

      const double e0 = rr.records.front().energy;
      const double rel_dev = std::abs(rr.records.back().energy - e0);
      c.require(rel_dev <= 1e-12 * e0, "p=" + std::to_string(p) + " ne=" +
                                           std::to_string(ne) +
                                           " relaxed dev " + fmt(rel_dev));

      if (p == 1 && ne == 16) {
        RdDecOptions plain;
        plain.time = dec_config(p + 1);
        const RdRunResult rp = rd_integrate(mesh, ops, cfg, plain, u0, dt, 1.0);
        coarsest_plain_dev = std::abs(rp.records.back().energy - e0);
      }
    }
    const double slope = testing::loglog_slope(hs, errs);
    slopes += " p" + std::to_string(p) + "=" + fmt(slope);
    c.require(slope >= p + 0.8,
              "p=" + std::to_string(p) + " slope " + fmt(slope));
  }
  c.require(coarsest_plain_dev > 1e-7,
            "coarsest unrelaxed dev " + fmt(coarsest_plain_dev));
  c.detail = "slopes" + slopes + ", coarsest unrelaxed dev " +
             fmt(coarsest_plain_dev);
}

// 9. lumped-mass oracle: rd_dec_step equals the ODE sweep on -D^-1 Phi
void criterion9(Criterion& c) {
  const RdMesh mesh = make_rd_mesh(16, 2);
  const RdOperatorSet ops = make_rd_operators(mesh);
  const RdResidualConfig cfg = linear_transport_config();
  const Eigen::VectorXd u0 = rd_interpolate(
      mesh, [](double x) { return 0.1 * std::sin(M_PI * x); });
  double worst = 0.0;
  for (int d = 2; d <= 4; ++d) {
    RdDecOptions opts;
    opts.time = dec_config(d);
    opts.lumped_mass = true;
    const CoefficientSet cs = make_coefficients(d - 1, NodeFamily::GaussLobatto);
    OdeProblem p;
    p.dim = mesh.n_dofs();
    p.rhs = [&](double, const Vector& u) {
      return Vector(-ops.lumped.cwiseInverse().cwiseProduct(
          assemble_space_residual(mesh, ops, cfg, u).phi));
    };
    const RdStepResult rd = rd_dec_step(mesh, ops, cfg, opts, cs, u0, 0.02);
    const DecStepResult ode = dec_step(opts.time, cs, p, 0.0, u0, 0.02);
    worst = std::max(worst, testing::rel_diff(rd.u_end, ode.y_end));
  }
  c.require(worst <= 1e-13, "max difference " + fmt(worst));
  c.detail = "max rel diff " + fmt(worst);
}

// 10. appendix quadratic relaxation
void criterion10(Criterion& c) {
  c.require(std::abs(rd_gamma_appendix(-1.0, 1.0, 0.0).gamma - 1.0) == 0.0,
            "linear case");
  c.require(std::abs(rd_gamma_appendix(-1.0, 0.0, 1.0).gamma - 1.0) == 0.0,
            "symmetric roots");
  c.require(std::abs(rd_gamma_appendix(0.0, -1.0, 1.0).gamma - 1.0) == 0.0,
            "root nearest one");

  const RdMesh mesh = make_rd_mesh(16, 2);
  const RdOperatorSet ops = make_rd_operators(mesh);
  const RdResidualConfig cfg = linear_transport_config();
  RdDecOptions opts;
  opts.time = dec_config(3);
  const CoefficientSet cs = make_coefficients(2, NodeFamily::GaussLobatto);
  const Eigen::VectorXd u0 = rd_interpolate(
      mesh, [](double x) { return 0.1 * std::sin(M_PI * x); });
  RdStepDiagnostics diag;
  rd_dec_step(mesh, ops, cfg, opts, cs, u0, 0.01, &diag);
  const AppendixTerms terms =
      rd_appendix_terms(ops, u0, diag.u_last, diag.dt_theta_flux);
  const GammaResult g =
      rd_gamma_appendix(terms.d_term, terms.e_term, terms.csq_term);
  c.require(g.gamma > 0.5 && g.gamma < 1.5, "smoke gamma " + fmt(g.gamma));
  c.detail = "roots exact, smoke gamma " + fmt(g.gamma);
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<void(Criterion&)>>> checks{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8},
      {9, criterion9}, {10, criterion10},
  };
  const std::vector<double> runtime_limits{5.0, 0.0, 0.0, 0.0, 0.0,
                                           10.0, 0.0, 60.0, 0.0, 0.0};

  bool all_pass = true;
  for (const auto& [id, fn] : checks) {
    Criterion c{id};
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    c.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const double limit = runtime_limits[id - 1];
    if (limit > 0.0 && c.seconds >= limit)
      c.require(false, "runtime " + fmt(c.seconds) + "s over limit " +
                           fmt(limit) + "s");
    std::printf("%s criterion %2d (%.1fs): %s\n", c.pass ? "PASS" : "FAIL",
                c.id, c.seconds, c.report().c_str());
    std::fflush(stdout);
    all_pass = all_pass && c.pass;
  }
  return all_pass ? 0 : 1;
}
