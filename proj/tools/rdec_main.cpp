#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "rdec/convergence.hpp"
#include "rdec/csv.hpp"
#include "rdec/dec.hpp"
#include "rdec/errors.hpp"
#include "rdec/fv_burgers.hpp"
#include "rdec/problems.hpp"
#include "rdec/rd1d.hpp"
#include "rdec/tableau.hpp"
#include "rdec/trajectory_stats.hpp"

namespace {

using namespace rdec;

struct MethodOptions {
  std::string method = "dec";  // dec | ssprk22 | ssprk33 | rk44
  int order = 3;
  std::string family = "gauss-lobatto";
  std::string relaxation = "none";
  std::string entropy = "energy";
  bool track_dissipation = false;
  std::string root_method = "brent";
  double root_tol = 1e-13;
};

NodeFamily parse_family(const std::string& name) {
  if (name == "equispaced") return NodeFamily::Equispaced;
  if (name == "gauss-lobatto") return NodeFamily::GaussLobatto;
  throw ConfigError("unknown node family: " + name);
}

RelaxationMode parse_relaxation(const std::string& name) {
  if (name == "none") return RelaxationMode::None;
  if (name == "idt") return RelaxationMode::IDT;
  if (name == "relaxation") return RelaxationMode::Relaxation;
  throw ConfigError("unknown relaxation mode: " + name);
}

EntropyMode parse_entropy(const std::string& name) {
  if (name == "energy") return EntropyMode::Energy;
  if (name == "general") return EntropyMode::General;
  throw ConfigError("unknown entropy mode: " + name);
}

RootMethod parse_root_method(const std::string& name) {
  if (name == "brent") return RootMethod::Brent;
  if (name == "bisection") return RootMethod::Bisection;
  if (name == "newton") return RootMethod::Newton;
  throw ConfigError("unknown root method: " + name);
}

CorrectionMode parse_correction(const std::string& name) {
  if (name == "none") return CorrectionMode::None;
  if (name == "conservative") return CorrectionMode::Conservative;
  if (name == "jump") return CorrectionMode::ConservativePlusJump;
  throw ConfigError("unknown correction mode: " + name);
}

DecConfig build_dec_config(const MethodOptions& mo) {
  DecConfig cfg = dec_config(mo.order, parse_family(mo.family),
                             parse_relaxation(mo.relaxation),
                             parse_entropy(mo.entropy));
  cfg.track_dissipation = mo.track_dissipation;
  cfg.root_solver.method = parse_root_method(mo.root_method);
  cfg.root_solver.tol = mo.root_tol;
  return cfg;
}

OdeProblem build_problem(const std::string& name, double alpha) {
  if (name == "oscillator") return nonlinear_oscillator();
  if (name == "damped-oscillator") return damped_oscillator(1.0, 0.0, alpha);
  if (name == "pendulum") return pendulum();
  throw ConfigError("unknown problem: " + name);
}

std::string resolve_output(const std::string& path) {
  namespace fs = std::filesystem;
  if (path.empty() || fs::path(path).is_absolute()) return path;
  if (const char* dir = std::getenv("RDEC_OUTPUT_DIR"); dir && *dir)
    return (fs::path(dir) / path).string();
  return path;
}

void add_method_options(CLI::App* cmd, MethodOptions& mo) {
  cmd->add_option("--method", mo.method,
                  "integrator: dec, ssprk22, ssprk33 or rk44")
      ->check(CLI::IsMember({"dec", "ssprk22", "ssprk33", "rk44"}));
  cmd->add_option("--order", mo.order, "design order of the DeC method");
  cmd->add_option("--family", mo.family, "subtimestep nodes")
      ->check(CLI::IsMember({"equispaced", "gauss-lobatto"}));
  cmd->add_option("--relaxation", mo.relaxation, "relaxation mode")
      ->check(CLI::IsMember({"none", "idt", "relaxation"}));
  cmd->add_option("--entropy", mo.entropy, "relaxation entropy")
      ->check(CLI::IsMember({"energy", "general"}));
  cmd->add_flag("--track-dissipation", mo.track_dissipation,
                "track the semidiscrete entropy estimate instead of "
                "enforcing conservation");
  cmd->add_option("--root-method", mo.root_method,
                  "scalar solver for general entropies")
      ->check(CLI::IsMember({"brent", "bisection", "newton"}));
  cmd->add_option("--root-tol", mo.root_tol, "entropy residual tolerance");
}

void print_matrix(const std::string& name, const Matrix& m) {
  std::printf("%s =\n", name.c_str());
  for (int i = 0; i < m.rows(); ++i) {
    std::printf(" ");
    for (int j = 0; j < m.cols(); ++j) std::printf(" % -22.15g", m(i, j));
    std::printf("\n");
  }
}

ButcherTableau build_tableau(const MethodOptions& mo, int corrections) {
  if (mo.method == "ssprk22") return named_tableau(NamedMethod::SSPRK22);
  if (mo.method == "ssprk33") return named_tableau(NamedMethod::SSPRK33);
  if (mo.method == "rk44") return named_tableau(NamedMethod::RK44);
  const int m_sub = mo.order - 1;
  const int k = corrections > 0 ? corrections : mo.order;
  return dec_to_butcher(make_coefficients(m_sub, parse_family(mo.family)), k);
}

int run_tableau(const MethodOptions& mo, int corrections,
                const std::string& output) {
  const ButcherTableau t = build_tableau(mo, corrections);
  const ShuOsherForm so = butcher_to_shu_osher(t);

  std::printf("method %s, order %d, %d stages\n", mo.method.c_str(), mo.order,
              t.stages());
  print_matrix("A", t.A);
  print_matrix("b", t.b.transpose());
  print_matrix("c", t.c.transpose());
  print_matrix("shu-osher alpha", so.alpha);
  print_matrix("shu-osher beta", so.beta_so);

  if (!output.empty()) {
    CsvWriter csv(resolve_output(output));
    csv.header({"matrix", "row", "col", "value"});
    const auto dump = [&](const std::string& name, const Matrix& m) {
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
          csv.raw_row({name, std::to_string(i), std::to_string(j),
                       format_g17(m(i, j))});
    };
    dump("A", t.A);
    dump("b", t.b.transpose());
    dump("c", t.c.transpose());
    dump("alpha", so.alpha);
    dump("beta", so.beta_so);
  }
  return 0;
}

Trajectory run_method(const MethodOptions& mo, const OdeProblem& problem,
                      double dt, double t_final) {
  if (mo.method == "dec") {
    const DecConfig cfg = build_dec_config(mo);
    return integrate(cfg, problem, 0.0, problem.y0, dt, t_final);
  }
  const ButcherTableau t = build_tableau(mo, 0);
  RootSolverConfig root;
  root.method = parse_root_method(mo.root_method);
  root.tol = mo.root_tol;
  return integrate_rk(t, problem, parse_relaxation(mo.relaxation),
                      parse_entropy(mo.entropy), root, 0.0, problem.y0, dt,
                      t_final);
}

int run_ode(const MethodOptions& mo, const std::string& problem_name,
            double alpha, double dt, double t_final,
            const std::string& output) {
  const OdeProblem problem = build_problem(problem_name, alpha);
  const Trajectory traj = run_method(mo, problem, dt, t_final);

  if (!output.empty()) {
    CsvWriter csv(resolve_output(output));
    std::vector<std::string> cols{"step", "t", "gamma", "eta",
                                  "eta_minus_eta0"};
    for (int i = 0; i < problem.dim; ++i)
      cols.push_back("y" + std::to_string(i));
    csv.header(cols);
    const double eta0 = traj.records.front().eta;
    for (size_t i = 1; i < traj.records.size(); ++i) {
      const auto& rec = traj.records[i];
      std::vector<double> row{static_cast<double>(i), rec.t, rec.gamma,
                              rec.eta, rec.eta - eta0};
      for (int k = 0; k < problem.dim; ++k) row.push_back(rec.y(k));
      csv.row(row);
    }
  }

  const GammaStats stats = gamma_stats(traj);
  std::printf(
      "ode-run: problem=%s steps=%d t_end=%s eta_deviation=%s "
      "gamma_median=%s gamma_q1=%s gamma_q3=%s gamma_min=%s gamma_max=%s\n",
      problem_name.c_str(), traj.step_count(),
      format_g17(traj.records.back().t).c_str(),
      format_g17(traj.records.back().eta - traj.records.front().eta).c_str(),
      format_g17(stats.median).c_str(), format_g17(stats.q1).c_str(),
      format_g17(stats.q3).c_str(), format_g17(stats.min).c_str(),
      format_g17(stats.max).c_str());
  return 0;
}

int run_converge(const MethodOptions& mo, const std::string& problem_name,
                 double alpha, double t_final, double dt0, int refinements,
                 double ratio, const std::string& output) {
  const OdeProblem problem = build_problem(problem_name, alpha);
  if (!problem.exact)
    throw ConfigError("ode-converge: problem has no exact solution");
  if (refinements < 5)
    throw ConfigError("ode-converge: need at least 5 refinements");
  const DecConfig cfg = build_dec_config(mo);
  const ConvergenceTable table =
      ode_convergence(cfg, problem, t_final, dt0, refinements, ratio);

  if (!output.empty()) {
    CsvWriter csv(resolve_output(output));
    csv.header({"method", "dt", "error", "slope"});
    for (const auto& row : table.rows)
      csv.raw_row({table.label, format_g17(row.step), format_g17(row.error),
                   format_g17(row.slope)});
  }
  for (const auto& row : table.rows)
    std::printf("ode-converge: %s dt=%s error=%s slope=%s\n",
                table.label.c_str(), format_g17(row.step).c_str(),
                format_g17(row.error).c_str(), format_g17(row.slope).c_str());
  std::printf("ode-converge: fitted slope %s\n",
              format_g17(fitted_slope(table, 1e-13)).c_str());
  return 0;
}

int run_fv(const MethodOptions& mo, int cells, double cfl, double t_final,
           const std::string& output) {
  const OdeProblem problem = burgers_problem(cells);
  const FvGrid grid = make_fv_grid(cells);
  const double dt = burgers_cfl_dt(grid, problem.y0, cfl);
  const Trajectory traj = run_method(mo, problem, dt, t_final);

  if (!output.empty()) {
    CsvWriter csv(resolve_output(output));
    csv.header({"step", "t", "gamma", "eta", "eta_minus_eta0"});
    const double eta0 = traj.records.front().eta;
    for (size_t i = 1; i < traj.records.size(); ++i) {
      const auto& rec = traj.records[i];
      csv.row({static_cast<double>(i), rec.t, rec.gamma, rec.eta,
               rec.eta - eta0});
    }
  }
  std::printf("fv-burgers: cells=%d dt=%s steps=%d eta0=%s eta_deviation=%s\n",
              cells, format_g17(dt).c_str(), traj.step_count(),
              format_g17(traj.records.front().eta).c_str(),
              format_g17(traj.records.back().eta - traj.records.front().eta)
                  .c_str());
  return 0;
}

int run_rd(const MethodOptions& mo, int degree, int elements,
           const std::string& correction, double nu, double cfl,
           double t_final, const std::string& output) {
  const RdMesh mesh = make_rd_mesh(elements, degree);
  const RdOperatorSet ops = make_rd_operators(mesh);
  const RdResidualConfig cfg =
      linear_transport_config(parse_correction(correction), nu);

  RdDecOptions opts;
  MethodOptions dec_mo = mo;
  dec_mo.entropy = "energy";  // RD relaxation works on the lumped energy
  opts.time = build_dec_config(dec_mo);
  opts.track_dissipation = mo.track_dissipation;

  const auto u_initial = [](double x) { return 0.1 * std::sin(M_PI * x); };
  const Eigen::VectorXd u0 = rd_interpolate(mesh, u_initial);
  const double dt = cfl * mesh.h / degree;
  const RdRunResult run = rd_integrate(mesh, ops, cfg, opts, u0, dt, t_final);

  if (!output.empty()) {
    CsvWriter csv(resolve_output(output));
    csv.header({"step", "t", "gamma", "energy", "energy_minus_e0"});
    const double e0 = run.records.front().energy;
    for (size_t i = 1; i < run.records.size(); ++i) {
      const auto& rec = run.records[i];
      csv.row({static_cast<double>(i), rec.t, rec.gamma, rec.energy,
               rec.energy - e0});
    }
  }

  const double t_end = run.records.back().t;
  const double error = rd_l2_error(
      mesh, run.u_end, [&](double x) { return u_initial(x - t_end); });
  std::printf(
      "rd-transport: degree=%d elements=%d order=%d relaxation=%s steps=%d "
      "t_end=%s l2_error=%s energy_deviation=%s\n",
      degree, elements, mo.order, mo.relaxation.c_str(), run.step_count(),
      format_g17(t_end).c_str(), format_g17(error).c_str(),
      format_g17(run.records.back().energy - run.records.front().energy)
          .c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relaxation deferred-correction time integration experiments"};
  app.set_config("--config", "", "key = value configuration file");
  app.require_subcommand(1);
  app.fallthrough();

  MethodOptions mo;
  std::string output;
  std::string problem_name = "oscillator";
  double alpha = 0.01;
  double dt = 0.1, t_final = 10.0;
  double dt0 = 0.5, ratio = 2.0;
  int refinements = 5;
  int corrections = 0;
  int cells = 100, elements = 16, degree = 1;
  double cfl = 0.3, nu = 0.0;
  std::string correction = "conservative";
  long seed = 0;
  app.add_option("--seed", seed, "seed recorded for reproducibility");

  CLI::App* tab =
      app.add_subcommand("tableau", "print Butcher and Shu-Osher data");
  add_method_options(tab, mo);
  tab->add_option("--corrections", corrections, "override correction count");
  tab->add_option("--output", output, "CSV file");

  CLI::App* ode = app.add_subcommand("ode-run", "integrate a test problem");
  add_method_options(ode, mo);
  ode->add_option("--problem", problem_name,
                  "oscillator, damped-oscillator or pendulum");
  ode->add_option("--alpha", alpha, "damping rate");
  ode->add_option("--dt", dt, "time step");
  ode->add_option("--t-final", t_final, "final time");
  ode->add_option("--output", output, "CSV file");

  CLI::App* conv = app.add_subcommand("ode-converge", "refinement study");
  add_method_options(conv, mo);
  conv->add_option("--problem", problem_name, "problem with exact solution");
  conv->add_option("--alpha", alpha, "damping rate");
  conv->add_option("--dt0", dt0, "coarsest step");
  conv->add_option("--refinements", refinements, "number of rows (>= 2)");
  conv->add_option("--ratio", ratio, "step refinement ratio");
  conv->add_option("--t-final", t_final, "final time");
  conv->add_option("--output", output, "CSV file");

  CLI::App* fv =
      app.add_subcommand("fv-burgers", "entropy-conservative FV Burgers");
  add_method_options(fv, mo);
  fv->add_option("--cells", cells, "grid points");
  fv->add_option("--cfl", cfl, "CFL number");
  fv->add_option("--t-final", t_final, "final time");
  fv->add_option("--output", output, "CSV file");

  CLI::App* rd = app.add_subcommand("rd-transport", "RD linear transport");
  add_method_options(rd, mo);
  rd->add_option("--degree", degree, "polynomial degree");
  rd->add_option("--elements", elements, "element count");
  rd->add_option("--correction", correction, "none, conservative or jump")
      ->check(CLI::IsMember({"none", "conservative", "jump"}));
  rd->add_option("--nu", nu, "jump stabilization coefficient");
  rd->add_option("--cfl", cfl, "CFL number");
  rd->add_option("--t-final", t_final, "final time");
  rd->add_option("--output", output, "CSV file");

  try {
    app.parse(argc, argv);
    if (tab->parsed()) return run_tableau(mo, corrections, output);
    if (ode->parsed())
      return run_ode(mo, problem_name, alpha, dt, t_final, output);
    if (conv->parsed())
      return run_converge(mo, problem_name, alpha, t_final, dt0, refinements,
                          ratio, output);
    if (fv->parsed()) return run_fv(mo, cells, cfl, t_final, output);
    if (rd->parsed())
      return run_rd(mo, degree, elements, correction, nu, cfl, t_final,
                    output);
    return 1;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::fprintf(stderr, "rdec-cli: error kind=config msg=\"%s\"\n", e.what());
    return 1;
  } catch (const rdec::ConfigError& e) {
    std::fprintf(stderr, "rdec-cli: error kind=config msg=\"%s\"\n", e.what());
    return 1;
  } catch (const rdec::SolverFailure& e) {
    std::fprintf(stderr, "rdec-cli: error kind=solver msg=\"%s\"\n", e.what());
    return 3;
  } catch (const rdec::NumericalAbort& e) {
    std::fprintf(stderr, "rdec-cli: error kind=numerical msg=\"%s\"\n",
                 e.what());
    return 2;
  }
}
