#include "rdec/tableau.hpp"

#include "rdec/errors.hpp"

namespace rdec {

ButcherTableau named_tableau(NamedMethod method) {
  ButcherTableau t;
  switch (method) {
    case NamedMethod::SSPRK22: {
      t.A = Matrix::Zero(2, 2);
      t.A(1, 0) = 1.0;
      t.b = Vector{{0.5, 0.5}};
      break;
    }
    case NamedMethod::SSPRK33: {
      t.A = Matrix::Zero(3, 3);
      t.A(1, 0) = 1.0;
      t.A(2, 0) = 0.25;
      t.A(2, 1) = 0.25;
      t.b = Vector{{1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0}};
      break;
    }
    case NamedMethod::RK44: {
      t.A = Matrix::Zero(4, 4);
      t.A(1, 0) = 0.5;
      t.A(2, 1) = 0.5;
      t.A(3, 2) = 1.0;
      t.b = Vector{{1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0}};
      break;
    }
  }
  t.c = t.A.rowwise().sum();
  return t;
}

ButcherTableau dec_to_butcher(const CoefficientSet& coeffs, int corrections) {
  if (corrections < 1)
    throw ConfigError("dec_to_butcher: need at least one correction");
  const int M = coeffs.M;
  const int s = 1 + M * (corrections - 1);

  ButcherTableau t;
  t.A = Matrix::Zero(s, s);
  t.b = Vector::Zero(s);

  // prev[r] = stage index currently holding the state at subtimestep r.
  // All subtimesteps start at stage 0 (the initial value), which folds the
  // prediction sweep into the beta column: sum_r theta(m,r) = nodes[m].
  std::vector<int> prev(M + 1, 0);
  int next_stage = 1;
  for (int k = 1; k < corrections; ++k) {
    std::vector<int> cur(M + 1, 0);
    for (int m = 1; m <= M; ++m) {
      const int row = next_stage++;
      for (int r = 0; r <= M; ++r) t.A(row, prev[r]) += coeffs.theta(m - 1, r);
      cur[m] = row;
    }
    prev = cur;
  }
  for (int r = 0; r <= M; ++r) t.b(prev[r]) += coeffs.theta(M - 1, r);
  t.c = t.A.rowwise().sum();
  return t;
}

ShuOsherForm butcher_to_shu_osher(const ButcherTableau& t) {
  const int s = t.stages();
  ShuOsherForm form;
  form.alpha = Matrix::Zero(s + 1, s);
  form.beta_so = Matrix::Zero(s + 1, s);
  for (int i = 1; i <= s; ++i) form.alpha(i, 0) = 1.0;
  form.beta_so.topRows(s) = t.A;
  form.beta_so.row(s) = t.b.transpose();
  return form;
}

RkStepResult rk_step(const ButcherTableau& t, const Rhs& f, double tn,
                     const Vector& yn, double dt) {
  if (dt <= 0.0) throw ConfigError("rk_step: dt must be positive");
  const int s = t.stages();
  RkStepResult res;
  res.stage_states.resize(s);
  res.stage_derivatives.resize(s);
  for (int i = 0; i < s; ++i) {
    Vector u = yn;
    for (int j = 0; j < i; ++j)
      if (t.A(i, j) != 0.0) u += dt * t.A(i, j) * res.stage_derivatives[j];
    res.stage_states[i] = u;
    res.stage_derivatives[i] = f(tn + t.c(i) * dt, u);
  }
  Vector y = yn;
  for (int j = 0; j < s; ++j)
    if (t.b(j) != 0.0) y += dt * t.b(j) * res.stage_derivatives[j];
  res.y_end = y;
  return res;
}

}  // namespace rdec
