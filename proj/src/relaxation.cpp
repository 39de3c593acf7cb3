#include "rdec/relaxation.hpp"

#include <cmath>
#include <limits>

#include "rdec/errors.hpp"

namespace rdec {

namespace {

constexpr double kDegenerateEps = 1e-28;  // on squared norms, scaled

double weighted_dot(const Vector& a, const Vector& b, const Vector& weight) {
  if (weight.size() == 0) return a.dot(b);
  return a.cwiseProduct(weight).dot(b);
}

using ScalarFn = std::function<double(double)>;

double solve_bisection(const ScalarFn& f, double lo, double hi, double flo,
                       int max_iter, int& iters) {
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    iters = it + 1;
    mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                       (1.0 + std::abs(mid)))
      break;
  }
  return 0.5 * (lo + hi);
}

// Classic Brent: bisection/secant/inverse quadratic, driven down to machine
// interval width so the entropy residual of the returned root is limited by
// roundoff rather than by the nominal tolerance.
double solve_brent(const ScalarFn& func, double a, double b, double fa,
                   double fb, int max_iter, int& iters) {
  const double eps = std::numeric_limits<double>::epsilon();
  double c = b, fc = fb;
  double d = b - a, e = b - a;
  for (int it = 0; it < max_iter; ++it) {
    iters = it + 1;
    if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 1e-300;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    if (std::abs(d) > tol1)
      b += d;
    else
      b += (xm >= 0.0 ? tol1 : -tol1);
    fb = func(b);
  }
  return b;
}

double solve_newton(const ScalarFn& f, double start, double lo, double hi,
                    int max_iter, int& iters) {
  double g = start;
  for (int it = 0; it < max_iter; ++it) {
    iters = it + 1;
    const double r = f(g);
    if (r == 0.0) return g;
    const double h = 1e-7 * (1.0 + std::abs(g));
    const double dr = (f(g + h) - f(g - h)) / (2.0 * h);
    if (dr == 0.0 || !std::isfinite(dr))
      throw SolverFailure("gamma_entropy_root: Newton derivative vanished");
    const double step = r / dr;
    g -= step;
    if (g < lo - 1.0 || g > hi + 1.0)
      throw SolverFailure("gamma_entropy_root: Newton left the bracket");
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() *
                              (1.0 + std::abs(g)))
      break;
  }
  return g;
}

}  // namespace

GammaResult gamma_energy(const Matrix& A, const Vector& b,
                         const std::vector<Vector>& stage_derivatives) {
  const int s = static_cast<int>(b.size());
  if (A.rows() != s || A.cols() != s ||
      static_cast<int>(stage_derivatives.size()) != s)
    throw ConfigError("gamma_energy: inconsistent tableau/stage sizes");

  Vector update = Vector::Zero(stage_derivatives[0].size());
  double max_f2 = 0.0;
  for (int i = 0; i < s; ++i) {
    update += b(i) * stage_derivatives[i];
    max_f2 = std::max(max_f2, stage_derivatives[i].squaredNorm());
  }
  const double den = update.squaredNorm();

  GammaResult res;
  if (den <= kDegenerateEps * max_f2 || max_f2 == 0.0) {
    res.fallback_used = true;
    return res;
  }
  double num = 0.0;
  for (int i = 0; i < s; ++i) {
    if (b(i) == 0.0) continue;
    for (int j = 0; j < i; ++j) {
      if (A(i, j) == 0.0) continue;
      num += b(i) * A(i, j) * stage_derivatives[i].dot(stage_derivatives[j]);
    }
  }
  res.gamma = 2.0 * num / den;
  if (!std::isfinite(res.gamma))
    throw NumericalAbort("gamma_energy: non-finite relaxation factor");
  return res;
}

GammaResult gamma_energy_from_direction(const Vector& y0,
                                        const Vector& direction,
                                        double estimate,
                                        const Vector& weight) {
  if (direction.size() != y0.size())
    throw ConfigError("gamma_energy_from_direction: size mismatch");
  if (weight.size() != 0 && weight.size() != y0.size())
    throw ConfigError("gamma_energy_from_direction: bad weight size");

  const double dd = weighted_dot(direction, direction, weight);
  const double yd = weighted_dot(y0, direction, weight);
  const double yy = weighted_dot(y0, y0, weight);

  GammaResult res;
  if (dd <= kDegenerateEps * (1.0 + yy)) {
    res.fallback_used = true;
    return res;
  }
  res.gamma = 2.0 * (estimate - yd) / dd;
  if (!std::isfinite(res.gamma))
    throw NumericalAbort(
        "gamma_energy_from_direction: non-finite relaxation factor");
  return res;
}

GammaResult gamma_entropy_root(const EntropyFn& eta, const Vector& y0,
                               const Vector& direction, double estimate,
                               const RootSolverConfig& cfg) {
  if (cfg.tol <= 0.0 || cfg.bracket_radius <= 0.0 ||
      cfg.bracket_radius >= 1.0 || cfg.max_iter < 1)
    throw ConfigError("gamma_entropy_root: invalid solver configuration");

  const double eta0 = eta(y0);
  if (!std::isfinite(eta0))
    throw NumericalAbort("gamma_entropy_root: entropy non-finite at y0");

  GammaResult res;
  const double tiny = 1e-15 * (1.0 + y0.norm());
  if (direction.norm() <= tiny && std::abs(estimate) <= tiny) {
    res.fallback_used = true;
    return res;
  }

  const auto r = [&](double g) -> double {
    return eta(y0 + g * direction) - eta0 - g * estimate;
  };
  const double tol_abs = cfg.tol * (std::abs(eta0) + 1.0);

  const double r_at_one = r(1.0);
  if (std::abs(r_at_one) <= tol_abs) {
    res.residual = std::abs(r_at_one);
    return res;
  }

  double radius = cfg.bracket_radius;
  double lo = 0.0, hi = 0.0, rlo = 0.0, rhi = 0.0;
  bool bracketed = false;
  for (int attempt = 0; attempt <= 4; ++attempt) {
    // The lower end stays strictly positive: gamma = 0 is always a root of
    // the conservative equation and never the one we want.
    lo = std::max(1.0 - radius, 1e-6);
    hi = 1.0 + radius;
    rlo = r(lo);
    rhi = r(hi);
    if (std::isfinite(rlo) && std::isfinite(rhi) &&
        (rlo <= 0.0) != (rhi <= 0.0)) {
      bracketed = true;
      break;
    }
    radius *= 2.0;
  }
  if (!bracketed)
    throw SolverFailure(
        "gamma_entropy_root: no sign change around gamma = 1 (NoBracket)");

  double root;
  switch (cfg.method) {
    case RootMethod::Bisection:
      root = solve_bisection(r, lo, hi, rlo, cfg.max_iter, res.iterations);
      break;
    case RootMethod::Newton:
      root = solve_newton(r, 1.0, lo, hi, cfg.max_iter, res.iterations);
      break;
    case RootMethod::Brent:
    default:
      root = solve_brent(r, lo, hi, rlo, rhi, cfg.max_iter, res.iterations);
      break;
  }
  res.gamma = root;
  res.residual = std::abs(r(root));
  if (!std::isfinite(res.gamma) || res.residual > tol_abs)
    throw SolverFailure(
        "gamma_entropy_root: residual above tolerance (NoConvergence)");
  return res;
}

}  // namespace rdec
