#include "rdec/quadrature.hpp"

#include <cmath>
#include <utility>

#include "rdec/errors.hpp"

namespace rdec {

namespace {

// Legendre polynomial P_n and its first derivative at x, |x| < 1 for the
// derivative formula.
std::pair<double, double> legendre(int n, double x) {
  if (n == 0) return {1.0, 0.0};
  double p_prev = 1.0;
  double p = x;
  for (int k = 2; k <= n; ++k) {
    const double p_next = ((2 * k - 1) * x * p - (k - 1) * p_prev) / k;
    p_prev = p;
    p = p_next;
  }
  const double dp = n * (x * p - p_prev) / (x * x - 1.0);
  return {p, dp};
}

// Second derivative from the Legendre ODE (1-x^2) P'' = 2x P' - n(n+1) P.
double legendre_dd(int n, double x, double p, double dp) {
  return (2.0 * x * dp - n * (n + 1) * p) / (1.0 - x * x);
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw ConfigError("gauss_legendre: need at least one point");
  QuadratureRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev initial guess for the i-th root counted from +1 downward.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      std::tie(p, dp) = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    std::tie(p, dp) = legendre(n, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points(n - 1 - i) = x;
    rule.points(i) = -x;
    rule.weights(n - 1 - i) = w;
    rule.weights(i) = w;
  }
  if (n % 2 == 1) rule.points((n - 1) / 2) = 0.0;
  return rule;
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  QuadratureRule rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double halfwidth = 0.5 * (b - a);
  rule.points = (mid + (halfwidth * rule.points.array())).matrix();
  rule.weights *= halfwidth;
  return rule;
}

Eigen::VectorXd gauss_lobatto_points(int m) {
  if (m < 1) throw ConfigError("gauss_lobatto_points: degree must be >= 1");
  Eigen::VectorXd pts(m + 1);
  pts(0) = 0.0;
  pts(m) = 1.0;
  for (int i = 1; i < m; ++i) {
    // Interior points are roots of P_m'; Chebyshev-Lobatto initial guess.
    double x = std::cos(M_PI * (m - i) / m);
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(m, x);
      const double ddp = legendre_dd(m, x, p, dp);
      const double dx = dp / ddp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    pts(i) = 0.5 * (x + 1.0);
  }
  // Symmetrize: Lobatto points come in mirrored pairs about 1/2.
  for (int i = 1; 2 * i < m; ++i) {
    const double s = 0.5 * (pts(i) + (1.0 - pts(m - i)));
    pts(i) = s;
    pts(m - i) = 1.0 - s;
  }
  if (m % 2 == 0) pts(m / 2) = 0.5;
  return pts;
}

LagrangeBasis::LagrangeBasis(Eigen::VectorXd nodes) : nodes_(std::move(nodes)) {
  for (int i = 0; i + 1 < nodes_.size(); ++i)
    if (!(nodes_(i) < nodes_(i + 1)))
      throw ConfigError("LagrangeBasis: nodes must be strictly increasing");
}

double LagrangeBasis::value(int j, double x) const {
  // extended precision keeps the absolute error near one double ulp even for
  // the oscillatory high-degree equispaced bases
  long double v = 1.0L;
  for (int k = 0; k < size(); ++k) {
    if (k == j) continue;
    v *= static_cast<long double>(x - nodes_(k)) / (nodes_(j) - nodes_(k));
  }
  return static_cast<double>(v);
}

double LagrangeBasis::derivative(int j, double x) const {
  long double sum = 0.0L;
  for (int m = 0; m < size(); ++m) {
    if (m == j) continue;
    long double term = 1.0L / (nodes_(j) - nodes_(m));
    for (int k = 0; k < size(); ++k) {
      if (k == j || k == m) continue;
      term *= static_cast<long double>(x - nodes_(k)) / (nodes_(j) - nodes_(k));
    }
    sum += term;
  }
  return static_cast<double>(sum);
}

Eigen::MatrixXd LagrangeBasis::values_at(const Eigen::VectorXd& points) const {
  Eigen::MatrixXd out(points.size(), size());
  for (int i = 0; i < points.size(); ++i)
    for (int j = 0; j < size(); ++j) out(i, j) = value(j, points(i));
  return out;
}

Eigen::MatrixXd LagrangeBasis::derivatives_at(
    const Eigen::VectorXd& points) const {
  Eigen::MatrixXd out(points.size(), size());
  for (int i = 0; i < points.size(); ++i)
    for (int j = 0; j < size(); ++j) out(i, j) = derivative(j, points(i));
  return out;
}

}  // namespace rdec
