#include "rdec/problems.hpp"

#include <cmath>

#include "rdec/errors.hpp"

namespace rdec {

namespace {

double radius_or_abort(const Vector& y) {
  const double n = y.norm();
  if (n < 1e-300)
    throw NumericalAbort("oscillator: state radius underflow, rhs singular");
  return n;
}

Vector rotate(double angle, const Vector& y) {
  const double c = std::cos(angle), s = std::sin(angle);
  return Vector{{c * y(0) - s * y(1), s * y(0) + c * y(1)}};
}

}  // namespace

OdeProblem nonlinear_oscillator(double u1_0, double u2_0) {
  OdeProblem p;
  p.name = "oscillator";
  p.dim = 2;
  p.y0 = Vector{{u1_0, u2_0}};
  const double n0 = p.y0.norm();
  if (n0 == 0.0) throw ConfigError("nonlinear_oscillator: y0 must be nonzero");
  p.rhs = [](double, const Vector& y) {
    const double n = radius_or_abort(y);
    return Vector{{-y(1) / n, y(0) / n}};
  };
  p.entropy = [](const Vector& y) { return 0.5 * y.squaredNorm(); };
  p.entropy_derivative = [](const Vector& y) { return y; };
  Vector y0 = p.y0;
  p.exact = [y0, n0](double t) { return rotate(t / n0, y0); };
  return p;
}

OdeProblem damped_oscillator(double u1_0, double u2_0, double alpha) {
  if (alpha <= 0.0) throw ConfigError("damped_oscillator: alpha must be > 0");
  OdeProblem p;
  p.name = "damped-oscillator";
  p.dim = 2;
  p.y0 = Vector{{u1_0, u2_0}};
  const double n0 = p.y0.norm();
  if (n0 == 0.0) throw ConfigError("damped_oscillator: y0 must be nonzero");
  p.rhs = [alpha](double, const Vector& y) {
    const double n = radius_or_abort(y);
    return Vector{{-y(1) / n - alpha * y(0), y(0) / n - alpha * y(1)}};
  };
  p.entropy = [](const Vector& y) { return 0.5 * y.squaredNorm(); };
  p.entropy_derivative = [](const Vector& y) { return y; };
  Vector y0 = p.y0;
  p.exact = [y0, n0, alpha](double t) {
    // n(t) = n0 exp(-alpha t), theta(t) = (exp(alpha t) - 1)/(alpha n0);
    // the amplitude factor n(t)/n0 keeps |y(t)| = n(t).
    const double theta = (std::exp(alpha * t) - 1.0) / (alpha * n0);
    return Vector(std::exp(-alpha * t) * rotate(theta, y0));
  };
  return p;
}

OdeProblem pendulum() {
  OdeProblem p;
  p.name = "pendulum";
  p.dim = 2;
  p.y0 = Vector{{1.5, 0.0}};
  p.rhs = [](double, const Vector& y) {
    return Vector{{-std::sin(y(1)), y(0)}};
  };
  p.entropy = [](const Vector& y) {
    return 0.5 * y(0) * y(0) - std::cos(y(1));
  };
  p.entropy_derivative = [](const Vector& y) {
    return Vector{{y(0), std::sin(y(1))}};
  };
  return p;
}

}  // namespace rdec
