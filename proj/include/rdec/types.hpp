#pragma once

#include <Eigen/Core>
#include <functional>

namespace rdec {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Right-hand side of y'(t) = f(t, y).
using Rhs = std::function<Vector(double, const Vector&)>;

}  // namespace rdec
