#pragma once

#include <Eigen/Core>

namespace rdec {

struct QuadratureRule {
  Eigen::VectorXd points;   // ascending
  Eigen::VectorXd weights;  // positive
};

/// n-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree
/// 2n-1.
QuadratureRule gauss_legendre(int n);

/// Same rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// The m+1 Gauss-Lobatto points of degree m on [0, 1]: both endpoints plus
/// the roots of the derivative of the Legendre polynomial of degree m.
Eigen::VectorXd gauss_lobatto_points(int m);

/// Lagrange basis on a fixed set of strictly increasing nodes.
///
/// value()/derivative() use the direct product formulas, which are accurate
/// for the small node counts used here (degree <= 8 on [0, 1]).
class LagrangeBasis {
 public:
  explicit LagrangeBasis(Eigen::VectorXd nodes);

  int size() const { return static_cast<int>(nodes_.size()); }
  const Eigen::VectorXd& nodes() const { return nodes_; }

  double value(int j, double x) const;
  double derivative(int j, double x) const;

  /// phi_j(points_i); rows are evaluation points, columns basis functions.
  Eigen::MatrixXd values_at(const Eigen::VectorXd& points) const;
  Eigen::MatrixXd derivatives_at(const Eigen::VectorXd& points) const;

 private:
  Eigen::VectorXd nodes_;
};

}  // namespace rdec
