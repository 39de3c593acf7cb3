#pragma once

#include <Eigen/Core>

namespace rdec {

/// Subtimestep node distribution on the reference interval [0, 1]. Both
/// families include the endpoints.
enum class NodeFamily { Equispaced, GaussLobatto };

const char* to_string(NodeFamily family);

/// Quadrature data driving a deferred-correction sweep with M subintervals.
///
/// theta(m-1, r) is the integral over [0, nodes[m]] of the r-th Lagrange
/// basis polynomial on the nodes, for m = 1..M and r = 0..M. beta(m-1) is
/// the forward-Euler weight to subtimestep m, which on the unit reference
/// interval is just nodes[m]. Row sums of theta reproduce the nodes because
/// the basis sums to one.
struct CoefficientSet {
  int M = 0;
  Eigen::VectorXd nodes;  // M+1 entries, strictly increasing, 0 and 1 at the ends
  Eigen::MatrixXd theta;  // M x (M+1)
  Eigen::VectorXd beta;   // M entries, beta(M-1) = 1
};

/// M+1 nodes on [0, 1] for the requested family. Rejects M < 1.
Eigen::VectorXd make_nodes(int M, NodeFamily family);

/// Nodes plus the theta/beta weights. theta is evaluated with a Gauss-Legendre
/// rule of M+1 points per subinterval, exact for the degree-M basis.
CoefficientSet make_coefficients(int M, NodeFamily family);

}  // namespace rdec
