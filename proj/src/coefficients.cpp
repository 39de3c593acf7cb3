#include "rdec/coefficients.hpp"

#include "rdec/errors.hpp"
#include "rdec/quadrature.hpp"

namespace rdec {

const char* to_string(NodeFamily family) {
  return family == NodeFamily::Equispaced ? "equispaced" : "gauss-lobatto";
}

Eigen::VectorXd make_nodes(int M, NodeFamily family) {
  if (M < 1) throw ConfigError("make_nodes: need at least one subinterval");
  if (family == NodeFamily::Equispaced) {
    Eigen::VectorXd nodes(M + 1);
    for (int i = 0; i <= M; ++i) nodes(i) = static_cast<double>(i) / M;
    return nodes;
  }
  return gauss_lobatto_points(M);
}

CoefficientSet make_coefficients(int M, NodeFamily family) {
  CoefficientSet cs;
  cs.M = M;
  cs.nodes = make_nodes(M, family);
  for (int i = 0; i < M; ++i)
    if (!(cs.nodes(i) < cs.nodes(i + 1)))
      throw ConfigError("make_coefficients: nodes must be strictly increasing");

  const LagrangeBasis basis(cs.nodes);
  cs.theta.resize(M, M + 1);
  cs.beta.resize(M);
  for (int m = 1; m <= M; ++m) {
    const QuadratureRule rule = gauss_legendre(M + 1, 0.0, cs.nodes(m));
    for (int r = 0; r <= M; ++r) {
      double integral = 0.0;
      for (int q = 0; q < rule.points.size(); ++q)
        integral += rule.weights(q) * basis.value(r, rule.points(q));
      cs.theta(m - 1, r) = integral;
    }
    cs.beta(m - 1) = cs.nodes(m);
  }
  return cs;
}

}  // namespace rdec
