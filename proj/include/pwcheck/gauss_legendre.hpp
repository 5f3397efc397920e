#pragma once

#include <vector>

namespace pwcheck {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// nodes in ascending order.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

GaussLegendreRule gauss_legendre(int n);

}  // namespace pwcheck
