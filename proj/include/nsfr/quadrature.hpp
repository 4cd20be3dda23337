#ifndef NSFR_QUADRATURE_HPP
#define NSFR_QUADRATURE_HPP

#include <vector>

namespace nsfr {

enum class QuadratureKind { GaussLegendre, GaussLobattoLegendre };

/// 1D quadrature rule on [-1,1] with p+1 nodes.
/// GL integrates degree <= 2p+1 exactly, GLL degree <= 2p-1.
struct Quadrature1D {
    QuadratureKind kind;
    int degree;                  // polynomial degree p, rule has p+1 nodes
    std::vector<double> nodes;   // strictly increasing in [-1,1]
    std::vector<double> weights; // positive, sum to 2

    int num_nodes() const { return static_cast<int>(nodes.size()); }
};

/// Construct a Gauss-Legendre or Gauss-Lobatto-Legendre rule with p+1 nodes.
/// Nodes are Newton-refined Legendre roots, reproducible to machine precision.
/// Throws std::invalid_argument for p < 1.
Quadrature1D gauss_quadrature(QuadratureKind kind, int p);

} // namespace nsfr

#endif
