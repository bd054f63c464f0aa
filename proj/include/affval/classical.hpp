#pragma once

#include "affval/bodies.hpp"
#include "affval/quad.hpp"

namespace affval {

// Minkowski sum of segments [-z_i, z_i]; h(u) = sum |<z_i, u>|.
struct Zonotope {
  std::vector<Vector> segments;

  int dim() const { return segments.empty() ? 0 : static_cast<int>(segments[0].size()); }
  double support(const Vector& u) const {
    KahanSum s;
    for (const Vector& z : segments) s.add(std::abs(z.dot(u)));
    return s.value();
  }
};

// Finitely many atoms on S^{p-1} with positive weights, centered:
// sum w_j u_j = 0.
struct DiscreteMeasure {
  std::vector<Vector> atoms;
  std::vector<double> weights;

  DiscreteMeasure(std::vector<Vector> atoms_, std::vector<double> weights_);
  int sphere_dim() const { return atoms.empty() ? 0 : static_cast<int>(atoms[0].size()); }
};

// Projection body of a polytope as a zonotope: segments (area_i/2) u_i.
Zonotope projection_body(const Polytope& P);

// h_{Gamma_p K}(v) = (p! (n+p) int_K |<v,x>|^p dx)^{1/p},  p >= 1.
double lp_centroid(const ConvexBody& K, double p, const Vector& v,
                   const QuadOptions& opts = {}, int refine_level = 24);

// h_{Pi_q K}(v) = (q! sum_i |<u_i,v>|^q h_i^{1-q} area_i)^{1/q},  q >= 1.
double lp_projection(const Polytope& K, double q, const Vector& v);

// h_{Pi_Q K}(xi) = V(K, ..., K, xi(Q)) for xi: R^p -> R^n (n x p matrix).
double q_projection_body(const Polytope& K, const Polytope& Q, const Matrix& xi);

// h_{M_mu K}(xi) = sum_j w_j h_K(xi^T u_j) for xi: R^n -> R^p (p x n matrix).
double q_mean_width_body(const ConvexBody& K, const DiscreteMeasure& mu, const Matrix& xi);

}  // namespace affval
