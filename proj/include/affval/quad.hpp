#pragma once

#include <functional>

#include "affval/bodies.hpp"
#include "affval/common.hpp"

namespace affval {

struct QuadReport {
  double value = 0.0;
  double error_estimate = 0.0;
  long subdivisions = 0;
  bool converged = true;

  QuadReport& operator+=(const QuadReport& o) {
    value += o.value;
    error_estimate += o.error_estimate;
    subdivisions += o.subdivisions;
    converged = converged && o.converged;
    return *this;
  }
};

struct SphereRule {
  std::vector<Vector> nodes;    // unit vectors
  std::vector<double> weights;  // sum to vol(S^{n-1})
  int level = 0;

  int size() const { return static_cast<int>(nodes.size()); }
};

// n=2: trapezoid in the angle; n=3: Gauss-Legendre x trapezoid product;
// n>=4: symmetrized deterministic low-discrepancy nodes, equal weights.
SphereRule sphere_rule(int n, int level);

struct QuadOptions {
  double rel_tol = 1e-9;
  long max_subdivisions = 400000;
};

// Adaptive quadrature of g over a d-simplex embedded in R^n given by its
// d+1 vertices.  Embedded degree-2/degree-3 pair with longest-edge
// bisection; handles |polynomial| kinks by subdivision.
QuadReport integrate_simplex(const std::vector<Vector>& simplex,
                             const std::function<double(const Vector&)>& g,
                             const QuadOptions& opts = {});

// Integral of g over one polytope facet (sums its triangulation).
QuadReport integrate_facet(const Facet& F, const std::vector<Vector>& polytope_vertices,
                           const std::function<double(const Vector&)>& g,
                           const QuadOptions& opts = {});

// Volume integral over a full-dimensional polytope via the cone
// decomposition from the vertex centroid.
QuadReport integrate_polytope(const Polytope& P, const std::function<double(const Vector&)>& g,
                              const QuadOptions& opts = {});

// Sum of the principal (n-1)-minors of the Hessian of h_K at u; the
// density of the surface-area measure.  used_fd flags finite-difference
// Hessians of callback oracles.
double alpha_K(const ConvexBody& K, const Vector& u, bool* used_fd = nullptr);

// Gauss curvature at x = grad h(u): 1 / alpha_K(u).
double kappa_K(const ConvexBody& K, const Vector& u);

// sum_rule w g(grad h(u), u) alpha_K(u)  ==  int_{dK} g(x, nu(x)) dx
double boundary_integrate_smooth(const ConvexBody& K,
                                 const std::function<double(const Vector&, const Vector&)>& g,
                                 const SphereRule& rule);

// Same boundary integral for an ellipsoid through the parameterization
// s -> Q^{-1/2} s of the boundary (independent of the Gauss-map route).
double boundary_integrate_param(const Ellipsoid& E,
                                const std::function<double(const Vector&, const Vector&)>& g,
                                const SphereRule& rule);

// V(K, ..., K, L) = (1/n) sum_i h_L(u_i) area_i over the facets of K.
double mixed_volume_last(const Polytope& K, const ConvexBody& L);
double mixed_volume_last(const Polytope& K, const std::function<double(const Vector&)>& support_L);

}  // namespace affval
