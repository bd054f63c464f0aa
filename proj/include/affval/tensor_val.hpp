#pragma once

#include "affval/quad.hpp"
#include "affval/rep_theory.hpp"
#include "affval/symtensor.hpp"

namespace affval {

struct ValuationOptions {
  int sphere_level = 64;          // smooth-path rule level
  QuadOptions quad;               // facet quadrature control

  ValuationOptions() { quad.rel_tol = 1e-8; }
};

// h_{Phi^{p,q}(K)}(phi): polytopes by exact facet sums
//     sum_i h_i^{1-q} int_{F_i} |<phi, x^p (x) u_i^q>| dx,
// smooth bodies by the Gauss-map substitution
//     sum_w w |<phi, grad h(u)^p (x) u^q>| h(u)^{1-q} alpha_K(u).
double phi_pq(const ConvexBody& K, int p, int q, const MixedTensor& phi,
              const ValuationOptions& opts = {});

// h_{Psi^{p,q}(K)}(psi): smooth bodies by
//     sum_w w |<psi, u^p (x) grad h(u)^q>| h(u)^{-(n+p)}
// (kappa dx = du), polytopes through the polar body:
// Psi^{p,q}(K) = Phi^{p,q}(K*).
double psi_pq(const ConvexBody& K, int p, int q, const MixedTensor& psi,
              const ValuationOptions& opts = {});

// Direct normal-fan evaluation of Psi^{p,q} on polytopes (cross-check;
// noisier than the polarity route): the normal cones of the vertices
// partition the sphere, so each rule node pays against its support vertex.
double psi_pq_normal_fan(const Polytope& K, int p, int q, const MixedTensor& psi,
                         const SphereRule& rule);

// Support evaluator of the valuation body in tensor space.
struct ValuationBody {
  int n = 0, p = 0, q = 0;
  MixedVariance argument_variance;  // variance of the tensors it accepts
  std::function<double(const MixedTensor&)> evaluator;

  double operator()(const MixedTensor& t) const { return evaluator(t); }
};

ValuationBody phi_body(const ConvexBody& K, int p, int q, const ValuationOptions& opts = {});
ValuationBody psi_body(const ConvexBody& K, int p, int q, const ValuationOptions& opts = {});

// Isotypic decomposition of Sym^p V (x) Sym^q V* under SL(V).  Projectors
// act on the coefficient space (dimP * dimQ, row-major over (a,b)); they
// are recovered spectrally from the equivariant insertion-contraction map,
// which has a simple spectrum by multiplicity-one.
struct IsotypicComponent {
  int i = 0;
  Weight sl_weight;
  long long dimension = 0;
  double eigenvalue = 0.0;  // of the insertion-contraction map
  Matrix projector;
};

struct IsotypicDecomposition {
  int n = 0, p = 0, q = 0;
  std::vector<IsotypicComponent> components;
};

IsotypicDecomposition isotypic(int n, int p, int q);

// Matrix of insertion-after-contraction on stored coefficients (exposed
// for tests).
Matrix insertion_contraction_matrix(int n, int p, int q);

// Apply a projector (or any coefficient-space matrix) to a tensor.
MixedTensor apply_projector(const Matrix& P, const MixedTensor& t);

// h_{pi_lambda Phi^{p,q}(K)}(phi) = h_{Phi^{p,q}(K)}(pi_lambda^T phi); the
// adjoint with respect to the natural pairing has the same coefficient
// matrix as the projector itself.
double phi_lambda(const ConvexBody& K, int p, int q, int component, const MixedTensor& phi,
                  const IsotypicDecomposition& dec, const ValuationOptions& opts = {});

}  // namespace affval
