#include "affval/tensor_val.hpp"

#include <algorithm>

namespace affval {

namespace {

void check_args(const ConvexBody& K, int p, int q, const MixedTensor& t, const char* who) {
  if (p < 0 || q < 0) throw Error(std::string(who) + ": need p,q >= 0");
  if (t.n() != K.dim() || t.p() != p || t.q() != q)
    throw DimensionMismatch(std::string(who) + ": tensor shape mismatch");
}

}  // namespace

double phi_pq(const ConvexBody& K, int p, int q, const MixedTensor& phi,
              const ValuationOptions& opts) {
  check_args(K, p, q, phi, "phi_pq");
  if (!origin_interior(K)) throw OriginNotInterior("phi_pq: origin not interior");

  if (K.is_polytope()) {
    const Polytope& P = K.polytope();
    KahanSum total;
    for (const Facet& f : P.facets()) {
      const Vector& u = f.normal;
      double weight = std::pow(f.offset, 1.0 - q);
      QuadReport r = integrate_facet(
          f, P.vertices(), [&](const Vector& x) { return std::abs(mixed_bracket(phi, x, u)); },
          opts.quad);
      total.add(weight * r.value);
    }
    return total.value();
  }

  SphereRule rule = sphere_rule(K.dim(), opts.sphere_level);
  KahanSum total;
  for (int i = 0; i < rule.size(); ++i) {
    const Vector& u = rule.nodes[i];
    Vector x = support_gradient(K, u);
    double h = support(K, u);
    total.add(rule.weights[i] * std::abs(mixed_bracket(phi, x, u)) * std::pow(h, 1.0 - q) *
              alpha_K(K, u));
  }
  return total.value();
}

double psi_pq(const ConvexBody& K, int p, int q, const MixedTensor& psi,
              const ValuationOptions& opts) {
  check_args(K, p, q, psi, "psi_pq");
  if (!origin_interior(K)) throw OriginNotInterior("psi_pq: origin not interior");

  if (K.is_polytope()) {
    // Psi_V^{p,q}(K) = Phi_{V*}^{p,q}(K*); exact given the polar polytope
    return phi_pq(polar(K), p, q, psi, opts);
  }

  SphereRule rule = sphere_rule(K.dim(), opts.sphere_level);
  int n = K.dim();
  KahanSum total;
  for (int i = 0; i < rule.size(); ++i) {
    const Vector& u = rule.nodes[i];
    Vector x = support_gradient(K, u);
    double h = support(K, u);
    total.add(rule.weights[i] * std::abs(mixed_bracket(psi, u, x)) * std::pow(h, -(n + p)));
  }
  return total.value();
}

double psi_pq_normal_fan(const Polytope& K, int p, int q, const MixedTensor& psi,
                         const SphereRule& rule) {
  if (!K.origin_interior()) throw OriginNotInterior("psi_pq_normal_fan: origin not interior");
  int n = K.dim();
  KahanSum total;
  for (int i = 0; i < rule.size(); ++i) {
    const Vector& u = rule.nodes[i];
    // support vertex = the normal cone containing u
    const Vector* best = &K.vertices()[0];
    double hb = best->dot(u);
    for (const Vector& v : K.vertices()) {
      double hv = v.dot(u);
      if (hv > hb) {
        hb = hv;
        best = &v;
      }
    }
    total.add(rule.weights[i] * std::abs(mixed_bracket(psi, u, *best)) * std::pow(hb, -(n + p)));
  }
  return total.value();
}

ValuationBody phi_body(const ConvexBody& K, int p, int q, const ValuationOptions& opts) {
  ValuationBody b;
  b.n = K.dim();
  b.p = p;
  b.q = q;
  b.argument_variance = MixedVariance::PhiArg;
  b.evaluator = [K, p, q, opts](const MixedTensor& t) { return phi_pq(K, p, q, t, opts); };
  return b;
}

ValuationBody psi_body(const ConvexBody& K, int p, int q, const ValuationOptions& opts) {
  ValuationBody b;
  b.n = K.dim();
  b.p = p;
  b.q = q;
  b.argument_variance = MixedVariance::PsiArg;
  b.evaluator = [K, p, q, opts](const MixedTensor& t) { return psi_pq(K, p, q, t, opts); };
  return b;
}

Matrix insertion_contraction_matrix(int n, int p, int q) {
  auto bp = MonomialBasis::get(n, p);
  auto bq = MonomialBasis::get(n, q);
  int dp = bp->size(), dq = bq->size();
  int dim = dp * dq;
  Matrix E = Matrix::Zero(dim, dim);
  // (E S)_{ab} = sum_{k,l} a_k b_k S_{a - e_k + e_l, b - e_k + e_l}
  for (int a = 0; a < dp; ++a) {
    const MultiIndex& alpha = bp->at(a);
    for (int b = 0; b < dq; ++b) {
      const MultiIndex& beta = bq->at(b);
      int row = a * dq + b;
      for (int k = 0; k < n; ++k) {
        double cab = static_cast<double>(alpha[k]) * beta[k];
        if (cab == 0.0) continue;
        for (int l = 0; l < n; ++l) {
          MultiIndex am = alpha, bm = beta;
          am.exponents[k] -= 1;
          am.exponents[l] += 1;
          bm.exponents[k] -= 1;
          bm.exponents[l] += 1;
          E(row, bp->rank(am) * dq + bq->rank(bm)) += cab;
        }
      }
    }
  }
  return E;
}

IsotypicDecomposition isotypic(int n, int p, int q) {
  if (n < 2 || n > 6 || p < 0 || q < 0 || p > 6 || q > 6)
    throw Error("isotypic: supported range is 2 <= n <= 6, 0 <= p,q <= 6");
  std::vector<IsotypicWeight> weights = decompose_sym_mixed(n, p, q);

  IsotypicDecomposition dec;
  dec.n = n;
  dec.p = p;
  dec.q = q;

  auto bp = MonomialBasis::get(n, p);
  auto bq = MonomialBasis::get(n, q);
  int dp = bp->size(), dq = bq->size();
  int dim = dp * dq;

  if (p == 0 || q == 0) {
    IsotypicComponent c;
    c.i = 0;
    c.sl_weight = weights[0].sl_weight;
    c.dimension = weights[0].dimension;
    c.projector = Matrix::Identity(dim, dim);
    dec.components.push_back(std::move(c));
    return dec;
  }

  Matrix E = insertion_contraction_matrix(n, p, q);

  // pairing weights turn E into a self-adjoint matrix
  Vector wp = pairing_weights(*bp), wq = pairing_weights(*bq);
  Vector d(dim), dsqrt(dim), dinvsqrt(dim);
  for (int a = 0; a < dp; ++a)
    for (int b = 0; b < dq; ++b) {
      double w = wp(a) * wq(b);
      d(a * dq + b) = w;
      dsqrt(a * dq + b) = std::sqrt(w);
      dinvsqrt(a * dq + b) = 1.0 / std::sqrt(w);
    }
  Matrix Esym = dsqrt.asDiagonal() * E * dinvsqrt.asDiagonal();
  double asym = (Esym - Esym.transpose()).lpNorm<Eigen::Infinity>();
  if (asym > 1e-9 * std::max(1.0, Esym.lpNorm<Eigen::Infinity>()))
    throw DecompositionFailed("isotypic: symmetrized map is not self-adjoint");
  Esym = 0.5 * (Esym + Esym.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> es(Esym);
  Vector evals = es.eigenvalues();
  double scale = std::max(1.0, std::abs(evals(dim - 1)));

  // cluster eigenvalues; gaps below tolerance inside a cluster, above between
  const double gap_tol = 1e-8 * scale;
  std::vector<std::pair<int, int>> clusters;  // [begin, end)
  int begin = 0;
  for (int i = 1; i <= dim; ++i) {
    if (i == dim || evals(i) - evals(i - 1) > gap_tol) {
      clusters.push_back({begin, i});
      begin = i;
    }
  }
  int expected = std::min(p, q) + 1;
  if (static_cast<int>(clusters.size()) != expected)
    throw DecompositionFailed("isotypic: eigenvalue clustering does not match min(p,q)+1 components");

  std::vector<IsotypicComponent> comps;
  for (auto [b0, b1] : clusters) {
    IsotypicComponent c;
    Matrix V = es.eigenvectors().middleCols(b0, b1 - b0);
    Matrix S = V * V.transpose();
    c.projector = dinvsqrt.asDiagonal() * S * dsqrt.asDiagonal();
    c.dimension = b1 - b0;
    c.eigenvalue = 0.5 * (evals(b0) + evals(b1 - 1));
    comps.push_back(std::move(c));
  }

  // label by descending dimension: i = 0 is the largest component
  std::sort(comps.begin(), comps.end(), [](const IsotypicComponent& a, const IsotypicComponent& b) {
    return a.dimension > b.dimension;
  });
  for (int i = 0; i < static_cast<int>(comps.size()); ++i) {
    comps[i].i = i;
    comps[i].sl_weight = weights[i].sl_weight;
    if (comps[i].dimension != weights[i].dimension)
      throw DecompositionFailed("isotypic: eigenspace dimension disagrees with the Weyl dimension");
  }
  dec.components = std::move(comps);
  return dec;
}

MixedTensor apply_projector(const Matrix& P, const MixedTensor& t) {
  int dp = t.basis_p().size(), dq = t.basis_q().size();
  if (P.rows() != dp * dq || P.cols() != dp * dq)
    throw DimensionMismatch("apply_projector: projector size mismatch");
  Vector flat(dp * dq);
  for (int a = 0; a < dp; ++a)
    for (int b = 0; b < dq; ++b) flat(a * dq + b) = t.coeffs()(a, b);
  Vector out = P * flat;
  Matrix m(dp, dq);
  for (int a = 0; a < dp; ++a)
    for (int b = 0; b < dq; ++b) m(a, b) = out(a * dq + b);
  return MixedTensor(t.n(), t.p(), t.q(), t.variance(), std::move(m));
}

double phi_lambda(const ConvexBody& K, int p, int q, int component, const MixedTensor& phi,
                  const IsotypicDecomposition& dec, const ValuationOptions& opts) {
  if (dec.n != K.dim() || dec.p != p || dec.q != q)
    throw DimensionMismatch("phi_lambda: decomposition does not match (n,p,q)");
  if (component < 0 || component >= static_cast<int>(dec.components.size()))
    throw Error("phi_lambda: component index out of range");
  MixedTensor projected = apply_projector(dec.components[component].projector, phi);
  return phi_pq(K, p, q, projected, opts);
}

}  // namespace affval
