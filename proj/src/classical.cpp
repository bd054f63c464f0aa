#include "affval/classical.hpp"

namespace affval {

DiscreteMeasure::DiscreteMeasure(std::vector<Vector> atoms_, std::vector<double> weights_)
    : atoms(std::move(atoms_)), weights(std::move(weights_)) {
  if (atoms.size() != weights.size() || atoms.empty())
    throw InvalidBody("DiscreteMeasure: atom/weight count mismatch");
  int p = static_cast<int>(atoms[0].size());
  Vector bary = Vector::Zero(p);
  double total = 0;
  for (size_t j = 0; j < atoms.size(); ++j) {
    if (atoms[j].size() != p) throw InvalidBody("DiscreteMeasure: inconsistent atom dimensions");
    if (std::abs(atoms[j].norm() - 1.0) > 1e-9)
      throw InvalidBody("DiscreteMeasure: atoms must be unit vectors");
    if (weights[j] <= 0) throw InvalidBody("DiscreteMeasure: weights must be positive");
    bary += weights[j] * atoms[j];
    total += weights[j];
  }
  if (bary.lpNorm<Eigen::Infinity>() > 1e-10 * std::max(1.0, total))
    throw InvalidBody("DiscreteMeasure: measure is not centered");
}

Zonotope projection_body(const Polytope& P) {
  Zonotope Z;
  for (const Facet& f : P.facets()) Z.segments.push_back(0.5 * f.area * f.normal);
  return Z;
}

namespace {

// inscribed polytope of a smooth body: support points along a node set
Polytope inscribed_polytope(const ConvexBody& K, int level) {
  SphereRule rule = sphere_rule(K.dim(), level);
  std::vector<Vector> pts;
  for (const Vector& u : rule.nodes) pts.push_back(support_gradient(K, u));
  return Polytope(pts);
}

}  // namespace

double lp_centroid(const ConvexBody& K, double p, const Vector& v, const QuadOptions& opts,
                   int refine_level) {
  if (p < 1.0) throw Error("lp_centroid: need p >= 1");
  if (!origin_interior(K)) throw OriginNotInterior("lp_centroid: origin not interior");
  int n = K.dim();
  auto g = [&](const Vector& x) { return std::pow(std::abs(v.dot(x)), p); };
  double integral = 0.0;
  if (K.is_polytope()) {
    integral = integrate_polytope(K.polytope(), g, opts).value;
  } else {
    // inscribed polytope refinement with one Richardson step (error ~ h^2)
    double coarse = integrate_polytope(inscribed_polytope(K, refine_level), g, opts).value;
    double fine = integrate_polytope(inscribed_polytope(K, 2 * refine_level), g, opts).value;
    integral = fine + (fine - coarse) / 3.0;
  }
  return std::pow(std::tgamma(p + 1.0) * (n + p) * integral, 1.0 / p);
}

double lp_projection(const Polytope& K, double q, const Vector& v) {
  if (q < 1.0) throw Error("lp_projection: need q >= 1");
  if (!K.origin_interior()) throw OriginNotInterior("lp_projection: origin not interior");
  KahanSum s;
  for (const Facet& f : K.facets())
    s.add(std::pow(std::abs(f.normal.dot(v)), q) * std::pow(f.offset, 1.0 - q) * f.area);
  return std::pow(std::tgamma(q + 1.0) * s.value(), 1.0 / q);
}

double q_projection_body(const Polytope& K, const Polytope& Q, const Matrix& xi) {
  if (xi.rows() != K.dim() || xi.cols() != Q.dim())
    throw DimensionMismatch("q_projection_body: xi must map R^p -> R^n");
  // h_{xi(Q)}(u) = h_Q(xi^T u); the image may be lower-dimensional
  return mixed_volume_last(
      K, [&](const Vector& u) { return Q.support(xi.transpose() * u); });
}

double q_mean_width_body(const ConvexBody& K, const DiscreteMeasure& mu, const Matrix& xi) {
  if (xi.cols() != K.dim() || xi.rows() != mu.sphere_dim())
    throw DimensionMismatch("q_mean_width_body: xi must map R^n -> R^p");
  KahanSum s;
  for (size_t j = 0; j < mu.atoms.size(); ++j)
    s.add(mu.weights[j] * support(K, xi.transpose() * mu.atoms[j]));
  return s.value();
}

}  // namespace affval
