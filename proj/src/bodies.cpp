#include "affval/bodies.hpp"

#include <algorithm>

namespace affval {

Polytope::Polytope(const std::vector<Vector>& points) {
  if (points.empty()) throw InvalidBody("Polytope: no vertices");
  n_ = static_cast<int>(points[0].size());
  for (const Vector& p : points)
    if (p.size() != n_) throw InvalidBody("Polytope: inconsistent vertex dimensions");

  HullOutput hull = convex_hull(points);
  verts_ = std::move(hull.vertices);
  facets_ = std::move(hull.facets);

  double scale = 1.0;
  for (const Vector& v : verts_) scale = std::max(scale, v.lpNorm<Eigen::Infinity>());

  // closedness of the surface-area measure: sum area_i u_i = 0
  Vector closure = Vector::Zero(n_);
  double total_area = 0;
  for (const Facet& f : facets_) {
    closure += f.area * f.normal;
    total_area += f.area;
  }
  if (closure.lpNorm<Eigen::Infinity>() > 1e-8 * std::max(1.0, total_area))
    throw InvalidBody("Polytope: facet normals do not close up");

  // every vertex beneath every facet, facet vertices on the plane
  for (const Facet& f : facets_) {
    for (const Vector& v : verts_)
      if (f.normal.dot(v) > f.offset + 1e-9 * scale)
        throw InvalidBody("Polytope: vertex above facet plane");
    for (int vi : f.vertices)
      if (std::abs(f.normal.dot(verts_[vi]) - f.offset) > 1e-8 * scale)
        throw InvalidBody("Polytope: facet vertex off the facet plane");
  }
}

double Polytope::support(const Vector& xi) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const Vector& v : verts_) best = std::max(best, v.dot(xi));
  return best;
}

bool Polytope::contains(const Vector& x, double tol) const {
  for (const Facet& f : facets_)
    if (f.normal.dot(x) > f.offset + tol) return false;
  return true;
}

bool Polytope::origin_interior(double tol) const {
  for (const Facet& f : facets_)
    if (f.offset <= tol) return false;
  return true;
}

Ellipsoid::Ellipsoid(Matrix Q) : Q_(std::move(Q)) {
  if (Q_.rows() != Q_.cols()) throw InvalidBody("Ellipsoid: Q not square");
  if ((Q_ - Q_.transpose()).lpNorm<Eigen::Infinity>() > 1e-12 * std::max(1.0, Q_.lpNorm<Eigen::Infinity>()))
    throw InvalidBody("Ellipsoid: Q not symmetric");
  Q_ = 0.5 * (Q_ + Q_.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(Q_);
  if (es.eigenvalues().minCoeff() <= 0)
    throw InvalidBody("Ellipsoid: Q not positive definite");
  Qinv_ = Q_.inverse();
  Qinv_ = 0.5 * (Qinv_ + Qinv_.transpose());
}

double Ellipsoid::support(const Vector& xi) const {
  double s = xi.dot(Qinv_ * xi);
  return std::sqrt(std::max(0.0, s));
}

Vector Ellipsoid::support_gradient(const Vector& xi) const {
  double h = support(xi);
  if (h == 0) throw Error("Ellipsoid: support gradient at 0");
  return Qinv_ * xi / h;
}

Matrix Ellipsoid::support_hessian(const Vector& xi) const {
  double h = support(xi);
  if (h == 0) throw Error("Ellipsoid: support Hessian at 0");
  Vector g = Qinv_ * xi;
  return Qinv_ / h - g * g.transpose() / (h * h * h);
}

bool Ellipsoid::contains(const Vector& x, double tol) const {
  return x.dot(Q_ * x) <= 1.0 + tol;
}

double Ellipsoid::volume() const {
  return unit_ball_volume(dim()) / std::sqrt(Q_.determinant());
}

SupportOracle::SupportOracle(int n_in, std::function<double(const Vector&)> h_in,
                             std::function<Vector(const Vector&)> grad_in,
                             std::function<Matrix(const Vector&)> hess_in, bool exact)
    : n(n_in), exact_derivatives(exact), h(std::move(h_in)), grad(std::move(grad_in)),
      hess(std::move(hess_in)) {
  if (!h) throw InvalidBody("SupportOracle: missing support callback");
  // sampled positive 1-homogeneity
  Rng probe(0x5EEDu);
  for (int t = 0; t < 8; ++t) {
    Vector u = probe.unit_vector(n);
    double h1 = h(u), h2 = h(2.0 * u);
    if (std::abs(h2 - 2.0 * h1) > 1e-9 * std::max(1.0, std::abs(h1)))
      throw InvalidBody("SupportOracle: support function not 1-homogeneous");
    if (hess) {
      Matrix H = hess(u);
      Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (H + H.transpose()));
      if (es.eigenvalues().minCoeff() < -1e-7 * std::max(1.0, H.lpNorm<Eigen::Infinity>()))
        throw InvalidBody("SupportOracle: Hessian not positive semidefinite");
    }
  }
}

int ConvexBody::dim() const {
  switch (kind()) {
    case Kind::Polytope: return polytope().dim();
    case Kind::Ellipsoid: return ellipsoid().dim();
    default: return oracle().n;
  }
}

double support(const ConvexBody& K, const Vector& xi) {
  if (xi.size() != K.dim()) throw DimensionMismatch("support: direction dimension mismatch");
  if (xi.lpNorm<Eigen::Infinity>() == 0.0) return 0.0;
  switch (K.kind()) {
    case ConvexBody::Kind::Polytope: return K.polytope().support(xi);
    case ConvexBody::Kind::Ellipsoid: return K.ellipsoid().support(xi);
    default: return K.oracle().h(xi);
  }
}

namespace {

Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& u) {
  int n = static_cast<int>(u.size());
  double step = 1e-6 * std::max(1.0, u.norm());
  Vector g(n);
  for (int i = 0; i < n; ++i) {
    Vector up = u, dn = u;
    up(i) += step;
    dn(i) -= step;
    g(i) = (f(up) - f(dn)) / (2 * step);
  }
  return g;
}

Matrix fd_hessian(const std::function<double(const Vector&)>& f, const Vector& u) {
  int n = static_cast<int>(u.size());
  double step = 2e-5 * std::max(1.0, u.norm());
  Matrix H(n, n);
  double f0 = f(u);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (i == j) {
        Vector a = u, b = u;
        a(i) += step;
        b(i) -= step;
        H(i, i) = (f(a) - 2 * f0 + f(b)) / (step * step);
      } else {
        Vector pp = u, pm = u, mp = u, mm = u;
        pp(i) += step; pp(j) += step;
        pm(i) += step; pm(j) -= step;
        mp(i) -= step; mp(j) += step;
        mm(i) -= step; mm(j) -= step;
        H(i, j) = H(j, i) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4 * step * step);
      }
    }
  }
  return H;
}

}  // namespace

Vector support_gradient(const ConvexBody& K, const Vector& xi, bool* used_fd) {
  if (used_fd) *used_fd = false;
  switch (K.kind()) {
    case ConvexBody::Kind::Ellipsoid:
      return K.ellipsoid().support_gradient(xi);
    case ConvexBody::Kind::Oracle: {
      const SupportOracle& o = K.oracle();
      if (o.grad) return o.grad(xi);
      if (used_fd) *used_fd = true;
      return fd_gradient(o.h, xi);
    }
    default:
      throw Error("support_gradient: not differentiable for polytopes");
  }
}

Matrix support_hessian(const ConvexBody& K, const Vector& xi, bool* used_fd) {
  if (used_fd) *used_fd = false;
  switch (K.kind()) {
    case ConvexBody::Kind::Ellipsoid:
      return K.ellipsoid().support_hessian(xi);
    case ConvexBody::Kind::Oracle: {
      const SupportOracle& o = K.oracle();
      if (o.hess) return o.hess(xi);
      if (used_fd) *used_fd = true;
      return fd_hessian(o.h, xi);
    }
    default:
      throw Error("support_hessian: not differentiable for polytopes");
  }
}

std::vector<Vector> probe_directions(int n) {
  std::vector<Vector> dirs;
  for (int i = 0; i < n; ++i) {
    Vector e = Vector::Zero(n);
    e(i) = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = (mask >> i) & 1 ? 1.0 : -1.0;
    dirs.push_back(v / v.norm());
  }
  return dirs;
}

bool origin_interior(const ConvexBody& K, double tol) {
  if (K.is_polytope()) return K.polytope().origin_interior(tol);
  for (const Vector& u : probe_directions(K.dim()))
    if (support(K, u) <= tol) return false;
  return true;
}

ConvexBody polar(const ConvexBody& K) {
  if (!origin_interior(K)) throw OriginNotInterior("polar: origin not interior");
  switch (K.kind()) {
    case ConvexBody::Kind::Polytope: {
      std::vector<Vector> verts;
      for (const Facet& f : K.polytope().facets())
        verts.push_back(f.normal / f.offset);
      return ConvexBody(Polytope(verts));
    }
    case ConvexBody::Kind::Ellipsoid:
      return ConvexBody(Ellipsoid(K.ellipsoid().Qinv()));
    default:
      throw Error("polar: unsupported for support oracles");
  }
}

namespace {

SupportOracle oracle_of(const ConvexBody& K) {
  // wrap any body as an oracle (keeps exact derivatives when they exist)
  switch (K.kind()) {
    case ConvexBody::Kind::Ellipsoid: {
      Ellipsoid e = K.ellipsoid();
      return SupportOracle(
          e.dim(), [e](const Vector& u) { return e.support(u); },
          [e](const Vector& u) { return e.support_gradient(u); },
          [e](const Vector& u) { return e.support_hessian(u); }, true);
    }
    case ConvexBody::Kind::Oracle:
      return K.oracle();
    default: {
      Polytope p = K.polytope();
      return SupportOracle(p.dim(), [p](const Vector& u) { return p.support(u); });
    }
  }
}

}  // namespace

ConvexBody minkowski_sum(const ConvexBody& K, const ConvexBody& L) {
  if (K.dim() != L.dim()) throw DimensionMismatch("minkowski_sum: dimension mismatch");
  if (K.is_polytope() && L.is_polytope()) {
    std::vector<Vector> sums;
    for (const Vector& a : K.polytope().vertices())
      for (const Vector& b : L.polytope().vertices()) sums.push_back(a + b);
    return ConvexBody(Polytope(sums));
  }
  SupportOracle a = oracle_of(K), b = oracle_of(L);
  bool exact = a.exact_derivatives && b.exact_derivatives && a.grad && b.grad;
  return ConvexBody(SupportOracle(
      a.n, [a, b](const Vector& u) { return a.h(u) + b.h(u); },
      (a.grad && b.grad) ? std::function<Vector(const Vector&)>(
                               [a, b](const Vector& u) { return Vector(a.grad(u) + b.grad(u)); })
                         : nullptr,
      (a.hess && b.hess) ? std::function<Matrix(const Vector&)>(
                               [a, b](const Vector& u) { return Matrix(a.hess(u) + b.hess(u)); })
                         : nullptr,
      exact));
}

ConvexBody scale(const ConvexBody& K, double t) {
  if (t == 0.0) throw InvalidBody("scale: t = 0 gives a degenerate body");
  switch (K.kind()) {
    case ConvexBody::Kind::Polytope: {
      std::vector<Vector> verts;
      for (const Vector& v : K.polytope().vertices()) verts.push_back(t * v);
      return ConvexBody(Polytope(verts));
    }
    case ConvexBody::Kind::Ellipsoid:
      return ConvexBody(Ellipsoid(K.ellipsoid().Q() / (t * t)));
    default: {
      SupportOracle o = K.oracle();
      double s = t;
      return ConvexBody(SupportOracle(
          o.n, [o, s](const Vector& u) { return s > 0 ? s * o.h(u) : -s * o.h(-u); },
          o.grad ? std::function<Vector(const Vector&)>([o, s](const Vector& u) {
            return Vector(s > 0 ? s * o.grad(u) : -s * o.grad(-u));
          })
                 : nullptr,
          o.hess ? std::function<Matrix(const Vector&)>([o, s](const Vector& u) {
            return Matrix(s > 0 ? s * o.hess(u) : -s * o.hess(-u));
          })
                 : nullptr,
          o.exact_derivatives));
    }
  }
}

ConvexBody reflect(const ConvexBody& K) {
  if (K.is_ellipsoid()) return K;  // origin-symmetric
  return scale(K, -1.0);
}

ConvexBody translate(const ConvexBody& K, const Vector& v) {
  if (v.size() != K.dim()) throw DimensionMismatch("translate: dimension mismatch");
  if (K.is_polytope()) {
    std::vector<Vector> verts;
    for (const Vector& w : K.polytope().vertices()) verts.push_back(w + v);
    return ConvexBody(Polytope(verts));
  }
  SupportOracle o = oracle_of(K);
  return ConvexBody(SupportOracle(
      o.n, [o, v](const Vector& u) { return o.h(u) + v.dot(u); },
      o.grad ? std::function<Vector(const Vector&)>(
                   [o, v](const Vector& u) { return Vector(o.grad(u) + v); })
             : nullptr,
      o.hess, o.exact_derivatives));
}

ConvexBody linear_image(const Matrix& T, const ConvexBody& K) {
  if (T.rows() != K.dim() || T.cols() != K.dim())
    throw DimensionMismatch("linear_image: matrix size mismatch");
  if (std::abs(T.determinant()) < 1e-12)
    throw InvalidBody("linear_image: matrix is singular");
  switch (K.kind()) {
    case ConvexBody::Kind::Polytope: {
      std::vector<Vector> verts;
      for (const Vector& v : K.polytope().vertices()) verts.push_back(T * v);
      return ConvexBody(Polytope(verts));
    }
    case ConvexBody::Kind::Ellipsoid: {
      Matrix Ti = T.inverse();
      Matrix Qn = Ti.transpose() * K.ellipsoid().Q() * Ti;
      return ConvexBody(Ellipsoid(0.5 * (Qn + Qn.transpose())));
    }
    default: {
      SupportOracle o = K.oracle();
      Matrix Tt = T.transpose();
      return ConvexBody(SupportOracle(
          o.n, [o, Tt](const Vector& u) { return o.h(Tt * u); },
          o.grad ? std::function<Vector(const Vector&)>([o, T, Tt](const Vector& u) {
            return Vector(T * o.grad(Tt * u));
          })
                 : nullptr,
          o.hess ? std::function<Matrix(const Vector&)>([o, T, Tt](const Vector& u) {
            return Matrix(T * o.hess(Tt * u) * Tt);
          })
                 : nullptr,
          o.exact_derivatives));
    }
  }
}

ConvexBody difference_body(const ConvexBody& K) {
  return minkowski_sum(K, reflect(K));
}

double volume(const ConvexBody& K) {
  switch (K.kind()) {
    case ConvexBody::Kind::Polytope: {
      // (1/n) sum h_i area_i; valid for any position of the origin
      const Polytope& P = K.polytope();
      KahanSum s;
      for (const Facet& f : P.facets()) s.add(f.offset * f.area);
      double v = s.value() / P.dim();
      if (v <= 0) throw InvalidBody("volume: degenerate polytope");
      return v;
    }
    case ConvexBody::Kind::Ellipsoid:
      return K.ellipsoid().volume();
    default:
      throw Error("volume: unsupported for support oracles");
  }
}

double radial(const ConvexBody& K, const Vector& u) {
  if (!origin_interior(K)) throw OriginNotInterior("radial: origin not interior");
  auto inside = [&](double t) {
    Vector x = t * u;
    if (K.is_polytope()) return K.polytope().contains(x, 1e-12);
    if (K.is_ellipsoid()) return K.ellipsoid().contains(x, 1e-12);
    throw Error("radial: unsupported for support oracles");
  };
  double hi = 1.0;
  while (inside(hi)) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double hausdorff_distance(const ConvexBody& K, const ConvexBody& L,
                          const std::vector<Vector>& directions) {
  double d = 0.0;
  for (const Vector& u : directions)
    d = std::max(d, std::abs(support(K, u) - support(L, u)));
  return d;
}

Matrix random_sl_matrix(Rng& rng, int n, double kappa_max) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Matrix T(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) T(i, j) = rng.gaussian();
    double det = T.determinant();
    if (std::abs(det) < 1e-8) continue;
    if (det < 0) T.col(0) = -T.col(0);  // flip into det > 0
    T /= std::pow(T.determinant(), 1.0 / n);
    Eigen::JacobiSVD<Matrix> svd(T);
    double cond = svd.singularValues()(0) / svd.singularValues()(n - 1);
    if (cond <= kappa_max) return T;
  }
  throw Error("random_sl_matrix: rejection loop exhausted");
}

Polytope random_polytope(Rng& rng, int n, int points, bool contains_origin) {
  if (points < n + 1) throw Error("random_polytope: need at least n+1 points");
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<Vector> pts;
    for (int i = 0; i < points; ++i) {
      Vector u = rng.unit_vector(n);
      pts.push_back(rng.uniform(0.5, 1.5) * u);
    }
    if (!contains_origin) {
      Vector shift = rng.gaussian_vector(n);
      for (Vector& p : pts) p += 2.0 * shift;
      try {
        return Polytope(pts);
      } catch (const InvalidBody&) {
        continue;
      }
    }
    try {
      Polytope P(pts);
      if (P.origin_interior(1e-6)) return P;
    } catch (const InvalidBody&) {
    }
  }
  throw Error("random_polytope: rejection loop exhausted");
}

std::pair<Polytope, Polytope> split_by_slab(const Polytope& P, double a) {
  if (a <= 0) throw Error("split_by_slab: need a > 0");
  int n = P.dim();
  double reach = P.support(Vector::Unit(n, 0));
  double reach_neg = P.support(-Vector::Unit(n, 0));
  if (a >= std::min(reach, reach_neg))
    throw Error("split_by_slab: slab does not cut the polytope");

  auto clip = [&](double sign, double b) {
    // keep { x : sign * x_1 <= b }
    std::vector<Vector> kept, crossing;
    const std::vector<Vector>& vs = P.vertices();
    for (const Vector& v : vs)
      if (sign * v(0) <= b + 1e-12) kept.push_back(v);
    for (size_t i = 0; i < vs.size(); ++i)
      for (size_t j = i + 1; j < vs.size(); ++j) {
        double fi = sign * vs[i](0) - b, fj = sign * vs[j](0) - b;
        if (fi * fj < 0) {
          double t = fi / (fi - fj);
          crossing.push_back(vs[i] + t * (vs[j] - vs[i]));
        }
      }
    kept.insert(kept.end(), crossing.begin(), crossing.end());
    return Polytope(kept);
  };

  Polytope K = clip(+1.0, a);
  Polytope L = clip(-1.0, a);
  if (!K.origin_interior() || !L.origin_interior())
    throw Error("split_by_slab: halves lost the origin");
  return {K, L};
}

}  // namespace affval
