#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "affval/common.hpp"

namespace affval {

// One (n-1)-face with derived data.  `simplices` triangulate the face;
// each entry holds n vertex indices into Polytope::vertices().
struct Facet {
  Vector normal;   // unit outward
  double offset;   // h_K(normal)
  std::vector<int> vertices;
  std::vector<std::vector<int>> simplices;
  double area;     // (n-1)-volume
  Vector centroid;
};

// Bounded full-dimensional polytope, V-representation plus derived
// H-representation (coplanar hull facets merged).
class Polytope {
 public:
  explicit Polytope(const std::vector<Vector>& points);

  int dim() const { return n_; }
  const std::vector<Vector>& vertices() const { return verts_; }
  const std::vector<Facet>& facets() const { return facets_; }

  double support(const Vector& xi) const;
  bool contains(const Vector& x, double tol = 1e-9) const;
  bool origin_interior(double tol = 1e-9) const;

 private:
  int n_ = 0;
  std::vector<Vector> verts_;
  std::vector<Facet> facets_;
};

// { x : x^T Q x <= 1 } with Q symmetric positive definite; origin-centered.
class Ellipsoid {
 public:
  explicit Ellipsoid(Matrix Q);

  int dim() const { return static_cast<int>(Q_.rows()); }
  const Matrix& Q() const { return Q_; }
  const Matrix& Qinv() const { return Qinv_; }

  double support(const Vector& xi) const;
  Vector support_gradient(const Vector& xi) const;
  Matrix support_hessian(const Vector& xi) const;
  bool contains(const Vector& x, double tol = 1e-9) const;
  double volume() const;

 private:
  Matrix Q_, Qinv_;
};

// Convex body given through its support function.  Gradient/Hessian
// callbacks are optional; `exact_derivatives` records whether they are
// analytic or finite-difference fallbacks are in use.
struct SupportOracle {
  int n = 0;
  bool exact_derivatives = false;
  std::function<double(const Vector&)> h;
  std::function<Vector(const Vector&)> grad;   // may be empty
  std::function<Matrix(const Vector&)> hess;   // may be empty

  SupportOracle() = default;
  SupportOracle(int n_, std::function<double(const Vector&)> h_,
                std::function<Vector(const Vector&)> grad_ = nullptr,
                std::function<Matrix(const Vector&)> hess_ = nullptr,
                bool exact = false);
};

class ConvexBody {
 public:
  enum class Kind { Polytope, Ellipsoid, Oracle };

  ConvexBody(Polytope p) : v_(std::move(p)) {}
  ConvexBody(Ellipsoid e) : v_(std::move(e)) {}
  ConvexBody(SupportOracle o) : v_(std::move(o)) {}

  Kind kind() const { return static_cast<Kind>(v_.index()); }
  int dim() const;

  bool is_polytope() const { return kind() == Kind::Polytope; }
  bool is_ellipsoid() const { return kind() == Kind::Ellipsoid; }
  bool is_oracle() const { return kind() == Kind::Oracle; }
  const Polytope& polytope() const { return std::get<Polytope>(v_); }
  const Ellipsoid& ellipsoid() const { return std::get<Ellipsoid>(v_); }
  const SupportOracle& oracle() const { return std::get<SupportOracle>(v_); }

 private:
  std::variant<Polytope, Ellipsoid, SupportOracle> v_;
};

double support(const ConvexBody& K, const Vector& xi);

// Gradient/Hessian of the 1-homogeneous support function; finite
// differences for oracles without callbacks (used_fd reports that).
Vector support_gradient(const ConvexBody& K, const Vector& xi, bool* used_fd = nullptr);
Matrix support_hessian(const ConvexBody& K, const Vector& xi, bool* used_fd = nullptr);

bool origin_interior(const ConvexBody& K, double tol = 1e-9);

// Polar body; requires the origin in the interior.  Polytopes map to
// polytopes (facet (u,h) -> vertex u/h), ellipsoids Q -> Q^{-1}.
ConvexBody polar(const ConvexBody& K);

ConvexBody minkowski_sum(const ConvexBody& K, const ConvexBody& L);
ConvexBody scale(const ConvexBody& K, double t);
ConvexBody reflect(const ConvexBody& K);
ConvexBody translate(const ConvexBody& K, const Vector& v);
ConvexBody linear_image(const Matrix& T, const ConvexBody& K);
ConvexBody difference_body(const ConvexBody& K);

double volume(const ConvexBody& K);

// Radial function by bisection on the membership test; polytopes and
// ellipsoids only.
double radial(const ConvexBody& K, const Vector& u);

double hausdorff_distance(const ConvexBody& K, const ConvexBody& L,
                          const std::vector<Vector>& directions);

// Gaussian matrix with det = 1, rejected while cond > kappa_max.
Matrix random_sl_matrix(Rng& rng, int n, double kappa_max);

// Hull of `points` random points; with contains_origin the sample is
// retried until the origin is strictly interior.
Polytope random_polytope(Rng& rng, int n, int points, bool contains_origin);

// K = P cap {x_1 <= a}, L = P cap {x_1 >= -a}; K u L = P and all four
// bodies keep the origin interior (requires a > 0).
std::pair<Polytope, Polytope> split_by_slab(const Polytope& P, double a);

// Fixed direction set +-e_i and the 2^n sign vectors, used by the
// origin-interior test and as a default sample for Hausdorff distances.
std::vector<Vector> probe_directions(int n);

// internal: hull of a full-dimensional point set (used by Polytope)
struct HullOutput {
  std::vector<Vector> vertices;
  std::vector<Facet> facets;
};
HullOutput convex_hull(const std::vector<Vector>& points);

}  // namespace affval
