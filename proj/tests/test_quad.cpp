#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "affval/multi_index.hpp"
#include "affval/quad.hpp"

using namespace affval;

namespace {

Vector vec(std::initializer_list<double> l) {
  Vector v(l.size());
  int i = 0;
  for (double x : l) v(i++) = x;
  return v;
}

std::vector<Vector> cube_vertices(int n, double lo, double hi) {
  std::vector<Vector> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = (mask >> i) & 1 ? hi : lo;
    out.push_back(v);
  }
  return out;
}

// exact Dirichlet integral of x^a over the standard simplex {x >= 0, sum <= 1}
double simplex_monomial(const MultiIndex& a, int d) {
  double num = 1.0;
  for (int e : a.exponents) num *= factorial(e);
  int total = a.degree() + d;
  double den = 1.0;
  for (int k = 2; k <= total; ++k) den *= k;
  return num / den;
}

}  // namespace

TEST_CASE("sphere rule weights sum to the sphere surface and kill linear functions") {
  for (int n = 2; n <= 5; ++n) {
    SphereRule rule = sphere_rule(n, 24);
    KahanSum total;
    Vector first = Vector::Zero(n);
    for (int i = 0; i < rule.size(); ++i) {
      total.add(rule.weights[i]);
      first += rule.weights[i] * rule.nodes[i];
    }
    CHECK(std::abs(total.value() - sphere_surface(n)) <= 1e-10 * sphere_surface(n));
    CHECK(first.lpNorm<Eigen::Infinity>() <= 1e-10);
  }
}

TEST_CASE("sphere rule integrates degree-2 monomials") {
  for (int n : {2, 3}) {
    SphereRule rule = sphere_rule(n, 32);
    double want = sphere_surface(n) / n;
    KahanSum sq, cross;
    for (int i = 0; i < rule.size(); ++i) {
      sq.add(rule.weights[i] * rule.nodes[i](0) * rule.nodes[i](0));
      cross.add(rule.weights[i] * rule.nodes[i](0) * rule.nodes[i](1));
    }
    CHECK(std::abs(sq.value() - want) <= 1e-6 * want);
    CHECK(std::abs(cross.value()) <= 1e-10);
  }
  // x1^2 over S^2 = 4 pi / 3 at level 20
  SphereRule rule = sphere_rule(3, 20);
  KahanSum s;
  for (int i = 0; i < rule.size(); ++i)
    s.add(rule.weights[i] * rule.nodes[i](0) * rule.nodes[i](0));
  CHECK(std::abs(s.value() - 4.0 * M_PI / 3.0) <= 1e-8);
}

TEST_CASE("embedded simplex rules are exact to degree 3") {
  for (int d = 1; d <= 4; ++d) {
    std::vector<Vector> simplex;
    simplex.push_back(Vector::Zero(d));
    for (int i = 0; i < d; ++i) simplex.push_back(Vector::Unit(d, i));
    MonomialBasis basis(d, 3);
    for (int k = 0; k < basis.size(); ++k) {
      const MultiIndex a = basis.at(k);
      QuadOptions opts;
      opts.rel_tol = 1e-13;
      opts.max_subdivisions = 0;  // single element: tests the bare rule
      QuadReport r = integrate_simplex(
          simplex,
          [&](const Vector& x) {
            double v = 1.0;
            for (int i = 0; i < d; ++i)
              for (int e = 0; e < a[i]; ++e) v *= x(i);
            return v;
          },
          opts);
      CHECK(r.value == doctest::Approx(simplex_monomial(a, d)).epsilon(1e-12));
    }
  }
}

TEST_CASE("facet integration on the cube") {
  Polytope C(cube_vertices(3, -1.0, 1.0));
  const Facet* top = nullptr;
  for (const Facet& f : C.facets())
    if (f.normal(0) > 0.9) top = &f;  // facet {1} x [-1,1]^2
  REQUIRE(top != nullptr);

  QuadReport area = integrate_facet(*top, C.vertices(), [](const Vector&) { return 1.0; });
  CHECK(area.value == doctest::Approx(4.0).epsilon(1e-12));

  // <x, u_F> is constant h = 1 on the facet plane
  QuadReport flux = integrate_facet(*top, C.vertices(),
                                    [&](const Vector& x) { return x.dot(top->normal); });
  CHECK(flux.value == doctest::Approx(4.0).epsilon(1e-12));

  // kinked integrand |x_2|: 2 per unit strip
  QuadOptions opts;
  opts.rel_tol = 1e-9;
  QuadReport kink = integrate_facet(*top, C.vertices(),
                                    [](const Vector& x) { return std::abs(x(1)); }, opts);
  CHECK(kink.value == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("facet integration is additive under subdivision") {
  std::vector<Vector> tri = {vec({1, -1, -1}), vec({1, 1, -1}), vec({1, 0, 1})};
  auto g = [](const Vector& x) { return std::abs(x(1)) + 0.3 * x(2) * x(2); };
  QuadOptions opts;
  opts.rel_tol = 1e-11;
  double whole = integrate_simplex(tri, g, opts).value;
  Vector mid = 0.5 * (tri[0] + tri[1]);
  double a = integrate_simplex({tri[0], mid, tri[2]}, g, opts).value;
  double b = integrate_simplex({mid, tri[1], tri[2]}, g, opts).value;
  CHECK(whole == doctest::Approx(a + b).epsilon(1e-9));
}

TEST_CASE("alpha and kappa on balls") {
  for (int n = 2; n <= 4; ++n) {
    ConvexBody B{Ellipsoid(Matrix::Identity(n, n))};
    Rng rng(7);
    for (int rep = 0; rep < 8; ++rep) {
      Vector u = rng.unit_vector(n);
      CHECK(alpha_K(B, u) == doctest::Approx(1.0).epsilon(1e-11));
      CHECK(kappa_K(B, u) == doctest::Approx(1.0).epsilon(1e-11));
    }
    double r = 1.7;
    ConvexBody Br{Ellipsoid(Matrix::Identity(n, n) / (r * r))};
    Vector u = rng.unit_vector(n);
    CHECK(alpha_K(Br, u) == doctest::Approx(std::pow(r, n - 1)).epsilon(1e-11));
    CHECK(kappa_K(Br, u) == doctest::Approx(std::pow(r, 1 - n)).epsilon(1e-11));
  }
}

TEST_CASE("alpha on an ellipse matches a^2 b^2 / h^3 and integrates to the perimeter") {
  double a = 2.0, b = 0.7;
  Matrix Q(2, 2);
  Q << 1.0 / (a * a), 0, 0, 1.0 / (b * b);
  ConvexBody E{Ellipsoid(Q)};
  Rng rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    Vector u = rng.unit_vector(2);
    double h = std::sqrt(a * a * u(0) * u(0) + b * b * u(1) * u(1));
    CHECK(alpha_K(E, u) == doctest::Approx(a * a * b * b / (h * h * h)).epsilon(1e-11));
  }

  SphereRule rule = sphere_rule(2, 400);
  KahanSum integral;
  for (int i = 0; i < rule.size(); ++i)
    integral.add(rule.weights[i] * alpha_K(E, rule.nodes[i]));
  // parametric arc-length oracle
  int m = 20000;
  KahanSum per;
  for (int k = 0; k < m; ++k) {
    double t = 2.0 * M_PI * (k + 0.5) / m;
    per.add(2.0 * M_PI / m * std::sqrt(a * a * std::sin(t) * std::sin(t) + b * b * std::cos(t) * std::cos(t)));
  }
  CHECK(std::abs(integral.value() - per.value()) <= 1e-4 * per.value());
}

TEST_CASE("kappa on an ellipse matches the parametric curvature") {
  double a = 1.4, b = 0.6;
  Matrix Q(2, 2);
  Q << 1.0 / (a * a), 0, 0, 1.0 / (b * b);
  ConvexBody E{Ellipsoid(Q)};
  for (int k = 0; k < 10; ++k) {
    double t = 2.0 * M_PI * k / 10.0;
    Vector u = vec({std::cos(t) / a, std::sin(t) / b});
    u.normalize();
    double want = a * b / std::pow(a * a * std::sin(t) * std::sin(t) + b * b * std::cos(t) * std::cos(t), 1.5);
    CHECK(kappa_K(E, u) == doctest::Approx(want).epsilon(1e-10));
    // and the boundary point returned by the gradient is the parametric point
    Vector x = support_gradient(E, u);
    CHECK(x(0) == doctest::Approx(a * std::cos(t)).epsilon(1e-10));
    CHECK(x(1) == doctest::Approx(b * std::sin(t)).epsilon(1e-10));
  }
}

TEST_CASE("smooth boundary integration") {
  // g == 1 over the unit ball boundary
  for (int n : {2, 3}) {
    ConvexBody B{Ellipsoid(Matrix::Identity(n, n))};
    SphereRule rule = sphere_rule(n, 48);
    double area = boundary_integrate_smooth(B, [](const Vector&, const Vector&) { return 1.0; }, rule);
    CHECK(area == doctest::Approx(sphere_surface(n)).epsilon(1e-9));
    double flux = boundary_integrate_smooth(B, [](const Vector& x, const Vector& u) { return x.dot(u); }, rule);
    CHECK(flux == doctest::Approx(n * unit_ball_volume(n)).epsilon(1e-9));
  }

  // <x,u> over an ellipsoid: n vol = 2 * pi a b
  Matrix Q(2, 2);
  Q << 4, 0, 0, 1;  // a = 1/2, b = 1
  ConvexBody E{Ellipsoid(Q)};
  SphereRule rule = sphere_rule(2, 128);
  double flux = boundary_integrate_smooth(E, [](const Vector& x, const Vector& u) { return x.dot(u); }, rule);
  CHECK(flux == doctest::Approx(2.0 * M_PI * 0.5).epsilon(1e-9));
}

TEST_CASE("parametric boundary route agrees with the Gauss-map route") {
  Matrix Q(3, 3);
  Q << 1.2, 0.1, 0.0, 0.1, 0.8, 0.05, 0.0, 0.05, 2.0;
  Ellipsoid E(Q);
  SphereRule rule = sphere_rule(3, 64);
  auto g = [](const Vector& x, const Vector& u) { return 1.0 + x.dot(u) + x(0) * x(0); };
  double via_gauss = boundary_integrate_smooth(ConvexBody{E}, g, rule);
  double via_param = boundary_integrate_param(E, g, rule);
  CHECK(via_param == doctest::Approx(via_gauss).epsilon(1e-6));
}

TEST_CASE("divergence identity on ellipsoids") {
  std::vector<Matrix> Qs;
  Matrix Q1(2, 2), Q2(2, 2), Q3(3, 3);
  Q1 << 1, 0, 0, 1;
  Q2 << 3, 0.4, 0.4, 0.8;
  Q3 << 1.5, 0.2, 0, 0.2, 0.9, 0.1, 0, 0.1, 1.1;
  Qs = {Q1, Q2, Q3};
  for (const Matrix& Q : Qs) {
    int n = static_cast<int>(Q.rows());
    Ellipsoid E(Q);
    ConvexBody K{E};
    for (int lambda : {0, 1, 2}) {
      // f(x) = |x|^lambda (1 + (x_1/|x|)^2), homogeneous of degree lambda
      auto f = [&](const Vector& x) {
        double r = x.norm();
        return std::pow(r, lambda) * (1.0 + x(0) * x(0) / (r * r));
      };
      SphereRule rule = sphere_rule(n, 128);
      double lhs = boundary_integrate_param(
          E, [&](const Vector& x, const Vector& nu) { return f(x) * x.dot(nu); }, rule);
      // radial oracle: (lambda+n) int_K f = sum_w g(u) rho(u)^{lambda+n}
      KahanSum rhs;
      for (int i = 0; i < rule.size(); ++i) {
        const Vector& u = rule.nodes[i];
        double rho = radial(K, u);
        rhs.add(rule.weights[i] * f(u) * std::pow(rho, lambda + n));
      }
      CHECK(std::abs(lhs - rhs.value()) <= 1e-4 * std::abs(rhs.value()));
    }
  }
}

TEST_CASE("mixed volume with repeated first argument") {
  Polytope C(cube_vertices(3, 0.0, 1.0));
  CHECK(mixed_volume_last(C, ConvexBody{C}) == doctest::Approx(1.0).epsilon(1e-12));
  // L = {0}
  CHECK(mixed_volume_last(C, [](const Vector&) { return 0.0; }) == doctest::Approx(0.0));

  // V(K,...,K,L) = (1/n) d/dt vol(K + tL) by finite differences
  Rng rng(13);
  Polytope K = random_polytope(rng, 3, 10, true);
  std::vector<Vector> seg = {Vector::Zero(3), vec({1.0, 0.4, -0.2})};
  auto hseg = [&](const Vector& u) { return std::max(0.0, seg[1].dot(u)); };
  double mv = mixed_volume_last(K, hseg);
  double t = 1e-4;
  std::vector<Vector> sum_pts;
  for (const Vector& v : K.vertices()) {
    sum_pts.push_back(v);
    sum_pts.push_back(v + t * seg[1]);
  }
  double fd = (volume(ConvexBody{Polytope(sum_pts)}) - volume(ConvexBody{K})) / t;
  CHECK(mv == doctest::Approx(fd / 3.0).epsilon(1e-3));
}

TEST_CASE("quadrature cap returns a flagged report") {
  std::vector<Vector> tri = {vec({0, 0}), vec({1, 0}), vec({0, 1})};
  QuadOptions opts;
  opts.rel_tol = 1e-15;
  opts.max_subdivisions = 8;
  QuadReport r = integrate_simplex(tri, [](const Vector& x) { return std::abs(x(0) - 0.37); }, opts);
  CHECK_FALSE(r.converged);
  CHECK(r.error_estimate > 0.0);
  // value is still returned and roughly right: int_T |x - 0.37|
  double exact = 0.0;
  int m = 4000;
  for (int i = 0; i < m; ++i) {
    double x = (i + 0.5) / m;
    exact += std::abs(x - 0.37) * (1.0 - x) / m;
  }
  CHECK(r.value == doctest::Approx(exact).epsilon(1e-3));
}
