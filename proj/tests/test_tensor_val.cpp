#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "affval/tensor_val.hpp"

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

MixedTensor random_mixed(Rng& rng, int n, int p, int q, MixedVariance var) {
  MixedTensor t(n, p, q, var);
  for (int a = 0; a < t.basis_p().size(); ++a)
    for (int b = 0; b < t.basis_q().size(); ++b) t.set_coeff(t.basis_p().at(a), t.basis_q().at(b), rng.gaussian());
  return t;
}

// phi with bracket <phi, x^p (x) xi^q> = p! q! <v,x>^p <w,xi>^q
MixedTensor rank_one(const Vector& v, int p, const Vector& w, int q, MixedVariance var) {
  int n = static_cast<int>(v.size());
  SymTensor sv = sym_power(v, p), sw = sym_power(w, q);
  MixedTensor t(n, p, q, var);
  t.coeffs() = sv.coeffs() * sw.coeffs().transpose();
  return t;
}

}  // namespace

TEST_CASE("Phi^{1,1} at the identity is n vol") {
  Rng rng(3);
  for (int n = 2; n <= 3; ++n) {
    MixedTensor id = MixedTensor::identity(n, MixedVariance::PhiArg);
    for (int rep = 0; rep < 4; ++rep) {
      Polytope P = random_polytope(rng, n, 9, true);
      double got = phi_pq(ConvexBody{P}, 1, 1, id);
      CHECK(got == doctest::Approx(n * volume(ConvexBody{P})).epsilon(1e-9));
    }
  }
  // smooth path on an ellipsoid
  Matrix Q(2, 2);
  Q << 2.0, 0.3, 0.3, 0.9;
  ConvexBody E{Ellipsoid(Q)};
  ValuationOptions opts;
  opts.sphere_level = 96;
  double got = phi_pq(E, 1, 1, MixedTensor::identity(2, MixedVariance::PhiArg), opts);
  CHECK(got == doctest::Approx(2.0 * volume(E)).epsilon(1e-8));
}

TEST_CASE("Phi^{1,1} of the ball kills skew-symmetric arguments") {
  Rng rng(5);
  for (int n = 2; n <= 3; ++n) {
    ConvexBody B{Ellipsoid(Matrix::Identity(n, n))};
    for (int rep = 0; rep < 5; ++rep) {
      Matrix A(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = rng.gaussian();
      Matrix S = A - A.transpose();
      double got = phi_pq(B, 1, 1, MixedTensor(n, 1, 1, MixedVariance::PhiArg, S));
      CHECK(std::abs(got) <= 1e-10 * S.norm() * sphere_surface(n));
    }
  }
}

TEST_CASE("Phi^{1,1} of a simplex is positive on every nonzero argument") {
  Rng rng(7);
  std::vector<Vector> sv = {vec({1, 0.1}), vec({-0.8, 0.9}), vec({-0.2, -1.0})};
  Polytope S(sv);
  REQUIRE(S.origin_interior());
  for (int rep = 0; rep < 10; ++rep) {
    Matrix A(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) A(i, j) = rng.gaussian();
    double got = phi_pq(ConvexBody{S}, 1, 1, MixedTensor(2, 1, 1, MixedVariance::PhiArg, A));
    CHECK(got > 1e-8 * A.norm());
  }
}

TEST_CASE("Phi^{0,1} recovers twice the projection body") {
  Rng rng(11);
  for (int n = 2; n <= 3; ++n) {
    Polytope P = random_polytope(rng, n, 10, true);
    KahanSum area;
    for (const Facet& f : P.facets()) area.add(f.area);
    for (int rep = 0; rep < 5; ++rep) {
      Vector v = rng.gaussian_vector(n);
      MixedTensor phi(n, 0, 1, MixedVariance::PhiArg, sym_power(v, 1).coeffs().transpose());
      double got = phi_pq(ConvexBody{P}, 0, 1, phi);
      KahanSum zono;
      for (const Facet& f : P.facets()) zono.add(f.area * std::abs(f.normal.dot(v)));
      CHECK(got == doctest::Approx(zono.value()).epsilon(1e-10));
    }
  }
}

TEST_CASE("smooth and polytope paths agree on inscribed approximations") {
  Matrix Q(2, 2);
  Q << 1.3, -0.2, -0.2, 0.8;
  ConvexBody E{Ellipsoid(Q)};
  ValuationOptions opts;
  opts.sphere_level = 192;
  Rng rng(13);
  MixedTensor phi = random_mixed(rng, 2, 2, 1, MixedVariance::PhiArg);
  double smooth = phi_pq(E, 2, 1, phi, opts);

  SphereRule fine = sphere_rule(2, 384);
  std::vector<Vector> pts;
  for (const Vector& u : fine.nodes) pts.push_back(support_gradient(E, u));
  double approx = phi_pq(ConvexBody{Polytope(pts)}, 2, 1, phi);
  CHECK(smooth == doctest::Approx(approx).epsilon(1e-4));
}

TEST_CASE("Psi equals Phi on the self-polar unit ball") {
  Rng rng(17);
  for (int n = 2; n <= 3; ++n) {
    ConvexBody B{Ellipsoid(Matrix::Identity(n, n))};
    ValuationOptions opts;
    opts.sphere_level = 64;
    for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}}) {
      MixedTensor t = random_mixed(rng, n, p, q, MixedVariance::PsiArg);
      double psi = psi_pq(B, p, q, t, opts);
      MixedTensor tphi(n, p, q, MixedVariance::PhiArg, t.coeffs());
      double phi = phi_pq(B, p, q, tphi, opts);
      CHECK(psi == doctest::Approx(phi).epsilon(1e-9));
    }
  }
}

TEST_CASE("polarity exchanges Phi and Psi on ellipsoids") {
  Rng rng(19);
  Matrix Q(2, 2);
  Q << 4.0, 0.0, 0.0, 1.0;
  ConvexBody E{Ellipsoid(Q)};
  ConvexBody Epolar = polar(E);
  ValuationOptions opts;
  opts.sphere_level = 256;
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 2; ++q) {
      MixedTensor t = random_mixed(rng, 2, p, q, MixedVariance::PsiArg);
      double lhs = psi_pq(E, p, q, t, opts);
      MixedTensor tphi(2, p, q, MixedVariance::PhiArg, t.coeffs());
      double rhs = phi_pq(Epolar, p, q, tphi, opts);
      CHECK(std::abs(lhs - rhs) <= 1e-4 * std::max(std::abs(rhs), 1e-12));
    }
}

TEST_CASE("homogeneity degrees n+p-q and q-p-n") {
  Rng rng(23);
  Polytope P = random_polytope(rng, 2, 8, true);
  ConvexBody K{P};
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}, {2, 1}}) {
    MixedTensor phi = random_mixed(rng, 2, p, q, MixedVariance::PhiArg);
    MixedTensor psi = random_mixed(rng, 2, p, q, MixedVariance::PsiArg);
    double phi1 = phi_pq(K, p, q, phi);
    double psi1 = psi_pq(K, p, q, psi);
    for (double t : {0.5, 2.0}) {
      ConvexBody tK = scale(K, t);
      CHECK(phi_pq(tK, p, q, phi) ==
            doctest::Approx(std::pow(t, 2 + p - q) * phi1).epsilon(1e-9));
      CHECK(psi_pq(tK, p, q, psi) ==
            doctest::Approx(std::pow(t, q - p - 2) * psi1).epsilon(1e-9));
    }
  }
}

TEST_CASE("normal-fan route cross-checks the polarity route") {
  Polytope C(cube_vertices(2, -1.0, 1.0));
  Rng rng(29);
  MixedTensor psi = random_mixed(rng, 2, 1, 1, MixedVariance::PsiArg);
  double via_polar = psi_pq(ConvexBody{C}, 1, 1, psi);
  double via_fan = psi_pq_normal_fan(C, 1, 1, psi, sphere_rule(2, 4000));
  CHECK(via_fan == doctest::Approx(via_polar).epsilon(1e-3));
}

TEST_CASE("SL invariance of Phi^{p,q} on polytopes") {
  Rng rng(31);
  ValuationOptions opts;
  opts.quad.rel_tol = 1e-9;
  for (int n = 2; n <= 3; ++n) {
    Polytope P = random_polytope(rng, n, 8, true);
    for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}}) {
      MixedTensor phi = random_mixed(rng, n, p, q, MixedVariance::PhiArg);
      double base = phi_pq(ConvexBody{P}, p, q, phi, opts);
      for (int rep = 0; rep < 2; ++rep) {
        Matrix T = random_sl_matrix(rng, n, 8.0);
        double moved = phi_pq(linear_image(T, ConvexBody{P}), p, q, gl_action(T, phi), opts);
        CHECK(std::abs(moved - base) <= 1e-6 * std::max(1.0, std::abs(base)));
      }
    }
  }
}

TEST_CASE("valuation body evaluators are sublinear and 1-homogeneous") {
  Rng rng(37);
  Polytope P = random_polytope(rng, 2, 8, true);
  ValuationBody VB = phi_body(ConvexBody{P}, 1, 1);
  for (int rep = 0; rep < 25; ++rep) {
    MixedTensor a = random_mixed(rng, 2, 1, 1, MixedVariance::PhiArg);
    MixedTensor b = random_mixed(rng, 2, 1, 1, MixedVariance::PhiArg);
    double ha = VB(a), hb = VB(b), hab = VB(a + b);
    CHECK(hab <= ha + hb + 1e-8 * (ha + hb));
    CHECK(VB(a * 2.0) == doctest::Approx(2.0 * ha).epsilon(1e-10));
  }
}

TEST_CASE("isotypic decomposition of End(V)") {
  IsotypicDecomposition dec = isotypic(2, 1, 1);
  REQUIRE(dec.components.size() == 2);
  CHECK(dec.components[0].dimension == 3);
  CHECK(dec.components[1].dimension == 1);
  CHECK(dec.components[0].sl_weight == Weight{{2}});
  CHECK(dec.components[1].sl_weight == Weight{{0}});

  // the 1-dimensional component is spanned by the identity tensor
  MixedTensor id = MixedTensor::identity(2, MixedVariance::PsiArg);
  MixedTensor proj = apply_projector(dec.components[1].projector, id);
  CHECK((proj.coeffs() - id.coeffs()).norm() <= 1e-10);
  MixedTensor killed = apply_projector(dec.components[0].projector, id);
  CHECK(killed.norm() <= 1e-10);

  IsotypicDecomposition d3 = isotypic(3, 1, 1);
  REQUIRE(d3.components.size() == 2);
  CHECK(d3.components[0].dimension == 8);
  CHECK(d3.components[1].dimension == 1);
}

TEST_CASE("single-component cases p=0 or q=0") {
  IsotypicDecomposition dec = isotypic(3, 0, 2);
  REQUIRE(dec.components.size() == 1);
  CHECK(dec.components[0].dimension == 6);
  CHECK(dec.components[0].projector.isApprox(Matrix::Identity(6, 6)));
}

TEST_CASE("projectors are idempotent, orthogonal, complete, equivariant") {
  Rng rng(41);
  for (auto [n, p, q] : std::vector<std::array<int, 3>>{{2, 1, 1}, {2, 2, 1}, {3, 1, 1}, {3, 2, 2}, {4, 2, 1}}) {
    IsotypicDecomposition dec = isotypic(n, p, q);
    int dim = static_cast<int>(dec.components[0].projector.rows());
    Matrix sum = Matrix::Zero(dim, dim);
    long long total_dim = 0;
    for (const IsotypicComponent& c : dec.components) {
      CHECK((c.projector * c.projector - c.projector).lpNorm<Eigen::Infinity>() <= 1e-9);
      sum += c.projector;
      total_dim += c.dimension;
      CHECK(std::llround(c.projector.trace()) == c.dimension);
    }
    CHECK((sum - Matrix::Identity(dim, dim)).lpNorm<Eigen::Infinity>() <= 1e-9);
    CHECK(total_dim == dim);
    for (size_t i = 0; i + 1 < dec.components.size(); ++i)
      CHECK((dec.components[i].projector * dec.components[i + 1].projector).lpNorm<Eigen::Infinity>() <= 1e-9);

    // equivariance: the projector commutes with the representation matrices
    for (int rep = 0; rep < 5; ++rep) {
      Matrix T = random_sl_matrix(rng, n, 20.0);
      MixedTensor probe = random_mixed(rng, n, p, q, MixedVariance::PsiArg);
      for (const IsotypicComponent& c : dec.components) {
        MixedTensor lhs = apply_projector(c.projector, gl_action(T, probe));
        MixedTensor rhs = gl_action(T, apply_projector(c.projector, probe));
        CHECK((lhs.coeffs() - rhs.coeffs()).lpNorm<Eigen::Infinity>() <=
              1e-7 * std::max(1.0, probe.coeffs().lpNorm<Eigen::Infinity>()));
      }
    }
  }
}

TEST_CASE("phi_lambda projects the argument") {
  Rng rng(43);
  Polytope P = random_polytope(rng, 2, 9, true);
  ConvexBody K{P};
  IsotypicDecomposition dec = isotypic(2, 1, 1);

  // trivial component keeps the identity: n vol(K)
  MixedTensor id = MixedTensor::identity(2, MixedVariance::PhiArg);
  double got = phi_lambda(K, 1, 1, 1, id, dec);
  CHECK(got == doctest::Approx(2.0 * volume(K)).epsilon(1e-9));

  // non-triviality of every component on a simplex
  Polytope S(std::vector<Vector>{vec({1, 0.1}), vec({-0.8, 0.9}), vec({-0.2, -1.0})});
  for (size_t i = 0; i < dec.components.size(); ++i) {
    bool positive = false;
    for (int rep = 0; rep < 8 && !positive; ++rep) {
      MixedTensor probe = random_mixed(rng, 2, 1, 1, MixedVariance::PhiArg);
      MixedTensor projected = apply_projector(dec.components[i].projector, probe);
      if (projected.norm() < 1e-10) continue;
      positive = phi_pq(ConvexBody{S}, 1, 1, projected) > 1e-10;
    }
    CHECK(positive);
  }

  // projectors sum to the identity: the component values of a decomposed
  // argument reconstruct the full valuation
  MixedTensor phi = random_mixed(rng, 2, 1, 1, MixedVariance::PhiArg);
  double whole = phi_pq(K, 1, 1, phi);
  MixedTensor p0 = apply_projector(dec.components[0].projector, phi);
  MixedTensor p1 = apply_projector(dec.components[1].projector, phi);
  CHECK((p0.coeffs() + p1.coeffs() - phi.coeffs()).norm() <= 1e-10);
  // sublinearity only: |Phi(phi)| <= Phi(p0) + Phi(p1)
  CHECK(whole <= phi_pq(K, 1, 1, p0) + phi_pq(K, 1, 1, p1) + 1e-9);
}

TEST_CASE("rank-one arguments factor the bracket") {
  Rng rng(47);
  Vector v = rng.unit_vector(2), w = rng.unit_vector(2);
  MixedTensor t = rank_one(v, 2, w, 1, MixedVariance::PhiArg);
  Vector x = rng.gaussian_vector(2), xi = rng.gaussian_vector(2);
  double want = factorial(2) * factorial(1) * std::pow(v.dot(x), 2) * w.dot(xi);
  CHECK(mixed_bracket(t, x, xi) == doctest::Approx(want).epsilon(1e-12));
}
