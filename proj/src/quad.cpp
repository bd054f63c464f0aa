#include "affval/quad.hpp"

#include "affval/multi_index.hpp"

#include <algorithm>
#include <queue>

namespace affval {

namespace {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_m.
void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w) {
  x.assign(m, 0.0);
  w.assign(m, 0.0);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double p0, p1, dp;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = t;
      for (int k = 2; k <= m; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = -t;
    x[m - 1 - i] = t;
    w[i] = w[m - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

}  // namespace

SphereRule sphere_rule(int n, int level) {
  if (n < 2) throw Error("sphere_rule: need n >= 2");
  if (level < 1) level = 1;
  SphereRule rule;
  rule.level = level;
  if (n == 2) {
    int N = std::max(8, 4 * level);
    for (int k = 0; k < N; ++k) {
      double th = 2.0 * M_PI * k / N;
      Vector u(2);
      u << std::cos(th), std::sin(th);
      rule.nodes.push_back(u);
      rule.weights.push_back(2.0 * M_PI / N);
    }
  } else if (n == 3) {
    int L = std::max(4, level);
    int M = 2 * L;
    std::vector<double> z, wz;
    gauss_legendre(L, z, wz);
    for (int i = 0; i < L; ++i) {
      double r = std::sqrt(std::max(0.0, 1.0 - z[i] * z[i]));
      for (int j = 0; j < M; ++j) {
        double ph = 2.0 * M_PI * j / M;
        Vector u(3);
        u << r * std::cos(ph), r * std::sin(ph), z[i];
        rule.nodes.push_back(u);
        rule.weights.push_back(wz[i] * 2.0 * M_PI / M);
      }
    }
  } else {
    // Halton points mapped through Box-Muller, antithetic +-u so that all
    // linear functions integrate to zero exactly.
    int half = std::max(128, 32 * level);
    int pairs = (n + 1) / 2;
    double w = sphere_surface(n) / (2.0 * half);
    for (int idx = 1; idx <= half; ++idx) {
      Vector v(n);
      for (int pr = 0; pr < pairs; ++pr) {
        double u1 = std::min(std::max(halton(idx, kPrimes[2 * pr]), 1e-12), 1.0 - 1e-12);
        double u2 = halton(idx, kPrimes[2 * pr + 1]);
        double r = std::sqrt(-2.0 * std::log(u1));
        double g1 = r * std::cos(2.0 * M_PI * u2);
        double g2 = r * std::sin(2.0 * M_PI * u2);
        v(2 * pr) = g1;
        if (2 * pr + 1 < n) v(2 * pr + 1) = g2;
      }
      if (v.norm() < 1e-9) v = Vector::Unit(n, 0);
      v.normalize();
      rule.nodes.push_back(v);
      rule.weights.push_back(w);
      rule.nodes.push_back(-v);
      rule.weights.push_back(w);
    }
  }
  return rule;
}

namespace {

double simplex_volume(const std::vector<Vector>& v) {
  int d = static_cast<int>(v.size()) - 1;
  int n = static_cast<int>(v[0].size());
  Matrix edges(n, d);
  for (int k = 1; k <= d; ++k) edges.col(k - 1) = v[k] - v[0];
  if (d == n) return std::abs(edges.determinant()) / factorial(d);
  double g = (edges.transpose() * edges).determinant();
  return std::sqrt(std::max(0.0, g)) / factorial(d);
}

// degree-3 Stroud rule T_d:3-1: negative centroid weight plus points with
// barycentric coordinate 3/(d+3) at one vertex
double stroud3(const std::vector<Vector>& v, double vol,
               const std::function<double(const Vector&)>& g) {
  int d = static_cast<int>(v.size()) - 1;
  Vector c = Vector::Zero(v[0].size());
  for (const Vector& x : v) c += x;
  c /= static_cast<double>(d + 1);
  double w0 = -0.25 * (d + 1.0) * (d + 1.0) / (d + 2.0);
  double wi = 0.25 * (d + 3.0) * (d + 3.0) / ((d + 2.0) * (d + 1.0));
  KahanSum s3;
  s3.add(w0 * g(c));
  double t3 = 2.0 / (d + 3.0);
  for (const Vector& x : v) s3.add(wi * g(c + t3 * (x - c)));
  return vol * s3.value();
}

// Edges are split at the golden ratio, not the midpoint: kinked |polynomial|
// integrands align with midpoint grids (parent rule = children sum exactly on
// symmetric configurations) and would silence the two-level error estimate.
constexpr double kSplitRatio = 0.6180339887498949;

void longest_edge(const std::vector<Vector>& verts, int& bi, int& bj) {
  int d = static_cast<int>(verts.size()) - 1;
  bi = 0;
  bj = 1;
  double best = -1.0;
  for (int i = 0; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j) {
      double len = (verts[i] - verts[j]).squaredNorm();
      if (len > best) {
        best = len;
        bi = i;
        bj = j;
      }
    }
}

struct WorkItem {
  std::vector<Vector> verts;
  double value;  // sum of the children estimates
  double error;  // |own estimate - children sum|; robust against kinks that
                 // fool a symmetric embedded pair
};

struct WorkOrder {
  bool operator()(const WorkItem& a, const WorkItem& b) const { return a.error < b.error; }
};

}  // namespace

QuadReport integrate_simplex(const std::vector<Vector>& simplex,
                             const std::function<double(const Vector&)>& g,
                             const QuadOptions& opts) {
  QuadReport report;
  double vol = simplex_volume(simplex);
  if (vol == 0.0) return report;

  // The error estimate scans every edge split, not just the longest one:
  // for |polynomial| integrands the rule error is exactly additive under
  // splits of edges that stay on one side of the kink, so a single-edge
  // estimate can be blind while the element still carries real error.
  auto make_item = [&](std::vector<Vector> v) {
    WorkItem item;
    double own = stroud3(v, simplex_volume(v), g);
    int d = static_cast<int>(v.size()) - 1;
    int bi, bj;
    longest_edge(v, bi, bj);
    double err = 0.0, longest_children = 0.0;
    for (int i = 0; i <= d; ++i)
      for (int j = i + 1; j <= d; ++j) {
        Vector cut = v[i] + kSplitRatio * (v[j] - v[i]);
        double children = 0.0;
        for (int side = 0; side < 2; ++side) {
          std::vector<Vector> child = v;
          child[side == 0 ? j : i] = cut;
          children += stroud3(child, simplex_volume(child), g);
        }
        err = std::max(err, std::abs(own - children));
        if (i == bi && j == bj) longest_children = children;
      }
    item.value = longest_children;
    item.error = err;
    item.verts = std::move(v);
    return item;
  };

  std::priority_queue<WorkItem, std::vector<WorkItem>, WorkOrder> queue;
  queue.push(make_item(simplex));
  double total_value = queue.top().value;
  double total_error = queue.top().error;

  while (total_error > opts.rel_tol * std::max(std::abs(total_value), 1e-300) &&
         report.subdivisions < opts.max_subdivisions) {
    WorkItem worst = queue.top();
    queue.pop();
    total_value -= worst.value;
    total_error -= worst.error;

    int bi, bj;
    longest_edge(worst.verts, bi, bj);
    Vector cut = worst.verts[bi] + kSplitRatio * (worst.verts[bj] - worst.verts[bi]);
    for (int side = 0; side < 2; ++side) {
      std::vector<Vector> child = worst.verts;
      child[side == 0 ? bj : bi] = cut;
      WorkItem item = make_item(std::move(child));
      total_value += item.value;
      total_error += item.error;
      queue.push(std::move(item));
    }
    ++report.subdivisions;
  }

  // recompute the totals by compensated summation for the final report
  KahanSum val, err;
  while (!queue.empty()) {
    val.add(queue.top().value);
    err.add(queue.top().error);
    queue.pop();
  }
  report.value = val.value();
  report.error_estimate = err.value();
  report.converged = report.error_estimate <= opts.rel_tol * std::max(std::abs(report.value), 1e-300) ||
                     report.subdivisions < opts.max_subdivisions;
  return report;
}

QuadReport integrate_facet(const Facet& F, const std::vector<Vector>& polytope_vertices,
                           const std::function<double(const Vector&)>& g, const QuadOptions& opts) {
  QuadReport total;
  for (const std::vector<int>& s : F.simplices) {
    std::vector<Vector> verts;
    for (int vi : s) verts.push_back(polytope_vertices[vi]);
    total += integrate_simplex(verts, g, opts);
  }
  return total;
}

QuadReport integrate_polytope(const Polytope& P, const std::function<double(const Vector&)>& g,
                              const QuadOptions& opts) {
  Vector c = Vector::Zero(P.dim());
  for (const Vector& v : P.vertices()) c += v;
  c /= static_cast<double>(P.vertices().size());
  QuadReport total;
  for (const Facet& f : P.facets())
    for (const std::vector<int>& s : f.simplices) {
      std::vector<Vector> verts{c};
      for (int vi : s) verts.push_back(P.vertices()[vi]);
      total += integrate_simplex(verts, g, opts);
    }
  return total;
}

double alpha_K(const ConvexBody& K, const Vector& u, bool* used_fd) {
  Matrix H = support_hessian(K, u, used_fd);
  int n = static_cast<int>(H.rows());
  if (n == 1) return 1.0;
  KahanSum minors;
  for (int i = 0; i < n; ++i) {
    Matrix sub(n - 1, n - 1);
    for (int r = 0, rr = 0; r < n; ++r) {
      if (r == i) continue;
      for (int c = 0, cc = 0; c < n; ++c) {
        if (c == i) continue;
        sub(rr, cc++) = H(r, c);
      }
      ++rr;
    }
    minors.add(sub.determinant());
  }
  return minors.value();
}

double kappa_K(const ConvexBody& K, const Vector& u) {
  double a = alpha_K(K, u);
  if (a <= 1e-12) throw Error("kappa_K: curvature undefined (alpha <= tol)");
  return 1.0 / a;
}

double boundary_integrate_smooth(const ConvexBody& K,
                                 const std::function<double(const Vector&, const Vector&)>& g,
                                 const SphereRule& rule) {
  KahanSum s;
  for (int i = 0; i < rule.size(); ++i) {
    const Vector& u = rule.nodes[i];
    Vector x = support_gradient(K, u);
    s.add(rule.weights[i] * g(x, u) * alpha_K(K, u));
  }
  return s.value();
}

double boundary_integrate_param(const Ellipsoid& E,
                                const std::function<double(const Vector&, const Vector&)>& g,
                                const SphereRule& rule) {
  // x = A s with A = Q^{-1/2}; dH^{n-1}(x) = det(A) |A^{-T} s| ds
  Eigen::SelfAdjointEigenSolver<Matrix> es(E.Q());
  Matrix A = es.operatorInverseSqrt();
  Matrix Ainv = es.operatorSqrt();
  double detA = 1.0 / std::sqrt(E.Q().determinant());
  KahanSum s;
  for (int i = 0; i < rule.size(); ++i) {
    const Vector& sv = rule.nodes[i];
    Vector x = A * sv;
    Vector nu = E.Q() * x;
    nu.normalize();
    double jac = detA * (Ainv * sv).norm();
    s.add(rule.weights[i] * g(x, nu) * jac);
  }
  return s.value();
}

double mixed_volume_last(const Polytope& K, const std::function<double(const Vector&)>& support_L) {
  KahanSum s;
  for (const Facet& f : K.facets()) s.add(support_L(f.normal) * f.area);
  return s.value() / K.dim();
}

double mixed_volume_last(const Polytope& K, const ConvexBody& L) {
  return mixed_volume_last(K, [&](const Vector& u) { return support(L, u); });
}

}  // namespace affval
