// Incremental (beneath-beyond) convex hull in dimension n <= 8.
//
// Points are joggled by ~1e-11 before the combinatorial phase so that the
// strict-visibility walk never meets ties; planes, areas and adjacency of
// the reported facets are then recomputed from the unperturbed coordinates
// and coplanar simplex facets are merged.

#include <algorithm>
#include <map>
#include <set>

#include "affval/bodies.hpp"
#include "affval/multi_index.hpp"

namespace affval {

namespace {

struct HFacet {
  std::vector<int> verts;      // n vertex ids, a simplex facet
  std::vector<int> neighbors;  // neighbor facet across the ridge opposite verts[k]
  Vector normal;               // from joggled coords, outward
  double offset = 0;
  bool alive = true;
};

Vector facet_normal(const std::vector<Vector>& pts, const std::vector<int>& verts,
                    const Vector& inside) {
  int n = static_cast<int>(pts[0].size());
  Matrix edges(n, n - 1);
  for (int k = 1; k < n; ++k) edges.col(k - 1) = pts[verts[k]] - pts[verts[0]];
  // unit kernel direction of the edge span
  Eigen::JacobiSVD<Matrix> svd(edges, Eigen::ComputeFullU);
  Vector u = svd.matrixU().col(n - 1);
  if (u.dot(pts[verts[0]] - inside) < 0) u = -u;
  return u;
}

double simplex_facet_area(const std::vector<Vector>& pts, const std::vector<int>& verts) {
  int n = static_cast<int>(pts[0].size());
  Matrix edges(n, n - 1);
  for (int k = 1; k < n; ++k) edges.col(k - 1) = pts[verts[k]] - pts[verts[0]];
  double g = (edges.transpose() * edges).determinant();
  return std::sqrt(std::max(0.0, g)) / factorial(n - 1);
}

std::vector<int> sorted_ridge(const std::vector<int>& verts, int skip) {
  std::vector<int> r;
  for (int i = 0; i < static_cast<int>(verts.size()); ++i)
    if (i != skip) r.push_back(verts[i]);
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

namespace {

HullOutput hull_1d(const std::vector<Vector>& input) {
  double lo = input[0](0), hi = input[0](0);
  for (const Vector& p : input) {
    lo = std::min(lo, p(0));
    hi = std::max(hi, p(0));
  }
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi)))
    throw InvalidBody("convex_hull: degenerate segment");
  HullOutput out;
  out.vertices = {Vector::Constant(1, lo), Vector::Constant(1, hi)};
  for (int side = 0; side < 2; ++side) {
    Facet f;
    f.normal = Vector::Constant(1, side == 0 ? -1.0 : 1.0);
    f.offset = side == 0 ? -lo : hi;
    f.vertices = {side};
    f.simplices = {{side}};
    f.area = 1.0;  // 0-dimensional Hausdorff measure of a point
    f.centroid = out.vertices[side];
    out.facets.push_back(std::move(f));
  }
  return out;
}

}  // namespace

HullOutput convex_hull(const std::vector<Vector>& input) {
  if (input.empty()) throw InvalidBody("convex_hull: no points");
  const int n = static_cast<int>(input[0].size());
  if (n < 1 || n > 8) throw InvalidBody("convex_hull: dimension out of range");
  if (n == 1) return hull_1d(input);

  // deduplicate
  std::vector<Vector> pts;
  double scale = 1e-12;
  for (const Vector& p : input) scale = std::max(scale, p.lpNorm<Eigen::Infinity>());
  for (const Vector& p : input) {
    bool dup = false;
    for (const Vector& q : pts)
      if ((p - q).lpNorm<Eigen::Infinity>() < 1e-12 * scale) { dup = true; break; }
    if (!dup) pts.push_back(p);
  }
  int m = static_cast<int>(pts.size());
  if (m < n + 1) throw InvalidBody("convex_hull: fewer than n+1 distinct points");

  // joggled copy for the combinatorial phase; the joggle must dominate the
  // visibility epsilon by orders of magnitude or the walk goes inconsistent
  // on coplanar inputs, and must stay below the 1e-9 geometric tolerances
  Rng jog(0xAFFA11u);
  std::vector<Vector> jp(pts);
  for (Vector& p : jp)
    for (int i = 0; i < n; ++i) p(i) += 1e-10 * scale * (jog.uniform() - 0.5);

  // initial simplex: greedily extend the affine span
  std::vector<int> init{0};
  {
    // farthest pair seed
    int best = 1;
    double bd = -1;
    for (int i = 1; i < m; ++i) {
      double d = (jp[i] - jp[0]).norm();
      if (d > bd) { bd = d; best = i; }
    }
    init = {0, best};
    while (static_cast<int>(init.size()) < n + 1) {
      Matrix edges(n, init.size() - 1);
      for (size_t k = 1; k < init.size(); ++k) edges.col(k - 1) = jp[init[k]] - jp[init[0]];
      Eigen::HouseholderQR<Matrix> qr(edges);
      Matrix Qfull = qr.householderQ();
      int bi = -1;
      double bres = 1e-9 * scale;
      for (int i = 0; i < m; ++i) {
        if (std::find(init.begin(), init.end(), i) != init.end()) continue;
        Vector d = jp[i] - jp[init[0]];
        Vector res = d;
        for (size_t c = 0; c + 1 < init.size(); ++c) res -= Qfull.col(c).dot(d) * Qfull.col(c);
        if (res.norm() > bres) { bres = res.norm(); bi = i; }
      }
      if (bi < 0) throw InvalidBody("convex_hull: points are not full-dimensional");
      init.push_back(bi);
    }
  }

  Vector inside = Vector::Zero(n);
  for (int id : init) inside += jp[id];
  inside /= static_cast<double>(init.size());

  std::vector<HFacet> facets;
  auto make_facet = [&](std::vector<int> verts) {
    HFacet f;
    f.verts = std::move(verts);
    f.normal = facet_normal(jp, f.verts, inside);
    f.offset = f.normal.dot(jp[f.verts[0]]);
    f.neighbors.assign(n, -1);
    facets.push_back(std::move(f));
    return static_cast<int>(facets.size()) - 1;
  };

  // simplex facets and their adjacency
  for (int skip = 0; skip <= n; ++skip) {
    std::vector<int> verts;
    for (int k = 0; k <= n; ++k)
      if (k != skip) verts.push_back(init[k]);
    make_facet(verts);
  }
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      if (a == b) continue;
      for (int k = 0; k < n; ++k) {
        std::vector<int> ridge = sorted_ridge(facets[a].verts, k);
        std::vector<int> other = sorted_ridge(facets[b].verts, -1);
        if (std::includes(other.begin(), other.end(), ridge.begin(), ridge.end()))
          facets[a].neighbors[k] = b;
      }
    }

  const double eps_vis = 1e-13 * scale;

  for (int pid = 0; pid < m; ++pid) {
    if (std::find(init.begin(), init.end(), pid) != init.end()) continue;
    // find a visible facet
    int seed = -1;
    for (int f = 0; f < static_cast<int>(facets.size()); ++f) {
      if (!facets[f].alive) continue;
      if (facets[f].normal.dot(jp[pid]) > facets[f].offset + eps_vis) { seed = f; break; }
    }
    if (seed < 0) continue;  // interior

    // BFS over visible facets
    std::vector<int> visible{seed};
    std::set<int> vis_set{seed};
    for (size_t head = 0; head < visible.size(); ++head) {
      for (int nb : facets[visible[head]].neighbors) {
        if (nb < 0 || vis_set.count(nb)) continue;
        if (facets[nb].normal.dot(jp[pid]) > facets[nb].offset + eps_vis) {
          vis_set.insert(nb);
          visible.push_back(nb);
        }
      }
    }

    // horizon ridges: (ridge verts, outside facet, index of that ridge in it)
    struct Horizon {
      std::vector<int> ridge;
      int outer;
    };
    std::vector<Horizon> horizon;
    for (int f : visible)
      for (int k = 0; k < n; ++k) {
        int nb = facets[f].neighbors[k];
        if (nb >= 0 && !vis_set.count(nb))
          horizon.push_back({sorted_ridge(facets[f].verts, k), nb});
      }
    for (int f : visible) facets[f].alive = false;

    // cone from the new point over each horizon ridge
    std::map<std::vector<int>, std::pair<int, int>> open_ridges;  // ridge -> (facet, slot)
    for (const Horizon& hz : horizon) {
      std::vector<int> verts = hz.ridge;
      verts.push_back(pid);
      int nf = make_facet(verts);
      // neighbor across the old ridge (the slot opposite pid)
      for (int k = 0; k < n; ++k) {
        std::vector<int> r = sorted_ridge(facets[nf].verts, k);
        if (r == hz.ridge) {
          facets[nf].neighbors[k] = hz.outer;
          // fix the outer facet's link that pointed into the visible set
          for (int kk = 0; kk < n; ++kk) {
            int onb = facets[hz.outer].neighbors[kk];
            if (onb >= 0 && !facets[onb].alive &&
                sorted_ridge(facets[hz.outer].verts, kk) == hz.ridge)
              facets[hz.outer].neighbors[kk] = nf;
          }
        } else {
          auto it = open_ridges.find(r);
          if (it == open_ridges.end()) {
            open_ridges[r] = {nf, k};
          } else {
            facets[nf].neighbors[k] = it->second.first;
            facets[it->second.first].neighbors[it->second.second] = nf;
          }
        }
      }
    }
  }

  // ---- exact-geometry pass on the surviving facets ----
  std::vector<int> alive;
  for (int f = 0; f < static_cast<int>(facets.size()); ++f)
    if (facets[f].alive) alive.push_back(f);
  if (alive.empty()) throw InvalidBody("convex_hull: empty hull");

  // joggling can wedge sliver facets into true ridges; they carry no area
  // in the exact coordinates and are dropped before merging
  {
    std::vector<double> areas(alive.size());
    double amax = 0;
    for (size_t i = 0; i < alive.size(); ++i) {
      areas[i] = simplex_facet_area(pts, facets[alive[i]].verts);
      amax = std::max(amax, areas[i]);
    }
    std::vector<int> kept;
    for (size_t i = 0; i < alive.size(); ++i)
      if (areas[i] > 1e-9 * amax) kept.push_back(alive[i]);
    alive = std::move(kept);
    if (alive.empty()) throw InvalidBody("convex_hull: all facets degenerate");
  }

  Vector true_inside = Vector::Zero(n);
  {
    std::set<int> hv;
    for (int f : alive) hv.insert(facets[f].verts.begin(), facets[f].verts.end());
    for (int id : hv) true_inside += pts[id];
    true_inside /= static_cast<double>(hv.size());
  }

  // recompute planes from true coordinates
  std::vector<Vector> normals(alive.size());
  std::vector<double> offsets(alive.size());
  for (size_t i = 0; i < alive.size(); ++i) {
    normals[i] = facet_normal(pts, facets[alive[i]].verts, true_inside);
    double off = 0;
    for (int v : facets[alive[i]].verts) off += normals[i].dot(pts[v]);
    offsets[i] = off / static_cast<double>(facets[alive[i]].verts.size());
  }

  // merge coplanar simplex facets (union-find on plane agreement)
  std::vector<int> parent(alive.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  double tol_plane = 1e-9 * std::max(1.0, scale);
  for (size_t i = 0; i < alive.size(); ++i)
    for (size_t j = i + 1; j < alive.size(); ++j) {
      if ((normals[i] - normals[j]).lpNorm<Eigen::Infinity>() < 1e-7 &&
          std::abs(offsets[i] - offsets[j]) < tol_plane)
        parent[find(static_cast<int>(j))] = find(static_cast<int>(i));
    }

  std::map<int, std::vector<int>> groups;
  for (size_t i = 0; i < alive.size(); ++i) groups[find(static_cast<int>(i))].push_back(static_cast<int>(i));

  // collect hull vertices and relabel
  std::set<int> used;
  for (int f : alive) used.insert(facets[f].verts.begin(), facets[f].verts.end());
  std::map<int, int> relabel;
  HullOutput out;
  for (int id : used) {
    relabel[id] = static_cast<int>(out.vertices.size());
    out.vertices.push_back(pts[id]);
  }

  for (auto& [root, members] : groups) {
    Facet F;
    std::set<int> fv;
    double area = 0;
    Vector centroid = Vector::Zero(n);
    for (int mi : members) {
      const HFacet& hf = facets[alive[mi]];
      std::vector<int> simplex;
      for (int v : hf.verts) {
        fv.insert(relabel[v]);
        simplex.push_back(relabel[v]);
      }
      F.simplices.push_back(simplex);
      double a = simplex_facet_area(pts, hf.verts);
      area += a;
      Vector c = Vector::Zero(n);
      for (int v : hf.verts) c += pts[v];
      c /= static_cast<double>(hf.verts.size());
      centroid += a * c;
    }
    F.vertices.assign(fv.begin(), fv.end());
    F.area = area;
    F.centroid = area > 0 ? Vector(centroid / area) : centroid;

    // refit the plane over the merged vertex set
    Vector mean = Vector::Zero(n);
    for (int v : F.vertices) mean += out.vertices[v];
    mean /= static_cast<double>(F.vertices.size());
    Matrix centered(n, F.vertices.size());
    for (size_t k = 0; k < F.vertices.size(); ++k)
      centered.col(k) = out.vertices[F.vertices[k]] - mean;
    Eigen::JacobiSVD<Matrix> svd(centered, Eigen::ComputeFullU);
    Vector u = svd.matrixU().col(n - 1);
    if (u.dot(mean - true_inside) < 0) u = -u;
    F.normal = u;
    F.offset = u.dot(mean);
    out.facets.push_back(std::move(F));
  }

  return out;
}

}  // namespace affval
