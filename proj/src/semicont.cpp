#include "affval/semicont.hpp"

#include <sstream>

namespace affval {

ConcFunction ConcFunction::power(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidBody("ConcFunction: power needs gamma in (0,1)");
  return ConcFunction(Kind::Power, gamma,
                      [gamma](double t) { return t <= 0 ? 0.0 : std::pow(t, gamma); });
}

ConcFunction ConcFunction::clamp(double c) {
  if (!(c > 0.0)) throw InvalidBody("ConcFunction: clamp needs c > 0");
  return ConcFunction(Kind::Clamp, c, [c](double t) { return std::min(std::max(t, 0.0), c); });
}

ConcFunction ConcFunction::custom(std::function<double(double)> f) {
  ConcFunction g(Kind::Custom, 0.0, std::move(f));
  g.validate_grid();
  return g;
}

void ConcFunction::validate_grid() const {
  if (std::abs(f_(0.0)) > 1e-12) throw InvalidBody("ConcFunction: f(0) != 0");
  std::vector<double> grid;
  for (int k = -60; k <= 60; ++k) grid.push_back(std::pow(10.0, k / 10.0));
  double f1 = f_(1.0);
  for (size_t i = 0; i < grid.size(); ++i) {
    double t = grid[i];
    double ft = f_(t);
    if (ft < -1e-12) throw InvalidBody("ConcFunction: negative value");
    if (i > 0) {
      double s = grid[i - 1];
      // midpoint concavity
      double mid = f_(0.5 * (s + t));
      if (mid + 1e-10 * std::max(1.0, std::abs(ft)) < 0.5 * (f_(s) + ft))
        throw InvalidBody("ConcFunction: concavity violated on grid");
      // f(t)/t non-increasing
      if (ft / t > f_(s) / s + 1e-10)
        throw InvalidBody("ConcFunction: f(t)/t increases on grid");
    }
  }
  if (f_(1e8) / 1e8 >= 1e-3 * std::max(f1, 1e-300))
    throw InvalidBody("ConcFunction: f(t)/t does not decay (checked at t = 1e8)");
}

double ConcFunction::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  switch (kind_) {
    case Kind::Power: return std::pow(t, param_);
    case Kind::Clamp: return std::min(t, param_);
    case Kind::ClampDual: return std::min(1.0, param_ * t);
    default: return f_(t);
  }
}

ConcFunction ConcFunction::dual() const {
  switch (kind_) {
    case Kind::Power:
      return ConcFunction(Kind::Power, 1.0 - param_, nullptr);
    case Kind::Clamp:
      // (min(t,c))* = t min(1/t, c) = min(1, c t)
      return ConcFunction(Kind::ClampDual, param_, nullptr);
    case Kind::ClampDual:
      return ConcFunction(Kind::Clamp, param_, nullptr);
    default: {
      auto f = f_;
      return ConcFunction(Kind::Custom, 0.0,
                          [f](double t) { return t <= 0 ? 0.0 : t * f(1.0 / t); });
    }
  }
}

std::string ConcFunction::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Power: os << "power:" << param_; break;
    case Kind::Clamp: os << "clamp:" << param_; break;
    case Kind::ClampDual: os << "clamp_dual:" << param_; break;
    default: os << "custom"; break;
  }
  return os.str();
}

double tilde_kappa(const ConvexBody& K, const Vector& u) {
  Vector un = u / u.norm();
  int n = K.dim();
  double h = support(K, un);
  if (h <= 0) throw OriginNotInterior("tilde_kappa: origin not interior");
  return kappa_K(K, un) / std::pow(h, n + 1);
}

double tilde_alpha(const ConvexBody& K, const Vector& u) {
  Vector un = u / u.norm();
  int n = K.dim();
  double h = support(K, un);
  if (h <= 0) throw OriginNotInterior("tilde_alpha: origin not interior");
  return std::pow(h, n + 1) * alpha_K(K, un);
}

namespace {

double semicont_integral(const ConvexBody& K, const ConcFunction& f, int p, const SymTensor& arg,
                         int sphere_level, BoundarySide side, bool psi_form) {
  if (arg.n() != K.dim() || arg.degree() != p)
    throw DimensionMismatch("phi_f_p: tensor shape mismatch");
  if (K.is_polytope()) {
    if (!origin_interior(K)) throw OriginNotInterior("phi_f_p: origin not interior");
    return 0.0;  // tilde_kappa = 0 a.e. and f(0) = 0
  }
  if (!origin_interior(K)) throw OriginNotInterior("phi_f_p: origin not interior");
  int n = K.dim();
  ConcFunction fdual = f.dual();

  if (side == BoundarySide::Boundary && K.is_ellipsoid()) {
    // direct parameterization of the boundary; independent of the
    // Gauss-map route used by the sphere side
    SphereRule rule = sphere_rule(n, sphere_level);
    return boundary_integrate_param(
        K.ellipsoid(),
        [&](const Vector& x, const Vector& nu) {
          double xn = x.dot(nu);
          double tk = kappa_K(K, nu) / std::pow(xn, n + 1);
          double bracket = psi_form ? std::abs(sym_bracket(arg, nu)) * std::pow(xn, 1.0 - p)
                                    : std::abs(sym_bracket(arg, x)) * xn;
          return bracket * f(tk);
        },
        rule);
  }

  SphereRule rule = sphere_rule(n, sphere_level);
  KahanSum total;
  for (int i = 0; i < rule.size(); ++i) {
    const Vector& u = rule.nodes[i];
    double h = support(K, u);
    double ta = std::pow(h, n + 1) * alpha_K(K, u);
    double bracket;
    if (psi_form) {
      bracket = std::abs(sym_bracket(arg, u)) * std::pow(h, -(n + p));
    } else {
      Vector x = support_gradient(K, u);
      bracket = std::abs(sym_bracket(arg, x)) * std::pow(h, -n);
    }
    total.add(rule.weights[i] * bracket * fdual(ta));
  }
  return total.value();
}

}  // namespace

double phi_f_p(const ConvexBody& K, const ConcFunction& f, int p, const SymTensor& phi,
               int sphere_level, BoundarySide side) {
  return semicont_integral(K, f, p, phi, sphere_level, side, false);
}

double psi_f_p(const ConvexBody& K, const ConcFunction& f, int p, const SymTensor& psi,
               int sphere_level, BoundarySide side) {
  return semicont_integral(K, f, p, psi, sphere_level, side, true);
}

SemicontTable semicontinuity_experiment(const ConvexBody& K, const std::vector<int>& levels,
                                        const ConcFunction& f, int p, const SymTensor& phi,
                                        int sphere_level) {
  if (K.is_polytope()) throw Error("semicontinuity_experiment: need a smooth body");
  SemicontTable table;
  table.smooth_value = phi_f_p(K, f, p, phi, sphere_level);
  std::vector<Vector> probes;
  {
    SphereRule dense = sphere_rule(K.dim(), 192);
    probes = dense.nodes;
  }
  for (int level : levels) {
    SphereRule rule = sphere_rule(K.dim(), level);
    std::vector<Vector> pts;
    for (const Vector& u : rule.nodes) pts.push_back(support_gradient(K, u));
    Polytope P(pts);
    SemicontRow row;
    row.level = level;
    row.hausdorff = hausdorff_distance(ConvexBody(P), K, probes);
    row.value = phi_f_p(ConvexBody(P), f, p, phi, sphere_level);
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace affval
