#pragma once

#include "affval/quad.hpp"
#include "affval/symtensor.hpp"

namespace affval {

// Admissible f in Conc(0,inf): concave, f(0) = 0, f(t)/t -> 0.  Power and
// clamp families validate structurally; custom callbacks are checked on a
// sampled grid.
class ConcFunction {
 public:
  enum class Kind { Power, Clamp, ClampDual, Custom };

  static ConcFunction power(double gamma);          // t^gamma, gamma in (0,1)
  static ConcFunction clamp(double c);              // min(t, c), c > 0
  static ConcFunction custom(std::function<double(double)> f);

  double operator()(double t) const;
  ConcFunction dual() const;  // f*(t) = t f(1/t); involution
  Kind kind() const { return kind_; }
  double parameter() const { return param_; }
  std::string describe() const;

 private:
  ConcFunction(Kind k, double param, std::function<double(double)> f)
      : kind_(k), param_(param), f_(std::move(f)) {}
  void validate_grid() const;

  Kind kind_;
  double param_ = 0.0;
  std::function<double(double)> f_;
};

// kappa_K(x) / <x, nu>^{n+1} at x = grad h(u), and h(u)^{n+1} alpha_K(u);
// reciprocal affine invariants: tilde_kappa * tilde_alpha = 1.
double tilde_kappa(const ConvexBody& K, const Vector& u);
double tilde_alpha(const ConvexBody& K, const Vector& u);

enum class BoundarySide { Sphere, Boundary };

// h_{Phi_f^p K}(phi) for phi in Sym^p V* under the <x,nu> dx convention:
//   sphere side    sum_w w |<phi, grad h(u)^p>| h(u)^{-n} f*(tilde_alpha(u))
//   boundary side  int_{dK} |<phi, x^p>| <x,nu> f(tilde_kappa(x)) dx
// Polytopes give exactly 0.
double phi_f_p(const ConvexBody& K, const ConcFunction& f, int p, const SymTensor& phi,
               int sphere_level = 64, BoundarySide side = BoundarySide::Sphere);

// h_{Psi_f^p K}(psi) for psi in Sym^p V:
//   sphere side    sum_w w |<psi, u^p>| h(u)^{-(n+p)} f*(tilde_alpha(u))
double psi_f_p(const ConvexBody& K, const ConcFunction& f, int p, const SymTensor& psi,
               int sphere_level = 64, BoundarySide side = BoundarySide::Sphere);

struct SemicontRow {
  int level = 0;
  double hausdorff = 0.0;
  double value = 0.0;
};

// Inscribed polytopes P_j -> K; every row carries Phi_f of the polytope
// (exactly zero) against the smooth limit value, demonstrating the jump
// of an upper semicontinuous valuation.
struct SemicontTable {
  std::vector<SemicontRow> rows;
  double smooth_value = 0.0;
};

SemicontTable semicontinuity_experiment(const ConvexBody& K, const std::vector<int>& levels,
                                        const ConcFunction& f, int p, const SymTensor& phi,
                                        int sphere_level = 64);

}  // namespace affval
