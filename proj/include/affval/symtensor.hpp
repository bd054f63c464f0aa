#pragma once

#include <memory>

#include "affval/common.hpp"
#include "affval/multi_index.hpp"

namespace affval {

enum class Variance { VectorSide, CovectorSide };

// Element of Sym^p V (vector side) or Sym^p V* (covector side).
//
// Coefficients are stored so that the power x^p of a vector has
// coefficient x^a at the multi-index a; the multinomial factors live in
// the basis normalization.  With the pairing of the underlying monomial
// elements fixed to <e^a, eps^b> = delta_{ab} a!, the stored-coefficient
// pairing weight becomes p!^2 / a!, and <u^p, v^p> = p! <u,v>^p holds.
class SymTensor {
 public:
  SymTensor(int n, int p, Variance variance);
  SymTensor(int n, int p, Variance variance, Vector coeffs);

  int n() const { return n_; }
  int degree() const { return p_; }
  Variance variance() const { return variance_; }
  const MonomialBasis& basis() const { return *basis_; }
  const Vector& coeffs() const { return coeffs_; }
  Vector& coeffs() { return coeffs_; }

  double coeff(const MultiIndex& a) const;
  void set_coeff(const MultiIndex& a, double v);

  SymTensor operator+(const SymTensor& o) const;
  SymTensor operator*(double t) const;
  double norm() const { return coeffs_.norm(); }

 private:
  int n_, p_;
  Variance variance_;
  std::shared_ptr<const MonomialBasis> basis_;
  Vector coeffs_;
};

// Element of Sym^p V* (x) Sym^q V   (variance = PhiArg, the argument type
// of Phi^{p,q}) or Sym^p V (x) Sym^q V* (variance = PsiArg).  Coefficients
// form a dimP x dimQ matrix over the two monomial bases.
enum class MixedVariance { PhiArg, PsiArg };

class MixedTensor {
 public:
  MixedTensor(int n, int p, int q, MixedVariance variance);
  MixedTensor(int n, int p, int q, MixedVariance variance, Matrix coeffs);

  int n() const { return n_; }
  int p() const { return p_; }
  int q() const { return q_; }
  MixedVariance variance() const { return variance_; }
  const MonomialBasis& basis_p() const { return *bp_; }
  const MonomialBasis& basis_q() const { return *bq_; }
  const Matrix& coeffs() const { return coeffs_; }
  Matrix& coeffs() { return coeffs_; }

  double coeff(const MultiIndex& a, const MultiIndex& b) const;
  void set_coeff(const MultiIndex& a, const MultiIndex& b, double v);

  MixedTensor operator+(const MixedTensor& o) const;
  MixedTensor operator*(double t) const;
  double norm() const { return coeffs_.norm(); }

  // identity element of V (x) V*, p = q = 1
  static MixedTensor identity(int n, MixedVariance variance);

 private:
  int n_, p_, q_;
  MixedVariance variance_;
  std::shared_ptr<const MonomialBasis> bp_, bq_;
  Matrix coeffs_;
};

// x^p as an element of Sym^p V (or of Sym^p V* when variance is CovectorSide).
SymTensor sym_power(const Vector& x, int p, Variance variance = Variance::VectorSide);

// Natural pairing Sym^p V x Sym^p V* -> R; on powers <u^p, v^p> = p! <u,v>^p.
double pair(const SymTensor& s, const SymTensor& t);

// Pairing weights p!^2 / a! on the stored coefficients of degree-p tensors.
Vector pairing_weights(const MonomialBasis& basis);

// Matrix of Sym^p(T) on stored coefficients.
Matrix sym_power_matrix(const Matrix& T, int n, int p);

// Action of invertible T: vector-side factors by T, covector-side by T^{-T}.
SymTensor gl_action(const Matrix& T, const SymTensor& s);
MixedTensor gl_action(const Matrix& T, const MixedTensor& s);

// <phi, x^p (x) xi^q>: the first tensor factor pairs against x^p, the
// second against xi^q.  Polynomial of degree p in x and q in xi.
double mixed_bracket(const MixedTensor& phi, const Vector& x, const Vector& xi);

// <phi, x^p> for a degree-p symmetric tensor (either variance).
double sym_bracket(const SymTensor& phi, const Vector& x);

}  // namespace affval
