#include "affval/symtensor.hpp"

#include <mutex>

namespace affval {

namespace {

// graded order with leading exponents first, so that at degree 1 the
// basis index agrees with the coordinate index
void enumerate_rec(int n, int pos, int remaining, std::vector<int>& cur,
                   std::vector<MultiIndex>& out) {
  if (pos == n - 1) {
    cur[pos] = remaining;
    out.push_back(MultiIndex{cur});
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    enumerate_rec(n, pos + 1, remaining - e, cur, out);
  }
}

}  // namespace

MonomialBasis::MonomialBasis(int n, int p) : n_(n), p_(p) {
  if (n < 1 || p < 0) throw DimensionMismatch("MonomialBasis: need n >= 1, p >= 0");
  std::vector<int> cur(n, 0);
  enumerate_rec(n, 0, p, cur, indices_);
  for (int i = 0; i < size(); ++i) rank_[indices_[i].exponents] = i;
}

int MonomialBasis::rank(const MultiIndex& a) const {
  auto it = rank_.find(a.exponents);
  if (it == rank_.end()) throw DimensionMismatch("MonomialBasis: index not in basis");
  return it->second;
}

Vector MonomialBasis::monomials(const Vector& x) const {
  if (x.size() != n_) throw DimensionMismatch("monomials: dimension mismatch");
  Vector out(size());
  for (int i = 0; i < size(); ++i) {
    double v = 1.0;
    const MultiIndex& a = indices_[i];
    for (int k = 0; k < n_; ++k)
      for (int e = 0; e < a[k]; ++e) v *= x(k);
    out(i) = v;
  }
  return out;
}

std::shared_ptr<const MonomialBasis> MonomialBasis::get(int n, int p) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, p);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto b = std::make_shared<const MonomialBasis>(n, p);
  cache[key] = b;
  return b;
}

SymTensor::SymTensor(int n, int p, Variance variance)
    : n_(n), p_(p), variance_(variance), basis_(MonomialBasis::get(n, p)) {
  coeffs_ = Vector::Zero(basis_->size());
}

SymTensor::SymTensor(int n, int p, Variance variance, Vector coeffs)
    : n_(n), p_(p), variance_(variance), basis_(MonomialBasis::get(n, p)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != basis_->size())
    throw DimensionMismatch("SymTensor: coefficient count != C(n+p-1,p)");
}

double SymTensor::coeff(const MultiIndex& a) const { return coeffs_(basis_->rank(a)); }
void SymTensor::set_coeff(const MultiIndex& a, double v) { coeffs_(basis_->rank(a)) = v; }

SymTensor SymTensor::operator+(const SymTensor& o) const {
  if (n_ != o.n_ || p_ != o.p_ || variance_ != o.variance_)
    throw DimensionMismatch("SymTensor+: mismatched tensors");
  return SymTensor(n_, p_, variance_, coeffs_ + o.coeffs_);
}

SymTensor SymTensor::operator*(double t) const { return SymTensor(n_, p_, variance_, coeffs_ * t); }

MixedTensor::MixedTensor(int n, int p, int q, MixedVariance variance)
    : n_(n), p_(p), q_(q), variance_(variance),
      bp_(MonomialBasis::get(n, p)), bq_(MonomialBasis::get(n, q)) {
  coeffs_ = Matrix::Zero(bp_->size(), bq_->size());
}

MixedTensor::MixedTensor(int n, int p, int q, MixedVariance variance, Matrix coeffs)
    : n_(n), p_(p), q_(q), variance_(variance),
      bp_(MonomialBasis::get(n, p)), bq_(MonomialBasis::get(n, q)), coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() != bp_->size() || coeffs_.cols() != bq_->size())
    throw DimensionMismatch("MixedTensor: coefficient shape mismatch");
}

double MixedTensor::coeff(const MultiIndex& a, const MultiIndex& b) const {
  return coeffs_(bp_->rank(a), bq_->rank(b));
}
void MixedTensor::set_coeff(const MultiIndex& a, const MultiIndex& b, double v) {
  coeffs_(bp_->rank(a), bq_->rank(b)) = v;
}

MixedTensor MixedTensor::operator+(const MixedTensor& o) const {
  if (n_ != o.n_ || p_ != o.p_ || q_ != o.q_ || variance_ != o.variance_)
    throw DimensionMismatch("MixedTensor+: mismatched tensors");
  return MixedTensor(n_, p_, q_, variance_, coeffs_ + o.coeffs_);
}

MixedTensor MixedTensor::operator*(double t) const {
  return MixedTensor(n_, p_, q_, variance_, coeffs_ * t);
}

MixedTensor MixedTensor::identity(int n, MixedVariance variance) {
  MixedTensor t(n, 1, 1, variance);
  t.coeffs() = Matrix::Identity(n, n);
  return t;
}

SymTensor sym_power(const Vector& x, int p, Variance variance) {
  if (p < 0) throw DimensionMismatch("sym_power: p < 0");
  int n = static_cast<int>(x.size());
  SymTensor s(n, p, variance);
  s.coeffs() = s.basis().monomials(x);
  return s;
}

Vector pairing_weights(const MonomialBasis& basis) {
  double pf = factorial(basis.degree());
  Vector w(basis.size());
  for (int i = 0; i < basis.size(); ++i)
    w(i) = pf * pf / multi_factorial(basis.at(i));
  return w;
}

double pair(const SymTensor& s, const SymTensor& t) {
  if (s.n() != t.n() || s.degree() != t.degree())
    throw DimensionMismatch("pair: degree/dimension mismatch");
  if (s.variance() == t.variance())
    throw DimensionMismatch("pair: need opposite variance");
  Vector w = pairing_weights(s.basis());
  return (s.coeffs().array() * t.coeffs().array() * w.array()).sum();
}

double sym_bracket(const SymTensor& phi, const Vector& x) {
  Vector mono = phi.basis().monomials(x);
  Vector w = pairing_weights(phi.basis());
  return (phi.coeffs().array() * mono.array() * w.array()).sum();
}

// Column b of Sym^p(T): expand prod_k (T e_k)^{b_k} in the monomial basis,
// then rescale into stored coordinates: M_{ab} = (a!/b!) c^{(b)}_a.
Matrix sym_power_matrix(const Matrix& T, int n, int p) {
  auto basis = MonomialBasis::get(n, p);
  int dim = basis->size();
  Matrix M(dim, dim);
  // bases per intermediate degree for multiplication by a linear form
  std::vector<std::shared_ptr<const MonomialBasis>> levels;
  for (int d = 0; d <= p; ++d) levels.push_back(MonomialBasis::get(n, d));

  for (int col = 0; col < dim; ++col) {
    const MultiIndex& b = basis->at(col);
    Vector poly = Vector::Ones(1);  // degree 0
    int deg = 0;
    for (int k = 0; k < n; ++k) {
      for (int rep = 0; rep < b[k]; ++rep) {
        const MonomialBasis& from = *levels[deg];
        const MonomialBasis& to = *levels[deg + 1];
        Vector next = Vector::Zero(to.size());
        for (int i = 0; i < from.size(); ++i) {
          if (poly(i) == 0.0) continue;
          MultiIndex a = from.at(i);
          for (int r = 0; r < n; ++r) {
            double t = T(r, k);
            if (t == 0.0) continue;
            a.exponents[r] += 1;
            next(to.rank(a)) += poly(i) * t;
            a.exponents[r] -= 1;
          }
        }
        poly = std::move(next);
        ++deg;
      }
    }
    double bf = multi_factorial(b);
    for (int row = 0; row < dim; ++row)
      M(row, col) = poly(row) * multi_factorial(basis->at(row)) / bf;
  }
  return M;
}

namespace {

Matrix checked_inverse_transpose(const Matrix& T) {
  double det = T.determinant();
  if (std::abs(det) < 1e-12)
    throw InvalidBody("gl_action: matrix is singular (|det| < 1e-12)");
  return T.inverse().transpose();
}

}  // namespace

SymTensor gl_action(const Matrix& T, const SymTensor& s) {
  if (T.rows() != s.n() || T.cols() != s.n())
    throw DimensionMismatch("gl_action: matrix size mismatch");
  Matrix A = (s.variance() == Variance::VectorSide) ? T : checked_inverse_transpose(T);
  if (s.variance() == Variance::VectorSide && std::abs(T.determinant()) < 1e-12)
    throw InvalidBody("gl_action: matrix is singular (|det| < 1e-12)");
  Matrix M = sym_power_matrix(A, s.n(), s.degree());
  return SymTensor(s.n(), s.degree(), s.variance(), M * s.coeffs());
}

MixedTensor gl_action(const Matrix& T, const MixedTensor& s) {
  if (T.rows() != s.n() || T.cols() != s.n())
    throw DimensionMismatch("gl_action: matrix size mismatch");
  Matrix Tit = checked_inverse_transpose(T);
  // PsiArg lives in Sym^p V (x) Sym^q V*, PhiArg in Sym^p V* (x) Sym^q V.
  const Matrix& first = (s.variance() == MixedVariance::PsiArg) ? T : Tit;
  const Matrix& second = (s.variance() == MixedVariance::PsiArg) ? Tit : T;
  Matrix Mp = sym_power_matrix(first, s.n(), s.p());
  Matrix Mq = sym_power_matrix(second, s.n(), s.q());
  return MixedTensor(s.n(), s.p(), s.q(), s.variance(), Mp * s.coeffs() * Mq.transpose());
}

double mixed_bracket(const MixedTensor& phi, const Vector& x, const Vector& xi) {
  if (x.size() != phi.n() || xi.size() != phi.n())
    throw DimensionMismatch("mixed_bracket: dimension mismatch");
  Vector mp = phi.basis_p().monomials(x);
  Vector mq = phi.basis_q().monomials(xi);
  Vector wp = pairing_weights(phi.basis_p());
  Vector wq = pairing_weights(phi.basis_q());
  return (wp.array() * mp.array()).matrix().transpose() * phi.coeffs() *
         (wq.array() * mq.array()).matrix();
}

}  // namespace affval
