#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "affval/common.hpp"

namespace affval {

// Exponent vector of a monomial e_1^{a_1} ... e_n^{a_n}.
struct MultiIndex {
  std::vector<int> exponents;

  int degree() const {
    int d = 0;
    for (int e : exponents) d += e;
    return d;
  }
  int size() const { return static_cast<int>(exponents.size()); }
  int operator[](int i) const { return exponents[i]; }

  bool operator<(const MultiIndex& o) const { return exponents < o.exponents; }
  bool operator==(const MultiIndex& o) const { return exponents == o.exponents; }
};

inline double factorial(int k) {
  static const double table[] = {1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800, 39916800, 479001600};
  return table[k];
}

// prod_i a_i!
inline double multi_factorial(const MultiIndex& a) {
  double f = 1.0;
  for (int e : a.exponents) f *= factorial(e);
  return f;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// All multi-indices with n entries of total degree p, in lexicographic
// order, with rank lookup.  Shared between tensors of matching (n,p).
class MonomialBasis {
 public:
  MonomialBasis(int n, int p);

  int n() const { return n_; }
  int degree() const { return p_; }
  int size() const { return static_cast<int>(indices_.size()); }
  const MultiIndex& at(int i) const { return indices_[i]; }
  int rank(const MultiIndex& a) const;

  // x^a for every a in the basis
  Vector monomials(const Vector& x) const;

  static std::shared_ptr<const MonomialBasis> get(int n, int p);

 private:
  int n_, p_;
  std::vector<MultiIndex> indices_;
  std::map<std::vector<int>, int> rank_;
};

}  // namespace affval
