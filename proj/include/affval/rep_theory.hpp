#pragma once

#include <map>
#include <vector>

#include "affval/common.hpp"

namespace affval {

// Weakly decreasing non-negative integers; trailing zeros are trimmed.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  explicit Partition(std::vector<int> p);

  int length() const { return static_cast<int>(parts.size()); }
  int degree() const;
  int part(int i) const { return i < length() ? parts[i] : 0; }

  bool operator<(const Partition& o) const { return parts < o.parts; }
  bool operator==(const Partition& o) const { return parts == o.parts; }
  std::string to_string() const;
};

// Integer weight sum p_i eps_i; dominant iff weakly decreasing.
struct Weight {
  std::vector<int> coeffs;

  int length() const { return static_cast<int>(coeffs.size()); }
  bool dominant() const;
  bool operator==(const Weight& o) const { return coeffs == o.coeffs; }
  std::string to_string() const;
};

// One isotypic summand of Sym^p V (x) Sym^q V* as an SL(V) representation.
struct IsotypicWeight {
  int i = 0;                // 0 .. min(p,q)
  Weight sl_weight;         // length n-1, entries p_j - p_n
  Weight gl_weight;         // length n, weight of Sym^p V (x) (Sym^q V)* (x) det^q
  long long dimension = 0;
  int multiplicity = 1;
};

// Schur polynomial s_lambda(x_1..x_n) by the Jacobi-Trudi determinant in
// complete homogeneous symmetric polynomials; stable at coincident x.
double schur_eval(const Partition& lambda, const Vector& x);

// All mu containing lambda with mu/lambda a horizontal strip of size k
// and length(mu) <= n.
std::vector<Partition> pieri(const Partition& lambda, int k, int n);

// Littlewood-Richardson coefficients of s_lambda * s_mu restricted to
// partitions of length <= n.  Requires |lambda| + |mu| <= 12.
std::map<Partition, long long> lr_coefficients(const Partition& lambda, const Partition& mu, int n);

// Highest weights of the isotypic decomposition of Sym^p V (x) Sym^q V*
// over SL(V), computed on the GL side through the Pieri rule and converted
// by subtracting the last coordinate.
std::vector<IsotypicWeight> decompose_sym_mixed(int n, int p, int q);

// dim of the irreducible GL_n representation with dominant weight lambda:
// prod_{i<j} (l_i - l_j + j - i) / (j - i).
long long weyl_dim(const Weight& lambda, int n);

}  // namespace affval
