#include "affval/rep_theory.hpp"

#include <algorithm>
#include <sstream>

namespace affval {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 0) throw Error("Partition: negative part");
    if (i > 0 && parts[i] > parts[i - 1]) throw Error("Partition: parts must be weakly decreasing");
  }
}

int Partition::degree() const {
  int d = 0;
  for (int p : parts) d += p;
  return d;
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < length(); ++i) os << (i ? "," : "") << parts[i];
  os << ")";
  return os.str();
}

bool Weight::dominant() const {
  for (int i = 1; i < length(); ++i)
    if (coeffs[i] > coeffs[i - 1]) return false;
  return true;
}

std::string Weight::to_string() const {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < length(); ++i) os << (i ? "," : "") << coeffs[i];
  os << ")";
  return os.str();
}

namespace {

// h_0..h_max of x_1..x_n via sequential convolution with 1/(1 - x_i t)
std::vector<double> complete_homogeneous(const Vector& x, int max_deg) {
  std::vector<double> h(max_deg + 1, 0.0);
  h[0] = 1.0;
  for (int i = 0; i < x.size(); ++i)
    for (int k = 1; k <= max_deg; ++k) h[k] += x(i) * h[k - 1];
  return h;
}

double det_small(Matrix m) {
  // Gaussian elimination with partial pivoting; matrices here are tiny.
  int n = static_cast<int>(m.rows());
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
    if (m(piv, c) == 0.0) return 0.0;
    if (piv != c) {
      m.row(piv).swap(m.row(c));
      det = -det;
    }
    det *= m(c, c);
    for (int r = c + 1; r < n; ++r) {
      double f = m(r, c) / m(c, c);
      m.row(r).tail(n - c) -= f * m.row(c).tail(n - c);
    }
  }
  return det;
}

}  // namespace

double schur_eval(const Partition& lambda, const Vector& x) {
  int n = static_cast<int>(x.size());
  int l = lambda.length();
  if (l > n) throw Error("schur_eval: partition longer than variable count");
  if (l == 0) return 1.0;
  int max_deg = lambda.part(0) + l;
  std::vector<double> h = complete_homogeneous(x, max_deg);
  auto H = [&](int k) { return (k < 0) ? 0.0 : h[k]; };
  Matrix m(l, l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) m(i, j) = H(lambda.part(i) - (i + 1) + (j + 1));
  return det_small(m);
}

namespace {

void pieri_rec(const Partition& lambda, int row, int remaining, int n,
               std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    // pad untouched rows with lambda itself
    std::vector<int> full = cur;
    for (int i = row; i < lambda.length(); ++i) full.push_back(lambda.part(i));
    out.push_back(Partition(full));
    return;
  }
  if (row >= n) return;
  int lo = lambda.part(row);
  int hi = (row == 0) ? lambda.part(0) + remaining
                      : std::min(lambda.part(row - 1), lambda.part(row) + remaining);
  // rows below can still absorb at most sum of their own slack; recurse directly
  for (int v = lo; v <= hi; ++v) {
    cur.push_back(v);
    pieri_rec(lambda, row + 1, remaining - (v - lo), n, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> pieri(const Partition& lambda, int k, int n) {
  if (k < 0) throw Error("pieri: k < 0");
  if (lambda.length() > n) throw Error("pieri: partition longer than n");
  std::vector<Partition> out;
  std::vector<int> cur;
  pieri_rec(lambda, 0, k, n, cur, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Cells of nu/lambda in reverse reading order (rows top to bottom, each
// row right to left), which lets the lattice-word condition be checked
// as cells are filled.
struct SkewCell {
  int row, col;
};

struct LrCounter {
  const Partition& nu;
  const Partition& lambda;
  const Partition& mu;
  std::vector<SkewCell> cells;
  std::vector<std::vector<int>> fill;  // -1 = empty
  std::vector<int> content;            // count of each value so far
  long long count = 0;

  LrCounter(const Partition& nu_, const Partition& lambda_, const Partition& mu_)
      : nu(nu_), lambda(lambda_), mu(mu_) {
    for (int r = 0; r < nu.length(); ++r) {
      fill.push_back(std::vector<int>(nu.part(r), -1));
      for (int c = nu.part(r) - 1; c >= lambda.part(r); --c) cells.push_back({r, c});
    }
    content.assign(mu.length() + 1, 0);
  }

  void run(size_t k) {
    if (k == cells.size()) {
      ++count;
      return;
    }
    auto [r, c] = cells[k];
    for (int v = 1; v <= mu.length(); ++v) {
      if (content[v] >= mu.part(v - 1)) continue;
      // lattice word: prefix counts stay weakly decreasing in v
      if (v >= 2 && content[v] + 1 > content[v - 1]) continue;
      // rows weakly increase left to right: right neighbor already filled
      if (c + 1 < nu.part(r) && v > fill[r][c + 1]) continue;
      // columns strictly increase; the cell above is constrained only when
      // it belongs to the skew shape (then it is filled by reading order)
      if (r > 0 && c < nu.part(r - 1) && c >= lambda.part(r - 1) && v <= fill[r - 1][c]) continue;
      fill[r][c] = v;
      content[v]++;
      run(k + 1);
      content[v]--;
      fill[r][c] = -1;
    }
  }
};

void enumerate_partitions_rec(int remaining, int max_part, int max_len,
                              std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(Partition(cur));
    return;
  }
  if (max_len == 0) return;
  for (int v = std::min(remaining, max_part); v >= 1; --v) {
    cur.push_back(v);
    enumerate_partitions_rec(remaining - v, v, max_len - 1, cur, out);
    cur.pop_back();
  }
}

std::vector<Partition> partitions_of(int k, int max_len) {
  std::vector<Partition> out;
  std::vector<int> cur;
  enumerate_partitions_rec(k, k, max_len, cur, out);
  return out;
}

bool contains(const Partition& nu, const Partition& lambda) {
  for (int i = 0; i < lambda.length(); ++i)
    if (nu.part(i) < lambda.part(i)) return false;
  return true;
}

}  // namespace

std::map<Partition, long long> lr_coefficients(const Partition& lambda, const Partition& mu, int n) {
  if (lambda.degree() + mu.degree() > 12)
    throw Error("lr_coefficients: |lambda| + |mu| > 12 exceeds the size cap");
  std::map<Partition, long long> out;
  for (const Partition& nu : partitions_of(lambda.degree() + mu.degree(), n)) {
    if (!contains(nu, lambda)) continue;
    LrCounter counter(nu, lambda, mu);
    counter.run(0);
    if (counter.count > 0) out[nu] = counter.count;
  }
  return out;
}

std::vector<IsotypicWeight> decompose_sym_mixed(int n, int p, int q) {
  if (n < 2) throw Error("decompose_sym_mixed: need n >= 2");
  if (p < 0 || q < 0) throw Error("decompose_sym_mixed: need p,q >= 0");
  // (Sym^q V)* (x) det^q has highest weight q(eps_1 + ... + eps_{n-1});
  // multiply by Sym^p V = single row (p) through Pieri.
  std::vector<int> rect(n - 1, q);
  std::vector<Partition> nus = pieri(Partition(rect), p, n);
  std::vector<IsotypicWeight> out;
  for (const Partition& nu : nus) {
    IsotypicWeight w;
    std::vector<int> gl(n, 0);
    for (int i = 0; i < n; ++i) gl[i] = nu.part(i);
    w.gl_weight = Weight{gl};
    w.i = gl[n - 1];
    std::vector<int> sl(n - 1, 0);
    for (int i = 0; i + 1 < n; ++i) sl[i] = gl[i] - gl[n - 1];
    w.sl_weight = Weight{sl};
    w.dimension = weyl_dim(w.gl_weight, n);
    w.multiplicity = 1;
    out.push_back(w);
  }
  std::sort(out.begin(), out.end(),
            [](const IsotypicWeight& a, const IsotypicWeight& b) { return a.i < b.i; });
  return out;
}

long long weyl_dim(const Weight& lambda, int n) {
  if (lambda.length() != n) throw Error("weyl_dim: weight length != n");
  if (!lambda.dominant()) throw Error("weyl_dim: weight not dominant");
  __int128 num = 1, den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      num *= lambda.coeffs[i] - lambda.coeffs[j] + j - i;
      den *= j - i;
    }
  return static_cast<long long>(num / den);
}

}  // namespace affval
