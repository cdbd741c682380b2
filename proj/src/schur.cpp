#include "aztec/schur.hpp"

#include <string>
#include <utility>

namespace aztec {

mpz_class bareiss_det(IntMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

DetAdj det_adjugate(const IntMatrix& a0) {
  const std::size_t n = a0.size();
  IntMatrix a(n, std::vector<mpz_class>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = a0[i][j];
    a[i][n + i] = 1;
  }
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) throw ValidationError("det_adjugate: singular matrix");
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        a[i][j] = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  DetAdj r;
  r.det = sign * prev;
  r.adj.assign(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.adj[i][j] = sign * a[i][n + j];
  return r;
}

mpz_class vandermonde(const std::vector<long>& m) {
  mpz_class v = 1;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) v *= m[i] - m[j];
  return v;
}

mpz_class dim(const Signature& lambda, int n) {
  if (static_cast<int>(lambda.size()) != n) throw ValidationError("dim: length mismatch");
  if (!is_signature(lambda)) throw ValidationError("dim: not a signature");
  mpz_class num = vandermonde(shifted(lambda));
  mpz_class den = 1;
  for (int j = 1; j < n; ++j) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), j);
    den *= f;
  }
  mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return num;
}

BetaWeight BetaWeight::from_beta(const mpq_class& beta) {
  if (!(beta > 0 && beta < 1)) throw ValidationError("beta must lie in (0,1)");
  BetaWeight b;
  b.beta = beta;
  b.beta.canonicalize();
  return b;
}

BetaWeight BetaWeight::from_q(const mpq_class& q) {
  if (!(q > 0)) throw ValidationError("q must be positive");
  return from_beta(q / (1 + q));
}

static bool strictly_decreasing(const std::vector<long>& l) {
  for (std::size_t i = 0; i + 1 < l.size(); ++i)
    if (l[i] <= l[i + 1]) return false;
  return l.empty() || l.back() >= 0;
}

static int vandermonde_sign(std::size_t n) { return (n * (n - 1) / 2) % 2 == 0 ? 1 : -1; }

static std::vector<mpz_class> powers(long x, std::size_t n) {
  std::vector<mpz_class> p(n);
  mpz_class v = 1;
  for (std::size_t j = 0; j < n; ++j) {
    p[j] = v;
    v *= x;
  }
  return p;
}

mpq_class strip_partition_sum(const std::vector<long>& l, const std::vector<int>& fixed_prefix, const BetaWeight& b) {
  if (!strictly_decreasing(l)) throw ValidationError("strip_partition_sum: l must be strictly decreasing");
  const std::size_t n = l.size();
  if (fixed_prefix.size() > n) throw ValidationError("strip_partition_sum: prefix longer than l");
  const mpz_class a = b.num(), c = b.den();
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < fixed_prefix.size()) {
      const int e = fixed_prefix[i];
      if (e != 0 && e != 1) throw ValidationError("strip prefix entries must be 0 or 1");
      const mpz_class w = e ? a : mpz_class(c - a);
      m[i] = powers(l[i] + e, n);
      for (auto& x : m[i]) x *= w;
    } else {
      auto p0 = powers(l[i], n), p1 = powers(l[i] + 1, n);
      m[i].resize(n);
      for (std::size_t j = 0; j < n; ++j) m[i][j] = (c - a) * p0[j] + a * p1[j];
    }
  }
  mpz_class den;
  mpz_pow_ui(den.get_mpz_t(), c.get_mpz_t(), n);
  mpq_class r(vandermonde_sign(n) * bareiss_det(std::move(m)), den);
  r.canonicalize();
  if (r < 0) throw NumericalError("strip_partition_sum came out negative");
  return r;
}

mpz_class branch_partition_sum(const std::vector<Interval>& intervals, const std::vector<long>& fixed_prefix) {
  const std::size_t n = intervals.size();
  if (fixed_prefix.size() > n) throw ValidationError("branch_partition_sum: prefix longer than intervals");
  for (std::size_t i = 0; i < n; ++i) {
    if (intervals[i].size() <= 0) throw ValidationError("branch_partition_sum: empty interval");
    if (i + 1 < n && intervals[i + 1].hi >= intervals[i].lo)
      throw ValidationError("branch_partition_sum: intervals must be disjoint and descending");
  }
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < fixed_prefix.size()) {
      m[i] = powers(fixed_prefix[i], n);
    } else {
      m[i].assign(n, 0);
      for (long k = intervals[i].lo; k <= intervals[i].hi; ++k) {
        mpz_class v = 1;
        for (std::size_t j = 0; j < n; ++j) {
          m[i][j] += v;
          v *= k;
        }
      }
    }
  }
  mpz_class r = vandermonde_sign(n) * bareiss_det(std::move(m));
  if (r < 0) throw NumericalError("branch_partition_sum came out negative");
  return r;
}

std::vector<Interval> branch_intervals(const Signature& nu) {
  const auto l = shifted(nu);
  std::vector<Interval> iv;
  for (std::size_t s = 0; s + 1 < l.size(); ++s) iv.push_back({l[s + 1], l[s] - 1});
  return iv;
}

mpq_class st_prob(const Signature& mu, const Signature& nu, const BetaWeight& b) {
  if (!is_vertical_strip(mu, nu)) return 0;
  const long n = static_cast<long>(mu.size());
  const long k = size(nu) - size(mu);
  mpq_class w = 1;
  for (long i = 0; i < k; ++i) w *= b.beta;
  for (long i = 0; i < n - k; ++i) w *= 1 - b.beta;
  mpq_class r = w * mpq_class(dim(nu, n), dim(mu, n));
  r.canonicalize();
  return r;
}

mpq_class pr_prob(const Signature& nu, const Signature& mu) {
  if (!is_interlacing(mu, nu)) return 0;
  const int n = static_cast<int>(nu.size());
  mpq_class r(dim(mu, n - 1), dim(nu, n));
  r.canonicalize();
  return r;
}

}  // namespace aztec
