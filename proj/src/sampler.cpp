#include "aztec/sampler.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

#include "aztec/float_kernel.hpp"

namespace aztec {

namespace {

std::vector<mpz_class> powers(long x, std::size_t n) {
  std::vector<mpz_class> p(n);
  mpz_class v = 1;
  for (std::size_t j = 0; j < n; ++j) {
    p[j] = v;
    v *= x;
  }
  return p;
}

// Integer matrix held only through det and adjugate; rows are replaced by exact rank-one updates.
class ExactRows {
 public:
  explicit ExactRows(const IntMatrix& a) {
    DetAdj da = det_adjugate(a);
    det_ = std::move(da.det);
    adj_ = std::move(da.adj);
  }

  const mpz_class& det() const { return det_; }

  // det of the matrix with row i replaced by r.
  mpz_class replaced_det(std::size_t i, const std::vector<mpz_class>& r) const {
    mpz_class s = 0;
    for (std::size_t j = 0; j < r.size(); ++j) s += r[j] * adj_[j][i];
    return s;
  }

  void replace(std::size_t i, const std::vector<mpz_class>& r) {
    const std::size_t n = adj_.size();
    const mpz_class nd = replaced_det(i, r);
    if (nd == 0) throw NumericalError("row update hit a singular matrix");
    std::vector<mpz_class> w(n, 0), col(n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) w[k] += r[j] * adj_[j][k];
    for (std::size_t p = 0; p < n; ++p) col[p] = adj_[p][i];
    mpz_class t;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t k = 0; k < n; ++k) {
        t = nd * adj_[p][k] - col[p] * w[k];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), det_.get_mpz_t());
        if (k == i) t += col[p];
        adj_[p][k] = t;
      }
    det_ = nd;
  }

  // Value of sum_j r^j adj[j][i] by Horner.
  mpz_class column_poly(std::size_t i, long r) const {
    mpz_class s = 0;
    for (std::size_t j = adj_.size(); j-- > 0;) s = s * r + adj_[j][i];
    return s;
  }

 private:
  mpz_class det_;
  IntMatrix adj_;
};

class ExactStrip {
 public:
  ExactStrip(const std::vector<long>& l, const BetaWeight& b) : l_(l), a_(b.num()), c_(b.den()), rows_(build(l, b)) {}

  // P(eps_i = 1 | rows fixed so far) as num/den with den > 0.
  std::pair<mpz_class, mpz_class> prob_one(std::size_t i) const {
    mpz_class num = rows_.replaced_det(i, one_row(i));
    mpz_class den = rows_.det();
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return {num, den};
  }

  void fix(std::size_t i, bool one) { rows_.replace(i, one ? one_row(i) : zero_row(i)); }

 private:
  static IntMatrix build(const std::vector<long>& l, const BetaWeight& b) {
    const std::size_t n = l.size();
    const mpz_class a = b.num(), c = b.den();
    IntMatrix m(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
      auto p0 = powers(l[i], n), p1 = powers(l[i] + 1, n);
      for (std::size_t j = 0; j < n; ++j) m[i][j] = (c - a) * p0[j] + a * p1[j];
    }
    return m;
  }
  std::vector<mpz_class> one_row(std::size_t i) const {
    auto r = powers(l_[i] + 1, l_.size());
    for (auto& x : r) x *= a_;
    return r;
  }
  std::vector<mpz_class> zero_row(std::size_t i) const {
    auto r = powers(l_[i], l_.size());
    for (auto& x : r) x *= c_ - a_;
    return r;
  }

  std::vector<long> l_;
  mpz_class a_, c_;
  ExactRows rows_;
};

class ExactBranch {
 public:
  explicit ExactBranch(const Signature& nu) : iv_(branch_intervals(nu)), rows_(build(iv_)) {}

  const std::vector<Interval>& intervals() const { return iv_; }

  // Signed weights of each k in interval i; they share the sign of det().
  std::vector<mpz_class> weights(std::size_t i) const {
    std::vector<mpz_class> w;
    for (long r = iv_[i].lo; r <= iv_[i].hi; ++r) w.push_back(rows_.column_poly(i, r));
    return w;
  }
  const mpz_class& det() const { return rows_.det(); }

  void fix(std::size_t i, long k) {
    if (iv_[i].size() == 1) return;
    rows_.replace(i, powers(k, iv_.size()));
  }

 private:
  static IntMatrix build(const std::vector<Interval>& iv) {
    const std::size_t n = iv.size();
    IntMatrix m(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (long k = iv[i].lo; k <= iv[i].hi; ++k) {
        mpz_class v = 1;
        for (std::size_t j = 0; j < n; ++j) {
          m[i][j] += v;
          v *= k;
        }
      }
    return m;
  }

  std::vector<Interval> iv_;
  ExactRows rows_;
};

template <typename T>
std::size_t pick_cumulative(const std::vector<T>& w, const T& u) {
  T acc = 0;
  for (std::size_t t = 0; t < w.size(); ++t) {
    acc += w[t];
    if (u < acc) return t;
  }
  for (std::size_t t = w.size(); t-- > 0;)
    if (w[t] > 0) return t;
  return w.size() - 1;
}

}  // namespace

void SamplerConfig::validate() const {
  if (!(q > 0)) throw ValidationError("q must be positive");
  if (num_samples < 1) throw ValidationError("num_samples must be at least 1");
  if (domain.N < 1) throw ValidationError("domain needs N >= 1");
  if (mode == Arithmetic::floating && domain.N <= 40) throw ValidationError("float mode needs N > 40");
}

Signature sample_st_step(const Signature& mu, const BetaWeight& b, RngStream& rng, Arithmetic mode) {
  const std::size_t n = mu.size();
  const std::vector<long> l = shifted(mu);
  Signature nu = mu;
  if (n == 0) return nu;
  if (mode == Arithmetic::exact) {
    ExactStrip k(l, b);
    for (std::size_t i = 0; i < n; ++i) {
      auto [num, den] = k.prob_one(i);
      const bool e = bernoulli(rng, num, den);
      k.fix(i, e);
      nu[i] += e;
    }
  } else {
    StripKernel<double> k(l, b.beta.get_d());
    for (std::size_t i = 0; i < n; ++i) {
      const bool e = rng.uniform() < k.prob_one(static_cast<int>(i));
      k.fix(static_cast<int>(i), e);
      nu[i] += e;
    }
  }
  return nu;
}

Signature sample_pr_step(const Signature& nu, RngStream& rng, Arithmetic mode) {
  const std::size_t n = nu.size();
  if (n < 2) throw ValidationError("sample_pr_step needs a signature of length >= 2");
  std::vector<long> k(n - 1);
  if (mode == Arithmetic::exact) {
    ExactBranch br(nu);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const Interval iv = br.intervals()[i];
      if (iv.size() == 1) {
        k[i] = iv.lo;
        continue;
      }
      auto w = br.weights(i);
      mpz_class total = br.det();
      if (total < 0) {
        for (auto& x : w) x = -x;
        total = -total;
      }
      const mpz_class u = uniform_below(rng, total);
      k[i] = iv.lo + static_cast<long>(pick_cumulative(w, u));
      br.fix(i, k[i]);
    }
  } else {
    BranchKernel<double> br(shifted(nu));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const Interval iv = br.intervals()[i];
      if (iv.size() == 1) {
        k[i] = iv.lo;
        continue;
      }
      auto w = br.weights(static_cast<int>(i));
      double total = 0;
      for (double x : w) total += x;
      const double u = rng.uniform() * total;
      k[i] = iv.lo + static_cast<long>(pick_cumulative(w, u));
      br.fix(static_cast<int>(i), k[i]);
    }
  }
  return unshifted(k);
}

SignatureSequence sample_tiling(const SamplerConfig& cfg, std::uint64_t index) {
  cfg.validate();
  const BetaWeight b = BetaWeight::from_q(cfg.q);
  RngStream rng(cfg.master_seed, index);
  const int N = cfg.domain.N;
  SignatureSequence seq;
  seq.chain.reserve(2 * N);
  Signature mu = boundary_signature(cfg.domain);
  for (int i = N; i >= 1; --i) {
    Signature nu = sample_st_step(mu, b, rng, cfg.mode);
    seq.chain.push_back(mu);
    seq.chain.push_back(nu);
    if (i > 1) mu = sample_pr_step(nu, rng, cfg.mode);
  }
  return seq;
}

int default_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  int t = hw == 0 ? 1 : static_cast<int>(hw);
  if (const char* env = std::getenv("AZTEC_RECT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) t = std::min(t, cap);
  }
  return std::max(t, 1);
}

std::vector<SignatureSequence> sample_range(const SamplerConfig& cfg, std::uint64_t first, std::uint64_t count,
                                            int threads) {
  cfg.validate();
  if (threads <= 0) threads = default_threads();
  threads = static_cast<int>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1)));
  std::vector<SignatureSequence> out(count);
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](int t) {
    try {
      for (std::uint64_t s = t; s < count; s += threads) out[s] = sample_tiling(cfg, first + s);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

mpz_class count_tilings(const DomainSpec& d) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(d.N) * (d.N + 1) / 2);
  return p * dim(boundary_signature(d), d.N);
}

mpq_class tiling_weight(const SignatureSequence& seq, const mpq_class& q) {
  const int N = seq.levels();
  if (N < 1) throw ValidationError("empty sequence");
  const long h = horizontal_domino_count(seq);
  mpq_class qh = 1, den = 1;
  for (long i = 0; i < h; ++i) qh *= q;
  for (long i = 0; i < static_cast<long>(N) * (N + 1) / 2; ++i) den *= 1 + q;
  mpq_class r = qh / (den * mpq_class(dim(seq.mu(N), N)));
  r.canonicalize();
  return r;
}

mpq_class chain_probability(const SignatureSequence& seq, const mpq_class& q) {
  const BetaWeight b = BetaWeight::from_q(q);
  const int N = seq.levels();
  mpq_class p = 1;
  for (int i = N; i >= 1; --i) {
    p *= st_prob(seq.mu(i), seq.nu(i), b);
    if (i > 1) p *= pr_prob(seq.nu(i), seq.mu(i - 1));
  }
  p.canonicalize();
  return p;
}

std::vector<mpq_class> st_conditionals_exact(const Signature& mu, const BetaWeight& b, const std::vector<int>& eps) {
  ExactStrip k(shifted(mu), b);
  std::vector<mpq_class> out;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    auto [num, den] = k.prob_one(i);
    mpq_class p(num, den);
    p.canonicalize();
    out.push_back(p);
    k.fix(i, eps[i] != 0);
  }
  return out;
}

std::vector<double> st_conditionals_float(const Signature& mu, double beta, const std::vector<int>& eps) {
  StripKernel<double> k(shifted(mu), beta);
  std::vector<double> out;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    out.push_back(k.prob_one(static_cast<int>(i)));
    k.fix(static_cast<int>(i), eps[i] != 0);
  }
  return out;
}

std::vector<std::vector<mpz_class>> pr_weights_exact(const Signature& nu, const std::vector<long>& k) {
  ExactBranch br(nu);
  std::vector<std::vector<mpz_class>> out;
  for (std::size_t i = 0; i < k.size(); ++i) {
    auto w = br.weights(i);
    if (br.det() < 0)
      for (auto& x : w) x = -x;
    out.push_back(w);
    br.fix(i, k[i]);
  }
  return out;
}

std::vector<std::vector<double>> pr_weights_float(const Signature& nu, const std::vector<long>& k) {
  BranchKernel<double> br(shifted(nu));
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < k.size(); ++i) {
    out.push_back(br.weights(static_cast<int>(i)));
    br.fix(static_cast<int>(i), k[i]);
  }
  return out;
}

}  // namespace aztec
