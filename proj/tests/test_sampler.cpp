#include "doctest.h"

#include <chrono>
#include <cmath>
#include <map>

#include "aztec/sampler.hpp"

using namespace aztec;

namespace {

template <class T>
mpq_class ratio(const std::vector<T>& w, std::size_t t) {
  mpz_class s = 0;
  for (const auto& x : w) s += x;
  mpq_class r(w[t], s);
  r.canonicalize();
  return r;
}

double ratio_d(const std::vector<double>& w, std::size_t t) {
  double s = 0;
  for (double x : w) s += x;
  return w[t] / s;
}

// counts within 3 sigma of n * p
void check_freq(long count, long n, double p) {
  const double sd = std::sqrt(n * p * (1 - p));
  CHECK(std::abs(count - n * p) <= 3 * sd + 1e-9);
}

}  // namespace

TEST_CASE("splitmix64 stream") {
  CHECK(splitmix64_mix(0x9E3779B97F4A7C15ULL) == 0xE220A8397B1DCDAFULL);
  RngStream a(42, 7), b(42, 7), c(42, 8);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    (void)c.next();
  }
  CHECK(RngStream(42, 7).next() != RngStream(42, 8).next());
  RngStream u(1, 0);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    CHECK(v >= 0);
    CHECK(v < 1);
  }
}

TEST_CASE("bernoulli and bounded draws") {
  RngStream r(3, 0);
  CHECK_FALSE(bernoulli(r, 0, 5));
  CHECK(bernoulli(r, 5, 5));
  long hits = 0;
  const long n = 100000;
  for (long i = 0; i < n; ++i) hits += bernoulli(r, 1, 3);
  check_freq(hits, n, 1.0 / 3);
  // a denominator above 2^64 exercises the multi-digit comparison
  const mpz_class big = (mpz_class(1) << 130) + 7;
  hits = 0;
  for (long i = 0; i < 20000; ++i) hits += bernoulli(r, big / 4, big);
  check_freq(hits, 20000, 0.25);
  CHECK_THROWS_AS(bernoulli(r, 1, 0), ValidationError);

  std::map<long, long> hist;
  for (long i = 0; i < 60000; ++i) {
    const mpz_class v = uniform_below(r, 6);
    CHECK(v >= 0);
    CHECK(v < 6);
    ++hist[v.get_si()];
  }
  for (const auto& [k, c] : hist) check_freq(c, 60000, 1.0 / 6);
}

TEST_CASE("st step") {
  const BetaWeight half = BetaWeight::from_q(1);
  RngStream r(11, 0);
  std::map<Signature, long> hist;
  const long n = 100000;
  for (long i = 0; i < n; ++i) ++hist[sample_st_step({0, 0}, half, r)];
  CHECK(hist.size() == 3);
  check_freq(hist[{0, 0}], n, 0.25);
  check_freq(hist[{1, 0}], n, 0.5);
  check_freq(hist[{1, 1}], n, 0.25);

  CHECK(st_conditionals_exact({4}, BetaWeight::from_beta(mpq_class(1, 3)), {1})[0] == mpq_class(1, 3));

  // incremental conditionals agree with the plain ratio of partition sums
  for (const Signature& mu : {Signature{3, 3, 1, 0}, Signature{5, 2, 2, 1, 0}, Signature{0, 0, 0}}) {
    const BetaWeight b = BetaWeight::from_beta(mpq_class(2, 5));
    const std::vector<long> l = shifted(mu);
    RngStream g(5, mu.size());
    const Signature nu = sample_st_step(mu, b, g);
    std::vector<int> eps;
    for (std::size_t i = 0; i < mu.size(); ++i) eps.push_back(int(nu[i] - mu[i]));
    const auto cond = st_conditionals_exact(mu, b, eps);
    const auto condf = st_conditionals_float(mu, b.beta.get_d(), eps);
    for (std::size_t i = 0; i < eps.size(); ++i) {
      std::vector<int> pre(eps.begin(), eps.begin() + i);
      const mpq_class z = strip_partition_sum(l, pre, b);
      pre.push_back(1);
      CHECK(cond[i] == strip_partition_sum(l, pre, b) / z);
      CHECK(cond[i] >= 0);
      CHECK(cond[i] <= 1);
      CHECK(condf[i] == doctest::Approx(cond[i].get_d()).epsilon(1e-10));
    }
  }
}

TEST_CASE("pr step") {
  RngStream r(12, 0);
  long ones = 0;
  const long n = 100000;
  for (long i = 0; i < n; ++i) ones += sample_pr_step({1, 0}, r)[0] == 1;
  check_freq(ones, n, 0.5);
  CHECK(sample_pr_step({4, 4}, r) == Signature{4});
  CHECK_THROWS_AS(sample_pr_step({3}, r), ValidationError);

  for (const Signature& nu : {Signature{4, 2, 2, 0}, Signature{6, 3, 1, 1, 0}}) {
    RngStream g(9, nu.size());
    const Signature mu = sample_pr_step(nu, g);
    const auto iv = branch_intervals(nu);
    std::vector<long> k = shifted(mu);
    const auto w = pr_weights_exact(nu, k);
    const auto wf = pr_weights_float(nu, k);
    for (std::size_t i = 0; i < k.size(); ++i) {
      std::vector<long> pre(k.begin(), k.begin() + i);
      const mpz_class z = branch_partition_sum(iv, pre);
      for (long v = iv[i].lo; v <= iv[i].hi; ++v) {
        auto p2 = pre;
        p2.push_back(v);
        const std::size_t t = v - iv[i].lo;
        mpq_class expect(branch_partition_sum(iv, p2), z);
        expect.canonicalize();
        CHECK(ratio(w[i], t) == expect);
        CHECK(ratio_d(wf[i], t) == doctest::Approx(expect.get_d()).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("float kernels track exact ones up to n = 20") {
  for (int n : {8, 14, 20}) {
    Signature mu(n);
    for (int i = 0; i < n; ++i) mu[i] = (n - i) / 2 + (i % 3 == 0);
    std::sort(mu.rbegin(), mu.rend());
    const BetaWeight b = BetaWeight::from_q(mpq_class(3, 2));
    RngStream g(77, n);
    const Signature nu = sample_st_step(mu, b, g);
    std::vector<int> eps;
    for (int i = 0; i < n; ++i) eps.push_back(int(nu[i] - mu[i]));
    const auto ce = st_conditionals_exact(mu, b, eps);
    const auto cf = st_conditionals_float(mu, b.beta.get_d(), eps);
    for (int i = 0; i < n; ++i) CHECK(std::abs(cf[i] - ce[i].get_d()) < 1e-9);

    const Signature below = sample_pr_step(nu, g);
    const auto k = shifted(below);
    const auto we = pr_weights_exact(nu, k);
    const auto wf = pr_weights_float(nu, k);
    for (std::size_t i = 0; i < k.size(); ++i)
      for (std::size_t t = 0; t < we[i].size(); ++t) CHECK(std::abs(ratio_d(wf[i], t) - ratio(we[i], t).get_d()) < 1e-9);
  }
}

TEST_CASE("counts and weights") {
  CHECK(count_tilings(DomainSpec::aztec(2)) == 8);
  CHECK(count_tilings(DomainSpec::aztec(5)) == 32768);
  CHECK(count_tilings(DomainSpec::make({1, 3})) == 16);
  CHECK(count_tilings(DomainSpec::aztec(1)) == 2);

  const DomainSpec d1 = DomainSpec::aztec(1);
  const mpq_class q(2, 5);
  CHECK(tiling_weight({{{0}, {0}}}, q) == 1 / (1 + q));
  CHECK(tiling_weight({{{0}, {1}}}, q) == q / (1 + q));

  const DomainSpec r2 = DomainSpec::make({1, 3});
  const auto all = enumerate_tilings(r2);
  for (const mpq_class& qq : {mpq_class(1), mpq_class(3)}) {
    mpq_class s = 0;
    for (const auto& t : all) {
      s += tiling_weight(t, qq);
      CHECK(chain_probability(t, qq) == tiling_weight(t, qq));
      if (qq == 1) CHECK(tiling_weight(t, qq) == mpq_class(1, 16));
    }
    CHECK(s == 1);
  }
}

TEST_CASE("config validation") {
  SamplerConfig c;
  c.domain = DomainSpec::aztec(3);
  CHECK_NOTHROW(c.validate());
  c.q = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c.q = 1;
  c.num_samples = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c.num_samples = 1;
  c.mode = Arithmetic::floating;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c.domain = DomainSpec::aztec(41);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("determinism and thread independence") {
  SamplerConfig c;
  c.domain = DomainSpec::make({1, 2, 4, 7, 8});
  c.q = mpq_class(2, 3);
  c.master_seed = 1234;
  c.num_samples = 24;
  const auto a = sample_range(c, 0, 24, 1);
  const auto b = sample_range(c, 0, 24, 3);
  CHECK(a == b);
  CHECK(sample_tiling(c, 5) == a[5]);
  const auto tail = sample_range(c, 10, 5, 2);
  for (int i = 0; i < 5; ++i) CHECK(tail[i] == a[10 + i]);
}

TEST_CASE("samples are valid tilings") {
  std::uint64_t seed = 99;
  long checked = 0;
  for (int dom = 0; dom < 20; ++dom) {
    RngStream g(seed, dom);
    const int N = 1 + static_cast<int>(g.next() % 8);
    std::vector<long> omega{1};
    while (static_cast<int>(omega.size()) < N) omega.push_back(omega.back() + 1 + static_cast<long>(g.next() % 3));
    SamplerConfig c;
    c.domain = DomainSpec::make(omega);
    c.q = mpq_class(1 + static_cast<long>(g.next() % 4), 1 + static_cast<long>(g.next() % 3));
    c.master_seed = seed + dom;
    c.num_samples = 500;
    for (const auto& s : sample_range(c, 0, 500)) {
      CHECK(validate_sequence(s, c.domain));
      ++checked;
    }
  }
  CHECK(checked == 10000);
}

TEST_CASE("exact sample at N = 30 is fast") {
  SamplerConfig c;
  c.domain = DomainSpec::aztec(30);
  const auto t0 = std::chrono::steady_clock::now();
  const auto s = sample_tiling(c, 0);
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(validate_sequence(s, c.domain));
  CHECK(dt < 60);
}
