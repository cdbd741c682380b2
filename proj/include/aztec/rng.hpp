#pragma once
#include <gmpxx.h>

#include <cstdint>

namespace aztec {

std::uint64_t splitmix64_mix(std::uint64_t x);

// Counter-based SplitMix64 sequence keyed by (master seed, sample index).
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t index);
  std::uint64_t next();
  double uniform();  // [0, 1) with 53 bits

 private:
  std::uint64_t state_;
};

// Exact draw of Bernoulli(p/q) for 0 <= p <= q, q > 0.
bool bernoulli(RngStream& rng, mpz_class p, const mpz_class& q);

// Uniform integer in [0, w), w > 0.
mpz_class uniform_below(RngStream& rng, const mpz_class& w);

}  // namespace aztec
