#include "aztec/rng.hpp"

#include "aztec/errors.hpp"

namespace aztec {

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t index)
    : state_(splitmix64_mix(master_seed ^ splitmix64_mix(index + 0x9E3779B97F4A7C15ULL))) {}

std::uint64_t RngStream::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  return splitmix64_mix(state_);
}

double RngStream::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

static mpz_class from_u64(std::uint64_t x) {
  mpz_class r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(x), 0, 0, &x);
  return r;
}

bool bernoulli(RngStream& rng, mpz_class p, const mpz_class& q) {
  if (q <= 0) throw ValidationError("bernoulli: denominator must be positive");
  if (p <= 0) return false;
  if (p >= q) return true;
  // Compare a uniform binary expansion with that of p/q one 64-bit digit at a time.
  for (;;) {
    mpz_class scaled = p << 64;
    mpz_class digit, rem;
    mpz_fdiv_qr(digit.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(), q.get_mpz_t());
    const mpz_class u = from_u64(rng.next());
    if (u < digit) return true;
    if (u > digit) return false;
    if (rem == 0) return false;
    p = rem;
  }
}

mpz_class uniform_below(RngStream& rng, const mpz_class& w) {
  if (w <= 0) throw ValidationError("uniform_below: bound must be positive");
  const std::size_t bits = mpz_sizeinbase(w.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  for (;;) {
    mpz_class r = 0;
    for (std::size_t i = 0; i < words; ++i) r = (r << 64) + from_u64(rng.next());
    if (words * 64 > bits) r >>= words * 64 - bits;
    if (r < w) return r;
  }
}

}  // namespace aztec
