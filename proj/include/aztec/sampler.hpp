#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "aztec/combinatorics.hpp"
#include "aztec/rng.hpp"
#include "aztec/schur.hpp"

namespace aztec {

enum class Arithmetic { exact, floating };

struct SamplerConfig {
  DomainSpec domain;
  mpq_class q = 1;
  std::uint64_t master_seed = 0;
  long num_samples = 1;
  Arithmetic mode = Arithmetic::exact;

  void validate() const;
};

Signature sample_st_step(const Signature& mu, const BetaWeight& b, RngStream& rng, Arithmetic mode = Arithmetic::exact);
Signature sample_pr_step(const Signature& nu, RngStream& rng, Arithmetic mode = Arithmetic::exact);

SignatureSequence sample_tiling(const SamplerConfig& cfg, std::uint64_t index);

// Samples first..first+count-1, returned in index order. threads <= 0 reads AZTEC_RECT_THREADS.
std::vector<SignatureSequence> sample_range(const SamplerConfig& cfg, std::uint64_t first, std::uint64_t count,
                                            int threads = 0);

int default_threads();

mpz_class count_tilings(const DomainSpec& d);
mpq_class tiling_weight(const SignatureSequence& seq, const mpq_class& q);
mpq_class chain_probability(const SignatureSequence& seq, const mpq_class& q);

// Conditionals seen by the incremental samplers along a fixed path, for regression against the
// plain determinant path. eps[i] in {0,1}; k from the interlacing intervals of nu.
std::vector<mpq_class> st_conditionals_exact(const Signature& mu, const BetaWeight& b, const std::vector<int>& eps);
std::vector<double> st_conditionals_float(const Signature& mu, double beta, const std::vector<int>& eps);
std::vector<std::vector<mpz_class>> pr_weights_exact(const Signature& nu, const std::vector<long>& k);
std::vector<std::vector<double>> pr_weights_float(const Signature& nu, const std::vector<long>& k);

}  // namespace aztec
