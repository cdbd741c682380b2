#pragma once
#include <gmpxx.h>

#include <vector>

#include "aztec/combinatorics.hpp"

namespace aztec {

using IntMatrix = std::vector<std::vector<mpz_class>>;

// Fraction-free Gaussian elimination; the input is taken by value and destroyed.
mpz_class bareiss_det(IntMatrix a);

// det and adjugate together, so that a * adj == det * I.
struct DetAdj {
  mpz_class det;
  IntMatrix adj;
};
DetAdj det_adjugate(const IntMatrix& a);

// Number of semistandard tableaux of shape lambda with entries <= n.
mpz_class dim(const Signature& lambda, int n);

// Vandermonde product over i<j of (m_i - m_j).
mpz_class vandermonde(const std::vector<long>& m);

// Beta weight a/b in lowest terms with 0 < a < b.
struct BetaWeight {
  mpq_class beta;
  static BetaWeight from_beta(const mpq_class& beta);
  static BetaWeight from_q(const mpq_class& q);
  mpq_class q() const { return beta / (1 - beta); }
  mpz_class num() const { return beta.get_num(); }
  mpz_class den() const { return beta.get_den(); }
};

mpq_class strip_partition_sum(const std::vector<long>& l, const std::vector<int>& fixed_prefix, const BetaWeight& b);

struct Interval {
  long lo, hi;  // inclusive
  long size() const { return hi - lo + 1; }
};
mpz_class branch_partition_sum(const std::vector<Interval>& intervals, const std::vector<long>& fixed_prefix);

// Intervals of k_s for the level below nu: [l_{s+1}, l_s - 1].
std::vector<Interval> branch_intervals(const Signature& nu);

mpq_class st_prob(const Signature& mu, const Signature& nu, const BetaWeight& b);
mpq_class pr_prob(const Signature& nu, const Signature& mu);

}  // namespace aztec
