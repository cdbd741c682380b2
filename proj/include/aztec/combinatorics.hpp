#pragma once
#include <cstdint>
#include <vector>

#include "aztec/errors.hpp"

namespace aztec {

// Weakly decreasing, non-negative.
using Signature = std::vector<long>;

bool is_signature(const Signature& s);
long size(const Signature& s);

struct DomainSpec {
  int N = 0;
  std::vector<long> omega;  // strictly increasing, omega[0] == 1
  long m = 0;               // omega.back() - N

  static DomainSpec make(std::vector<long> omega);
  static DomainSpec aztec(int N);
};

// mu^(N), nu^(N), mu^(N-1), ..., mu^(1), nu^(1); the signatures at level i have length i.
struct SignatureSequence {
  std::vector<Signature> chain;

  int levels() const { return static_cast<int>(chain.size() / 2); }
  const Signature& mu(int i) const { return chain[2 * (levels() - i)]; }
  const Signature& nu(int i) const { return chain[2 * (levels() - i) + 1]; }
  bool operator==(const SignatureSequence&) const = default;
};

// rows[k-1] holds the sorted V-square positions of row k, k = 1..2N+1.
struct VGrid {
  std::vector<std::vector<long>> rows;
  bool operator==(const VGrid&) const = default;
};

Signature boundary_signature(const DomainSpec& d);

// l_s = lambda_s + n - s, strictly decreasing.
std::vector<long> shifted(const Signature& s);
Signature unshifted(const std::vector<long>& l);

bool is_vertical_strip(const Signature& mu, const Signature& nu);
bool is_interlacing(const Signature& mu, const Signature& nu);

// Throws ValidationError if the chain does not have 2N signatures of lengths N, N, ..., 1, 1.
bool validate_sequence(const SignatureSequence& seq, const DomainSpec& d);

VGrid sequence_to_vgrid(const SignatureSequence& seq);
SignatureSequence vgrid_to_sequence(const VGrid& g, const DomainSpec& d);

// Number of V-squares in row 2y+1 at position >= x.
long delta_count(const SignatureSequence& seq, long x, long y);

bool is_domain_vertex(const DomainSpec& d, long i, long j);
long height_function(const SignatureSequence& seq, const DomainSpec& d, long i, long j);

long horizontal_domino_count(const SignatureSequence& seq);

std::vector<SignatureSequence> enumerate_tilings(const DomainSpec& d, std::uint64_t guard = 1000000);

struct PathPoint {
  int row;
  long pos;
};
using Path = std::vector<PathPoint>;

// Path r (r = 0..N-1) follows the r-th V-square from the left through every row that has one.
std::vector<Path> paths_from_vgrid(const VGrid& g);

}  // namespace aztec
