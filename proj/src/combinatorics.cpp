#include "aztec/combinatorics.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "aztec/sampler.hpp"

namespace aztec {

bool is_signature(const Signature& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0) return false;
    if (i + 1 < s.size() && s[i] < s[i + 1]) return false;
  }
  return true;
}

long size(const Signature& s) {
  long t = 0;
  for (long x : s) t += x;
  return t;
}

DomainSpec DomainSpec::make(std::vector<long> omega) {
  if (omega.empty()) throw ValidationError("domain needs N >= 1");
  if (omega.front() != 1) throw ValidationError("omega must start at 1");
  for (std::size_t i = 1; i < omega.size(); ++i)
    if (omega[i] <= omega[i - 1]) throw ValidationError("omega must be strictly increasing");
  DomainSpec d;
  d.N = static_cast<int>(omega.size());
  d.m = omega.back() - d.N;
  d.omega = std::move(omega);
  return d;
}

DomainSpec DomainSpec::aztec(int N) {
  if (N < 1) throw ValidationError("domain needs N >= 1");
  std::vector<long> omega(N);
  for (int i = 0; i < N; ++i) omega[i] = i + 1;
  return make(std::move(omega));
}

Signature boundary_signature(const DomainSpec& d) {
  Signature w(d.N);
  for (int k = 1; k <= d.N; ++k) w[k - 1] = d.omega[d.N - k] - (d.N + 1 - k);
  return w;
}

std::vector<long> shifted(const Signature& s) {
  const long n = static_cast<long>(s.size());
  std::vector<long> l(n);
  for (long i = 0; i < n; ++i) l[i] = s[i] + n - 1 - i;
  return l;
}

Signature unshifted(const std::vector<long>& l) {
  const long n = static_cast<long>(l.size());
  Signature s(n);
  for (long i = 0; i < n; ++i) s[i] = l[i] - (n - 1 - i);
  return s;
}

bool is_vertical_strip(const Signature& mu, const Signature& nu) {
  if (mu.size() != nu.size() || !is_signature(mu) || !is_signature(nu)) return false;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    long d = nu[i] - mu[i];
    if (d != 0 && d != 1) return false;
  }
  return true;
}

bool is_interlacing(const Signature& mu, const Signature& nu) {
  if (mu.size() + 1 != nu.size() || !is_signature(mu) || !is_signature(nu)) return false;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (!(nu[i] >= mu[i] && mu[i] >= nu[i + 1])) return false;
  return true;
}

static void check_shape(const SignatureSequence& seq, int N) {
  if (static_cast<int>(seq.chain.size()) != 2 * N)
    throw ValidationError("sequence has " + std::to_string(seq.chain.size()) + " signatures, expected " +
                          std::to_string(2 * N));
  for (int i = N; i >= 1; --i)
    if (static_cast<int>(seq.mu(i).size()) != i || static_cast<int>(seq.nu(i).size()) != i)
      throw ValidationError("signature length mismatch at level " + std::to_string(i));
}

static bool fits(const Signature& s, long width) { return s.empty() || (s.back() >= 0 && s.front() <= width); }

bool validate_sequence(const SignatureSequence& seq, const DomainSpec& d) {
  const int N = d.N;
  check_shape(seq, N);
  if (seq.mu(N) != boundary_signature(d)) return false;
  for (int i = N; i >= 1; --i) {
    const Signature& mu = seq.mu(i);
    const Signature& nu = seq.nu(i);
    if (!is_signature(mu) || !is_signature(nu)) return false;
    if (!is_vertical_strip(mu, nu)) return false;
    if (!fits(mu, d.m + N - i) || !fits(nu, d.m + N - i + 1)) return false;
    if (i < N && !is_interlacing(mu, seq.nu(i + 1))) return false;
  }
  return true;
}

static std::vector<long> ascending_positions(const Signature& s) {
  std::vector<long> l = shifted(s);
  std::reverse(l.begin(), l.end());
  return l;
}

VGrid sequence_to_vgrid(const SignatureSequence& seq) {
  const int N = seq.levels();
  check_shape(seq, N);
  VGrid g;
  g.rows.resize(2 * N + 1);
  for (int i = N; i >= 1; --i) {
    g.rows[2 * (N - i)] = ascending_positions(seq.mu(i));
    g.rows[2 * (N - i) + 1] = ascending_positions(seq.nu(i));
  }
  return g;
}

SignatureSequence vgrid_to_sequence(const VGrid& g, const DomainSpec& d) {
  const int N = d.N;
  if (static_cast<int>(g.rows.size()) != 2 * N + 1) throw ValidationError("grid must have 2N+1 rows");
  if (!g.rows.back().empty()) throw ValidationError("top row holds no V-squares");
  SignatureSequence seq;
  seq.chain.resize(2 * N);
  for (int k = 1; k <= 2 * N; ++k) {
    const auto& row = g.rows[k - 1];
    const long want = N - (k - 1) / 2;
    if (static_cast<long>(row.size()) != want)
      throw ValidationError("row " + std::to_string(k) + " has the wrong number of V-squares");
    const long width = k % 2 == 1 ? N + d.m : N + d.m + 1;
    for (std::size_t s = 0; s < row.size(); ++s) {
      if (row[s] < 0 || row[s] >= width) throw ValidationError("V-position outside its row");
      if (s > 0 && row[s] <= row[s - 1]) throw ValidationError("V-positions must increase");
    }
    std::vector<long> l(row.rbegin(), row.rend());
    seq.chain[k - 1] = unshifted(l);
  }
  if (!validate_sequence(seq, d)) throw ValidationError("grid does not encode a tiling of this domain");
  return seq;
}

long delta_count(const SignatureSequence& seq, long x, long y) {
  const int N = seq.levels();
  if (y < 0 || y > N) throw ValidationError("delta_count: y out of range");
  const int n = N - static_cast<int>(y);
  if (n == 0) return 0;
  const Signature& mu = seq.mu(n);
  long c = 0;
  for (int s = 1; s <= n; ++s)
    if (mu[s - 1] + n - s >= x) ++c;
  return c;
}

bool is_domain_vertex(const DomainSpec& d, long i, long j) {
  if (j < 0 || j > d.N) return false;
  if (j >= 1) return i >= 0 && i <= d.N + d.m;
  for (long w : d.omega)
    if (i == w - 1 || i == w) return true;
  return false;
}

long height_function(const SignatureSequence& seq, const DomainSpec& d, long i, long j) {
  if (!is_domain_vertex(d, i, j)) throw ValidationError("vertex outside the domain");
  return 2 * (2L * d.N + d.m - j - i - 2 * delta_count(seq, i, j));
}

long horizontal_domino_count(const SignatureSequence& seq) {
  long c = 0;
  for (int i = 1; i <= seq.levels(); ++i) c += size(seq.nu(i)) - size(seq.mu(i));
  return c;
}

std::vector<SignatureSequence> enumerate_tilings(const DomainSpec& d, std::uint64_t guard) {
  const mpz_class total = count_tilings(d);
  if (total > mpz_class(static_cast<unsigned long>(guard)))
    throw GuardExceeded("domain has " + total.get_str() + " tilings, guard is " + std::to_string(guard));
  std::vector<SignatureSequence> out;
  out.reserve(total.get_ui());
  SignatureSequence cur;
  cur.chain.resize(2 * d.N);
  cur.chain[0] = boundary_signature(d);

  std::function<void(int)> from_mu;
  // Every vertical strip on mu^(i), then every interlacing mu^(i-1).
  from_mu = [&](int i) {
    const Signature mu = cur.chain[2 * (d.N - i)];
    const long n = i;
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
      Signature nu = mu;
      for (long s = 0; s < n; ++s) nu[s] += (mask >> s) & 1UL;
      if (!is_signature(nu)) continue;
      cur.chain[2 * (d.N - i) + 1] = nu;
      if (i == 1) {
        out.push_back(cur);
        continue;
      }
      Signature below(n - 1);
      std::function<void(long)> place = [&](long s) {
        if (s == n - 1) {
          cur.chain[2 * (d.N - i + 1)] = below;
          from_mu(i - 1);
          return;
        }
        for (long v = nu[s + 1]; v <= nu[s]; ++v) {
          below[s] = v;
          place(s + 1);
        }
      };
      place(0);
    }
  };
  from_mu(d.N);
  return out;
}

std::vector<Path> paths_from_vgrid(const VGrid& g) {
  const int N = g.rows.empty() ? 0 : static_cast<int>(g.rows.front().size());
  std::vector<Path> paths(N);
  for (int k = 1; k <= static_cast<int>(g.rows.size()); ++k) {
    const auto& row = g.rows[k - 1];
    for (std::size_t r = 0; r < row.size() && r < paths.size(); ++r) paths[r].push_back({k, row[r]});
  }
  return paths;
}

}  // namespace aztec
