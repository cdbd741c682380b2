#include "aztec/fluct.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "aztec/errors.hpp"

namespace aztec {

namespace {

constexpr double pi = std::numbers::pi;

struct NodeData {
  cd z, f, zt, ztp;  // node, one-variable factor, z~ = S_inv(log(1+z)), dz~/dz
};

std::vector<NodeData> nodes_on_circle(const SegmentMeasure& m, double kappa, double q, double r, int n, bool shortcut) {
  std::vector<NodeData> out(n);
  for (int k = 0; k < n; ++k) {
    const cd z = r * std::polar(1.0, 2 * pi * (k + 0.5) / n);
    NodeData d;
    d.z = z;
    if (shortcut) {
      d.zt = z / (1.0 + z);
      d.ztp = 1.0 / ((1.0 + z) * (1.0 + z));
    } else {
      d.zt = s_inverse_log1p(m, z);
      d.ztp = 1.0 / ((1.0 + z) * s_transform_prime(m, d.zt));
    }
    const cd a = 1.0 / d.zt - 1.0 - 1.0 / z;  // (1+z) H'(1+z)
    d.f = 1.0 / z + 1.0 + (a + kappa * q * (1.0 + z) / (1.0 + q * (1.0 + z))) / (1 - kappa);
    out[k] = d;
  }
  return out;
}

double double_contour(const SegmentMeasure& m, double k1, int j1, double k2, int j2, double q, int n, double eps,
                      bool shortcut) {
  const auto zs = nodes_on_circle(m, k1, q, eps, n, shortcut);
  const auto ws = nodes_on_circle(m, k2, q, 2 * eps, n, shortcut);
  cd s = 0;
  for (const auto& a : zs) {
    const cd fa = std::pow(a.f, j1) * a.z * a.ztp;
    cd inner = 0;
    for (const auto& b : ws) {
      const cd d = a.zt - b.zt;
      inner += std::pow(b.f, j2) * b.z * b.ztp / (d * d);
    }
    s += fa * inner;
  }
  s /= double(n) * double(n);
  return std::pow(1 - k1, j1) * std::pow(1 - k2, j2) * s.real();
}

}  // namespace

cd clt_kernel(const SegmentMeasure& m, cd z, cd w) {
  const cd zt = s_inverse_log1p(m, z), wt = s_inverse_log1p(m, w);
  const cd ztp = 1.0 / ((1.0 + z) * s_transform_prime(m, zt));
  const cd wtp = 1.0 / ((1.0 + w) * s_transform_prime(m, wt));
  return ztp * wtp / ((zt - wt) * (zt - wt));
}

double clt_covariance(const SegmentMeasure& m, double kappa1, int j1, double kappa2, int j2, double q, int nodes,
                      double eps, KernelPath path) {
  if (j1 < 1 || j2 < 1) throw ValidationError("clt_covariance: j must be >= 1");
  if (!(kappa1 > 0 && kappa1 <= 1 && kappa2 > 0 && kappa2 <= 1)) throw ValidationError("clt_covariance: kappa in (0,1]");
  if (nodes < 1024) throw ValidationError("clt_covariance: at least 1024 nodes per circle");
  if (kappa1 < kappa2) {
    std::swap(kappa1, kappa2);
    std::swap(j1, j2);
  }
  if (kappa1 == 1) return 0.0;
  const bool shortcut = path == KernelPath::aztec_shortcut;
  if (shortcut && !(m.kind == SegmentMeasure::Kind::segments && m.s() == 1 && m.a[0] == 0 && m.b[0] == 1))
    throw ValidationError("clt_covariance: the shortcut only applies to the Aztec measure");
  const double fine = double_contour(m, kappa1, j1, kappa2, j2, q, 2 * nodes, eps, shortcut);
  const double coarse = double_contour(m, kappa1, j1, kappa2, j2, q, nodes, eps, shortcut);
  if (std::abs(fine - coarse) > std::max(1e-7, 1e-4 * std::abs(fine)))
    throw NumericalError("clt_covariance: resolutions disagree by " + std::to_string(std::abs(fine - coarse)));
  return fine;
}

double gff_covariance(const SegmentMeasure& m, double kappa1, int j1, double kappa2, int j2, double q) {
  return pi / ((j1 + 1) * (j2 + 1)) * clt_covariance(m, kappa1, j1 + 1, kappa2, j2 + 1, q);
}

Level level_for_kappa(int N, double kappa) {
  const int n = static_cast<int>(std::floor((1 - kappa) * N + 1e-9));
  if (n < 1 || n > N) throw ValidationError("kappa gives an empty level");
  return {2 * (N - n) + 1, n};
}

const Signature& level_signature(const SignatureSequence& seq, const Level& lv) {
  return lv.row % 2 == 1 ? seq.mu(lv.n) : seq.nu(lv.n);
}

namespace {

// p_j for each key and sample, accumulated exactly in 128-bit integers.
Eigen::MatrixXd raw_moments(const std::vector<SignatureSequence>& samples, const std::vector<MomentKey>& keys) {
  Eigen::MatrixXd p(samples.size(), keys.size());
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const int N = samples[s].levels();
    for (std::size_t c = 0; c < keys.size(); ++c) {
      const Level lv = level_for_kappa(N, keys[c].kappa);
      const Signature& sg = level_signature(samples[s], lv);
      __int128 acc = 0;
      for (int i = 1; i <= lv.n; ++i) {
        __int128 v = 1;
        const long l = sg[i - 1] + lv.n - i;
        for (int e = 0; e < keys[c].j; ++e) v *= l;
        acc += v;
      }
      p(s, c) = static_cast<double>(acc);
    }
  }
  return p;
}

Eigen::MatrixXd covariance(const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd c = x.rowwise() - x.colwise().mean();
  return c.transpose() * c / double(x.rows() - 1);
}

MomentStats summarize(const Eigen::MatrixXd& x, const std::vector<MomentKey>& keys, int batches) {
  MomentStats st;
  st.keys = keys;
  st.samples = x.rows();
  st.mean = x.colwise().mean().transpose();
  st.cov = x.rows() > 1 ? covariance(x) : Eigen::MatrixXd::Zero(x.cols(), x.cols());
  st.mean_se = Eigen::VectorXd::Zero(x.cols());
  st.cov_se = Eigen::MatrixXd::Zero(x.cols(), x.cols());
  const long per = x.rows() / batches;
  if (batches >= 2 && per >= 2) {
    Eigen::MatrixXd means(batches, x.cols());
    std::vector<Eigen::MatrixXd> covs;
    for (int b = 0; b < batches; ++b) {
      const Eigen::MatrixXd blk = x.middleRows(b * per, per);
      means.row(b) = blk.colwise().mean();
      covs.push_back(covariance(blk));
    }
    const Eigen::VectorXd mm = means.colwise().mean().transpose();
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      double v = 0;
      for (int b = 0; b < batches; ++b) v += std::pow(means(b, c) - mm(c), 2);
      st.mean_se(c) = std::sqrt(v / (batches - 1) / batches);
    }
    for (Eigen::Index r = 0; r < x.cols(); ++r)
      for (Eigen::Index c = 0; c < x.cols(); ++c) {
        double mu = 0, v = 0;
        for (const auto& cv : covs) mu += cv(r, c) / batches;
        for (const auto& cv : covs) v += std::pow(cv(r, c) - mu, 2);
        st.cov_se(r, c) = std::sqrt(v / (batches - 1) / batches);
      }
  }
  return st;
}

}  // namespace

MomentStats empirical_moments(const std::vector<SignatureSequence>& samples, const std::vector<MomentKey>& keys,
                              int batches) {
  if (samples.empty()) throw ValidationError("empirical_moments: no samples");
  return summarize(raw_moments(samples, keys), keys, batches);
}

MomentStats gff_moments(const std::vector<SignatureSequence>& samples, const std::vector<MomentKey>& keys,
                        int batches) {
  if (samples.empty()) throw ValidationError("gff_moments: no samples");
  std::vector<MomentKey> up = keys;
  for (auto& k : up) k.j += 1;
  Eigen::MatrixXd p = raw_moments(samples, up);
  const double N = samples.front().levels();
  p = p.rowwise() - p.colwise().mean();
  for (std::size_t c = 0; c < keys.size(); ++c)
    p.col(c) *= std::sqrt(pi) * std::pow(N, -(keys[c].j + 1)) / (keys[c].j + 1);
  return summarize(p, keys, batches);
}

double sine_kernel(double p, long y1, long y2) {
  if (!(p > 0 && p < 1)) throw ValidationError("sine_kernel: p must lie in (0,1)");
  if (y1 == y2) return p;
  const double d = static_cast<double>(y1 - y2);
  return std::sin(p * pi * d) / (pi * d);
}

LocalStats local_correlation(const std::vector<SignatureSequence>& samples, const SegmentMeasure& m, double kappa,
                             long x_anchor, const std::vector<long>& offsets, double q, int batches) {
  if (samples.empty()) throw ValidationError("local_correlation: no samples");
  if (offsets.empty() || offsets.size() > 4) throw ValidationError("local_correlation: 1 to 4 offsets");
  const int N = samples.front().levels();
  const Level lv = level_for_kappa(N, kappa);
  const double chi = (1 - kappa) * static_cast<double>(x_anchor) / lv.n;
  const DensityPoint dp = density(m, chi, kappa, q);
  if (dp.phase != Phase::liquid) throw ValidationError("local_correlation: anchor is in a frozen region");
  const int k = static_cast<int>(offsets.size());
  Eigen::MatrixXd kmat(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) kmat(a, b) = sine_kernel(dp.density, offsets[a], offsets[b]);

  Eigen::MatrixXd hits(samples.size(), 1);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const Signature& sg = level_signature(samples[s], lv);
    std::set<long> pts;
    for (int i = 1; i <= lv.n; ++i) pts.insert(sg[i - 1] + lv.n - i);
    bool all = true;
    for (long o : offsets) all = all && pts.count(x_anchor + o);
    hits(s, 0) = all ? 1.0 : 0.0;
  }
  const MomentStats st = summarize(hits, {{kappa, 0}}, batches);
  return {st.mean(0), st.mean_se(0), kmat.determinant(), dp.density, static_cast<long>(samples.size())};
}

}  // namespace aztec
