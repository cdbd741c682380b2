#pragma once
#include <Eigen/Dense>

#include <vector>

#include "aztec/combinatorics.hpp"
#include "aztec/limitshape.hpp"

namespace aztec {

enum class KernelPath { general, aztec_shortcut };

// Limit of N^{-j1-j2} Cov(p_{j1}^{kappa1}, p_{j2}^{kappa2}); the pair is reordered so kappa1 >= kappa2.
double clt_covariance(const SegmentMeasure& m, double kappa1, int j1, double kappa2, int j2, double q = 1.0,
                      int nodes = 1024, double eps = 1e-2, KernelPath path = KernelPath::general);

// Limit covariance of the centered moments M_j^kappa of the height fluctuation field.
double gff_covariance(const SegmentMeasure& m, double kappa1, int j1, double kappa2, int j2, double q = 1.0);

// The two-variable kernel in the z, w variables.
cd clt_kernel(const SegmentMeasure& m, cd z, cd w);

struct Level {
  int row;  // 1..2N
  int n;    // signature length
};
Level level_for_kappa(int N, double kappa);
const Signature& level_signature(const SignatureSequence& seq, const Level& lv);

struct MomentKey {
  double kappa;
  int j;
};

struct MomentStats {
  std::vector<MomentKey> keys;
  long samples = 0;
  Eigen::VectorXd mean, mean_se;
  Eigen::MatrixXd cov, cov_se;  // SEs from contiguous batches
};

MomentStats empirical_moments(const std::vector<SignatureSequence>& samples, const std::vector<MomentKey>& keys,
                              int batches = 20);

// Statistics of M_j = sqrt(pi) N^{-(j+1)} (p_{j+1} - E p_{j+1}) / (j+1), centered by the sample mean.
MomentStats gff_moments(const std::vector<SignatureSequence>& samples, const std::vector<MomentKey>& keys,
                        int batches = 20);

double sine_kernel(double p, long y1, long y2);

struct LocalStats {
  double empirical, se, predicted, density;
  long samples;
};

LocalStats local_correlation(const std::vector<SignatureSequence>& samples, const SegmentMeasure& m, double kappa,
                             long x_anchor, const std::vector<long>& offsets, double q = 1.0, int batches = 20);

}  // namespace aztec
