#pragma once
#include <Eigen/Dense>

#include <vector>

#include "aztec/schur.hpp"

namespace aztec {

// Floating-point conditionals for the strip and branching steps. Both work in the Lagrange basis
// on the current nodes with equilibrated columns, and keep the inverse current by rank-one updates.

template <typename Scalar>
class StripKernel {
 public:
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  StripKernel(const std::vector<long>& l, Scalar beta);
  Scalar prob_one(int i) const;
  void fix(int i, bool one);

 private:
  Mat a_;   // current rows, column-scaled and row-normalized
  Mat x_;   // inverse of a_
  Mat kt_;  // beta * K, column-scaled
  Vec et_;  // (1 - beta) * diag scale
};

template <typename Scalar>
class BranchKernel {
 public:
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit BranchKernel(const std::vector<long>& l);
  const std::vector<Interval>& intervals() const { return iv_; }
  // Unnormalized non-negative weights of each k in interval i.
  std::vector<Scalar> weights(int i) const;
  void fix(int i, long k);

 private:
  Vec basis_row(long r) const;  // column-scaled Lagrange values at r

  std::vector<Interval> iv_;
  std::vector<long> x_;
  Vec logw_, signw_, logd_;
  Mat a_, inv_;
};

extern template class StripKernel<double>;
extern template class BranchKernel<double>;

}  // namespace aztec
