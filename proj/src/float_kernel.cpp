#include "aztec/float_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aztec {

namespace {

template <typename Scalar>
void normalize_rows(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Scalar m = a.row(i).cwiseAbs().maxCoeff();
    if (m > 0) a.row(i) /= m;
  }
}

// Replace row i of a by r and update x = a^{-1} in place.
template <typename Scalar, typename Row>
void replace_row(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
                 Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& x, Eigen::Index i, const Row& r) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> u = r - a.row(i);
  Vec xe = x.col(i);
  const Scalar den = r.dot(xe.transpose());
  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> ux = u * x;
  x.noalias() -= xe * ux / den;
  a.row(i) = r;
}

}  // namespace

template <typename Scalar>
StripKernel<Scalar>::StripKernel(const std::vector<long>& l, Scalar beta) {
  using std::abs;
  using std::exp;
  using std::log;
  const Eigen::Index n = static_cast<Eigen::Index>(l.size());
  const Scalar ninf = -std::numeric_limits<Scalar>::infinity();
  // log|K_ik| and sign of K_ik = L_k(l_i + 1), Lagrange basis on the nodes l.
  Mat logk(n, n), sgnk(n, n);
  Vec logw(n), sgnw(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Scalar s = 0, g = 1;
    for (Eigen::Index m = 0; m < n; ++m) {
      if (m == k) continue;
      const Scalar d = static_cast<Scalar>(l[k] - l[m]);
      s -= log(abs(d));
      if (d < 0) g = -g;
    }
    logw(k) = s;
    sgnw(k) = g;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const long y = l[i] + 1;
    Eigen::Index hit = -1;
    if (i > 0 && l[i - 1] == y) hit = i - 1;
    if (hit >= 0) {
      logk.row(i).setConstant(ninf);
      sgnk.row(i).setOnes();
      logk(i, hit) = 0;
      continue;
    }
    Scalar ly = 0, gy = 1;
    for (Eigen::Index m = 0; m < n; ++m) {
      const Scalar d = static_cast<Scalar>(y - l[m]);
      ly += log(abs(d));
      if (d < 0) gy = -gy;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      const Scalar d = static_cast<Scalar>(y - l[k]);
      logk(i, k) = ly + logw(k) - log(abs(d));
      sgnk(i, k) = gy * sgnw(k) * (d < 0 ? -1 : 1);
    }
  }
  const Scalar lb = log(beta), l1b = log(1 - beta);
  Vec logm(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Scalar m = l1b;
    for (Eigen::Index i = 0; i < n; ++i) m = std::max(m, lb + logk(i, k));
    logm(k) = m;
  }
  kt_.resize(n, n);
  et_.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    et_(k) = exp(l1b - logm(k));
    for (Eigen::Index i = 0; i < n; ++i)
      kt_(i, k) = logk(i, k) == ninf ? Scalar(0) : sgnk(i, k) * exp(lb + logk(i, k) - logm(k));
  }
  a_ = kt_;
  a_.diagonal() += et_;
  normalize_rows(a_);
  x_ = a_.partialPivLu().inverse();
}

template <typename Scalar>
Scalar StripKernel<Scalar>::prob_one(int i) const {
  const Scalar num = kt_.row(i).dot(x_.col(i).transpose());
  const Scalar den = num + et_(i) * x_(i, i);
  Scalar p = num / den;
  if (!(p > 0)) p = 0;
  if (p > 1) p = 1;
  return p;
}

template <typename Scalar>
void StripKernel<Scalar>::fix(int i, bool one) {
  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> r;
  if (one) {
    r = kt_.row(i);
    r /= r.cwiseAbs().maxCoeff();
  } else {
    r = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>::Zero(a_.cols());
    r(i) = 1;
  }
  replace_row(a_, x_, i, r);
}

template <typename Scalar>
BranchKernel<Scalar>::BranchKernel(const std::vector<long>& l) {
  using std::abs;
  using std::exp;
  using std::log;
  const Eigen::Index n = static_cast<Eigen::Index>(l.size()) - 1;
  for (Eigen::Index s = 0; s < n; ++s) iv_.push_back({l[s + 1], l[s] - 1});
  x_.assign(l.begin() + 1, l.end());
  logw_.resize(n);
  signw_.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Scalar s = 0, g = 1;
    for (Eigen::Index m = 0; m < n; ++m) {
      if (m == k) continue;
      const Scalar d = static_cast<Scalar>(x_[k] - x_[m]);
      s -= log(abs(d));
      if (d < 0) g = -g;
    }
    logw_(k) = s;
    signw_(k) = g;
  }
  // Free row i: delta_im + w_m * sum over r in I_i, r != x_i, of l(r)/(r - x_m); all summands share a sign.
  Mat logb(n, n), sgnb(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<Scalar> lr;
    Scalar gl = 1;
    for (long r = iv_[i].lo + 1; r <= iv_[i].hi; ++r) {
      Scalar s = 0;
      Scalar g = 1;
      for (Eigen::Index m = 0; m < n; ++m) {
        const Scalar d = static_cast<Scalar>(r - x_[m]);
        s += log(abs(d));
        if (d < 0) g = -g;
      }
      lr.push_back(s);
      gl = g;
    }
    for (Eigen::Index m = 0; m < n; ++m) {
      Scalar mx = -std::numeric_limits<Scalar>::infinity();
      std::vector<Scalar> terms;
      Scalar gd = 1;
      for (std::size_t t = 0; t < lr.size(); ++t) {
        const long r = iv_[i].lo + 1 + static_cast<long>(t);
        const Scalar d = static_cast<Scalar>(r - x_[m]);
        terms.push_back(lr[t] - log(abs(d)));
        gd = d < 0 ? -1 : 1;
        mx = std::max(mx, terms.back());
      }
      Scalar lsum = -std::numeric_limits<Scalar>::infinity();
      if (!terms.empty()) {
        Scalar acc = 0;
        for (Scalar t : terms) acc += exp(t - mx);
        lsum = mx + log(acc);
      }
      logb(i, m) = lsum + logw_(m);
      sgnb(i, m) = gl * gd * signw_(m);
    }
  }
  logd_.resize(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    // The diagonal is 1 plus a non-negative term.
    Scalar mx = std::max(Scalar(0), logb(m, m));
    for (Eigen::Index i = 0; i < n; ++i) mx = std::max(mx, logb(i, m));
    logd_(m) = -mx;
  }
  a_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index m = 0; m < n; ++m) {
      const Scalar off = logb(i, m) == -std::numeric_limits<Scalar>::infinity()
                             ? Scalar(0)
                             : sgnb(i, m) * exp(logb(i, m) + logd_(m));
      a_(i, m) = off + (i == m ? exp(logd_(m)) : Scalar(0));
    }
  normalize_rows(a_);
  inv_ = a_.partialPivLu().inverse();
}

template <typename Scalar>
typename BranchKernel<Scalar>::Vec BranchKernel<Scalar>::basis_row(long r) const {
  using std::abs;
  using std::exp;
  using std::log;
  const Eigen::Index n = static_cast<Eigen::Index>(x_.size());
  Vec v = Vec::Zero(n);
  for (Eigen::Index m = 0; m < n; ++m)
    if (x_[m] == r) {
      v(m) = exp(logd_(m));
      return v;
    }
  Scalar ll = 0, gl = 1;
  for (Eigen::Index m = 0; m < n; ++m) {
    const Scalar d = static_cast<Scalar>(r - x_[m]);
    ll += log(abs(d));
    if (d < 0) gl = -gl;
  }
  for (Eigen::Index m = 0; m < n; ++m) {
    const Scalar d = static_cast<Scalar>(r - x_[m]);
    v(m) = gl * signw_(m) * (d < 0 ? -1 : 1) * exp(ll + logw_(m) + logd_(m) - log(abs(d)));
  }
  return v;
}

template <typename Scalar>
std::vector<Scalar> BranchKernel<Scalar>::weights(int i) const {
  std::vector<Scalar> w;
  const Vec c = inv_.col(i);
  for (long r = iv_[i].lo; r <= iv_[i].hi; ++r) {
    Scalar p = basis_row(r).dot(c);
    w.push_back(p > 0 ? p : Scalar(0));
  }
  return w;
}

template <typename Scalar>
void BranchKernel<Scalar>::fix(int i, long k) {
  if (iv_[i].size() == 1) return;
  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> r = basis_row(k).transpose();
  r /= r.cwiseAbs().maxCoeff();
  replace_row(a_, inv_, i, r);
}

template class StripKernel<double>;
template class BranchKernel<double>;

}  // namespace aztec
