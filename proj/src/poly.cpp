#include "aztec/poly.hpp"

#include <cmath>
#include <string>

#include "aztec/errors.hpp"

namespace aztec {

PolyC poly_deflate(const PolyC& p, cd r) {
  const Eigen::Index n = p.size() - 1;
  PolyC q(n);
  cd carry = 0;
  for (Eigen::Index i = n; i >= 1; --i) {
    carry = p(i) + carry * r;
    q(i - 1) = carry;
  }
  return q;
}

namespace {

RootsC finish(const PolyC& p, RootsC roots, double tol) {
  const PolyC dp = poly_derivative(p);
  const double norm = p.cwiseAbs().maxCoeff();
  const int deg = static_cast<int>(p.size()) - 1;
  for (Eigen::Index k = 0; k < roots.size(); ++k) {
    cd z = roots(k);
    for (int it = 0; it < 4; ++it) {
      const cd f = poly_eval(p, z), g = poly_eval(dp, z);
      if (g == cd(0)) break;
      const cd step = f / g;
      const cd zn = z - step;
      if (std::abs(poly_eval(p, zn)) > std::abs(f)) break;
      z = zn;
      if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(z))) break;
    }
    const double bound = tol * norm * std::pow(std::max(1.0, std::abs(z)), deg);
    if (!(std::abs(poly_eval(p, z)) <= bound))
      throw NumericalError("root certification failed: residual " + std::to_string(std::abs(poly_eval(p, z))));
    roots(k) = z;
  }
  return roots;
}

}  // namespace

RootsC poly_roots(const PolyC& p0, double tol) {
  const PolyC p = poly_trim(p0, 1e-15);
  const Eigen::Index n = p.size() - 1;
  if (n < 1) return RootsC(0);
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (Eigen::Index i = 0; i < n; ++i) c(i, n - 1) = -p(i) / p(n);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, false);
  if (es.info() != Eigen::Success) throw NumericalError("companion eigenvalues did not converge");
  return finish(p, es.eigenvalues(), tol);
}

RootsC poly_roots_real(const Eigen::VectorXd& p0, double tol) {
  const Eigen::VectorXd p = poly_trim(p0, 1e-15);
  const Eigen::Index n = p.size() - 1;
  if (n < 1) return RootsC(0);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (Eigen::Index i = 0; i < n; ++i) c(i, n - 1) = -p(i) / p(n);
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
  if (es.info() != Eigen::Success) throw NumericalError("companion eigenvalues did not converge");
  RootsC r = es.eigenvalues();
  const PolyC pc = p.cast<cd>();
  // Polish without breaking conjugate symmetry: real roots stay real.
  RootsC out = finish(pc, r, tol);
  for (Eigen::Index k = 0; k < r.size(); ++k)
    if (r(k).imag() == 0.0) out(k) = cd(out(k).real(), 0.0);
  return out;
}

}  // namespace aztec
