#pragma once
#include <Eigen/Dense>

#include <complex>

namespace aztec {

// Coefficients in ascending powers.
template <typename Scalar>
using Poly = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using cd = std::complex<double>;
using PolyC = Poly<cd>;
using RootsC = Eigen::VectorXcd;

template <typename Scalar>
Poly<Scalar> poly_mul(const Poly<Scalar>& a, const Poly<Scalar>& b) {
  Poly<Scalar> c = Poly<Scalar>::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i) c.segment(i, b.size()) += a(i) * b;
  return c;
}

template <typename Scalar>
Poly<Scalar> poly_add(const Poly<Scalar>& a, const Poly<Scalar>& b) {
  Poly<Scalar> c = Poly<Scalar>::Zero(std::max(a.size(), b.size()));
  c.head(a.size()) += a;
  c.head(b.size()) += b;
  return c;
}

template <typename Scalar, typename T>
T poly_eval(const Poly<Scalar>& p, const T& z) {
  T s = T(0);
  for (Eigen::Index i = p.size(); i-- > 0;) s = s * z + T(p(i));
  return s;
}

template <typename Scalar>
Poly<Scalar> poly_derivative(const Poly<Scalar>& p) {
  if (p.size() <= 1) return Poly<Scalar>::Zero(1);
  Poly<Scalar> d(p.size() - 1);
  for (Eigen::Index i = 1; i < p.size(); ++i) d(i - 1) = Scalar(static_cast<double>(i)) * p(i);
  return d;
}

// Drop leading coefficients below rel * max |coefficient|.
template <typename Scalar>
Poly<Scalar> poly_trim(const Poly<Scalar>& p, double rel = 0.0) {
  using std::abs;
  const double scale = p.cwiseAbs().maxCoeff();
  Eigen::Index n = p.size();
  while (n > 1 && abs(p(n - 1)) <= rel * scale) --n;
  return p.head(n);
}

// Divide by (z - r), dropping the remainder.
PolyC poly_deflate(const PolyC& p, cd r);

// All roots, via companion eigenvalues then Newton polishing; each certified by
// |P(z)| <= tol * ||P|| * max(1,|z|)^deg or NumericalError is thrown.
RootsC poly_roots(const PolyC& p, double tol = 1e-10);
RootsC poly_roots_real(const Eigen::VectorXd& p, double tol = 1e-10);

}  // namespace aztec
