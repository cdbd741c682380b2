#pragma once
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "aztec/combinatorics.hpp"
#include "aztec/poly.hpp"

namespace aztec {

struct SegmentMeasure {
  enum class Kind { segments, theta };
  Kind kind = Kind::segments;
  std::vector<double> a, b;  // segments [a_i, b_i]
  int theta = 0;

  static SegmentMeasure segments(const std::vector<std::pair<double, double>>& ab);
  static SegmentMeasure single_theta(int theta);
  static SegmentMeasure aztec() { return segments({{0.0, 1.0}}); }

  int s() const { return static_cast<int>(a.size()); }
  double lo() const;
  double hi() const;
  double mean() const;
  double moment(int j) const;
};

// Omega with (Omega_i - 1)/N filling the rescaled support; a_i N and b_i N must be integers.
DomainSpec discretize(const SegmentMeasure& m, int N);
// Piecewise uniform measure of (Omega - 1)/N, consecutive runs merged.
SegmentMeasure empirical_measure(const DomainSpec& d);

cd stieltjes(const SegmentMeasure& m, cd t);
cd stieltjes_prime(const SegmentMeasure& m, cd t);
// S(z) = St(1/z) and its derivative in z.
cd s_transform(const SegmentMeasure& m, cd z);
cd s_transform_prime(const SegmentMeasure& m, cd z);

// Inverse of S on the branch through S_inv(0) = 0, reached by continuation from w = 0.
cd s_inverse(const SegmentMeasure& m, cd w);
// The same branch evaluated at w = log u for u near 1; the log1p form takes h = u - 1.
cd s_inverse_log(const SegmentMeasure& m, cd u);
cd s_inverse_log1p(const SegmentMeasure& m, cd h);

cd h_prime(const SegmentMeasure& m, cd u);

struct DensityOptions {
  double delta = 1e-9;
  double tol = 1e-7;
  double root_tol = 1e-10;
};

enum class Phase { liquid, frozen0, frozen1 };
const char* phase_name(Phase p);

struct DensityPoint {
  double chi, kappa, x;
  cd z_plus;
  double density;
  Phase phase;
};

// Saddle-point polynomial in z at the (complex) rescaled position x, with the trivial root z = 1 removed.
PolyC saddle_polynomial(const SegmentMeasure& m, double kappa, cd x, double q);

DensityPoint density(const SegmentMeasure& m, double chi, double kappa, double q = 1.0,
                     const DensityOptions& opt = {});

bool is_liquid(const SegmentMeasure& m, double chi, double kappa, double q = 1.0);

// Bisection for the frozen/liquid transition on the segment chi in [lo, hi] at fixed kappa.
double phase_transition_chi(const SegmentMeasure& m, double kappa, double lo, double hi, double q = 1.0);

double limit_moment(const SegmentMeasure& m, double kappa, int j, double q = 1.0, int nodes = 4096,
                    double radius = 1e-2);

// Integral of x^j * density over x, by adaptive quadrature.
double density_moment(const SegmentMeasure& m, double kappa, int j, double q = 1.0);

double limit_height(const SegmentMeasure& m, double nu_ratio, double chi, double kappa, double q = 1.0);

struct LiquidPoint {
  cd t;
  double chi_l, kappa_l;
};

cd liquid_equation(const SegmentMeasure& m, double chi, double kappa, cd t);
LiquidPoint liquid_map(const SegmentMeasure& m, double chi, double kappa);
std::pair<double, double> liquid_inverse(const SegmentMeasure& m, cd t);

// Adaptive Gauss-Kronrod on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-11);

}  // namespace aztec
