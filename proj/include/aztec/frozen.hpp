#pragma once
#include <array>
#include <functional>
#include <vector>

#include "aztec/limitshape.hpp"

namespace aztec {

using Point2 = std::array<double, 2>;

struct CurveSample {
  double t;
  double pi, l;  // Pi_s(t) and its logarithmic derivative
  double chi, kappa;
};

double pi_s(const SegmentMeasure& m, double t);
double log_derivative(const SegmentMeasure& m, double t);

// Closed form at q = 1; for q != 1 the dual curve is dualized back with exact theta-derivatives.
CurveSample boundary_sample(const SegmentMeasure& m, double t, double q = 1.0);
Point2 boundary_point(const SegmentMeasure& m, double t, double q = 1.0);

Point2 dual_point(const SegmentMeasure& m, double theta, double q = 1.0);
// d/dtheta of the second coordinate of dual_point.
double dual_slope(const SegmentMeasure& m, double theta, double q = 1.0);

// Dual of a parametric plane curve by central differences.
Point2 dual_of_parametric(const std::function<Point2(double)>& curve, double t);

// Sampled curve pieces, clipped to [min a, max b] x [0, 1].
std::vector<std::vector<CurveSample>> trace_boundary(const SegmentMeasure& m, double q, int resolution);

std::vector<double> tangency_points_kappa0(const SegmentMeasure& m);

}  // namespace aztec
