#include "aztec/frozen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aztec/errors.hpp"

namespace aztec {

namespace {

void require_segments(const SegmentMeasure& m) {
  if (m.kind != SegmentMeasure::Kind::segments) throw ValidationError("frozen curve needs a multi-segment measure");
}

bool near_pole(const SegmentMeasure& m, double t, double rel) {
  for (int i = 0; i < m.s(); ++i)
    if (std::abs(t - m.a[i]) < rel * (1 + std::abs(t)) || std::abs(t - m.b[i]) < rel * (1 + std::abs(t))) return true;
  return false;
}

// Pi as a function of theta = 1/t, and its logarithmic theta-derivative.
double pi_theta(const SegmentMeasure& m, double th, double& dlog) {
  double p = 1;
  dlog = 0;
  for (int i = 0; i < m.s(); ++i) {
    p *= (1 - m.a[i] * th) / (1 - m.b[i] * th);
    dlog += -m.a[i] / (1 - m.a[i] * th) + m.b[i] / (1 - m.b[i] * th);
  }
  return p;
}

}  // namespace

double pi_s(const SegmentMeasure& m, double t) {
  require_segments(m);
  double p = 1;
  for (int i = 0; i < m.s(); ++i) p *= (t - m.a[i]) / (t - m.b[i]);
  return p;
}

double log_derivative(const SegmentMeasure& m, double t) {
  require_segments(m);
  double l = 0;
  for (int i = 0; i < m.s(); ++i) l += 1 / (t - m.a[i]) - 1 / (t - m.b[i]);
  return l;
}

CurveSample boundary_sample(const SegmentMeasure& m, double t, double q) {
  require_segments(m);
  if (!(q > 0)) throw ValidationError("q must be positive");
  for (int i = 0; i < m.s(); ++i)
    if (t == m.a[i] || t == m.b[i]) throw ValidationError("boundary_point: t is a pole of Pi");
  CurveSample c{t, pi_s(m, t), log_derivative(m, t), 0, 0};
  if (!(std::abs(c.l) > 1e-12)) throw ValidationError("boundary_point: critical parameter");
  if (q == 1.0) {
    const double p2 = c.pi * c.pi;
    c.chi = (p2 * c.l * t + c.l * t + p2 - 1) / ((p2 + 1) * c.l);
    c.kappa = -(p2 - 1) * (p2 - 1) / (2 * (p2 + 1) * c.pi * c.l);
    return c;
  }
  if (t == 0) throw ValidationError("boundary_point: t = 0 has no dual parameter");
  const double th = 1 / t;
  const double y = dual_point(m, th, q)[1], yp = dual_slope(m, th, q);
  const double den = y - th * yp;
  if (den == 0) throw NumericalError("boundary_point: degenerate dual tangent");
  c.chi = -yp / den;
  c.kappa = 1 / den;
  return c;
}

Point2 boundary_point(const SegmentMeasure& m, double t, double q) {
  const CurveSample c = boundary_sample(m, t, q);
  return {c.chi, c.kappa};
}

Point2 dual_point(const SegmentMeasure& m, double th, double q) {
  require_segments(m);
  if (th == 0) return {0.0, 1.0};
  double dl;
  const double p = pi_theta(m, th, dl);
  if (!std::isfinite(p)) throw ValidationError("dual_point: theta is a pole");
  const double g = (p - 1) * (q * p + 1);
  if (g == 0) throw ValidationError("dual_point: vanishing denominator");
  return {th, (1 + q) * th * p / g};
}

double dual_slope(const SegmentMeasure& m, double th, double q) {
  require_segments(m);
  double dl;
  const double p = pi_theta(m, th, dl);
  const double dp = p * dl;
  const double g = q * p * p + (1 - q) * p - 1;
  const double gp = 2 * q * p + 1 - q;
  return (1 + q) * ((p + th * dp) / g - th * p * gp * dp / (g * g));
}

Point2 dual_of_parametric(const std::function<Point2(double)>& curve, double t) {
  const double h = 1e-6 * (1 + std::abs(t));
  const Point2 c = curve(t), f = curve(t + h), b = curve(t - h);
  const double xp = (f[0] - b[0]) / (2 * h), yp = (f[1] - b[1]) / (2 * h);
  const double den = c[0] * yp - c[1] * xp;
  if (!(std::abs(den) > 1e-12 * (std::abs(c[0] * yp) + std::abs(c[1] * xp))))
    throw NumericalError("dual_of_parametric: vanishing denominator");
  return {yp / den, -xp / den};
}

namespace {

// Tangency with kappa = 1 at t = infinity; the first-order expansion of the dual curve at theta = 0 gives chi.
Point2 point_at_infinity(const SegmentMeasure& m, double q) { return {m.mean() + q / (1 + q) - 0.5, 1.0}; }

}  // namespace

std::vector<std::vector<CurveSample>> trace_boundary(const SegmentMeasure& m, double q, int resolution) {
  require_segments(m);
  if (resolution < 100) throw ValidationError("trace_boundary: resolution must be at least 100");
  const double xlo = m.lo(), xhi = m.hi(), eps = 1e-9;
  const Point2 inf = point_at_infinity(m, q);
  const CurveSample at_inf{std::numeric_limits<double>::infinity(), 1.0, 0.0, inf[0], std::min(inf[1], 1.0)};

  std::vector<std::vector<CurveSample>> pieces(1);
  auto close_piece = [&] {
    if (!pieces.back().empty()) pieces.emplace_back();
  };
  pieces.back().push_back(at_inf);
  for (int k = 1; k < resolution; ++k) {
    const double u = -1 + 2.0 * k / resolution;
    const double t = u / (1 - std::abs(u));
    if (near_pole(m, t, 1e-6) || (q != 1.0 && std::abs(t) < 1e-6)) continue;
    CurveSample c;
    try {
      c = boundary_sample(m, t, q);
    } catch (const std::exception&) {
      continue;
    }
    const bool inside = std::isfinite(c.chi) && std::isfinite(c.kappa) && c.chi >= xlo - eps && c.chi <= xhi + eps &&
                        c.kappa >= -eps && c.kappa <= 1 + eps;
    if (!inside) {
      close_piece();
      continue;
    }
    c.chi = std::clamp(c.chi, xlo, xhi);
    c.kappa = std::clamp(c.kappa, 0.0, 1.0);
    auto& cur = pieces.back();
    if (!cur.empty() && std::hypot(cur.back().chi - c.chi, cur.back().kappa - c.kappa) > 0.25) close_piece();
    pieces.back().push_back(c);
  }
  auto& last = pieces.back();
  if (!last.empty() && std::hypot(last.back().chi - at_inf.chi, last.back().kappa - at_inf.kappa) <= 0.25)
    last.push_back(at_inf);
  if (pieces.back().empty()) pieces.pop_back();
  return pieces;
}

std::vector<double> tangency_points_kappa0(const SegmentMeasure& m) {
  require_segments(m);
  Eigen::VectorXd pa = Eigen::VectorXd::Ones(1), pb = Eigen::VectorXd::Ones(1);
  for (int i = 0; i < m.s(); ++i) {
    Eigen::VectorXd fa(2), fb(2);
    fa << -m.a[i], 1;
    fb << -m.b[i], 1;
    pa = poly_mul<double>(pa, fa);
    pb = poly_mul<double>(pb, fb);
  }
  std::vector<double> out;
  for (double sign : {-1.0, 1.0}) {
    const Eigen::VectorXd p = poly_trim<double>(poly_add<double>(pa, Eigen::VectorXd(sign * pb)), 1e-13);
    const RootsC r = poly_roots_real(p, 1e-10);
    const Eigen::VectorXd dp = poly_derivative<double>(p);
    for (Eigen::Index k = 0; k < r.size(); ++k) {
      if (std::abs(r(k).imag()) > 1e-8 * (1 + std::abs(r(k)))) continue;
      double x = r(k).real();
      for (int it = 0; it < 5; ++it) {
        const double d = poly_eval(dp, x);
        if (d == 0) break;
        x -= poly_eval(p, x) / d;
      }
      out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace aztec
