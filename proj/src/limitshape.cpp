#include "aztec/limitshape.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "aztec/errors.hpp"

namespace aztec {

namespace {

constexpr double pi = std::numbers::pi;

bool on_support(const SegmentMeasure& m, cd t) {
  if (t.imag() != 0.0) return false;
  const double x = t.real();
  if (m.kind == SegmentMeasure::Kind::theta) return x >= 0 && x <= m.theta;
  for (int i = 0; i < m.s(); ++i)
    if (x >= m.a[i] && x <= m.b[i]) return true;
  return false;
}

// log(1 + h) without losing digits for small h
cd clog1p(cd h) {
  const double x = h.real(), y = h.imag();
  return {0.5 * std::log1p(2 * x + x * x + y * y), std::atan2(y, 1 + x)};
}

cd cexpm1(cd w) {
  const double a = w.real(), b = w.imag(), sb = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2 * sb * sb, std::exp(a) * std::sin(b)};
}

}  // namespace

SegmentMeasure SegmentMeasure::segments(const std::vector<std::pair<double, double>>& ab) {
  if (ab.empty()) throw ValidationError("segment measure needs at least one segment");
  SegmentMeasure m;
  double mass = 0;
  for (std::size_t i = 0; i < ab.size(); ++i) {
    if (!(ab[i].first < ab[i].second)) throw ValidationError("segment endpoints must satisfy a_i < b_i");
    if (i > 0 && !(ab[i - 1].second < ab[i].first)) throw ValidationError("segments must be disjoint and ordered");
    m.a.push_back(ab[i].first);
    m.b.push_back(ab[i].second);
    mass += ab[i].second - ab[i].first;
  }
  if (std::abs(mass - 1.0) > 1e-12) throw ValidationError("segment lengths must sum to 1");
  return m;
}

SegmentMeasure SegmentMeasure::single_theta(int theta) {
  if (theta < 2) throw ValidationError("theta must be an integer >= 2");
  SegmentMeasure m;
  m.kind = Kind::theta;
  m.theta = theta;
  return m;
}

DomainSpec discretize(const SegmentMeasure& m, int N) {
  if (N < 1) throw ValidationError("discretize: N >= 1");
  std::vector<long> omega;
  if (m.kind == SegmentMeasure::Kind::theta) {
    for (int i = 0; i < N; ++i) omega.push_back(1 + static_cast<long>(m.theta) * i);
    return DomainSpec::make(omega);
  }
  for (int s = 0; s < m.s(); ++s) {
    const double lo = m.a[s] * N, hi = m.b[s] * N;
    const long l = std::lround(lo), h = std::lround(hi);
    if (std::abs(lo - l) > 1e-9 || std::abs(hi - h) > 1e-9)
      throw ValidationError("discretize: segment endpoints times N must be integers");
    for (long p = l; p < h; ++p) omega.push_back(p + 1);
  }
  if (omega.front() != 1) throw ValidationError("discretize: the first segment must start at 0");
  return DomainSpec::make(omega);
}

SegmentMeasure empirical_measure(const DomainSpec& d) {
  std::vector<std::pair<double, double>> ab;
  const double n = d.N;
  long start = d.omega.front();
  for (std::size_t i = 1; i <= d.omega.size(); ++i) {
    if (i == d.omega.size() || d.omega[i] != d.omega[i - 1] + 1) {
      ab.push_back({(start - 1) / n, d.omega[i - 1] / n});
      if (i < d.omega.size()) start = d.omega[i];
    }
  }
  return SegmentMeasure::segments(ab);
}

double SegmentMeasure::lo() const { return kind == Kind::theta ? 0.0 : a.front(); }
double SegmentMeasure::hi() const { return kind == Kind::theta ? static_cast<double>(theta) : b.back(); }
double SegmentMeasure::mean() const { return moment(1); }

double SegmentMeasure::moment(int j) const {
  if (kind == Kind::theta) return std::pow(static_cast<double>(theta), j) / (j + 1);
  double s = 0;
  for (int i = 0; i < this->s(); ++i) s += (std::pow(b[i], j + 1) - std::pow(a[i], j + 1)) / (j + 1);
  return s;
}

cd stieltjes(const SegmentMeasure& m, cd t) {
  if (on_support(m, t)) throw ValidationError("stieltjes: t lies on the support");
  if (m.kind == SegmentMeasure::Kind::theta) return -std::log(1.0 - double(m.theta) / t) / double(m.theta);
  cd s = 0;
  for (int i = 0; i < m.s(); ++i) s += std::log(t - m.a[i]) - std::log(t - m.b[i]);
  return s;
}

cd stieltjes_prime(const SegmentMeasure& m, cd t) {
  if (on_support(m, t)) throw ValidationError("stieltjes: t lies on the support");
  if (m.kind == SegmentMeasure::Kind::theta) return -1.0 / (t * (t - double(m.theta)));
  cd s = 0;
  for (int i = 0; i < m.s(); ++i) s += 1.0 / (t - m.a[i]) - 1.0 / (t - m.b[i]);
  return s;
}

cd s_transform(const SegmentMeasure& m, cd z) {
  if (m.kind == SegmentMeasure::Kind::theta) return -clog1p(-double(m.theta) * z) / double(m.theta);
  cd s = 0;
  for (int i = 0; i < m.s(); ++i) s += clog1p(-m.a[i] * z) - clog1p(-m.b[i] * z);
  return s;
}

cd s_transform_prime(const SegmentMeasure& m, cd z) {
  if (m.kind == SegmentMeasure::Kind::theta) return 1.0 / (1.0 - double(m.theta) * z);
  cd s = 0;
  for (int i = 0; i < m.s(); ++i) s += -m.a[i] / (1.0 - m.a[i] * z) + m.b[i] / (1.0 - m.b[i] * z);
  return s;
}

cd s_inverse(const SegmentMeasure& m, cd w) {
  if (m.kind == SegmentMeasure::Kind::theta) {
    const double th = m.theta;
    return -cexpm1(-th * w) / th;
  }
  // Continue the root of S(z) = tau * w from z = 0 at tau = 0.
  const int steps = 16;
  cd z = 0;
  for (int k = 1; k <= steps; ++k) {
    const cd target = w * (double(k) / steps);
    for (int it = 0; it < 30; ++it) {
      const cd step = (s_transform(m, z) - target) / s_transform_prime(m, z);
      z -= step;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
    }
  }
  const cd res = s_transform(m, z) - w;
  if (!(std::abs(res) <= 1e-12 * (1.0 + std::abs(w))))
    throw NumericalError("S_inv branch tracking failed at w = (" + std::to_string(w.real()) + "," +
                         std::to_string(w.imag()) + "), residual " + std::to_string(std::abs(res)));
  return z;
}

cd s_inverse_log1p(const SegmentMeasure& m, cd h) { return s_inverse(m, clog1p(h)); }

cd s_inverse_log(const SegmentMeasure& m, cd u) { return s_inverse_log1p(m, u - 1.0); }

cd h_prime(const SegmentMeasure& m, cd u) {
  if (std::abs(u - 1.0) < 1e-3) {
    // Mean value over a small circle; h' is analytic around u = 1.
    const int k = 32;
    const double r = 2e-2;
    cd s = 0;
    for (int i = 0; i < k; ++i) s += h_prime(m, u + r * std::polar(1.0, 2 * pi * (i + 0.5) / k));
    return s / double(k);
  }
  return 1.0 / (u * s_inverse_log(m, u)) - 1.0 / (u - 1.0);
}

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::liquid: return "liquid";
    case Phase::frozen0: return "frozen0";
    case Phase::frozen1: return "frozen1";
  }
  return "?";
}

PolyC saddle_polynomial(const SegmentMeasure& m, double kappa, cd x, double q) {
  PolyC d(3);
  d << -1.0, 1.0 - q, q;
  PolyC p2 = (1.0 - kappa) * x * d;
  p2(1) += kappa * (1.0 + q);
  PolyC g;
  if (m.kind == SegmentMeasure::Kind::theta) {
    const int th = m.theta;
    PolyC zt = PolyC::Zero(th + 1);
    zt(th) = 1.0;
    g = poly_add<cd>(poly_mul<cd>(PolyC(p2 - double(th) * d), zt), PolyC(-p2));
  } else {
    PolyC ga = PolyC::Ones(1), gb = PolyC::Ones(1);
    for (int i = 0; i < m.s(); ++i) {
      ga = poly_mul<cd>(ga, PolyC(p2 - m.a[i] * d));
      gb = poly_mul<cd>(gb, PolyC(p2 - m.b[i] * d));
    }
    PolyC z1 = PolyC::Zero(2);
    z1(1) = 1.0;
    g = poly_add<cd>(ga, PolyC(-poly_mul<cd>(z1, gb)));
  }
  return poly_deflate(g, 1.0);
}

namespace {

// Clearing z^theta adds roots on the other branches of the theta-th root; keep those with z = exp St(t(z)).
RootsC on_branch(const SegmentMeasure& m, double kappa, cd x, double q, const RootsC& r) {
  if (m.kind != SegmentMeasure::Kind::theta) return r;
  std::vector<cd> keep;
  for (Eigen::Index k = 0; k < r.size(); ++k) {
    const cd z = r(k);
    const cd t = (1 - kappa) * x + kappa * z / (z - 1.0) - kappa * q * z / (1.0 + q * z);
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) continue;
    try {
      if (std::abs(std::exp(stieltjes(m, t)) - z) <= 1e-6 * (1 + std::abs(z))) keep.push_back(z);
    } catch (const ValidationError&) {
    }
  }
  RootsC out(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) out(static_cast<Eigen::Index>(k)) = keep[k];
  return out;
}

}  // namespace

DensityPoint density(const SegmentMeasure& m, double chi, double kappa, double q, const DensityOptions& opt) {
  if (!(kappa > 0 && kappa < 1)) throw ValidationError("density: kappa must lie in (0,1)");
  if (!(q > 0)) throw ValidationError("density: q must be positive");
  DensityPoint out{chi, kappa, chi / (1 - kappa), 0.0, 0.0, Phase::frozen0};
  const double x = out.x;
  const cd xd(x, opt.delta * (1 + std::abs(x)));
  const RootsC pert = on_branch(m, kappa, xd, q, poly_roots(saddle_polynomial(m, kappa, xd, q), opt.root_tol));
  Eigen::Index kz = 0;
  for (Eigen::Index k = 1; k < pert.size(); ++k)
    if (pert(k).imag() < pert(kz).imag()) kz = k;
  const cd zm = pert(kz);

  const PolyC pc = saddle_polynomial(m, kappa, cd(x, 0.0), q);
  const RootsC real_roots = on_branch(m, kappa, cd(x, 0.0), q, poly_roots_real(pc.real(), opt.root_tol));
  if (pert.size() == 0 || real_roots.size() == 0) {
    // the saddle equation degenerates at isolated points such as the tangency (1, 1/2) of the Aztec circle
    DensityPoint p = density(m, chi + 1e-9 * (1 + std::abs(chi)), kappa, q, opt);
    p.chi = chi;
    p.x = x;
    return p;
  }
  Eigen::Index kn = 0;
  for (Eigen::Index k = 1; k < real_roots.size(); ++k)
    if (std::abs(real_roots(k) - zm) < std::abs(real_roots(kn) - zm)) kn = k;
  cd zr = real_roots(kn);
  if (std::abs(zr.imag()) > 1e-9 * std::max(1.0, std::abs(zr))) {
    if (zr.imag() < 0) zr = std::conj(zr);
    const double d = std::arg(zr) / pi;
    if (d > opt.tol && d < 1 - opt.tol) {
      out.z_plus = zr;
      out.density = d;
      out.phase = Phase::liquid;
      return out;
    }
  }
  out.z_plus = std::conj(zm);
  const double raw = std::arg(out.z_plus) / pi;
  out.phase = raw > 0.5 ? Phase::frozen1 : Phase::frozen0;
  out.density = raw > 0.5 ? 1.0 : 0.0;
  return out;
}

bool is_liquid(const SegmentMeasure& m, double chi, double kappa, double q) {
  return density(m, chi, kappa, q).phase == Phase::liquid;
}

double phase_transition_chi(const SegmentMeasure& m, double kappa, double lo, double hi, double q) {
  const bool llo = is_liquid(m, lo, kappa, q);
  if (llo == is_liquid(m, hi, kappa, q)) throw ValidationError("phase_transition_chi: no transition in bracket");
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (is_liquid(m, mid, kappa, q) == llo ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

double moment_trapezoid(const SegmentMeasure& m, double kappa, int j, double q, int nodes, double radius) {
  cd s = 0;
  for (int k = 0; k < nodes; ++k) {
    const cd e = std::polar(1.0, 2 * pi * (k + 0.5) / nodes);
    const cd h = radius * e, z = 1.0 + h;
    const cd w = s_inverse_log1p(m, h);
    const cd inner = (kappa * q * z / (1.0 + q * z) + 1.0 / w - kappa * z / h) / (1 - kappa);
    s += std::pow(inner, j + 1) / z * h;
  }
  return (s / double(nodes)).real() / (j + 1);
}

}  // namespace

double limit_moment(const SegmentMeasure& m, double kappa, int j, double q, int nodes, double radius) {
  if (!(kappa > 0 && kappa < 1)) throw ValidationError("limit_moment: kappa must lie in (0,1)");
  if (j < 0) throw ValidationError("limit_moment: j must be non-negative");
  if (nodes < 4096) throw ValidationError("limit_moment: at least 4096 nodes");
  const double fine = moment_trapezoid(m, kappa, j, q, nodes, radius);
  const double coarse = moment_trapezoid(m, kappa, j, q, nodes / 2, radius);
  if (std::abs(fine - coarse) > 1e-8 * std::max(1.0, std::abs(fine)))
    throw NumericalError("limit_moment: resolutions disagree by " + std::to_string(std::abs(fine - coarse)));
  return fine;
}

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
constexpr double gk_x[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double gk_wk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                             0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                             0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                             0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double gk_wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                             0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

void gk15(const std::function<double(double)>& f, double a, double b, double& kr, double& err) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = gk_wk[7] * fc, g = gk_wg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double f1 = f(c - h * gk_x[i]), f2 = f(c + h * gk_x[i]);
    k += gk_wk[i] * (f1 + f2);
    if (i % 2 == 1) g += gk_wg[i / 2] * (f1 + f2);
  }
  kr = k * h;
  err = std::abs((k - g) * h);
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth) {
  double kr, err;
  gk15(f, a, b, kr, err);
  if (err <= tol || depth >= 40) return kr;
  const double c = 0.5 * (a + b);
  return adapt(f, a, c, 0.5 * tol, depth + 1) + adapt(f, c, b, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (b <= a) return 0.0;
  return adapt(f, a, b, tol, 0);
}

double density_moment(const SegmentMeasure& m, double kappa, int j, double q) {
  const double x0 = (m.lo() - 1.0) / (1 - kappa), x1 = (m.hi() + 1.0) / (1 - kappa);
  return integrate([&](double x) { return std::pow(x, j) * density(m, x * (1 - kappa), kappa, q).density; }, x0, x1,
                   1e-10);
}

double limit_height(const SegmentMeasure& m, double nu_ratio, double chi, double kappa, double q) {
  if (!(kappa > 0 && kappa < 1)) throw ValidationError("limit_height: kappa must lie in (0,1)");
  const double x0 = chi / (1 - kappa);
  const double x1 = (m.hi() + 1.0) / (1 - kappa);
  const double lo = std::max(x0, (m.lo() - 1.0) / (1 - kappa));
  const double tail = integrate([&](double x) { return density(m, x * (1 - kappa), kappa, q).density; }, lo, x1, 1e-10);
  return 2 * (2 + nu_ratio - kappa - chi - 2 * (1 - kappa) * tail);
}

cd liquid_equation(const SegmentMeasure& m, double chi, double kappa, cd t) {
  const cd e = std::exp(-stieltjes(m, t));
  return chi - t - kappa * 2.0 * e / (e * e - 1.0);
}

LiquidPoint liquid_map(const SegmentMeasure& m, double chi, double kappa) {
  const DensityPoint dp = density(m, chi, kappa, 1.0);
  if (dp.phase != Phase::liquid) throw ValidationError("liquid_map: point is not in the liquid region");
  const cd z = std::conj(dp.z_plus);
  cd t = (chi * z * z + 2.0 * kappa * z - chi) / (z * z - 1.0);
  for (int it = 0; it < 60; ++it) {
    const cd e = std::exp(-stieltjes(m, t));
    const cd f = chi - t - kappa * 2.0 * e / (e * e - 1.0);
    const cd fp = -1.0 - 2.0 * kappa * stieltjes_prime(m, t) * e * (e * e + 1.0) / ((e * e - 1.0) * (e * e - 1.0));
    const cd step = f / fp;
    t -= step;
    if (std::abs(step) <= 1e-16 * (1 + std::abs(t))) break;
  }
  if (!(t.imag() > 0)) throw NumericalError("liquid_map: Newton left the upper half-plane");
  if (!(std::abs(liquid_equation(m, chi, kappa, t)) <= 1e-10 * (1 + std::abs(t))))
    throw NumericalError("liquid_map: Newton did not converge");
  auto [c, k] = liquid_inverse(m, t);
  return {t, c, k};
}

std::pair<double, double> liquid_inverse(const SegmentMeasure& m, cd t) {
  if (!(t.imag() > 0)) throw ValidationError("liquid_inverse: t must lie in the upper half-plane");
  const cd tb = std::conj(t);
  const cd z = std::exp(stieltjes(m, t)), w = std::exp(stieltjes(m, tb));
  const cd den = (z - w) * (1.0 + z * w);
  const cd kappa = -(t - tb) * (z * z - 1.0) * (w * w - 1.0) / (2.0 * den);
  const cd chi = t + z * (w * w - 1.0) * (t - tb) / den;
  const double scale = 1 + std::abs(t);
  if (std::abs(kappa.imag()) > 1e-9 * scale || std::abs(chi.imag()) > 1e-9 * scale)
    throw NumericalError("liquid_inverse: result is not real");
  return {chi.real(), kappa.real()};
}

}  // namespace aztec
