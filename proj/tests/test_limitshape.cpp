#include "doctest.h"

#include <cmath>
#include <numbers>

#include "aztec/limitshape.hpp"
#include "aztec/rng.hpp"

using namespace aztec;
using std::numbers::pi;

namespace {

const SegmentMeasure az = SegmentMeasure::aztec();
const SegmentMeasure two = SegmentMeasure::segments({{0, 0.5}, {1.5, 2}});

cd pi_s(const SegmentMeasure& m, cd t) {
  cd p = 1;
  for (int i = 0; i < m.s(); ++i) p *= (t - m.a[i]) / (t - m.b[i]);
  return p;
}

// circle closed form for the Aztec diamond
double arctic_density(double chi, double kappa) {
  const cd d = (2 * chi - 1) * (2 * chi - 1) + (2 * kappa - 1) * (2 * kappa - 1) - 1.0;
  const cd v = (1 - 2 * kappa - std::sqrt(d)) / (2 * (chi - 1));
  return std::arg(v) / pi;
}

}  // namespace

TEST_CASE("measure construction") {
  CHECK_THROWS_AS(SegmentMeasure::segments({{0, 0.5}}), ValidationError);
  CHECK_THROWS_AS(SegmentMeasure::segments({{0, 0.5}, {0.4, 0.9}}), ValidationError);
  CHECK_THROWS_AS(SegmentMeasure::single_theta(1), ValidationError);
  CHECK(two.mean() == doctest::Approx(1.0));
  CHECK(SegmentMeasure::single_theta(4).moment(2) == doctest::Approx(16.0 / 3));
}

TEST_CASE("discretization") {
  const DomainSpec d = discretize(two, 10);
  CHECK(d.omega == std::vector<long>{1, 2, 3, 4, 5, 16, 17, 18, 19, 20});
  CHECK(discretize(SegmentMeasure::single_theta(3), 4).omega == std::vector<long>{1, 4, 7, 10});
  CHECK_THROWS_AS(discretize(two, 3), ValidationError);
  const SegmentMeasure back = empirical_measure(d);
  CHECK(back.s() == 2);
  CHECK(back.b[0] == doctest::Approx(0.5));
  CHECK(back.a[1] == doctest::Approx(1.5));
}

TEST_CASE("stieltjes and S transforms") {
  CHECK(std::abs(stieltjes(az, 2.0) - std::log(2.0)) < 1e-15);
  CHECK(std::abs(stieltjes(SegmentMeasure::single_theta(2), 4.0) - std::log(2.0) / 2) < 1e-15);
  for (const auto& m : {az, two, SegmentMeasure::single_theta(3)}) {
    const cd t = 1e6;
    CHECK(std::abs(stieltjes(m, t) * t - 1.0) < 1e-5);
  }
  CHECK_THROWS_AS(stieltjes(az, 0.5), ValidationError);

  for (const auto& m : {az, two, SegmentMeasure::single_theta(2), SegmentMeasure::single_theta(4)}) {
    for (double r : {1e-3, 1e-2, 5e-2})
      for (int k = 0; k < 16; ++k) {
        const cd w = r * std::polar(1.0, 2 * pi * k / 16);
        CHECK(std::abs(s_transform(m, s_inverse(m, w)) - w) < 1e-10);
      }
    CHECK(std::abs(s_inverse(m, 0.0)) < 1e-14);
    // derivative against a central difference
    const cd z(0.05, 0.02), h = 1e-6;
    const cd fd = (s_transform(m, z + h) - s_transform(m, z - h)) / (2.0 * h);
    CHECK(std::abs(fd - s_transform_prime(m, z)) < 1e-7);
  }
}

TEST_CASE("h_prime") {
  for (const cd u : {cd(1.01, 0), cd(0.99, 0.01), cd(1.0, 0), cd(1.2, -0.1)}) {
    CHECK(std::abs(h_prime(az, u)) < 1e-10);
    CHECK(std::abs(h_prime(SegmentMeasure::single_theta(2), u) - 1.0 / (1.0 + u)) < 1e-9);
  }
  CHECK(std::abs(h_prime(SegmentMeasure::single_theta(2), 1.0) - 0.5) < 1e-9);
  // removable point: the value at 1 continues the nearby values
  const cd h1 = h_prime(two, 1.0), h2 = h_prime(two, 1.0 + 2e-3);
  CHECK(std::isfinite(h1.real()));
  CHECK(std::abs(h1 - h2) < 1e-2);
}

TEST_CASE("density examples") {
  DensityPoint p = density(az, 0.5, 0.5);
  CHECK(p.density == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(p.z_plus - cd(0, 1)) < 1e-9);
  CHECK(p.phase == Phase::liquid);
  p = density(az, 0.05, 0.05);
  CHECK(p.density == 1.0);
  CHECK(p.phase == Phase::frozen1);
  p = density(az, 0.9, 0.5);
  CHECK(p.density == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(p.z_plus - cd(0, 3)) < 1e-8);
  CHECK(density(az, 0.95, 0.95).phase == Phase::frozen0);
  CHECK(density(az, 0.05, 0.95).phase == Phase::frozen0);
  CHECK(density(az, 0.95, 0.05).phase == Phase::frozen1);
  CHECK_THROWS_AS(density(az, 0.5, 1.0), ValidationError);
  CHECK_THROWS_AS(density(az, 0.5, 0.5, 0.0), ValidationError);
}

TEST_CASE("density matches the circle closed form on a grid") {
  int liquid = 0;
  for (int a = 0; a < 200; ++a)
    for (int b = 0; b < 200; ++b) {
      const double chi = (a + 0.5) / 200, kappa = (b + 0.5) / 200;
      const double d = density(az, chi, kappa).density;
      CHECK(std::abs(d - arctic_density(chi, kappa)) < 1e-9);
      const bool inside = (2 * chi - 1) * (2 * chi - 1) + (2 * kappa - 1) * (2 * kappa - 1) < 1;
      CHECK(is_liquid(az, chi, kappa) == inside);
      liquid += inside;
    }
  CHECK(liquid > 0);
}

TEST_CASE("half diamond closed form") {
  const SegmentMeasure th2 = SegmentMeasure::single_theta(2);
  for (int a = 1; a < 40; ++a)
    for (int b = 1; b < 40; ++b) {
      const double chi = 2.0 * a / 40, kappa = 1.0 * b / 40;
      const cd s = std::sqrt(cd(kappa * kappa + chi * (chi - 2)));
      const double closed = std::arg((-kappa - s) / (chi - 2)) / pi;
      const double d = density(th2, chi, kappa).density;
      if (std::abs(kappa * kappa + chi * (chi - 2)) > 1e-9) CHECK(std::abs(d - closed) < 1e-9);
    }
}

TEST_CASE("saddle roots solve the exponential equation") {
  for (double q : {1.0, 0.5, 2.0}) {
    for (const auto& [chi, kappa] : {std::pair{0.5, 0.5}, std::pair{0.3, 0.4}, std::pair{0.7, 0.7}}) {
      const DensityPoint p = density(az, chi, kappa, q);
      if (p.phase != Phase::liquid) continue;
      const cd z = p.z_plus;
      const cd t = (1 - kappa) * p.x + kappa * z / (z - 1.0) - kappa * q * z / (1.0 + q * z);
      CHECK(std::abs(pi_s(az, t) - z) < 1e-9);
    }
  }
  // two-segment data, q = 1 form of the substitution
  for (double chi : {0.6, 0.9, 1.1}) {
    const DensityPoint p = density(two, chi, 0.3);
    if (p.phase != Phase::liquid) continue;
    const cd z = p.z_plus;
    const cd t = (1 - 0.3) * p.x + 2 * 0.3 * z / (z * z - 1.0);
    CHECK(std::abs(pi_s(two, t) - z) < 1e-9);
  }
  // q -> 1 continuity of the general path
  for (double chi : {0.2, 0.5, 0.8}) {
    const double d1 = density(az, chi, 0.45, 1.0).density;
    const double d2 = density(az, chi, 0.45, 1.0 + 1e-13).density;
    CHECK(std::abs(d1 - d2) < 1e-10);
  }
}

TEST_CASE("limit moments") {
  for (const auto& m : {az, two, SegmentMeasure::single_theta(2)})
    for (double k : {0.25, 0.5}) CHECK(limit_moment(m, k, 0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(limit_moment(az, 0.5, 1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(limit_moment(az, 1e-6, 1) == doctest::Approx(0.5).epsilon(1e-5));
  for (double k : {0.1, 0.3, 0.7}) CHECK(limit_moment(az, k, 1) == doctest::Approx(1 / (2 * (1 - k))).epsilon(1e-10));
  CHECK_THROWS_AS(limit_moment(az, 0.5, 1, 1.0, 1000), ValidationError);
}

TEST_CASE("density moments agree with contour moments") {
  for (const auto& m : {az, two})
    for (double k : {0.25, 0.5, 0.75})
      for (int j = 0; j <= 4; ++j) {
        const double a = density_moment(m, k, j), b = limit_moment(m, k, j);
        CHECK(std::abs(a - b) < 1e-6 * std::max(1.0, std::abs(b)));
      }
}

TEST_CASE("limit height") {
  CHECK(limit_height(az, 0, 0.5, 0.5) == doctest::Approx(1.0).epsilon(1e-8));
  for (double k : {0.2, 0.5, 0.8}) {
    CHECK(limit_height(az, 0, 1.0, k) == doctest::Approx(2 * (1 - k)).epsilon(1e-8));
    // left edge: everything lies to the right
    CHECK(limit_height(az, 0, 0.0, k) == doctest::Approx(2 * (2 - k - 2 * (1 - k))).epsilon(1e-8));
  }
}

TEST_CASE("liquid map round trip") {
  for (const auto& m : {az, two}) {
    RngStream g(17, m.s());
    int done = 0;
    while (done < 100) {
      const double chi = m.lo() + (m.hi() - m.lo()) * g.uniform(), kappa = g.uniform();
      if (kappa <= 0 || kappa >= 1 || !is_liquid(m, chi, kappa)) continue;
      const LiquidPoint lp = liquid_map(m, chi, kappa);
      CHECK(lp.t.imag() > 0);
      CHECK(std::abs(liquid_equation(m, chi, kappa, lp.t)) < 1e-10 * (1 + std::abs(lp.t)));
      CHECK(std::abs(lp.chi_l - chi) < 1e-9);
      CHECK(std::abs(lp.kappa_l - kappa) < 1e-9);
      ++done;
    }
  }
  CHECK_THROWS_AS(liquid_map(az, 0.02, 0.02), ValidationError);
}

TEST_CASE("liquid inverse") {
  auto [c, k] = liquid_inverse(az, cd(0, 1e3));
  CHECK(std::abs(c - 0.5) < 1e-2);
  CHECK(std::abs(k - 1) < 1e-2);
  CHECK_THROWS_AS(liquid_inverse(az, cd(0.3, 0)), ValidationError);
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 100; ++b) {
      const cd t(-3 + 6.0 * b / 99, 0.01 + 0.5 * a);
      auto [cc, kk] = liquid_inverse(two, t);
      CHECK(kk > 0);
      CHECK(kk < 1);
      // and liquid_map recovers t
      const LiquidPoint lp = liquid_map(two, cc, kk);
      CHECK(std::abs(lp.t - t) < 1e-9 * (1 + std::abs(t)));
    }
}
