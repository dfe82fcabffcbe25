#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "conegeo/geometry.hpp"
#include "conegeo/numerics.hpp"

using namespace conegeo;
using Catch::Approx;

namespace {

ConeMetric round_cone(int n) { return ConeMetric{n, CrossSection::round_sphere(n - 1)}; }

HornMetric make_horn(int n, double b, double scal_min = -1.0) {
  auto cross = CrossSection::round_sphere(n - 1);
  if (scal_min >= 0.0) cross.scal_min = scal_min;
  return HornMetric{n, cross, b};
}

}  // namespace

TEST_CASE("cone scalar curvature") {
  // cone over the unit round S^{n-1} is flat R^n
  auto c3 = round_cone(3);
  CHECK(cone_scalar_curvature(c3, 0.5) == Approx(0.0).margin(1e-15));
  auto c4 = round_cone(4);
  CHECK(cone_scalar_curvature(c4, 1.7) == Approx(0.0).margin(1e-15));

  auto c = c3;
  c.cross.scal_min = 4.0;
  CHECK(cone_scalar_curvature(c, 1.0) == Approx(2.0));
  CHECK_THROWS(cone_scalar_curvature(c3, 0.0));
  CHECK_THROWS(cone_scalar_curvature(c3, -1.0));
}

TEST_CASE("horn scalar curvature") {
  // b = 1 recovers the cone for all r
  auto horn1 = make_horn(3, 1.0, 5.0);
  auto cone = ConeMetric{3, horn1.cross};
  for (double r : {0.1, 0.5, 1.0, 3.0})
    CHECK(horn_scalar_curvature(horn1, r) == cone_scalar_curvature(cone, r));

  // n b = 2: second term vanishes
  auto horn23 = make_horn(3, 2.0 / 3.0, 2.0);
  for (double r : {0.2, 0.7})
    CHECK(horn_scalar_curvature(horn23, r) ==
          Approx(2.0 / std::pow(r, 4.0 / 3.0)).epsilon(1e-14));

  auto horn2 = make_horn(3, 2.0, 2.0);
  CHECK(horn_scalar_curvature(horn2, 1.0) == Approx(-14.0));
  CHECK_THROWS(horn_scalar_curvature(horn2, 0.0));
}

TEST_CASE("mean curvature") {
  CHECK(cone_mean_curvature(round_cone(3), 1.0) == Approx(2.0));
  CHECK(cone_mean_curvature(round_cone(7), 2.0) == Approx(3.0));
  CHECK(horn_mean_curvature(make_horn(3, 1.5), 0.1) == Approx(30.0));
  CHECK(horn_mean_curvature(make_horn(4, 2.0), 1.0) == Approx(6.0));
  // b = 1 horn equals the cone bit-for-bit
  for (double r : {0.01, 0.3, 2.0})
    CHECK(horn_mean_curvature(make_horn(5, 1.0), r) ==
          cone_mean_curvature(round_cone(5), r));
  CHECK_THROWS(horn_mean_curvature(make_horn(3, 1.5), -0.5));
}

TEST_CASE("horn area") {
  auto horn = make_horn(3, 1.0);
  CHECK(horn_area(horn, 2.0) == Approx(16.0 * std::numbers::pi).epsilon(1e-14));
  CHECK(horn_area(horn, 1.0) == Approx(horn.cross.volume));
  auto horn15 = make_horn(3, 1.5);
  CHECK(horn_area(horn15, 0.1) ==
        Approx(std::pow(0.1, 3.0) * 4.0 * std::numbers::pi).epsilon(1e-13));
}

TEST_CASE("d/dr log Area equals mean curvature") {
  for (double b : {1.0, 1.5, 2.0, 2.0 / 3.0}) {
    auto horn = make_horn(3, b);
    for (double r : {0.05, 0.4, 1.3}) {
      const double dlog = central_difference(
          [&](double rr) { return std::log(horn_area(horn, rr)); }, r, 1e-4 * r);
      CHECK(dlog == Approx(horn_mean_curvature(horn, r)).epsilon(1e-8));
    }
  }
}

TEST_CASE("scalar curvature scaling identities") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> rdist(0.05, 5.0);
  auto cone = round_cone(3);
  cone.cross.scal_min = 4.0;
  const double ref = cone_scalar_curvature(cone, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double r = rdist(rng);
    CHECK(cone_scalar_curvature(cone, r) * r * r == Approx(ref).epsilon(1e-12));
  }
  auto horn = make_horn(4, 1.7, 3.0);
  for (int i = 0; i < 20; ++i) {
    const double r = rdist(rng);
    const double lhs =
        horn_scalar_curvature(horn, r) * std::pow(r, 2.0 * horn.b) - horn.cross.scal_min;
    const double rhs = -horn.b * (horn.n - 1.0) * (horn.n * horn.b - 2.0) *
                       std::pow(r, 2.0 * horn.b - 2.0);
    CHECK(lhs == Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("cone sectional curvatures") {
  auto flat = round_cone(3);
  auto [rad0, tan0] = cone_sectional_curvatures(flat, 0.7);
  CHECK(rad0 == 0.0);
  CHECK(tan0 == Approx(0.0).margin(1e-15));

  auto c = flat;
  c.cross.sectional_constant = 4.0;
  auto [rad, tan] = cone_sectional_curvatures(c, 1.0);
  CHECK(rad == 0.0);
  CHECK(tan == Approx(3.0));

  c.cross.sectional_constant.reset();
  CHECK_THROWS(cone_sectional_curvatures(c, 1.0));
}

TEST_CASE("perturbation decay checks") {
  PerturbationBound bound;
  bound.alpha = 0.5;
  bound.constants = {1.5, 1.5, 1.5};
  std::vector<double> radii;
  for (int i = 1; i <= 30; ++i) radii.push_back(0.9 * i / 30.0);

  // h == 0 passes with zero ratios
  std::array<RealFn, 3> zero = {[](double) { return 0.0; },
                                [](double) { return 0.0; },
                                [](double) { return 0.0; }};
  for (const auto& chk : verify_perturbation_decay(zero, bound, radii)) {
    CHECK(chk.pass);
    CHECK(chk.max_ratio == 0.0);
  }

  // |h| = r^alpha exactly: k = 0 ratio is 1
  std::array<RealFn, 3> exact = {
      [&](double r) { return std::pow(r, bound.alpha); },
      [&](double r) { return std::pow(r, bound.alpha - 1.0); },
      [&](double r) { return std::pow(r, bound.alpha - 2.0); }};
  auto rep = verify_perturbation_decay(exact, bound, radii);
  CHECK(rep[0].max_ratio == Approx(1.0).margin(1e-8));
  for (const auto& chk : rep) CHECK(chk.pass);

  // slower decay r^{alpha/2} fails for small r
  std::array<RealFn, 3> slow = {
      [&](double r) { return std::pow(r, 0.5 * bound.alpha); },
      [](double) { return 0.0; },
      [](double) { return 0.0; }};
  std::vector<double> small_radii = {1e-8, 1e-6, 1e-4};
  auto bad = verify_perturbation_decay(slow, bound, small_radii);
  CHECK_FALSE(bad[0].pass);

  CHECK_THROWS(verify_perturbation_decay(zero, bound, {}));
  CHECK_THROWS(verify_perturbation_decay(zero, bound, {1.5}));
}

TEST_CASE("flat chart has vanishing partials") {
  MetricChart chart;
  chart.n = 3;
  chart.tau = 1.0;
  chart.components = [](const std::vector<double>&) {
    return std::vector<std::vector<double>>{
        {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
  };
  for (int a = 0; a < 3; ++a) {
    std::vector<double> dir(3, 0.0);
    dir[a] = 1.0;
    const double d = central_difference(
        [&](const std::vector<double>& x) { return chart.at(x)[0][0]; },
        {1.0, 2.0, -0.5}, dir, 1e-3);
    CHECK(d == Approx(0.0).margin(1e-12));
  }
  CHECK(chart_decay_plausible(chart, {10.0, 100.0, 1000.0}, 1.0));
}
