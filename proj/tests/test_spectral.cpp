#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "conegeo/spectral.hpp"

using namespace conegeo;
using Catch::Approx;

TEST_CASE("sphere_spectrum") {
  const auto s = sphere_spectrum(3, 2);
  CHECK(s.eigenvalues == std::vector<double>{-3, -2, -1, 1, 2, 3});
  const auto s4 = sphere_spectrum(4, 0);
  CHECK(s4.eigenvalues == std::vector<double>{-1.5, 1.5});
  CHECK_THROWS(sphere_spectrum(2, 1));

  // symmetric under negation
  const auto flipped = spectrum_flip(s);
  CHECK(flipped.eigenvalues == s.eigenvalues);
}

TEST_CASE("nu_exponent") {
  CHECK(nu_exponent(1.0, 3) == Approx(-2.0));
  CHECK(nu_exponent(-1.0, 3) == Approx(0.0));
  CHECK(nu_exponent(-2.0, 5) == Approx(0.0));
}

TEST_CASE("nu pairing identity") {
  for (int n : {3, 4, 5, 6, 7})
    for (double lam : {-3.7, -1.0, 0.0, 0.25, 2.0, 11.5})
      CHECK(nu_exponent(lam, n) + nu_exponent(-lam, n) == Approx(1.0 - n));
}

TEST_CASE("criticality at the cone") {
  const auto s = sphere_spectrum(3, 5);
  CHECK(is_critical_at_cone(0.0, s, 3));   // lambda = -1
  CHECK(is_critical_at_cone(-2.0, s, 3));  // lambda = 1
  CHECK_FALSE(is_critical_at_cone(-1.0, s, 3));
  CHECK_THROWS(is_critical_at_cone(0.0, DiracSpectrum{}, 3));
}

TEST_CASE("criticality at infinity") {
  CHECK(is_critical_at_infinity(0.0, 3));
  CHECK(is_critical_at_infinity(5.0, 3));
  CHECK_FALSE(is_critical_at_infinity(-1.0, 3));
  CHECK(is_critical_at_infinity(-2.0, 3));  // 1 - n - k at k = 0
  CHECK(is_critical_at_infinity(-7.0, 4));
  CHECK_FALSE(is_critical_at_infinity(0.5, 3));
}

TEST_CASE("round sphere: cone and infinity critical sets coincide") {
  for (int n = 3; n <= 7; ++n) {
    const auto s = sphere_spectrum(n, 20);
    for (double delta = -10.0; delta <= 10.0 + 1e-12; delta += 0.25)
      CHECK(is_critical_at_cone(delta, s, n, 1e-9) ==
            is_critical_at_infinity(delta, n, 1e-9));
  }
}

TEST_CASE("friedrich bound") {
  CHECK(friedrich_bound(3, 2.0) == Approx(1.0));
  CHECK(friedrich_bound(4, 6.0) == Approx(1.5));
  CHECK_THROWS(friedrich_bound(3, -1.0));

  const auto s = sphere_spectrum(3, 3);
  auto rep = check_friedrich(s, 3, 2.0);
  CHECK(rep.pass);
  CHECK(rep.equality_attained);
  CHECK(rep.model_bound_engaged);

  auto bad = DiracSpectrum::from_eigenvalues({-1.0, 0.5, 1.0});
  auto rep2 = check_friedrich(bad, 3, 2.0);
  CHECK_FALSE(rep2.pass);
  CHECK(rep2.violations == std::vector<double>{0.5});
}

TEST_CASE("delta_zero") {
  CHECK(delta_zero(sphere_spectrum(3, 4), 3) == Approx(0.0));
  CHECK(delta_zero(DiracSpectrum::from_eigenvalues({-1.5, 1.5}), 3) ==
        Approx(0.5));
  CHECK_THROWS(delta_zero(DiracSpectrum::from_eigenvalues({1.0, 2.0}), 3));
}

TEST_CASE("delta_zero nonnegative for admissible spectra") {
  std::mt19937 rng(2024);
  for (int n : {3, 4, 5, 6, 7}) {
    const double bound = 0.5 * (n - 1);
    std::uniform_real_distribution<double> excess(0.0, 5.0);
    std::uniform_int_distribution<int> count(1, 8);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> ev;
      const int k = count(rng);
      for (int i = 0; i < k; ++i) {
        const double lam = bound + excess(rng);
        ev.push_back(-lam);
        ev.push_back(lam);
      }
      const double d0 = delta_zero(DiracSpectrum::from_eigenvalues(ev), n);
      CHECK(d0 >= -1e-12);
    }
  }
}

TEST_CASE("spectrum_flip") {
  auto s = DiracSpectrum::from_eigenvalues({-2.0, 1.0}, std::vector<int>{3, 5});
  auto f = spectrum_flip(s);
  CHECK(f.eigenvalues == std::vector<double>{-1.0, 2.0});
  REQUIRE(f.multiplicities.has_value());
  CHECK(*f.multiplicities == std::vector<int>{5, 3});
  auto ff = spectrum_flip(f);
  CHECK(ff.eigenvalues == s.eigenvalues);
  CHECK(*ff.multiplicities == *s.multiplicities);
}

TEST_CASE("noncritical_window") {
  const auto s = sphere_spectrum(3, 8);
  // nu set is {..., -3, -2} and {0, 1, ...}
  auto w = noncritical_window(s, 3, {-2.0, 0.0});
  REQUIRE(w.size() == 1);
  CHECK(w[0].first == Approx(-2.0));
  CHECK(w[0].second == Approx(0.0));

  auto w2 = noncritical_window(s, 3, {0.0, 1.0});
  REQUIRE(w2.size() == 1);
  CHECK(w2[0].first == Approx(0.0));
  CHECK(w2[0].second == Approx(1.0));

  auto w3 = noncritical_window(s, 3, {1.0, 1.0});
  CHECK(w3.empty());

  auto w4 = noncritical_window(s, 3, {-0.5, 2.5});
  REQUIRE(w4.size() == 4);
  CHECK(w4[0].second == Approx(0.0));
  CHECK(w4[1] == std::pair<double, double>{0.0, 1.0});
}
