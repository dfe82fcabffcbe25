// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion exercises the public API end to end with pinned
// tolerances.
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "conegeo/conegeo.hpp"

using namespace conegeo;

namespace {

int failures = 0;

void criterion(int number, const std::string& what,
               const std::function<bool()>& body) {
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string(" (exception: ") + e.what() + ")";
  }
  std::printf("criterion %2d: %s  %s%s\n", number, ok ? "PASS" : "FAIL",
              what.c_str(), note.c_str());
  if (!ok) ++failures;
}

RadialMode random_polynomial_mode(double lambda, int n, double r_lo,
                                  double r_hi, std::mt19937& rng) {
  std::uniform_real_distribution<double> cd(-2.0, 2.0);
  const double c0 = cd(rng), c1 = cd(rng), c2 = cd(rng), c3 = cd(rng);
  return make_mode(
      lambda, n, r_lo, r_hi,
      [=](double r) { return c0 + r * (c1 + r * (c2 + r * c3)); },
      [=](double r) { return c1 + r * (2 * c2 + r * 3 * c3); });
}

double smoother(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}
double smoother_d(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return 30.0 * t * t * (1.0 - t) * (1.0 - t);
}

LogMode random_log_mode(double lambda, int n, double s_lo, std::mt19937& rng) {
  std::uniform_real_distribution<double> cd(-1.5, 1.5), wd(0.3, 2.0);
  const double c1 = cd(rng), c2 = cd(rng), c3 = cd(rng);
  const double w1 = wd(rng), w2 = wd(rng);
  const double edge = s_lo + 0.5;
  auto base = [=](double s) {
    return c1 * std::sin(w1 * s) + c2 * std::cos(w2 * s) + c3;
  };
  auto base_d = [=](double s) {
    return c1 * w1 * std::cos(w1 * s) - c2 * w2 * std::sin(w2 * s);
  };
  LogMode u;
  u.lambda = lambda;
  u.n = n;
  u.s_lo = s_lo;
  u.s_hi = 0.0;
  u.value = [=](double s) { return smoother(s - edge) * base(s); };
  u.deriv = [=](double s) {
    return smoother_d(s - edge) * base(s) + smoother(s - edge) * base_d(s);
  };
  return u;
}

}  // namespace

int main() {
  criterion(1, "flat-chart mass vanishes", [] {
    auto res = adm_mass(flat_chart(3), {20.0, 40.0, 80.0},
                        MassNormalization::Standard);
    return std::abs(res.limit) <= 1e-8;
  });

  criterion(2, "positive Schwarzschild family recovers m", [] {
    const std::vector<double> radii = {25.0, 50.0, 100.0, 200.0};
    double limits[2];
    for (int i = 0; i < 2; ++i) {
      const double m = i + 1.0;
      auto res = adm_mass(schwarzschild_chart(m, SchwarzschildSign::Positive),
                          radii, MassNormalization::Standard);
      limits[i] = res.limit;
      if (std::abs(res.limit - m) > 0.01 * m) return false;
    }
    return std::abs(limits[1] / limits[0] - 2.0) <= 0.005 * 2.0;
  });

  criterion(3, "negative-mass family: sign and linearity in m", [] {
    const std::vector<double> radii = {20.0, 40.0, 80.0, 160.0};
    const std::vector<double> ms = {0.5, 1.0, 2.0};
    std::vector<double> masses;
    for (double m : ms) {
      auto res =
          adm_mass(schwarzschild_chart(m, SchwarzschildSign::PaperNegative),
                   radii, MassNormalization::Standard);
      if (!(res.limit < 0.0)) return false;
      masses.push_back(res.limit);
    }
    // least-squares line mass = a m + b and its R^2
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const double np = static_cast<double>(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i) {
      sx += ms[i];
      sy += masses[i];
      sxx += ms[i] * ms[i];
      sxy += ms[i] * masses[i];
      syy += masses[i] * masses[i];
    }
    const double a = (np * sxy - sx * sy) / (np * sxx - sx * sx);
    const double b = (sy - a * sx) / np;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      ss_res += std::pow(masses[i] - (a * ms[i] + b), 2);
      ss_tot += std::pow(masses[i] - sy / np, 2);
    }
    const double r2 = 1.0 - ss_res / ss_tot;
    std::printf("              reported slope of mass vs m: %.6f\n", a);
    return r2 >= 0.999;
  });

  criterion(4, "near-horizon horn expansion exponent 4/3", [] {
    for (double m : {1.0, 2.0}) {
      auto fit = horn_expansion_fit(m, {1e-6 * m, 1e-4 * m});
      if (std::abs(fit.exponent - 4.0 / 3.0) > 0.01) return false;
      const double c_expect =
          std::pow(12.0, 4.0 / 3.0) / 4.0 * std::pow(m, 2.0 / 3.0);
      if (std::abs(fit.c - c_expect) > 0.01 * c_expect) return false;
    }
    return true;
  });

  criterion(5, "round-sphere critical sets agree at the cone and at infinity",
            [] {
              for (int n = 3; n <= 7; ++n) {
                const auto spec = sphere_spectrum(n, 40);
                for (double x = -10.0; x <= 10.0 + 1e-12; x += 0.25) {
                  if (is_critical_at_cone(x, spec, n) !=
                      is_critical_at_infinity(x, n, 1e-9))
                    return false;
                }
              }
              return true;
            });

  criterion(6, "eigenvalue lower bound and weight threshold", [] {
    for (int n = 3; n <= 7; ++n) {
      const auto spec = sphere_spectrum(n, 10);
      auto rep = check_friedrich(spec, n, (n - 1.0) * (n - 2.0));
      if (!rep.pass || !rep.equality_attained) return false;
      if (std::abs(delta_zero(spec, n)) > 1e-12) return false;
    }
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> gap(0.0, 3.0);
    for (int trial = 0; trial < 1000; ++trial) {
      const int n = 3 + trial % 5;
      const double bound = 0.5 * (n - 1);
      std::vector<double> ev = {-(bound + gap(rng)), bound + gap(rng),
                                -(bound + gap(rng)) - 1.0};
      auto spec = DiracSpectrum::from_eigenvalues(std::move(ev));
      if (delta_zero(spec, n) < 0.0) return false;
    }
    return true;
  });

  criterion(7, "mode solve inverts mode apply", [] {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> lam(-3.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
      const double lambda = lam(rng);
      auto u = random_polynomial_mode(lambda, 3, 0.1, 1.0, rng);
      auto v = dirac_mode_apply(u);
      auto u2 = dirac_mode_solve(lambda, 3, v, {0.5, u(0.5)});
      for (int i = 0; i < 40; ++i) {
        const double r = 0.12 + 0.86 * i / 39.0;
        if (std::abs(u(r) - u2(r)) > 1e-8) return false;
      }
    }
    for (double lambda : {1.0, -2.0, 2.5}) {
      const double nu = nu_exponent(lambda, 3);
      auto hom = power_mode(lambda, 3, 1.0, nu, 0.01, 1.0);
      auto v = dirac_mode_apply(hom);
      for (double r : {0.02, 0.1, 0.5, 0.9})
        if (std::abs(v(r)) > 1e-10 * std::pow(r, nu - 1.0)) return false;
    }
    return true;
  });

  criterion(8, "Dirichlet boundary and weighted bound of the mode Green "
               "operator", [] {
    std::mt19937 rng(8);
    for (double lambda : {1.0, 2.0, -1.0, -2.0}) {
      const double nu = nu_exponent(lambda, 3);
      for (int i = 1; i <= 5; ++i) {
        const double delta = nu - 0.5 - 0.37 * i;
        for (int trial = 0; trial < 20; ++trial) {
          auto v = random_polynomial_mode(lambda, 3, 0.0, 1.0, rng);
          auto g = green_mode(lambda, 3, delta, 0.5, v);
          if (std::abs(g.u(1.0)) > 1e-12) return false;
          if (!g.bound_holds) return false;
        }
      }
    }
    return true;
  });

  criterion(9, "decay-jump coefficient recovery", [] {
    const auto spec = sphere_spectrum(3, 4);
    auto u = make_mode(-1.0, 3, 0.0, 1.0,
                       [](double r) { return 3.0 + std::pow(r, 0.6); });
    auto fit = decay_jump_fit(u, -0.5, 0.5, spec, 3, 1e-13, 1e-12);
    if (std::abs(fit.coefficients[0] - 3.0) > 1e-6) return false;
    if (!std::isfinite(fit.remainder_norm)) return false;
    auto exact = make_mode(-1.0, 3, 0.0, 1.0,
                           [](double r) { return 2.25 + 0.7 * r; });
    auto fa = decay_jump_fit(exact, -0.5, 1.5, spec, 3, 0.01, 0.1);
    auto fb = decay_jump_fit(exact, -0.5, 1.5, spec, 3, 0.005, 0.05);
    for (std::size_t j = 0; j < fa.coefficients.size(); ++j)
      if (std::abs(fa.coefficients[j] - fb.coefficients[j]) > 1e-8)
        return false;
    return true;
  });

  criterion(10, "perturbed harmonic mode decay", [] {
    const double lambda = 1.0;
    const double nu = nu_exponent(lambda, 3);
    auto clean = perturbed_harmonic_mode(
        lambda, 3, [](double) { return 0.0; }, 0.5, 0.0, 0.05);
    for (double r : {0.001, 0.01, 0.09})
      if (std::abs(clean.u(r) - std::pow(r, nu)) > 1e-12 * std::pow(r, nu))
        return false;
    const double alpha = 0.5;
    auto pert = perturbed_harmonic_mode(
        lambda, 3, [](double r) { return std::pow(r, -0.5); }, alpha, 1.0,
        0.05);
    std::vector<std::pair<double, double>> corr;
    for (int i = 0; i < 40; ++i) {
      const double r = 1e-5 * std::pow(100.0, i / 39.0);
      corr.emplace_back(r, std::abs(pert.u(r) - std::pow(r, nu)));
    }
    return powerlaw_fit(corr).exponent >= nu + alpha - 0.05;
  });

  criterion(11, "log-variable estimate identity and inequality", [] {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> lam_d(-3.0, 3.0), off_d(0.5, 2.5);
    for (int trial = 0; trial < 100; ++trial) {
      const double lambda = lam_d(rng);
      const double a = 1.0 + lambda;
      const double delta = -a + (trial % 2 == 0 ? 1.0 : -1.0) * off_d(rng);
      auto u = random_log_mode(lambda, 3, -7.0, rng);
      auto id = estimate_identity_check(u, lambda, 3, delta, {}, 7001);
      const double scale = std::max({std::abs(id.lhs), std::abs(id.rhs), 1e-6});
      if (id.gap > 1e-8 * scale) return false;
      if (!estimate_inequality_check(u, lambda, 3, delta).holds) return false;
    }
    return true;
  });

  criterion(12, "boundary mean-curvature condition suite", [] {
    BoundaryData flat{2, 4.0 * M_PI, 2.0, 8.0 * M_PI};
    auto eq = herzlich_condition(flat, 3);
    if (std::abs(eq.lhs - eq.rhs) > 1e-12 || !eq.satisfied) return false;

    auto horn = HornMetric{3, CrossSection::round_sphere(2), 1.5};
    if (std::abs(horn_threshold(horn, yamabe_round_sphere(2)) - 4.0 / 9.0) >
        1e-9)
      return false;

    std::mt19937 rng(12);
    std::uniform_real_distribution<double> area_d(0.01, 500.0), h_d(-2.0, 50.0);
    for (int trial = 0; trial < 100; ++trial) {
      BoundaryData b{2, area_d(rng), h_d(rng), 8.0 * M_PI};
      auto g = herzlich_condition(b, 3);
      auto s = herzlich_condition_3d(b);
      if (std::abs(g.rhs - s.rhs) > 1e-12 * s.rhs) return false;
      if (g.satisfied != s.satisfied) return false;
    }
    return true;
  });

  criterion(13, "model geometry identities", [] {
    for (double b : {1.0, 1.5, 2.0}) {
      auto horn = HornMetric{4, CrossSection::round_sphere(3), b};
      for (double r : {0.1, 0.7, 2.0}) {
        const double dlog = central_difference(
            [&](double x) { return std::log(horn_area(horn, x)); }, r,
            1e-4 * r);
        if (std::abs(dlog - horn_mean_curvature(horn, r)) >
            1e-8 * horn_mean_curvature(horn, r))
          return false;
      }
    }
    auto cross = CrossSection::round_sphere(2);
    cross.scal_min = 1.7;  // generic cross section
    auto horn1 = HornMetric{3, cross, 1.0};
    auto cone = horn1.as_cone();
    for (double r : {0.05, 0.4, 3.0}) {
      if (horn_scalar_curvature(horn1, r) != cone_scalar_curvature(cone, r))
        return false;
      if (horn_mean_curvature(horn1, r) != cone_mean_curvature(cone, r))
        return false;
      if (horn_area(horn1, r) != cone_area(cone, r)) return false;
    }
    auto flat_cone = ConeMetric{3, CrossSection::round_sphere(2)};
    auto sec = cone_sectional_curvatures(flat_cone, 0.8);
    return cone_scalar_curvature(flat_cone, 0.8) == 0.0 && sec.radial == 0.0 &&
           sec.tangential == 0.0;
  });

  if (failures == 0) {
    std::printf("acceptance: all 13 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", failures);
  return 1;
}
