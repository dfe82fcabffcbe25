// ADM mass flux integrals over large coordinate spheres, Schwarzschild chart
// families, and the near-horizon horn expansion of the negative-mass family.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conegeo/geometry.hpp"
#include "conegeo/numerics.hpp"

namespace conegeo {

enum class MassNormalization {
  Paper,     // 1 / Vol(S^{n-1})  (selectable unit-sphere constant)
  Standard,  // 1 / (2 (n-1) Vol(S^{n-1}))
};

inline double normalization_constant(MassNormalization norm, int n) {
  const double volume = sphere_volume(n - 1);
  switch (norm) {
    case MassNormalization::Paper:
      return 1.0 / volume;
    case MassNormalization::Standard:
      return 1.0 / (2.0 * (n - 1.0) * volume);
  }
  throw std::logic_error("normalization_constant: bad enum");
}

struct MassResult {
  std::vector<std::pair<double, double>> raw_flux;  // (R, unnormalized flux)
  double limit = 0.0;       // extrapolated, normalization applied
  double fit_error = 0.0;   // max extrapolation residual (normalized)
  MassNormalization normalization = MassNormalization::Standard;
};

// Unnormalized flux integral over the coordinate sphere of radius R:
//   int_{S_R} (d_i g_{ji} - d_j g_{ii}) nu^j dA,
// partial derivatives by 4th-order central differences.
inline double adm_flux(const MetricChart& chart, double R,
                       const SphereQuadrature& quad, double fd_step) {
  detail::require(R > chart.rho_min && R < chart.rho_max,
                  "adm_flux: R outside the chart's valid region");
  detail::require(fd_step > 0.0 && fd_step < 0.1 * R,
                  "adm_flux: fd_step must be positive and << R");
  const int n = chart.n;
  detail::require(quad.dimension == n - 1,
                  "adm_flux: quadrature dimension mismatch");

  auto integrand = [&](const std::vector<double>& omega) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = R * omega[i];
    {
      // positive-definiteness spot check at the node
      auto g = chart.at(x);
      for (int i = 0; i < n; ++i)
        if (!(g[i][i] > 0.0))
          throw std::domain_error("adm_flux: chart not positive definite at node");
    }
    // dg[a][i][j] = d_a g_{ij}
    double total = 0.0;
    std::vector<std::vector<std::vector<double>>> dg(
        n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
    for (int a = 0; a < n; ++a) {
      auto sample = [&](double t) {
        std::vector<double> y(x);
        y[a] += t;
        return chart.at(y);
      };
      const auto gp2 = sample(2 * fd_step), gp1 = sample(fd_step);
      const auto gm1 = sample(-fd_step), gm2 = sample(-2 * fd_step);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          dg[a][i][j] = (-gp2[i][j] + 8.0 * gp1[i][j] - 8.0 * gm1[i][j] +
                         gm2[i][j]) /
                        (12.0 * fd_step);
    }
    for (int j = 0; j < n; ++j) {
      double term = 0.0;
      for (int i = 0; i < n; ++i) term += dg[i][j][i] - dg[j][i][i];
      total += term * omega[j];
    }
    return total;
  };

  // dA = R^{n-1} dOmega
  return std::pow(R, n - 1.0) * quad.integrate(integrand);
}

// Flux at each radius in the schedule, Richardson-extrapolated to R -> inf
// with the chart's decay order as the model exponent.
inline MassResult adm_mass(const MetricChart& chart,
                           const std::vector<double>& radii,
                           MassNormalization norm,
                           int quad_resolution = 24,
                           double fd_step_factor = 1e-4) {
  detail::require(radii.size() >= 3, "adm_mass: need at least 3 radii");
  const SphereQuadrature quad = sphere_quadrature(chart.n - 1, quad_resolution);
  MassResult result;
  result.normalization = norm;
  for (double R : radii)
    result.raw_flux.emplace_back(R, adm_flux(chart, R, quad, fd_step_factor * R));
  auto [limit, fit_error] = richardson_extrapolate(result.raw_flux, chart.tau);
  const double c = normalization_constant(norm, chart.n);
  result.limit = c * limit;
  result.fit_error = c * fit_error;
  return result;
}

enum class SchwarzschildSign {
  Positive,       // conformal factor u = 1 + m/(2 rho)
  PaperNegative,  // g = (1 - 2m/rho)^4 g_flat on rho > 2m
};

inline MetricChart flat_chart(int n) {
  MetricChart chart;
  chart.n = n;
  chart.tau = 1.0;
  chart.components = [n](const std::vector<double>&) {
    std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) g[i][i] = 1.0;
    return g;
  };
  return chart;
}

// Conformally flat chart g = u^4 g_flat in dimension 3.
inline MetricChart conformally_flat_chart(const RealFn& u, double rho_min,
                                          double tau) {
  MetricChart chart;
  chart.n = 3;
  chart.tau = tau;
  chart.rho_min = rho_min;
  chart.components = [u](const std::vector<double>& x) {
    const double rho = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    const double u4 = std::pow(u(rho), 4);
    std::vector<std::vector<double>> g(3, std::vector<double>(3, 0.0));
    for (int i = 0; i < 3; ++i) g[i][i] = u4;
    return g;
  };
  return chart;
}

inline MetricChart schwarzschild_chart(double m, SchwarzschildSign sign) {
  detail::require(m > 0.0, "schwarzschild_chart: m must be positive");
  switch (sign) {
    case SchwarzschildSign::Positive:
      return conformally_flat_chart(
          [m](double rho) { return 1.0 + 0.5 * m / rho; }, 0.0, 1.0);
    case SchwarzschildSign::PaperNegative:
      return conformally_flat_chart(
          [m](double rho) { return 1.0 - 2.0 * m / rho; }, 2.0 * m, 1.0);
  }
  throw std::logic_error("schwarzschild_chart: bad enum");
}

// Scalar curvature of u^4 g_flat in dimension 3: -8 u^{-5} Laplacian(u),
// Laplacian by central differences. Used to certify scalar flatness.
inline double conformal_scalar_curvature(const RealFn& u,
                                         const std::vector<double>& x,
                                         double step = 1e-3) {
  const double rho = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  auto u_at = [&u](const std::vector<double>& y) {
    return u(std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]));
  };
  double lap = 0.0;
  for (int a = 0; a < 3; ++a) {
    auto s = [&](double t) {
      std::vector<double> y(x);
      y[a] += t;
      return u_at(y);
    };
    lap += (-s(2 * step) + 16 * s(step) - 30 * s(0) + 16 * s(-step) -
            s(-2 * step)) /
           (12.0 * step * step);
  }
  return -8.0 * std::pow(u(rho), -5.0) * lap;
}

struct HornExpansionFit {
  double exponent = 0.0;  // expected 4/3
  double c = 0.0;         // expected (12^{4/3}/4) m^{2/3}
  double residual = 0.0;  // max log-space fit residual
};

// Near-horizon expansion of the negative-mass family: computes the proper
// distance sigma(r) = int_{2m}^r (1 - 2m/rho)^2 d rho and the sphere warp
// factor (1 - 2m/r)^4 r^2, then fits warp = c sigma^q over the window.
inline HornExpansionFit horn_expansion_fit(double m,
                                           std::pair<double, double> sigma_window,
                                           std::size_t sample_count = 60,
                                           double residual_threshold = 0.05) {
  detail::require(m > 0.0, "horn_expansion_fit: m must be positive");
  const auto [s_lo, s_hi] = sigma_window;
  detail::require(s_lo > 0.0 && s_hi > s_lo && s_hi <= 0.01 * m,
                  "horn_expansion_fit: window must lie in (0, 0.01 m)");

  auto sigma_of_r = [m](double r) {
    const Grid1D g = Grid1D::uniform(2.0 * m, r, 2001);
    return integrate_1d(
        [m](double rho) {
          const double f = 1.0 - 2.0 * m / rho;
          return f * f;
        },
        g);
  };
  // invert sigma(r) by bisection; sigma is increasing in r
  auto r_of_sigma = [&](double target) {
    double lo = 2.0 * m * (1.0 + 1e-15), hi = 3.0 * m;
    while (sigma_of_r(hi) < target) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (sigma_of_r(mid) < target)
        lo = mid;
      else
        hi = mid;
      if (hi - lo < 1e-16 * m) break;
    }
    return 0.5 * (lo + hi);
  };

  std::vector<std::pair<double, double>> samples;
  for (std::size_t i = 0; i < sample_count; ++i) {
    const double sigma =
        s_lo * std::pow(s_hi / s_lo, double(i) / double(sample_count - 1));
    const double r = r_of_sigma(sigma);
    const double warp = std::pow(1.0 - 2.0 * m / r, 4) * r * r;
    samples.emplace_back(sigma, warp);
  }
  const PowerLawFit fit = powerlaw_fit(samples);
  if (fit.max_residual > residual_threshold)
    throw std::runtime_error(
        "horn_expansion_fit: window outside the near-horizon regime "
        "(residual " +
        std::to_string(fit.max_residual) + ")");
  return {fit.exponent, fit.coefficient, fit.max_residual};
}

// CSV export: columns R, raw_flux, normalized_flux.
inline std::string mass_to_csv(const MassResult& result, int n) {
  const double c = normalization_constant(result.normalization, n);
  std::string csv = "R,raw_flux,normalized_flux\n";
  for (const auto& [R, flux] : result.raw_flux) {
    csv += std::to_string(R);
    csv += ',';
    csv += std::to_string(flux);
    csv += ',';
    csv += std::to_string(c * flux);
    csv += '\n';
  }
  return csv;
}

}  // namespace conegeo
