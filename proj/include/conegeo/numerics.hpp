// Shared numerical kernels: 1-D quadrature, sphere quadrature, Richardson
// extrapolation, finite differences, and power-law fitting.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace conegeo {

using RealFn = std::function<double(double)>;

namespace detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// 3-point Gauss-Legendre abscissae/weights on [-1, 1].
inline constexpr std::array<double, 3> kGauss3X = {
    -0.7745966692414834, 0.0, 0.7745966692414834};
inline constexpr std::array<double, 3> kGauss3W = {
    5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

}  // namespace detail

enum class GridKind { Uniform, LogUniform };

// Strictly increasing 1-D grid; panel boundaries for composite quadrature.
struct Grid1D {
  std::vector<double> nodes;
  GridKind kind = GridKind::Uniform;

  Grid1D(std::vector<double> n, GridKind k) : nodes(std::move(n)), kind(k) {
    detail::require(nodes.size() >= 2, "Grid1D: need at least 2 nodes");
    for (std::size_t i = 1; i < nodes.size(); ++i)
      detail::require(nodes[i] > nodes[i - 1],
                      "Grid1D: nodes must be strictly increasing");
    if (kind == GridKind::LogUniform)
      detail::require(nodes.front() > 0.0,
                      "Grid1D: log-uniform grid requires positive nodes");
  }

  static Grid1D uniform(double a, double b, std::size_t count) {
    detail::require(count >= 2 && b > a, "Grid1D::uniform: bad arguments");
    std::vector<double> n(count);
    for (std::size_t i = 0; i < count; ++i)
      n[i] = a + (b - a) * static_cast<double>(i) / double(count - 1);
    n.back() = b;
    return Grid1D(std::move(n), GridKind::Uniform);
  }

  static Grid1D log_uniform(double a, double b, std::size_t count) {
    detail::require(a > 0.0 && b > a && count >= 2,
                    "Grid1D::log_uniform: bad arguments");
    std::vector<double> n(count);
    const double la = std::log(a), lb = std::log(b);
    for (std::size_t i = 0; i < count; ++i)
      n[i] = std::exp(la + (lb - la) * static_cast<double>(i) / double(count - 1));
    n.front() = a;
    n.back() = b;
    return Grid1D(std::move(n), GridKind::LogUniform);
  }
};

// Composite 3-point Gauss-Legendre over the grid panels. Exact for quintics
// per panel; order >= 4 on uniform grids.
inline double integrate_1d(const RealFn& f, const Grid1D& grid) {
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < grid.nodes.size(); ++p) {
    const double a = grid.nodes[p], b = grid.nodes[p + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int q = 0; q < 3; ++q) {
      const double x = mid + half * detail::kGauss3X[q];
      const double fx = f(x);
      if (!std::isfinite(fx))
        throw std::domain_error("integrate_1d: non-finite sample at x=" +
                                std::to_string(x));
      total += half * detail::kGauss3W[q] * fx;
    }
  }
  return total;
}

// Volume of the unit sphere S^m in R^{m+1}: 2 pi^{(m+1)/2} / Gamma((m+1)/2).
inline double sphere_volume(int m) {
  detail::require(m >= 0, "sphere_volume: m >= 0 required");
  const double h = 0.5 * (m + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

// Quadrature on S^m embedded in R^{m+1}; weights sum to Vol(S^m).
struct SphereQuadrature {
  int dimension = 0;
  std::vector<std::vector<double>> nodes;  // unit vectors in R^{m+1}
  std::vector<double> weights;

  double integrate(const std::function<double(const std::vector<double>&)>& f) const {
    double total = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) total += weights[i] * f(nodes[i]);
    return total;
  }
};

namespace detail {

// Gauss-Legendre nodes/weights on [a, b] by Newton iteration on P_n.
inline void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                           std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int mhalf = (n + 1) / 2;
  for (int i = 0; i < mhalf; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = 0.5 * (a + b) - 0.5 * (b - a) * z;
    x[n - 1 - i] = 0.5 * (a + b) + 0.5 * (b - a) * z;
    w[i] = (b - a) / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

}  // namespace detail

// Product rule over iterated spherical coordinates: Gauss-Legendre in each
// polar angle, uniform nodes in the azimuth. Exact for constants.
inline SphereQuadrature sphere_quadrature(int m, int resolution) {
  detail::require(m >= 1, "sphere_quadrature: m >= 1 required");
  detail::require(resolution >= 4, "sphere_quadrature: resolution >= 4 required");
  if (m > 6)
    throw std::invalid_argument(
        "sphere_quadrature: unsupported dimension m > 6");

  SphereQuadrature quad;
  quad.dimension = m;

  if (m == 1) {
    const int naz = 2 * resolution;
    for (int k = 0; k < naz; ++k) {
      const double phi = 2.0 * std::numbers::pi * (k + 0.5) / naz;
      quad.nodes.push_back({std::cos(phi), std::sin(phi)});
      quad.weights.push_back(2.0 * std::numbers::pi / naz);
    }
    return quad;
  }

  // Polar angles theta_1..theta_{m-1} in [0, pi] with density
  // prod_i sin^{m-i}(theta_i); azimuth phi in [0, 2 pi).
  std::vector<double> gx, gw;
  detail::gauss_legendre(resolution, 0.0, std::numbers::pi, gx, gw);
  const int naz = 2 * resolution;

  std::vector<int> idx(m - 1, 0);
  while (true) {
    double weight = 1.0;
    std::vector<double> theta(m - 1);
    for (int i = 0; i < m - 1; ++i) {
      theta[i] = gx[idx[i]];
      weight *= gw[idx[i]] * std::pow(std::sin(theta[i]), m - 1 - i);
    }
    for (int k = 0; k < naz; ++k) {
      const double phi = 2.0 * std::numbers::pi * (k + 0.5) / naz;
      std::vector<double> x(m + 1);
      double sinprod = 1.0;
      for (int i = 0; i < m - 1; ++i) {
        x[i] = sinprod * std::cos(theta[i]);
        sinprod *= std::sin(theta[i]);
      }
      x[m - 1] = sinprod * std::cos(phi);
      x[m] = sinprod * std::sin(phi);
      quad.nodes.push_back(std::move(x));
      quad.weights.push_back(weight * 2.0 * std::numbers::pi / naz);
    }
    int d = m - 2;
    while (d >= 0 && ++idx[d] == resolution) idx[d--] = 0;
    if (d < 0) break;
  }
  return quad;
}

// Least-squares fit of value(R) = limit + a * R^{-model_exponent}.
// Returns (limit, max residual).
inline std::pair<double, double> richardson_extrapolate(
    const std::vector<std::pair<double, double>>& samples,
    double model_exponent) {
  detail::require(samples.size() >= 3,
                  "richardson_extrapolate: need at least 3 samples");
  for (std::size_t i = 1; i < samples.size(); ++i)
    detail::require(samples[i].first > samples[i - 1].first,
                    "richardson_extrapolate: R values must be increasing");

  // Normal equations for [limit, a] against basis {1, R^{-p}}.
  double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0;
  for (const auto& [R, v] : samples) {
    const double t = std::pow(R, -model_exponent);
    s11 += 1.0;
    s12 += t;
    s22 += t * t;
    b1 += v;
    b2 += t * v;
  }
  const double det = s11 * s22 - s12 * s12;
  detail::require(std::abs(det) > 1e-300,
                  "richardson_extrapolate: degenerate sample set");
  const double limit = (b1 * s22 - b2 * s12) / det;
  const double a = (s11 * b2 - s12 * b1) / det;

  double max_residual = 0.0;
  for (const auto& [R, v] : samples)
    max_residual = std::max(max_residual,
                            std::abs(v - limit - a * std::pow(R, -model_exponent)));
  return {limit, max_residual};
}

// 4th-order central difference of f along `direction` at `point`.
inline double central_difference(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& point, const std::vector<double>& direction,
    double step) {
  detail::require(step > 0.0, "central_difference: step must be positive");
  detail::require(point.size() == direction.size(),
                  "central_difference: dimension mismatch");
  auto at = [&](double t) {
    std::vector<double> x(point);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += t * direction[i];
    const double v = f(x);
    if (!std::isfinite(v))
      throw std::domain_error("central_difference: non-finite sample");
    return v;
  };
  return (-at(2 * step) + 8 * at(step) - 8 * at(-step) + at(-2 * step)) /
         (12.0 * step);
}

inline double central_difference(const RealFn& f, double x, double step) {
  return central_difference(
      [&](const std::vector<double>& p) { return f(p[0]); }, {x}, {1.0}, step);
}

struct PowerLawFit {
  double exponent = 0.0;
  double coefficient = 0.0;
  double max_residual = 0.0;  // max |log y - fit| over the window
};

// Least squares of log y against log x: y = coefficient * x^exponent.
inline PowerLawFit powerlaw_fit(
    const std::vector<std::pair<double, double>>& samples) {
  detail::require(samples.size() >= 2, "powerlaw_fit: need at least 2 samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : samples) {
    detail::require(x > 0.0 && y > 0.0, "powerlaw_fit: data must be positive");
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double np = static_cast<double>(samples.size());
  const double det = np * sxx - sx * sx;
  PowerLawFit fit;
  if (std::abs(det) < 1e-14 * np * std::max(1.0, sxx)) {
    // All x equal: degenerate, report constant law.
    fit.exponent = 0.0;
    fit.coefficient = std::exp(sy / np);
  } else {
    fit.exponent = (np * sxy - sx * sy) / det;
    const double intercept = (sy - fit.exponent * sx) / np;
    fit.coefficient = std::exp(intercept);
  }
  for (const auto& [x, y] : samples)
    fit.max_residual =
        std::max(fit.max_residual,
                 std::abs(std::log(y) - std::log(fit.coefficient) -
                          fit.exponent * std::log(x)));
  return fit;
}

// Cumulative integral of f over the grid: out[i] = integral from nodes[0]
// to nodes[i], composite Gauss per panel.
inline std::vector<double> cumulative_integral(const RealFn& f,
                                               const Grid1D& grid) {
  std::vector<double> out(grid.nodes.size(), 0.0);
  for (std::size_t p = 0; p + 1 < grid.nodes.size(); ++p) {
    const double a = grid.nodes[p], b = grid.nodes[p + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double panel = 0.0;
    for (int q = 0; q < 3; ++q) {
      const double x = mid + half * detail::kGauss3X[q];
      const double fx = f(x);
      if (!std::isfinite(fx))
        throw std::domain_error("cumulative_integral: non-finite sample at x=" +
                                std::to_string(x));
      panel += half * detail::kGauss3W[q] * fx;
    }
    out[p + 1] = out[p] + panel;
  }
  return out;
}

}  // namespace conegeo
