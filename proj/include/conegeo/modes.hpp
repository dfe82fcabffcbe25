// Radial mode reduction of the cone Dirac operator: the first-order ODE
//   u' + ((n-1)/2 + lambda) u / r = v
// per cross-section eigenvalue lambda, its closed-form solver, the
// Dirichlet-at-outer-boundary Green operator, the decay-jump decomposition,
// and the perturbed harmonic mode iteration.
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "conegeo/numerics.hpp"
#include "conegeo/spectral.hpp"

namespace conegeo {

// A radial function u(r) on (r_lo, r_hi), tagged with its mode data.
// `deriv` may be empty; a 4th-order stencil is used then. `power_exponent`
// is set when u is (asymptotically) a pure power law, enabling symbolic
// divergence checks in weighted norms.
struct RadialMode {
  double lambda = 0.0;
  int n = 3;
  double nu = 0.0;  // nu_exponent(lambda, n), cached
  double r_lo = 0.0;
  double r_hi = 1.0;
  RealFn value;
  RealFn deriv;  // optional
  std::optional<double> power_exponent;

  double operator()(double r) const { return value(r); }

  double derivative(double r) const {
    if (deriv) return deriv(r);
    // stencil step bounded by the distance to the interval ends
    double h = 1e-4 * std::max(r, 1e-8);
    const double slack = 0.5 * std::min(r - r_lo, r_hi - r);
    if (slack > 0.0) h = std::min(h, 0.49 * slack);
    return central_difference(value, r, h);
  }

  void validate() const {
    detail::require(r_hi > r_lo && r_lo >= 0.0, "RadialMode: bad interval");
    detail::require(static_cast<bool>(value), "RadialMode: missing value function");
    detail::require(std::abs(nu - nu_exponent(lambda, n)) < 1e-12,
                    "RadialMode: cached nu inconsistent");
  }
};

inline RadialMode make_mode(double lambda, int n, double r_lo, double r_hi,
                            RealFn value, RealFn deriv = nullptr,
                            std::optional<double> power_exponent = {}) {
  RadialMode m;
  m.lambda = lambda;
  m.n = n;
  m.nu = nu_exponent(lambda, n);
  m.r_lo = r_lo;
  m.r_hi = r_hi;
  m.value = std::move(value);
  m.deriv = std::move(deriv);
  m.power_exponent = power_exponent;
  m.validate();
  return m;
}

// u(r) = coef * r^mu with exact derivative.
inline RadialMode power_mode(double lambda, int n, double coef, double mu,
                             double r_lo, double r_hi) {
  return make_mode(
      lambda, n, r_lo, r_hi,
      [coef, mu](double r) { return coef * std::pow(r, mu); },
      [coef, mu](double r) { return coef * mu * std::pow(r, mu - 1.0); }, mu);
}

// Same data in the variable s = log r, truncated to [s_lo, s_hi], s_hi <= 0.
struct LogMode {
  double lambda = 0.0;
  int n = 3;
  double s_lo = -10.0;
  double s_hi = 0.0;
  RealFn value;
  RealFn deriv;  // optional

  double operator()(double s) const { return value(s); }

  double derivative(double s) const {
    if (deriv) return deriv(s);
    return central_difference(value, s, 1e-5);
  }
};

// v = u' + ((n-1)/(2r)) u + (lambda/r) u.
inline RadialMode dirac_mode_apply(const RadialMode& u) {
  u.validate();
  const double a = 0.5 * (u.n - 1) + u.lambda;  // = -nu
  RadialMode v;
  v.lambda = u.lambda;
  v.n = u.n;
  v.nu = u.nu;
  v.r_lo = u.r_lo;
  v.r_hi = u.r_hi;
  v.value = [u, a](double r) { return u.derivative(r) + a * u(r) / r; };
  if (u.power_exponent) {
    // pure power law r^mu maps to (mu - nu) r^{mu-1}
    v.power_exponent = *u.power_exponent - 1.0;
    if (std::abs(*u.power_exponent - u.nu) < 1e-14)
      v.power_exponent = std::nullopt;  // exact homogeneous solution: v == 0
  }
  return v;
}

// Integrating-factor solution through the datum (r1, u1):
//   u(r) = r^nu ( u1 r1^{-nu} + int_{r1}^{r} s^{-nu} v(s) ds ).
// The derivative is exact: u'(r) = nu u(r)/r + v(r).
inline RadialMode dirac_mode_solve(double lambda, int n, const RadialMode& v,
                                   std::pair<double, double> datum,
                                   std::size_t quad_nodes = 801) {
  const double nu = nu_exponent(lambda, n);
  const auto [r1, u1] = datum;
  detail::require(r1 > v.r_lo && r1 < v.r_hi,
                  "dirac_mode_solve: datum radius outside interval");
  auto integral = [v, nu, r1, quad_nodes](double r) {
    if (r == r1) return 0.0;
    const double a = std::min(r, r1), b = std::max(r, r1);
    const Grid1D grid = (a > 0.0 && b / a > 4.0)
                            ? Grid1D::log_uniform(a, b, quad_nodes)
                            : Grid1D::uniform(a, b, quad_nodes);
    const double val = integrate_1d(
        [&v, nu](double s) { return std::pow(s, -nu) * v(s); }, grid);
    if (!std::isfinite(val))
      throw std::domain_error(
          "dirac_mode_solve: divergent integral, source exponent ~ " +
          std::to_string(v.power_exponent.value_or(
              std::numeric_limits<double>::quiet_NaN())));
    return r > r1 ? val : -val;
  };
  const double c0 = u1 * std::pow(r1, -nu);
  RadialMode u;
  u.lambda = lambda;
  u.n = n;
  u.nu = nu;
  u.r_lo = v.r_lo;
  u.r_hi = v.r_hi;
  u.value = [integral, nu, c0](double r) {
    return std::pow(r, nu) * (c0 + integral(r));
  };
  u.deriv = [u, v, nu](double r) { return nu * u(r) / r + v(r); };
  return u;
}

struct GreenResult {
  RadialMode u;
  double constant = 0.0;     // reported bound constant 1/|(n-1)/2 + lambda + delta|
  double norm_u = 0.0;       // ||u||_{L^2_delta} on (0, 2 r0)
  double norm_v = 0.0;       // ||v||_{L^2_{delta-1}} on (0, 2 r0)
  bool bound_holds = false;  // norm_u <= constant * norm_v (+ tolerance)
};

// Weighted L^2_delta norm of a radial mode on (r_lo, r_hi) near the cone tip:
//   ( vol_factor * int r^{-2 delta - 1} u(r)^2 dr )^{1/2}.
// Truncates at max(r_lo, eps) and integrates on a log-uniform grid.
inline double mode_weighted_l2(const RadialMode& u, double delta,
                               double vol_factor = 1.0, double r_floor = 1e-10,
                               std::size_t quad_nodes = 2001) {
  const double a = std::max(u.r_lo, r_floor * u.r_hi);
  const Grid1D grid = Grid1D::log_uniform(a, u.r_hi, quad_nodes);
  const double val = integrate_1d(
      [&u, delta](double r) {
        const double ur = u(r);
        return ur * ur * std::pow(r, -2.0 * delta - 1.0);
      },
      grid);
  return std::sqrt(vol_factor * val);
}

// Dirichlet-at-2r0 Green operator for one mode:
//   u(r) = r^nu int_{2 r0}^{r} s^{-nu} v(s) ds,  u(2 r0) = 0.
// Requires delta noncritical for this mode and v in L^2_{delta-1}.
inline GreenResult green_mode(double lambda, int n, double delta, double r0,
                              const RadialMode& v, double tol = 1e-9) {
  const double nu = nu_exponent(lambda, n);
  if (std::abs(delta - nu) <= tol)
    throw std::invalid_argument(
        "green_mode: delta is critical at the conical point for this mode");
  detail::require(r0 > 0.0, "green_mode: r0 must be positive");
  const double outer = 2.0 * r0;
  detail::require(v.r_hi >= outer - 1e-15 && v.r_lo < outer,
                  "green_mode: source not defined on (0, 2 r0)");
  if (v.power_exponent) {
    // v ~ r^mu lies in L^2_{delta-1} iff mu > delta - 1
    detail::require(*v.power_exponent > delta - 1.0,
                    "green_mode: source not in the weighted L^2 space");
  }

  GreenResult res;
  // Tabulate A(r) = int_{r_min}^{r} s^{-nu} v(s) ds once on a log grid; each
  // evaluation then costs one Gauss panel. r_min is deep enough that the
  // weighted-norm quadrature below never leaves the table.
  const double r_min = 1e-11 * outer;
  auto grid = std::make_shared<Grid1D>(Grid1D::log_uniform(r_min, outer, 4001));
  auto integrand = [v, nu](double s) { return std::pow(s, -nu) * v(s); };
  auto acc = std::make_shared<std::vector<double>>(
      cumulative_integral(integrand, *grid));
  const double a_total = acc->back();
  auto partial = [grid, acc, integrand](double r) {
    const auto& nodes = grid->nodes;
    if (r <= nodes.front()) return 0.0;
    if (r >= nodes.back()) return acc->back();
    const double t = std::log(r / nodes.front()) /
                     std::log(nodes.back() / nodes.front());
    const std::size_t i = std::min(
        static_cast<std::size_t>(t * (nodes.size() - 1)), nodes.size() - 2);
    const double a = nodes[i];
    const double mid = 0.5 * (a + r), half = 0.5 * (r - a);
    double panel = 0.0;
    for (int q = 0; q < 3; ++q)
      panel += half * detail::kGauss3W[q] * integrand(mid + half * detail::kGauss3X[q]);
    return (*acc)[i] + panel;
  };
  res.u.lambda = lambda;
  res.u.n = n;
  res.u.nu = nu;
  res.u.r_lo = 0.0;
  res.u.r_hi = outer;
  res.u.value = [partial, a_total, nu, outer](double r) {
    if (r >= outer) return 0.0;
    return std::pow(r, nu) * (partial(r) - a_total);
  };
  res.u.deriv = [um = res.u, v, nu](double r) { return nu * um(r) / r + v(r); };

  res.constant = 1.0 / std::abs(0.5 * (n - 1) + lambda + delta);
  RadialMode v_trunc = v;
  v_trunc.r_lo = 0.0;
  v_trunc.r_hi = outer;
  res.norm_u = mode_weighted_l2(res.u, delta);
  res.norm_v = mode_weighted_l2(v_trunc, delta - 1.0);
  res.bound_holds = res.norm_u <= res.constant * res.norm_v * (1.0 + 1e-6) + 1e-12;
  return res;
}

struct DecayJumpFit {
  std::vector<double> exponents;     // nu_j in (delta, delta_prime)
  std::vector<double> coefficients;  // fitted c_j
  double remainder_norm = 0.0;       // ||u - sum c_j r^{nu_j}||_{L^2_{delta'}}
  RadialMode remainder;
};

// Fits u against sum_j c_j r^{nu_j} over the indicial exponents between the
// two weights, on a deep small-r window (default [r0/100, r0/10]).
inline DecayJumpFit decay_jump_fit(const RadialMode& u, double delta,
                                   double delta_prime, const DiracSpectrum& spec,
                                   int n, double window_lo_frac = 0.01,
                                   double window_hi_frac = 0.1,
                                   std::size_t sample_count = 200) {
  detail::require(delta < delta_prime, "decay_jump_fit: need delta < delta'");
  detail::require(!is_critical_at_cone(delta, spec, n) &&
                      !is_critical_at_cone(delta_prime, spec, n),
                  "decay_jump_fit: weights must be noncritical");
  const double r0 = u.r_hi;
  std::vector<double> exps;
  for (double lam : spec.eigenvalues) {
    const double nu = nu_exponent(lam, n);
    if (nu > delta && nu < delta_prime) exps.push_back(nu);
  }
  std::sort(exps.begin(), exps.end());
  for (std::size_t i = 1; i < exps.size(); ++i)
    if (exps[i] - exps[i - 1] < 1e-6)
      throw std::runtime_error(
          "decay_jump_fit: ill-conditioned fit, indicial exponents within 1e-6");

  const double wlo = r0 * window_lo_frac, whi = r0 * window_hi_frac;
  const double rmid = std::sqrt(wlo * whi);
  Grid1D window = Grid1D::log_uniform(wlo, whi, sample_count);

  const std::size_t k = exps.size();
  DecayJumpFit fit;
  fit.exponents = exps;
  fit.coefficients.assign(k, 0.0);
  if (k > 0) {
    // normal equations in the scaled basis (r/rmid)^{nu_j}
    std::vector<std::vector<double>> A(k, std::vector<double>(k, 0.0));
    std::vector<double> rhs(k, 0.0);
    for (double r : window.nodes) {
      std::vector<double> phi(k);
      for (std::size_t j = 0; j < k; ++j) phi[j] = std::pow(r / rmid, exps[j]);
      const double ur = u(r);
      for (std::size_t i = 0; i < k; ++i) {
        rhs[i] += phi[i] * ur;
        for (std::size_t j = 0; j < k; ++j) A[i][j] += phi[i] * phi[j];
      }
    }
    // Gaussian elimination with partial pivoting
    for (std::size_t col = 0; col < k; ++col) {
      std::size_t piv = col;
      for (std::size_t row = col + 1; row < k; ++row)
        if (std::abs(A[row][col]) > std::abs(A[piv][col])) piv = row;
      std::swap(A[col], A[piv]);
      std::swap(rhs[col], rhs[piv]);
      detail::require(std::abs(A[col][col]) > 1e-300,
                      "decay_jump_fit: singular normal equations");
      for (std::size_t row = col + 1; row < k; ++row) {
        const double f = A[row][col] / A[col][col];
        for (std::size_t j = col; j < k; ++j) A[row][j] -= f * A[col][j];
        rhs[row] -= f * rhs[col];
      }
    }
    for (std::size_t i = k; i-- > 0;) {
      double s = rhs[i];
      for (std::size_t j = i + 1; j < k; ++j) s -= A[i][j] * fit.coefficients[j];
      fit.coefficients[i] = s / A[i][i];
    }
    // rescale back to the basis r^{nu_j}
    for (std::size_t j = 0; j < k; ++j)
      fit.coefficients[j] *= std::pow(rmid, -exps[j]);
  }

  RadialMode rem = u;
  auto coeffs = fit.coefficients;
  rem.value = [u, coeffs, exps](double r) {
    double val = u(r);
    for (std::size_t j = 0; j < exps.size(); ++j)
      val -= coeffs[j] * std::pow(r, exps[j]);
    return val;
  };
  rem.deriv = nullptr;
  rem.power_exponent = std::nullopt;
  fit.remainder_norm = mode_weighted_l2(rem, delta_prime, 1.0, 1e-6);
  fit.remainder = std::move(rem);
  return fit;
}

struct PerturbedHarmonicMode {
  RadialMode u;
  double contraction_factor = 0.0;  // C (2 r0)^alpha / alpha, must be < 1
  double max_residual = 0.0;  // scaled ODE residual, sampled over the interval
};

// Builds the harmonic mode of the perturbed operator
//   u' + ((n-1)/2 + lambda) u / r + eps(r) u = 0,  u ~ r^nu as r -> 0,
// as u = r^nu phi with phi the limit of the Picard iteration
// phi <- 1 - int_0^r eps phi ds, evaluated in closed form:
// phi(r) = exp(-int_0^r eps(s) ds). Requires |eps(r)| <= bound_c * r^{alpha-1}
// with a contracting iteration on (0, 2 r0).
inline PerturbedHarmonicMode perturbed_harmonic_mode(
    double lambda, int n, const RealFn& eps, double alpha, double bound_c,
    double r0, std::size_t grid_count = 4001) {
  detail::require(alpha > 0.0, "perturbed_harmonic_mode: alpha must be positive");
  detail::require(r0 > 0.0, "perturbed_harmonic_mode: r0 must be positive");
  const double nu = nu_exponent(lambda, n);
  const double outer = 2.0 * r0;
  const double q = bound_c * std::pow(outer, alpha) / alpha;
  PerturbedHarmonicMode out;
  out.contraction_factor = q;
  if (q >= 1.0)
    throw std::runtime_error(
        "perturbed_harmonic_mode: iteration does not contract at this r0; "
        "shrink r0 (factor " +
        std::to_string(q) + ")");

  // Cumulative integral of eps on a log grid; the tail below r_min is
  // bounded by bound_c * r_min^alpha / alpha and is dropped.
  const double depth = std::max(45.0 / alpha, 25.0);
  const double r_min = outer * std::exp(-depth);
  auto grid = std::make_shared<Grid1D>(Grid1D::log_uniform(r_min, outer, grid_count));
  auto acc = std::make_shared<std::vector<double>>(cumulative_integral(eps, *grid));

  // E(r) = int_0^r eps: cumulative value at the nearest node below r plus a
  // Gauss panel from that node; smooth in r, so stencils see the true ODE.
  auto cum_eps = [grid, acc, eps](double r) {
    const auto& nodes = grid->nodes;
    if (r <= nodes.front()) return 0.0;
    if (r >= nodes.back()) return acc->back();
    const double t = std::log(r / nodes.front()) /
                     std::log(nodes.back() / nodes.front());
    const std::size_t i = std::min(
        static_cast<std::size_t>(t * (nodes.size() - 1)), nodes.size() - 2);
    const double a = nodes[i];
    const double mid = 0.5 * (a + r), half = 0.5 * (r - a);
    double panel = 0.0;
    for (int qd = 0; qd < 3; ++qd)
      panel += half * detail::kGauss3W[qd] * eps(mid + half * detail::kGauss3X[qd]);
    return (*acc)[i] + panel;
  };
  auto phi = [cum_eps](double r) { return std::exp(-cum_eps(r)); };

  // scaled residual r^{1-nu} |u' + a u / r + eps u| = r |phi'(r) + eps phi|
  for (int i = 1; i <= 64; ++i) {
    const double r = r_min * std::pow(outer / r_min, i / 66.0);
    const double h = 0.002 * r;
    const double dphi = central_difference(phi, r, h);
    out.max_residual = std::max(
        out.max_residual, r * std::abs(dphi + eps(r) * phi(r)) /
                              std::max(std::abs(phi(r)), 1e-300));
  }

  out.u = make_mode(
      lambda, n, 0.0, outer,
      [phi, nu](double r) { return std::pow(r, nu) * phi(r); },
      [phi, eps, nu](double r) {
        return std::pow(r, nu) * (nu / r - eps(r)) * phi(r);
      },
      nu);
  return out;
}

// Largest r0 (up to `rel_tol`) at which the perturbation iteration still
// contracts; bisection on the contraction factor.
inline double perturbed_mode_r0_threshold(double alpha, double bound_c,
                                          double rel_tol = 1e-6) {
  detail::require(alpha > 0.0 && bound_c > 0.0,
                  "perturbed_mode_r0_threshold: positive alpha, C required");
  // contraction factor q(r0) = C (2 r0)^alpha / alpha == 1
  return 0.5 * std::pow(alpha / bound_c, 1.0 / alpha) * (1.0 - rel_tol);
}

// s = log r transform: u_tilde(s) = u(e^s), v_tilde(s) = e^s v(e^s); the ODE
// becomes u_tilde' + ((n-1)/2 + lambda) u_tilde = v_tilde.
inline LogMode log_transform(const RadialMode& u) {
  u.validate();
  detail::require(u.r_hi <= 1.0 + 1e-15,
                  "log_transform: interval must lie in (0, 1]");
  LogMode lm;
  lm.lambda = u.lambda;
  lm.n = u.n;
  lm.s_lo = u.r_lo > 0.0 ? std::log(u.r_lo) : -40.0;
  lm.s_hi = std::log(u.r_hi);
  lm.value = [u](double s) { return u(std::exp(s)); };
  if (u.deriv)
    lm.deriv = [u](double s) {
      const double r = std::exp(s);
      return u.deriv(r) * r;
    };
  return lm;
}

inline RadialMode log_transform_inverse(const LogMode& lm) {
  RadialMode u;
  u.lambda = lm.lambda;
  u.n = lm.n;
  u.nu = nu_exponent(lm.lambda, lm.n);
  u.r_lo = std::exp(lm.s_lo);
  u.r_hi = std::exp(lm.s_hi);
  u.value = [lm](double r) { return lm(std::log(r)); };
  if (lm.deriv)
    u.deriv = [lm](double r) { return lm.deriv(std::log(r)) / r; };
  return u;
}

// CSV sampling (columns r,u,v) with v = dirac_mode_apply(u).
inline std::string mode_to_csv(const RadialMode& u, const Grid1D& grid) {
  const RadialMode v = dirac_mode_apply(u);
  std::string csv = "r,u,v\n";
  for (double r : grid.nodes) {
    csv += std::to_string(r);
    csv += ',';
    csv += std::to_string(u(r));
    csv += ',';
    csv += std::to_string(v(r));
    csv += '\n';
  }
  return csv;
}

}  // namespace conegeo
