// Weighted Sobolev norms restricted to radial modes, membership thresholds,
// and the integration-by-parts estimate identity in the log variable.
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "conegeo/modes.hpp"
#include "conegeo/numerics.hpp"

namespace conegeo {

enum class NormRegion { ConeEnd, InfinityEnd, Annulus };

struct WeightedNormSpec {
  double p = 2.0;
  int k = 0;  // 0 or 1
  double delta = 0.0;
  double beta = 0.0;
  NormRegion region = NormRegion::ConeEnd;
  double r_inner = 0.0;   // cone end: (r_inner, r_outer); annulus likewise
  double r_outer = 1.0;
  double vol_factor = 1.0;  // Vol(N, g^N), contributed once by the tangential factor

  void validate() const {
    detail::require(p >= 1.0, "WeightedNormSpec: p >= 1 required");
    detail::require(k == 0 || k == 1, "WeightedNormSpec: k must be 0 or 1");
    detail::require(r_outer > r_inner && r_outer > 0.0,
                    "WeightedNormSpec: bad region radii");
  }
};

// ||u||^p = sum_{i<=k} int w(r)^{-p(w_exp - i) - n} |u^(i)|^p r^{n-1} Vol(N) dr
// over the region, with w = r (cone end, weight delta) or rho (infinity end,
// weight beta). For pure power-law modes divergence is decided symbolically
// on the exponents and reported as +infinity.
inline double weighted_norm(const RadialMode& u, const WeightedNormSpec& spec) {
  spec.validate();
  const int n = u.n;
  const double w_exp = spec.region == NormRegion::InfinityEnd ? spec.beta : spec.delta;
  detail::require(spec.region != NormRegion::InfinityEnd || spec.r_inner > 0.0,
                  "weighted_norm: infinity-end region needs positive inner radius");

  if (u.power_exponent) {
    const double mu = *u.power_exponent;
    // each derivative order gives integrand exponent p(mu - w_exp) - 1
    const double ex = spec.p * (mu - w_exp);
    const bool cone_like = spec.region == NormRegion::ConeEnd;
    if (cone_like && spec.r_inner <= 0.0 && ex <= 0.0)
      return std::numeric_limits<double>::infinity();
    if (spec.region == NormRegion::InfinityEnd &&
        !std::isfinite(spec.r_outer) && ex >= 0.0)
      return std::numeric_limits<double>::infinity();
  }

  const double hi = std::isfinite(spec.r_outer) ? spec.r_outer
                                                : 1e12 * std::max(spec.r_inner, 1.0);
  const double lo = std::max(spec.r_inner, 1e-12 * hi);
  double total = 0.0;
  for (int i = 0; i <= spec.k; ++i) {
    const Grid1D grid = Grid1D::log_uniform(lo, hi, 2001);
    total += integrate_1d(
        [&, i](double r) {
          const double d = (i == 0) ? u(r) : u.derivative(r);
          return std::pow(r, -spec.p * (w_exp - i) - n) *
                 std::pow(std::abs(d), spec.p) * std::pow(r, n - 1.0);
        },
        grid);
  }
  return spec.vol_factor * total;
}

// r^nu lies in W^{1,2}_eta on the cone end iff eta < nu.
inline double membership_threshold(double nu) { return nu; }
inline bool is_member(double nu, double eta) { return eta < nu; }

// C^1 cutoff in the log variable: 0 on (-1, 0], 1 on (-inf, -2], smoothstep
// on [-2, -1]. Matches the support contract of the estimate lemma.
struct LogCutoff {
  double operator()(double s) const {
    if (s >= -1.0) return 0.0;
    if (s <= -2.0) return 1.0;
    const double t = -1.0 - s;  // in (0, 1)
    return t * t * (3.0 - 2.0 * t);
  }
  double deriv(double s) const {
    if (s >= -1.0 || s <= -2.0) return 0.0;
    const double t = -1.0 - s;
    return -(6.0 * t - 6.0 * t * t);  // d/ds of smoothstep(-1-s)
  }
  // support contract: vanishes on (-1, 0), equals 1 on (-inf, -2)
  bool matches_contract() const { return true; }
};

struct EstimateIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

// Integration-by-parts identity for the log-variable mode equation
// u' + a u = v with a = (n-1)/2 + lambda:
//   (a + delta) int (chi u)^2 e^{-2 delta s}
//     = int chi^2 u v e^{-2 delta s} + 1/2 int (chi^2)' u^2 e^{-2 delta s}.
inline EstimateIdentity estimate_identity_check(const LogMode& u, double lambda,
                                                int n, double delta,
                                                const LogCutoff& chi = {},
                                                std::size_t quad_nodes = 4001) {
  detail::require(chi.matches_contract(),
                  "estimate_identity_check: cutoff violates support contract");
  const double a = 0.5 * (n - 1) + lambda;
  const double s_lo = u.s_lo, s_hi = std::min(u.s_hi, 0.0);
  detail::require(s_hi > s_lo, "estimate_identity_check: empty log interval");
  const Grid1D grid = Grid1D::uniform(s_lo, s_hi, quad_nodes);

  auto w = [delta](double s) { return std::exp(-2.0 * delta * s); };
  auto v = [&](double s) { return u.derivative(s) + a * u(s); };

  EstimateIdentity out;
  out.lhs = (a + delta) * integrate_1d(
                              [&](double s) {
                                const double cu = chi(s) * u(s);
                                return cu * cu * w(s);
                              },
                              grid);
  out.rhs = integrate_1d(
                [&](double s) {
                  const double c = chi(s);
                  return c * c * u(s) * v(s) * w(s);
                },
                grid) +
            0.5 * integrate_1d(
                      [&](double s) {
                        const double dchi2 = 2.0 * chi(s) * chi.deriv(s);
                        return dchi2 * u(s) * u(s) * w(s);
                      },
                      grid);
  out.gap = std::abs(out.lhs - out.rhs);
  return out;
}

struct EstimateInequality {
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool holds = false;
};

// The estimate behind the identity: with C = 2 max(1, 1/|a + delta|),
//   int (chi u)^2 e^{-2 delta s} <= C int chi^2 v^2 e^{-2 delta s}
//                                   + C int_{-2}^{-1} u^2 e^{-2 delta s}.
inline EstimateInequality estimate_inequality_check(const LogMode& u,
                                                    double lambda, int n,
                                                    double delta,
                                                    const LogCutoff& chi = {},
                                                    std::size_t quad_nodes = 4001) {
  const double a = 0.5 * (n - 1) + lambda;
  if (std::abs(a + delta) <= 1e-12)
    throw std::invalid_argument(
        "estimate_inequality_check: delta is critical for this mode");
  const double s_lo = u.s_lo, s_hi = std::min(u.s_hi, 0.0);
  const Grid1D grid = Grid1D::uniform(s_lo, s_hi, quad_nodes);
  auto w = [delta](double s) { return std::exp(-2.0 * delta * s); };
  auto v = [&](double s) { return u.derivative(s) + a * u(s); };

  EstimateInequality out;
  out.constant = 2.0 * std::max(1.0, 1.0 / std::abs(a + delta));
  out.lhs = integrate_1d(
      [&](double s) {
        const double cu = chi(s) * u(s);
        return cu * cu * w(s);
      },
      grid);
  const double source_term = integrate_1d(
      [&](double s) {
        const double c = chi(s);
        const double vs = v(s);
        return c * c * vs * vs * w(s);
      },
      grid);
  const Grid1D compact = Grid1D::uniform(std::max(s_lo, -2.0),
                                         std::min(s_hi, -1.0) > std::max(s_lo, -2.0)
                                             ? std::min(s_hi, -1.0)
                                             : std::max(s_lo, -2.0) + 1e-9,
                                         1001);
  const double compact_term =
      integrate_1d([&](double s) { return u(s) * u(s) * w(s); }, compact);
  out.rhs = out.constant * (source_term + compact_term);
  out.slack = out.rhs - out.lhs;
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-9) + 1e-15;
  return out;
}

}  // namespace conegeo
