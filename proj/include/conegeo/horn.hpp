// Boundary positivity machinery for horn singularities: the Herzlich mean
// curvature condition, Yamabe helpers, exact-horn thresholds, and perturbed
// horn checks.
#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "conegeo/geometry.hpp"
#include "conegeo/numerics.hpp"

namespace conegeo {

// Scalar data of one boundary component.
struct BoundaryData {
  int dim = 2;  // n - 1
  double area = 0.0;
  double mean_curvature = 0.0;
  double yamabe = 0.0;

  void validate() const {
    detail::require(area > 0.0, "BoundaryData: area must be positive");
  }
};

// The theorem includes the equality case; allow last-bit rounding there.
inline bool herzlich_satisfied(double lhs, double rhs) {
  return lhs <= rhs + 1e-12 * std::max(std::abs(lhs), std::abs(rhs));
}

struct HerzlichCheck {
  double lhs = 0.0;  // H
  double rhs = 0.0;  // Area^{-1/(n-1)} sqrt((n-1)/(n-2) Y)
  bool satisfied = false;
  double margin = 0.0;  // rhs - lhs
};

// H <= Area^{-1/(n-1)} sqrt((n-1)/(n-2) Y). Requires Y >= 0.
inline HerzlichCheck herzlich_condition(const BoundaryData& b, int n) {
  b.validate();
  detail::require(n >= 3 && b.dim == n - 1, "herzlich_condition: bad dimension");
  if (b.yamabe < 0.0)
    throw std::domain_error(
        "herzlich_condition: hypothesis violated, Yamabe invariant < 0");
  HerzlichCheck out;
  out.lhs = b.mean_curvature;
  out.rhs = std::pow(b.area, -1.0 / (n - 1.0)) *
            std::sqrt((n - 1.0) / (n - 2.0) * b.yamabe);
  out.margin = out.rhs - out.lhs;
  out.satisfied = herzlich_satisfied(out.lhs, out.rhs);
  return out;
}

// 3-D specialization for 2-sphere boundaries: H <= 4 sqrt(pi / Area).
inline HerzlichCheck herzlich_condition_3d(const BoundaryData& b) {
  b.validate();
  detail::require(b.dim == 2, "herzlich_condition_3d: boundary must be 2-D");
  HerzlichCheck out;
  out.lhs = b.mean_curvature;
  out.rhs = 4.0 * std::sqrt(std::numbers::pi / b.area);
  out.margin = out.rhs - out.lhs;
  out.satisfied = herzlich_satisfied(out.lhs, out.rhs);
  return out;
}

// Conformal quotient of the round sphere S^m: m(m-1) Vol(S^m)^{2/m}.
// Convention: the normalizing exponent is (m-2)/m on the volume, so the
// quotient at the round metric is m(m-1) Vol^{1 - (m-2)/m} = m(m-1) Vol^{2/m}.
inline double yamabe_round_sphere(int m) {
  detail::require(m >= 2, "yamabe_round_sphere: m >= 2 required");
  return static_cast<double>(m) * (m - 1) * std::pow(sphere_volume(m), 2.0 / m);
}

// Boundary data of the exact horn cross-section slice N_r.
inline BoundaryData horn_boundary_data(const HornMetric& horn, double r,
                                       double yamabe) {
  BoundaryData b;
  b.dim = horn.n - 1;
  b.area = horn_area(horn, r);
  b.mean_curvature = horn_mean_curvature(horn, r);
  b.yamabe = yamabe;
  return b;
}

// Supremum of r0 for which the exact-horn strict inequality
//   (1/r0^b) Area(N)^{-1/(n-1)} sqrt((n-1)/(n-2) Y) > (n-1) b / r0
// holds: r* = [Area(N)^{-1/(n-1)} sqrt((n-1)/(n-2) Y) / ((n-1) b)]^{1/(b-1)}.
inline double horn_threshold(const HornMetric& horn, double yamabe) {
  horn.validate();
  if (horn.b <= 1.0)
    throw std::invalid_argument(
        "horn_threshold: undefined for b <= 1 (the cone case is the equality "
        "edge)");
  detail::require(yamabe > 0.0, "horn_threshold: Yamabe invariant must be > 0");
  const double n = horn.n;
  const double k = std::pow(horn.cross.volume, -1.0 / (n - 1.0)) *
                   std::sqrt((n - 1.0) / (n - 2.0) * yamabe);
  return std::pow(k / ((n - 1.0) * horn.b), 1.0 / (horn.b - 1.0));
}

struct PerturbedHornReport {
  double h_perturbed = 0.0;
  double area_perturbed = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  double threshold = 0.0;  // largest r at which the perturbed condition holds
};

// Herzlich condition with the perturbed bounds
//   H(r) <= (n-1) b / r + C1 r^{alpha-1},
//   Area(r) = r^{(n-1)b} Area(N) (1 + C0 r^alpha).
inline PerturbedHornReport perturbed_horn_check(const HornMetric& horn,
                                                const PerturbationBound& bound,
                                                double yamabe, double r) {
  horn.validate();
  bound.validate();
  check_positive_radius(r, "perturbed_horn_check");
  const double n = horn.n;
  auto h_pert = [&](double rr) {
    return (n - 1.0) * horn.b / rr +
           bound.constants[1] * std::pow(rr, bound.alpha - 1.0);
  };
  auto area_pert = [&](double rr) {
    return std::pow(rr, (n - 1.0) * horn.b) * horn.cross.volume *
           (1.0 + bound.constants[0] * std::pow(rr, bound.alpha));
  };
  auto rhs_at = [&](double rr) {
    return std::pow(area_pert(rr), -1.0 / (n - 1.0)) *
           std::sqrt((n - 1.0) / (n - 2.0) * yamabe);
  };

  PerturbedHornReport out;
  out.h_perturbed = h_pert(r);
  out.area_perturbed = area_pert(r);
  out.rhs = rhs_at(r);
  out.satisfied = out.h_perturbed <= out.rhs;

  // threshold: bisection on log r for rhs(r) - H(r) = 0; for b > 1 the
  // condition holds for all sufficiently small r
  if (horn.b > 1.0 && yamabe > 0.0) {
    auto ok = [&](double rr) { return h_pert(rr) <= rhs_at(rr); };
    double lo = 1e-12, hi = 1e3;
    if (ok(hi)) {
      out.threshold = hi;
    } else if (!ok(lo)) {
      out.threshold = 0.0;
    } else {
      for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (ok(mid))
          lo = mid;
        else
          hi = mid;
      }
      out.threshold = lo;
    }
  }
  return out;
}

struct HornScalarInterval {
  bool all_r = false;      // nonnegative scalar curvature for every r
  bool empty = false;      // no r > 0 works
  double r_max = 0.0;      // otherwise: Scal >= 0 exactly on (0, r_max]
};

// For b > 1: Scal_{horn}(r) >= 0 iff Scal_{g^N} >= b(n-1)(nb-2) r^{2b-2};
// solves the inequality in closed form.
inline HornScalarInterval exact_horn_scal_implication(const HornMetric& horn) {
  horn.validate();
  detail::require(horn.b > 1.0, "exact_horn_scal_implication: requires b > 1");
  const double n = horn.n;
  const double scal = horn.cross.scal_min;
  const double coeff = horn.b * (n - 1.0) * (n * horn.b - 2.0);
  HornScalarInterval out;
  if (coeff <= 0.0) {
    if (scal >= 0.0)
      out.all_r = true;
    else
      out.empty = true;
    return out;
  }
  if (scal <= 0.0) {
    out.empty = true;
    return out;
  }
  out.r_max = std::pow(scal / coeff, 1.0 / (2.0 * horn.b - 2.0));
  return out;
}

}  // namespace conegeo
