// Model metrics (cones, horns, conformally flat AF charts) and their
// curvature, area, and mean-curvature formulas.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "conegeo/numerics.hpp"

namespace conegeo {

// Scalar data of a compact cross section (N^{n-1}, g^N). All in-scope
// formulas consume these scalars; N is never meshed.
struct CrossSection {
  int dim = 2;                  // m = n - 1
  double scal_min = 0.0;        // min of Scal_{g^N}
  double volume = 0.0;          // Vol(N, g^N)
  std::optional<double> yamabe;
  std::optional<double> sectional_constant;  // set when (N, g^N) is a space form

  void validate() const {
    detail::require(dim >= 1, "CrossSection: dim >= 1 required");
    detail::require(volume > 0.0, "CrossSection: volume must be positive");
  }

  // Unit round sphere S^m: Scal = m(m-1), sectional curvature 1.
  static CrossSection round_sphere(int m) {
    CrossSection cs;
    cs.dim = m;
    cs.scal_min = static_cast<double>(m) * (m - 1);
    cs.volume = sphere_volume(m);
    cs.sectional_constant = 1.0;
    return cs;
  }
};

// Cone metric dr^2 + r^2 g^N over the cross section.
struct ConeMetric {
  int n = 3;
  CrossSection cross;

  void validate() const {
    cross.validate();
    detail::require(n == cross.dim + 1, "ConeMetric: n must equal cross.dim + 1");
    detail::require(n >= 3, "ConeMetric: n >= 3 required");
  }
};

// Horn metric dr^2 + r^{2b} g^N; b = 1 is the cone.
struct HornMetric {
  int n = 3;
  CrossSection cross;
  double b = 1.0;

  void validate() const {
    cross.validate();
    detail::require(n == cross.dim + 1, "HornMetric: n must equal cross.dim + 1");
    detail::require(n >= 3, "HornMetric: n >= 3 required");
    detail::require(b > 0.0, "HornMetric: b must be positive");
  }

  ConeMetric as_cone() const { return ConeMetric{n, cross}; }
};

// A metric chart: coordinates -> symmetric matrix of components, with a
// declared decay order tau and a valid radial region.
struct MetricChart {
  int n = 3;
  std::function<std::vector<std::vector<double>>(const std::vector<double>&)>
      components;
  double tau = 1.0;        // ||g - id|| = O(rho^{-tau}), tau > (n-2)/2
  double rho_min = 0.0;    // inner radius of the valid region
  double rho_max = std::numeric_limits<double>::infinity();

  std::vector<std::vector<double>> at(const std::vector<double>& x) const {
    return components(x);
  }
};

// Decay bounds |grad^k h| = O(r^{alpha - k}) for k = 0, 1, 2.
struct PerturbationBound {
  double alpha = 0.0;
  std::array<double, 3> constants{0.0, 0.0, 0.0};

  void validate() const {
    detail::require(alpha > 0.0, "PerturbationBound: alpha must be positive");
    for (double c : constants)
      detail::require(c >= 0.0, "PerturbationBound: constants must be >= 0");
  }
};

inline void check_positive_radius(double r, const char* op) {
  if (!(r > 0.0))
    throw std::invalid_argument(std::string(op) + ": r must be positive");
}

// Scal = (Scal_{g^N} - (n-1)(n-2)) / r^2, exact for the model cone. Uses
// cross.scal_min, so exact only for cross sections of constant scalar curvature.
inline double cone_scalar_curvature(const ConeMetric& cone, double r) {
  check_positive_radius(r, "cone_scalar_curvature");
  const double m = cone.n - 1;
  return (cone.cross.scal_min - m * (m - 1.0)) / (r * r);
}

// Scal = Scal_{g^N} / r^{2b} - b(n-1)(nb-2) / r^2.
inline double horn_scalar_curvature(const HornMetric& horn, double r) {
  check_positive_radius(r, "horn_scalar_curvature");
  if (horn.b == 1.0) return cone_scalar_curvature(horn.as_cone(), r);
  const double nm1 = horn.n - 1;
  return horn.cross.scal_min / std::pow(r, 2.0 * horn.b) -
         horn.b * nm1 * (horn.n * horn.b - 2.0) / (r * r);
}

// H = (n-1)/r with respect to the outward radial normal.
inline double cone_mean_curvature(const ConeMetric& cone, double r) {
  check_positive_radius(r, "cone_mean_curvature");
  return (cone.n - 1.0) / r;
}

// H = (n-1) b / r; the n = 3 case is 2b/r.
inline double horn_mean_curvature(const HornMetric& horn, double r) {
  check_positive_radius(r, "horn_mean_curvature");
  return (horn.n - 1.0) * horn.b / r;
}

// Area(N_r) = r^{(n-1)b} * Vol(N, g^N).
inline double horn_area(const HornMetric& horn, double r) {
  check_positive_radius(r, "horn_area");
  return std::pow(r, (horn.n - 1.0) * horn.b) * horn.cross.volume;
}

inline double cone_area(const ConeMetric& cone, double r) {
  return horn_area(HornMetric{cone.n, cone.cross, 1.0}, r);
}

struct SectionalCurvatures {
  double radial = 0.0;      // planes containing the radial direction
  double tangential = 0.0;  // planes tangent to the cross section
};

// Radial planes are flat; tangential plane curvature is (kappa - 1)/r^2 for a
// space-form cross section of sectional curvature kappa.
inline SectionalCurvatures cone_sectional_curvatures(const ConeMetric& cone,
                                                     double r) {
  check_positive_radius(r, "cone_sectional_curvatures");
  if (!cone.cross.sectional_constant)
    throw std::invalid_argument(
        "cone_sectional_curvatures: unsupported cross section (no sectional "
        "constant)");
  return {0.0, (*cone.cross.sectional_constant - 1.0) / (r * r)};
}

struct DecayCheck {
  int k = 0;
  double max_ratio = 0.0;  // max over radii of |grad^k h| * r^{k - alpha}
  double bound = 0.0;      // C_k
  bool pass = false;
};

// Checks |grad^k h|(r) <= C_k r^{alpha - k} over the sampled radii. The
// caller supplies the pointwise norms of h and its covariant differences.
inline std::vector<DecayCheck> verify_perturbation_decay(
    const std::array<RealFn, 3>& h_norms, const PerturbationBound& bound,
    const std::vector<double>& radii) {
  bound.validate();
  detail::require(!radii.empty(), "verify_perturbation_decay: empty radii");
  for (double r : radii)
    detail::require(r > 0.0 && r < 1.0,
                    "verify_perturbation_decay: radii must lie in (0, 1)");
  std::vector<DecayCheck> report;
  for (int k = 0; k < 3; ++k) {
    DecayCheck chk;
    chk.k = k;
    chk.bound = bound.constants[k];
    for (double r : radii) {
      const double ratio = std::abs(h_norms[k](r)) * std::pow(r, k - bound.alpha);
      chk.max_ratio = std::max(chk.max_ratio, ratio);
    }
    chk.pass = chk.max_ratio <= chk.bound * (1.0 + 1e-12) + 1e-300;
    report.push_back(chk);
  }
  return report;
}

// Samples ||g - id|| over the chart region and checks O(rho^{-tau}) decay.
inline bool chart_decay_plausible(const MetricChart& chart,
                                  const std::vector<double>& radii,
                                  double constant) {
  // Reading of the decay condition: tau > (n-2)/2 with n the dimension.
  detail::require(chart.tau > 0.5 * (chart.n - 2),
                  "chart_decay_plausible: tau <= (n-2)/2");
  for (double rho : radii) {
    std::vector<double> x(chart.n, 0.0);
    x[0] = rho;
    auto g = chart.at(x);
    double dev = 0.0;
    for (int i = 0; i < chart.n; ++i)
      for (int j = 0; j < chart.n; ++j)
        dev = std::max(dev, std::abs(g[i][j] - (i == j ? 1.0 : 0.0)));
    if (dev > constant * std::pow(rho, -chart.tau)) return false;
  }
  return true;
}

}  // namespace conegeo
