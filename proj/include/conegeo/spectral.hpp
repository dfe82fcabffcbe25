// Dirac spectra on cross sections, indicial exponents nu_j, critical weight
// sets, the Friedrich lower bound, and the weight threshold delta_0.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "conegeo/numerics.hpp"

namespace conegeo {

enum class SpectrumSource { RoundSphere, User };

// Sorted list of cross-section Dirac eigenvalues lambda_j.
struct DiracSpectrum {
  std::vector<double> eigenvalues;  // sorted ascending
  std::optional<std::vector<int>> multiplicities;
  SpectrumSource source = SpectrumSource::User;

  static DiracSpectrum from_eigenvalues(std::vector<double> ev,
                                        std::optional<std::vector<int>> mult = {}) {
    DiracSpectrum s;
    s.eigenvalues = std::move(ev);
    if (mult) {
      detail::require(mult->size() == s.eigenvalues.size(),
                      "DiracSpectrum: multiplicity count mismatch");
      for (int m : *mult)
        detail::require(m > 0, "DiracSpectrum: multiplicities must be positive");
      // keep multiplicities aligned with eigenvalues through the sort
      std::vector<std::size_t> order(s.eigenvalues.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return s.eigenvalues[a] < s.eigenvalues[b];
      });
      std::vector<double> ev2(order.size());
      std::vector<int> mu2(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) {
        ev2[i] = s.eigenvalues[order[i]];
        mu2[i] = (*mult)[order[i]];
      }
      s.eigenvalues = std::move(ev2);
      s.multiplicities = std::move(mu2);
    } else {
      std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
    }
    return s;
  }
};

// Weight exponents (delta at the cone, beta at infinity).
struct WeightPair {
  double delta = 0.0;
  double beta = 0.0;
};

// Round-sphere Dirac eigenvalues: +/- ((n-1)/2 + k), k = 0..kmax.
inline DiracSpectrum sphere_spectrum(int n, int kmax) {
  detail::require(n >= 3, "sphere_spectrum: n >= 3 required");
  detail::require(kmax >= 0, "sphere_spectrum: kmax >= 0 required");
  std::vector<double> ev;
  ev.reserve(2 * (kmax + 1));
  for (int k = 0; k <= kmax; ++k) {
    const double lam = 0.5 * (n - 1) + k;
    ev.push_back(-lam);
    ev.push_back(lam);
  }
  auto s = DiracSpectrum::from_eigenvalues(std::move(ev));
  s.source = SpectrumSource::RoundSphere;
  return s;
}

// Indicial exponent nu = -(n-1)/2 - lambda.
inline double nu_exponent(double lambda, int n) {
  detail::require(n >= 3, "nu_exponent: n >= 3 required");
  return -0.5 * (n - 1) - lambda;
}

// delta is critical at the conical point iff delta = nu_j for some j.
inline bool is_critical_at_cone(double delta, const DiracSpectrum& spec, int n,
                                double tol = 1e-9) {
  detail::require(tol >= 0.0, "is_critical_at_cone: tol must be >= 0");
  detail::require(!spec.eigenvalues.empty(),
                  "is_critical_at_cone: empty spectrum");
  for (double lam : spec.eigenvalues)
    if (std::abs(delta - nu_exponent(lam, n)) <= tol) return true;
  return false;
}

// beta is critical at infinity iff beta = k or beta = 1 - n - k, k >= 0.
inline bool is_critical_at_infinity(double beta, int n, double tol = 1e-9) {
  detail::require(n >= 3, "is_critical_at_infinity: n >= 3 required");
  if (beta >= -tol) {
    const double k = std::round(beta);
    return k >= 0.0 && std::abs(beta - k) <= tol;
  }
  const double k = std::round(1.0 - n - beta);
  return k >= 0.0 && std::abs(beta - (1.0 - n - k)) <= tol;
}

// Friedrich lower bound (1/2) sqrt((n-1)/(n-2) * scal_min); this is >=
// (n-1)/2 exactly when scal_min >= (n-1)(n-2).
inline double friedrich_bound(int n, double scal_min) {
  detail::require(n >= 3, "friedrich_bound: n >= 3 required");
  detail::require(scal_min >= 0.0, "friedrich_bound: scal_min must be >= 0");
  return 0.5 * std::sqrt((n - 1.0) / (n - 2.0) * scal_min);
}

struct FriedrichReport {
  double bound = 0.0;           // (1/2) sqrt((n-1)/(n-2) scal_min)
  double model_bound = 0.0;     // (n-1)/2
  bool model_bound_engaged = false;  // scal_min >= (n-1)(n-2)
  std::vector<double> violations;    // eigenvalues with |lambda| < bound
  bool equality_attained = false;    // some |lambda| == bound (within 1e-12)
  bool pass = false;
};

inline FriedrichReport check_friedrich(const DiracSpectrum& spec, int n,
                                       double scal_min) {
  FriedrichReport rep;
  rep.bound = friedrich_bound(n, scal_min);
  rep.model_bound = 0.5 * (n - 1);
  rep.model_bound_engaged = scal_min >= (n - 1.0) * (n - 2.0) - 1e-12;
  for (double lam : spec.eigenvalues) {
    if (std::abs(lam) < rep.bound - 1e-12) rep.violations.push_back(lam);
    if (std::abs(std::abs(lam) - rep.bound) <= 1e-12) rep.equality_attained = true;
  }
  rep.pass = rep.violations.empty();
  return rep;
}

// delta_0 = (1-n)/2 - lambda_{-1}, with lambda_{-1} the largest negative
// eigenvalue.
inline double delta_zero(const DiracSpectrum& spec, int n) {
  double largest_negative = -std::numeric_limits<double>::infinity();
  bool found = false;
  for (double lam : spec.eigenvalues)
    if (lam < 0.0 && lam > largest_negative) {
      largest_negative = lam;
      found = true;
    }
  if (!found)
    throw std::invalid_argument("delta_zero: spectrum has no negative eigenvalue");
  return 0.5 * (1 - n) - largest_negative;
}

// Negates the eigenvalue list (the Clifford action of the radial direction
// exchanges the lambda and -lambda eigenspaces).
inline DiracSpectrum spectrum_flip(const DiracSpectrum& spec) {
  std::vector<double> ev(spec.eigenvalues.size());
  std::optional<std::vector<int>> mult;
  for (std::size_t i = 0; i < ev.size(); ++i)
    ev[ev.size() - 1 - i] = -spec.eigenvalues[i];
  if (spec.multiplicities) {
    mult.emplace(spec.multiplicities->size());
    for (std::size_t i = 0; i < mult->size(); ++i)
      (*mult)[mult->size() - 1 - i] = (*spec.multiplicities)[i];
  }
  DiracSpectrum out;
  out.eigenvalues = std::move(ev);
  out.multiplicities = std::move(mult);
  out.source = spec.source;
  return out;
}

// Maximal open subintervals of `interval` containing no critical cone weight.
inline std::vector<std::pair<double, double>> noncritical_window(
    const DiracSpectrum& spec, int n, std::pair<double, double> interval,
    double tol = 1e-9) {
  const auto [lo, hi] = interval;
  detail::require(std::isfinite(lo) && std::isfinite(hi),
                  "noncritical_window: interval must be bounded");
  std::vector<double> cuts;
  for (double lam : spec.eigenvalues) {
    const double nu = nu_exponent(lam, n);
    if (nu > lo + tol && nu < hi - tol) cuts.push_back(nu);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [tol](double a, double b) { return b - a <= tol; }),
             cuts.end());
  std::vector<std::pair<double, double>> windows;
  double left = lo;
  for (double c : cuts) {
    if (c - left > tol) windows.emplace_back(left, c);
    left = c;
  }
  if (hi - left > tol) windows.emplace_back(left, hi);
  return windows;
}

}  // namespace conegeo
