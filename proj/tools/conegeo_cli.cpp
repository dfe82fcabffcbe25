// Command-line front end: config ingestion, subcommand dispatch, and
// machine-readable JSON reports (CSV for bulk samples).
//
// Exit codes: 0 success, 2 hypothesis violation (critical weight, negative
// Yamabe invariant, non-contracting perturbation), 1 internal or config error.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "conegeo/conegeo.hpp"

using json = nlohmann::json;
using namespace conegeo;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitHypothesis = 2;

struct HypothesisViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All config keys, per subcommand, with a type tag for validation.
enum class KeyType { Number, Integer, String, Boolean, NumberArray };

const std::map<std::string, std::map<std::string, KeyType>>& key_table() {
  static const std::map<std::string, std::map<std::string, KeyType>> table = {
      {"mass",
       {{"chart", KeyType::String},
        {"m", KeyType::Number},
        {"normalization", KeyType::String},
        {"radii", KeyType::NumberArray},
        {"quad_resolution", KeyType::Integer},
        {"fd_step_factor", KeyType::Number},
        {"out", KeyType::String},
        {"csv", KeyType::String}}},
      {"cone-geom",
       {{"n", KeyType::Integer},
        {"b", KeyType::Number},
        {"scal_min", KeyType::Number},
        {"volume", KeyType::Number},
        {"radii", KeyType::NumberArray},
        {"out", KeyType::String},
        {"csv", KeyType::String}}},
      {"horn-check",
       {{"n", KeyType::Integer},
        {"b", KeyType::Number},
        {"scal_min", KeyType::Number},
        {"volume", KeyType::Number},
        {"yamabe", KeyType::Number},
        {"r", KeyType::Number},
        {"out", KeyType::String}}},
      {"dirac-modes",
       {{"n", KeyType::Integer},
        {"lambda", KeyType::Number},
        {"delta", KeyType::Number},
        {"r0", KeyType::Number},
        {"mu", KeyType::Number},
        {"out", KeyType::String},
        {"csv", KeyType::String}}},
      {"indicial",
       {{"n", KeyType::Integer},
        {"sphere", KeyType::Boolean},
        {"kmax", KeyType::Integer},
        {"eigenvalues", KeyType::NumberArray},
        {"delta", KeyType::Number},
        {"out", KeyType::String}}},
      {"weighted-check",
       {{"n", KeyType::Integer},
        {"lambda", KeyType::Number},
        {"delta", KeyType::Number},
        {"out", KeyType::String}}},
      {"schwarzschild-horn",
       {{"m", KeyType::Number},
        {"sigma_lo", KeyType::Number},
        {"sigma_hi", KeyType::Number},
        {"out", KeyType::String}}},
      {"selftest", {{"out", KeyType::String}}},
  };
  return table;
}

bool type_matches(const json& v, KeyType t) {
  switch (t) {
    case KeyType::Number: return v.is_number();
    case KeyType::Integer: return v.is_number_integer();
    case KeyType::String: return v.is_string();
    case KeyType::Boolean: return v.is_boolean();
    case KeyType::NumberArray:
      if (!v.is_array()) return false;
      for (const auto& e : v)
        if (!e.is_number()) return false;
      return true;
  }
  return false;
}

// Validates a config object against the key table; throws with a JSON
// pointer to the offending entry.
void validate_config(const json& cfg, const std::string& subcommand) {
  if (!cfg.is_object())
    throw std::runtime_error("config: root must be an object (at /)");
  const auto& allowed = key_table().at(subcommand);
  for (const auto& [key, value] : cfg.items()) {
    auto it = allowed.find(key);
    if (it == allowed.end())
      throw std::runtime_error("config: unknown key at /" + key);
    if (!type_matches(value, it->second))
      throw std::runtime_error("config: wrong type at /" + key);
  }
}

void emit(const json& report, const std::optional<std::string>& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path) {
    std::ofstream f(*out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + *out_path);
    f << text;
  } else {
    std::cout << text;
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open data file " + path);
  f << text;
}

// ---------------------------------------------------------------- mass

int run_mass(const json& cfg) {
  const std::string chart_name = cfg.value("chart", "schwarzschild");
  const double m = cfg.value("m", 1.0);
  const std::string norm_name = cfg.value("normalization", "standard");
  std::vector<double> radii =
      cfg.value("radii", std::vector<double>{25.0, 50.0, 100.0, 200.0});
  const int quad_resolution = cfg.value("quad_resolution", 24);
  const double fd_step_factor = cfg.value("fd_step_factor", 1e-4);

  MetricChart chart;
  if (chart_name == "flat") {
    chart = flat_chart(3);
  } else if (chart_name == "schwarzschild") {
    chart = schwarzschild_chart(m, SchwarzschildSign::Positive);
  } else if (chart_name == "schwarzschild-negative") {
    chart = schwarzschild_chart(m, SchwarzschildSign::PaperNegative);
    for (double R : radii)
      if (R <= 2.0 * m)
        throw HypothesisViolation(
            "radius schedule enters the excluded region rho <= 2m");
  } else {
    throw std::runtime_error("unknown chart '" + chart_name + "'");
  }

  MassNormalization norm;
  if (norm_name == "standard")
    norm = MassNormalization::Standard;
  else if (norm_name == "paper")
    norm = MassNormalization::Paper;
  else
    throw std::runtime_error("unknown normalization '" + norm_name + "'");

  auto res = adm_mass(chart, radii, norm, quad_resolution, fd_step_factor);

  json report;
  report["subcommand"] = "mass";
  report["formula"] =
      "m = lim_{R->inf} c int_{S_R} (d_i g_ji - d_j g_ii) nu^j dA";
  report["chart"] = chart_name;
  report["m"] = m;
  report["normalization"] = norm_name;
  report["normalization_constant"] = normalization_constant(norm, chart.n);
  report["radii"] = radii;
  json flux = json::array();
  for (const auto& [R, f] : res.raw_flux) flux.push_back({R, f});
  report["raw_flux"] = flux;
  report["limit"] = res.limit;
  report["fit_error"] = res.fit_error;

  if (cfg.contains("csv"))
    write_file(cfg["csv"].get<std::string>(), mass_to_csv(res, chart.n));
  emit(report, cfg.contains("out")
                   ? std::optional<std::string>(cfg["out"].get<std::string>())
                   : std::nullopt);
  return kExitOk;
}

// ----------------------------------------------------------- cone-geom

HornMetric horn_from(const json& cfg) {
  const int n = cfg.value("n", 3);
  CrossSection cross = CrossSection::round_sphere(n - 1);
  if (cfg.contains("scal_min")) {
    cross.scal_min = cfg["scal_min"].get<double>();
    cross.sectional_constant.reset();
  }
  if (cfg.contains("volume")) {
    cross.volume = cfg["volume"].get<double>();
    cross.sectional_constant.reset();
  }
  return HornMetric{n, cross, cfg.value("b", 1.0)};
}

int run_cone_geom(const json& cfg) {
  auto horn = horn_from(cfg);
  std::vector<double> radii =
      cfg.value("radii", std::vector<double>{0.1, 0.5, 1.0});

  json report;
  report["subcommand"] = "cone-geom";
  report["formula"] =
      "Scal = Scal_N / r^{2b} - b(n-1)(nb-2)/r^2; H = (n-1)b/r; "
      "Area = r^{(n-1)b} Vol(N)";
  report["n"] = horn.n;
  report["b"] = horn.b;
  report["scal_min"] = horn.cross.scal_min;
  report["volume"] = horn.cross.volume;
  json samples = json::array();
  std::string csv = "r,scal,mean_curvature,area\n";
  for (double r : radii) {
    json s;
    s["r"] = r;
    s["scal"] = horn_scalar_curvature(horn, r);
    s["mean_curvature"] = horn_mean_curvature(horn, r);
    s["area"] = horn_area(horn, r);
    samples.push_back(s);
    csv += std::to_string(r) + ',' + std::to_string(s["scal"].get<double>()) +
           ',' + std::to_string(s["mean_curvature"].get<double>()) + ',' +
           std::to_string(s["area"].get<double>()) + '\n';
  }
  report["samples"] = samples;

  if (cfg.contains("csv")) write_file(cfg["csv"].get<std::string>(), csv);
  emit(report, cfg.contains("out")
                   ? std::optional<std::string>(cfg["out"].get<std::string>())
                   : std::nullopt);
  return kExitOk;
}

// ----------------------------------------------------------- horn-check

int run_horn_check(const json& cfg) {
  auto horn = horn_from(cfg);
  const double yamabe = cfg.value("yamabe", yamabe_round_sphere(horn.n - 1));
  const double r = cfg.value("r", 0.1);
  if (yamabe < 0.0)
    throw HypothesisViolation("Yamabe invariant < 0 violates the hypothesis");

  auto data = horn_boundary_data(horn, r, yamabe);
  auto check = herzlich_condition(data, horn.n);

  json report;
  report["subcommand"] = "horn-check";
  report["formula"] = "H <= Area^{-1/(n-1)} sqrt((n-1)/(n-2) Y)";
  report["n"] = horn.n;
  report["b"] = horn.b;
  report["yamabe"] = yamabe;
  report["r"] = r;
  report["area"] = data.area;
  report["lhs"] = check.lhs;
  report["rhs"] = check.rhs;
  report["satisfied"] = check.satisfied;
  report["margin"] = check.margin;
  if (horn.b > 1.0 && yamabe > 0.0) {
    report["threshold"] = horn_threshold(horn, yamabe);
    auto interval = exact_horn_scal_implication(horn);
    json scal;
    scal["all_r"] = interval.all_r;
    scal["empty"] = interval.empty;
    scal["r_max"] = interval.r_max;
    report["scal_nonnegative_interval"] = scal;
  }
  emit(report, cfg.contains("out")
                   ? std::optional<std::string>(cfg["out"].get<std::string>())
                   : std::nullopt);
  return kExitOk;
}

// ---------------------------------------------------------- dirac-modes

int run_dirac_modes(const json& cfg) {
  const int n = cfg.value("n", 3);
  const double lambda = cfg.value("lambda", 1.0);
  const double r0 = cfg.value("r0", 0.5);
  const double mu = cfg.value("mu", 2.0);
  const double nu = nu_exponent(lambda, n);
  const double delta = cfg.value("delta", nu - 1.0);
  if (std::abs(delta - nu) <= 1e-9)
    throw HypothesisViolation("delta is a critical weight for this mode");
  if (!(mu > delta - 1.0))
    throw HypothesisViolation("source r^mu is not in the weighted space");

  auto v = power_mode(lambda, n, 1.0, mu, 0.0, 2.0 * r0);
  auto g = green_mode(lambda, n, delta, r0, v);

  json report;
  report["subcommand"] = "dirac-modes";
  report["formula"] =
      "u' + ((n-1)/2 + lambda) u / r = v; u(r) = r^nu int_{2 r0}^r s^{-nu} "
      "v(s) ds";
  report["n"] = n;
  report["lambda"] = lambda;
  report["nu"] = nu;
  report["delta"] = delta;
  report["r0"] = r0;
  report["mu"] = mu;
  report["boundary_value"] = g.u(2.0 * r0);
  report["constant"] = g.constant;
  report["norm_u"] = g.norm_u;
  report["norm_v"] = g.norm_v;
  report["bound_holds"] = g.bound_holds;

  if (cfg.contains("csv"))
    write_file(cfg["csv"].get<std::string>(),
               mode_to_csv(g.u, Grid1D::log_uniform(0.01 * r0, 2.0 * r0, 200)));
  emit(report, cfg.contains("out")
                   ? std::optional<std::string>(cfg["out"].get<std::string>())
                   : std::nullopt);
  return kExitOk;
}

// ------------------------------------------------------------- indicial

int run_indicial(const json& cfg) {
  const int n = cfg.value("n", 3);
  DiracSpectrum spec;
  if (cfg.contains("eigenvalues")) {
    spec = DiracSpectrum::from_eigenvalues(
        cfg["eigenvalues"].get<std::vector<double>>());
  } else {
    spec = sphere_spectrum(n, cfg.value("kmax", 3));
  }
  const double delta = cfg.value("delta", 0.0);

  json report;
  report["subcommand"] = "indicial";
  report["formula"] = "nu_j = -(n-1)/2 - lambda_j; delta critical iff delta "
                      "= nu_j for some j";
  report["n"] = n;
  report["eigenvalues"] = spec.eigenvalues;
  std::vector<double> nus;
  for (double lam : spec.eigenvalues) nus.push_back(nu_exponent(lam, n));
  report["nu"] = nus;
  report["delta"] = delta;
  report["critical_at_cone"] = is_critical_at_cone(delta, spec, n);
  report["critical_at_infinity"] = is_critical_at_infinity(delta, n);
  bool has_negative = false;
  for (double lam : spec.eigenvalues) has_negative |= lam < 0.0;
  if (has_negative) report["delta0"] = delta_zero(spec, n);
  emit(report, cfg.contains("out")
                   ? std::optional<std::string>(cfg["out"].get<std::string>())
                   : std::nullopt);
  return kExitOk;
}

// -------------------------------------------------------- weighted-check

int run_weighted_check(const json& cfg) {
  const int n = cfg.value("n", 3);
  const double lambda = cfg.value("lambda", 1.0);
  const double a = 0.5 * (n - 1) + lambda;
  const double delta = cfg.value("delta", -a + 1.0);
  if (std::abs(a + delta) <= 1e-9)
    throw HypothesisViolation("delta is a critical weight for this mode");

  // fixed smooth test mode: taper * (sin s + 0.5 cos(1.3 s) + 0.25)
  auto taper = [](double s) {
    const double t = (s + 6.5);
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
  };
  auto taper_d = [](double s) {
    const double t = (s + 6.5);
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return 30.0 * t * t * (1.0 - t) * (1.0 - t);
  };
  LogMode u;
  u.lambda = lambda;
  u.n = n;
  u.s_lo = -7.0;
  u.s_hi = 0.0;
  u.value = [=](double s) {
    return taper(s) * (std::sin(s) + 0.5 * std::cos(1.3 * s) + 0.25);
  };
  u.deriv = [=](double s) {
    return taper_d(s) * (std::sin(s) + 0.5 * std::cos(1.3 * s) + 0.25) +
           taper(s) * (std::cos(s) - 0.65 * std::sin(1.3 * s));
  };

  auto id = estimate_identity_check(u, lambda, n, delta, {}, 7001);
  auto ineq = estimate_inequality_check(u, lambda, n, delta);

  json report;
  report["subcommand"] = "weighted-check";
  report["formula"] =
      "(a+delta) int (chi u)^2 e^{-2 delta s} = int chi^2 u v e^{-2 delta s} "
      "+ 1/2 int (chi^2)' u^2 e^{-2 delta s}, a = (n-1)/2 + lambda";
  report["n"] = n;
  report["lambda"] = lambda;
  report["delta"] = delta;
  report["identity"] = {{"lhs", id.lhs}, {"rhs", id.rhs}, {"gap", id.gap}};
  report["inequality"] = {{"lhs", ineq.lhs},
                          {"rhs", ineq.rhs},
                          {"constant", ineq.constant},
                          {"slack", ineq.slack},
                          {"holds", ineq.holds}};
  emit(report, cfg.contains("out")
                   ? std::optional<std::string>(cfg["out"].get<std::string>())
                   : std::nullopt);
  return kExitOk;
}

// --------------------------------------------------- schwarzschild-horn

int run_schwarzschild_horn(const json& cfg) {
  const double m = cfg.value("m", 1.0);
  const double sigma_lo = cfg.value("sigma_lo", 1e-6 * m);
  const double sigma_hi = cfg.value("sigma_hi", 1e-4 * m);
  auto fit = horn_expansion_fit(m, {sigma_lo, sigma_hi});

  json report;
  report["subcommand"] = "schwarzschild-horn";
  report["formula"] = "warp = c sigma^{4/3}, c = (12^{4/3}/4) m^{2/3}";
  report["m"] = m;
  report["sigma_window"] = {sigma_lo, sigma_hi};
  report["exponent"] = fit.exponent;
  report["c"] = fit.c;
  report["c_expected"] =
      std::pow(12.0, 4.0 / 3.0) / 4.0 * std::pow(m, 2.0 / 3.0);
  report["residual"] = fit.residual;
  emit(report, cfg.contains("out")
                   ? std::optional<std::string>(cfg["out"].get<std::string>())
                   : std::nullopt);
  return kExitOk;
}

// -------------------------------------------------------------- selftest

int run_selftest(const json& cfg) {
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool ok) {
    checks.push_back({{"name", name}, {"pass", ok}});
    all = all && ok;
  };

  {
    auto res = adm_mass(flat_chart(3), {20.0, 40.0, 80.0},
                        MassNormalization::Standard);
    record("flat chart has zero mass", std::abs(res.limit) <= 1e-8);
  }
  {
    auto res =
        adm_mass(schwarzschild_chart(2.0, SchwarzschildSign::Positive),
                 {25.0, 50.0, 100.0, 200.0}, MassNormalization::Standard);
    record("positive family recovers m", std::abs(res.limit - 2.0) <= 0.02);
  }
  {
    bool ok = true;
    for (int n = 3; n <= 7 && ok; ++n) {
      const auto spec = sphere_spectrum(n, 40);
      for (double x = -10.0; x <= 10.0 + 1e-12; x += 0.25)
        ok = ok && (is_critical_at_cone(x, spec, n) ==
                    is_critical_at_infinity(x, n));
    }
    record("round-sphere critical sets agree", ok);
  }
  {
    bool ok = true;
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> lam(-3.0, 3.0), cd(-2.0, 2.0);
    for (int trial = 0; trial < 100 && ok; ++trial) {
      const double lambda = lam(rng);
      const double c0 = cd(rng), c1 = cd(rng);
      auto u = make_mode(
          lambda, 3, 0.1, 1.0, [=](double r) { return c0 + c1 * r; },
          [=](double r) { (void)r; return c1; });
      auto v = dirac_mode_apply(u);
      auto u2 = dirac_mode_solve(lambda, 3, v, {0.5, u(0.5)});
      for (int i = 0; i < 20; ++i) {
        const double r = 0.12 + 0.86 * i / 19.0;
        ok = ok && std::abs(u(r) - u2(r)) <= 1e-8;
      }
    }
    record("mode solve inverts mode apply", ok);
  }
  {
    bool ok = true;
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> cd(-2.0, 2.0);
    for (double lambda : {1.0, -2.0}) {
      const double nu = nu_exponent(lambda, 3);
      for (int trial = 0; trial < 25 && ok; ++trial) {
        const double c0 = cd(rng), c1 = cd(rng);
        auto v = make_mode(
            lambda, 3, 0.0, 1.0, [=](double r) { return c0 + c1 * r; },
            [=](double r) { (void)r; return c1; });
        auto g = green_mode(lambda, 3, nu - 1.37, 0.5, v);
        ok = ok && std::abs(g.u(1.0)) <= 1e-12 && g.bound_holds;
      }
    }
    record("mode Green operator: boundary and weighted bound", ok);
  }
  {
    auto horn = HornMetric{3, CrossSection::round_sphere(2), 1.5};
    const double t = horn_threshold(horn, yamabe_round_sphere(2));
    record("horn threshold closed form",
           std::abs(t - 4.0 / 9.0) <= 1e-9);
    BoundaryData flat{2, 4.0 * M_PI, 2.0, 8.0 * M_PI};
    auto eq = herzlich_condition(flat, 3);
    record("flat-sphere equality case",
           std::abs(eq.lhs - eq.rhs) <= 1e-12 && eq.satisfied);
  }
  {
    bool ok = true;
    auto horn = HornMetric{4, CrossSection::round_sphere(3), 1.7};
    for (double r : {0.1, 0.7, 2.0}) {
      const double dlog = central_difference(
          [&](double x) { return std::log(horn_area(horn, x)); }, r, 1e-4 * r);
      ok = ok && std::abs(dlog - horn_mean_curvature(horn, r)) <=
                     1e-8 * horn_mean_curvature(horn, r);
    }
    record("d/dr log Area equals mean curvature", ok);
  }

  json report;
  report["subcommand"] = "selftest";
  report["formula"] = "invariant suite across all modules";
  report["checks"] = checks;
  report["all_pass"] = all;
  emit(report, cfg.contains("out")
                   ? std::optional<std::string>(cfg["out"].get<std::string>())
                   : std::nullopt);
  return all ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale checks for cone and horn geometry"};
  app.require_subcommand(1);

  // flag storage; every flag mirrors a config key one-to-one
  std::map<std::string, json> flags;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option_function<std::string>(
        "--config", [&](const std::string& v) { config_path = v; },
        "JSON config file; overrides flags");
    sub->add_option_function<std::string>(
        "--out", [&](const std::string& v) { flags["out"] = v; },
        "write the JSON report here instead of stdout");
  };
  auto add_num = [&](CLI::App* sub, const std::string& key,
                     const std::string& help) {
    sub->add_option_function<double>(
        "--" + key, [&flags, key](double v) { flags[key] = v; }, help);
  };
  auto add_int = [&](CLI::App* sub, const std::string& key,
                     const std::string& help) {
    sub->add_option_function<int>(
        "--" + key, [&flags, key](int v) { flags[key] = v; }, help);
  };
  auto add_str = [&](CLI::App* sub, const std::string& key,
                     const std::string& help) {
    sub->add_option_function<std::string>(
        "--" + key, [&flags, key](const std::string& v) { flags[key] = v; },
        help);
  };
  auto add_vec = [&](CLI::App* sub, const std::string& key,
                     const std::string& help) {
    sub->add_option_function<std::vector<double>>(
        "--" + key,
        [&flags, key](const std::vector<double>& v) { flags[key] = v; }, help);
  };
  auto add_flag = [&](CLI::App* sub, const std::string& key,
                      const std::string& help) {
    sub->add_flag_function(
        "--" + key, [&flags, key](std::int64_t c) { flags[key] = c > 0; },
        help);
  };

  auto* mass = app.add_subcommand("mass", "ADM mass of a chart");
  add_common(mass);
  add_str(mass, "chart", "flat | schwarzschild | schwarzschild-negative");
  add_num(mass, "m", "mass parameter of the chart family");
  add_str(mass, "normalization", "paper | standard");
  add_vec(mass, "radii", "radius schedule for the flux extrapolation");
  add_int(mass, "quad_resolution", "sphere quadrature resolution");
  add_num(mass, "fd_step_factor", "finite-difference step as a fraction of R");
  add_str(mass, "csv", "write flux samples to this CSV file");

  auto* geom = app.add_subcommand("cone-geom", "cone/horn model geometry");
  add_common(geom);
  add_int(geom, "n", "ambient dimension");
  add_num(geom, "b", "horn exponent (1 = cone)");
  add_num(geom, "scal_min", "cross-section scalar curvature minimum");
  add_num(geom, "volume", "cross-section volume");
  add_vec(geom, "radii", "radii to sample");
  add_str(geom, "csv", "write geometry samples to this CSV file");

  auto* hc = app.add_subcommand("horn-check",
                                "boundary mean-curvature condition on a horn");
  add_common(hc);
  add_int(hc, "n", "ambient dimension");
  add_num(hc, "b", "horn exponent");
  add_num(hc, "scal_min", "cross-section scalar curvature minimum");
  add_num(hc, "volume", "cross-section volume");
  add_num(hc, "yamabe", "cross-section Yamabe invariant");
  add_num(hc, "r", "slice radius");

  auto* dm = app.add_subcommand("dirac-modes",
                                "mode Green operator with a power-law source");
  add_common(dm);
  add_int(dm, "n", "ambient dimension");
  add_num(dm, "lambda", "cross-section eigenvalue");
  add_num(dm, "delta", "weight");
  add_num(dm, "r0", "outer radius / 2");
  add_num(dm, "mu", "source exponent: v = r^mu");
  add_str(dm, "csv", "write mode samples to this CSV file");

  auto* ind = app.add_subcommand("indicial", "indicial roots and criticality");
  add_common(ind);
  add_int(ind, "n", "ambient dimension");
  add_flag(ind, "sphere", "use the round-sphere spectrum");
  add_int(ind, "kmax", "spectrum truncation order");
  add_vec(ind, "eigenvalues", "explicit eigenvalue list");
  add_num(ind, "delta", "weight to classify");

  auto* wc = app.add_subcommand("weighted-check",
                                "log-variable estimate identity/inequality");
  add_common(wc);
  add_int(wc, "n", "ambient dimension");
  add_num(wc, "lambda", "cross-section eigenvalue");
  add_num(wc, "delta", "weight");

  auto* sh = app.add_subcommand("schwarzschild-horn",
                                "near-horizon horn expansion fit");
  add_common(sh);
  add_num(sh, "m", "mass parameter");
  add_num(sh, "sigma_lo", "window lower end");
  add_num(sh, "sigma_hi", "window upper end");

  auto* st = app.add_subcommand("selftest", "run the invariant suite");
  add_common(st);

  CLI11_PARSE(app, argc, argv);
  const std::string sub = app.get_subcommands().front()->get_name();

  try {
    json cfg = json::object();
    for (const auto& [k, v] : flags) cfg[k] = v;
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f)
        throw std::runtime_error("cannot open config file " + config_path);
      json file_cfg = json::parse(f);
      validate_config(file_cfg, sub);
      for (const auto& [k, v] : file_cfg.items()) cfg[k] = v;
    }
    validate_config(cfg, sub);

    if (sub == "mass") return run_mass(cfg);
    if (sub == "cone-geom") return run_cone_geom(cfg);
    if (sub == "horn-check") return run_horn_check(cfg);
    if (sub == "dirac-modes") return run_dirac_modes(cfg);
    if (sub == "indicial") return run_indicial(cfg);
    if (sub == "weighted-check") return run_weighted_check(cfg);
    if (sub == "schwarzschild-horn") return run_schwarzschild_horn(cfg);
    if (sub == "selftest") return run_selftest(cfg);
    std::cerr << "unknown subcommand " << sub << "\n";
    return kExitError;
  } catch (const HypothesisViolation& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
