#include "rotopulse/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "rotopulse/analysis.hpp"
#include "rotopulse/dynamics.hpp"
#include "rotopulse/equilibria.hpp"
#include "rotopulse/version.hpp"

namespace rotopulse {

namespace {

void suite_lemma1(VerifyReport& rep) {
  RotopulsatorSpec spec;
  spec.orbit_class = OrbitClass::NegativeEllipticHyperbolic;
  spec.n = 3;
  spec.masses = {1.0, 1.0, 1.0};
  spec.rho0 = 1.3;
  spec.rhodot0 = 0.05;
  spec.phi0 = 0.2;
  spec.phidot0 = 0.4;
  spec.thetadot0 = 0.7;
  spec.beta = {0.3, 0.3, 0.3};

  const auto st = build_negative_hyperbolic(spec);
  IntegratorOptions opts;
  opts.rtol = 1e-11;
  opts.atol = 1e-13;
  const auto traj = integrate(st, 10.0, opts, spec);

  const double drift = hyperbolic_momentum_drift(traj);
  rep.checks.push_back({"boost_momentum_drift", drift <= 1e-8, drift, 1e-8,
                        "max |q4 v3 - q3 v4 - initial| along t in [0, 10]"});

  const double msum = 3.0;
  double worst = 0.0;
  for (const auto& s : traj.samples) {
    const double expect = -msum * *s.diag.rho_sq_phi_dot;
    worst = std::max(worst, std::abs(s.diag.wedge[5] - expect));
  }
  rep.checks.push_back({"wedge34_identity", worst <= 1e-10, worst, 1e-10,
                        "max |wedge_34 + (sum m) rho^2 phi'| along the run"});
}

void suite_theorem1(VerifyReport& rep, unsigned seed) {
  for (int n = 2; n <= 8; ++n) {
    const bool ok = phase_alignment_certificate(n, 1000, seed + n);
    rep.checks.push_back(
        {"distinct_offsets_excluded_n" + std::to_string(n), ok,
         ok ? 1.0 : 0.0, 1.0,
         "1000 random configurations, min-offset residual > 1e-12"});
  }
}

double ones_span_residual(const MassKernelReport& mk) {
  const int n = mk.n;
  std::vector<double> e(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> res = e;
  for (const auto& b : mk.kernel_basis) {
    double c = 0.0;
    for (int j = 0; j < n; ++j) c += b[j] * e[j];
    for (int j = 0; j < n; ++j) res[j] -= c * b[j];
  }
  double norm = 0.0;
  for (double x : res) norm += x * x;
  return std::sqrt(norm);
}

void suite_theorem2(VerifyReport& rep) {
  for (Curvature sigma : {Curvature::Sphere, Curvature::Hyperboloid}) {
    const auto radii = default_kernel_radii(sigma);
    const std::string sname =
        sigma == Curvature::Sphere ? "sigma=+1" : "sigma=-1";
    for (int n = 3; n <= 8; ++n) {
      const auto t_only = mass_kernel(n, sigma, radii, false);
      const auto with_b = mass_kernel(n, sigma, radii, true);
      const int expect_t = (n % 2 == 1) ? 1 : 2;

      const double gap_t = t_only.second_smallest_sv / t_only.largest_sv;
      const double gap_b = with_b.second_smallest_sv / with_b.largest_sv;
      const double ones_res =
          std::max(ones_span_residual(t_only), ones_span_residual(with_b));

      const bool ok = t_only.kernel_dim == expect_t &&
                      with_b.kernel_dim == 1 && gap_t > 1e-6 &&
                      gap_b > 1e-6 && ones_res <= 1e-8;
      rep.checks.push_back(
          {"mass_kernel_" + sname + "_n" + std::to_string(n), ok,
           std::min(gap_t, gap_b), 1e-6,
           "tangential dim " + std::to_string(t_only.kernel_dim) +
               " (expect " + std::to_string(expect_t) +
               "), with equality rows " + std::to_string(with_b.kernel_dim) +
               " (expect 1), equal-mass span residual " +
               std::to_string(ones_res)});
    }
  }
}

void suite_monotonicity(VerifyReport& rep) {
  // Hyperbolic side: one sign everywhere.
  const int nh = 10000;
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < nh; ++i) {
    const double f = static_cast<double>(i) / (nh - 1);
    const double x = std::exp(std::log(1e-6) + f * (std::log(10.0) - std::log(1e-6)));
    worst = std::max(worst,
                     interaction_xf_derivative(x, Curvature::Hyperboloid));
  }
  rep.checks.push_back(
      {"hyperboloid_slope_negative", worst < 0.0, worst, 0.0,
       "max of d/dx [x f] over 10^4 log-spaced x in (0, 10]"});

  // Sphere side: exactly one sign change, bracketed to 1e-6.
  const int ns = 4096;
  const double xlo = 1e-6, xhi = 2.0 - 1e-6;
  std::vector<double> xs(ns), ds(ns);
  for (int i = 0; i < ns; ++i) {
    xs[i] = xlo + (xhi - xlo) * static_cast<double>(i) / (ns - 1);
    ds[i] = interaction_xf_derivative(xs[i], Curvature::Sphere);
  }
  int changes = 0;
  double blo = 0.0, bhi = 0.0;
  for (int i = 0; i + 1 < ns; ++i)
    if (ds[i] < 0.0 && ds[i + 1] >= 0.0) {
      ++changes;
      blo = xs[i];
      bhi = xs[i + 1];
    } else if (ds[i] >= 0.0 && ds[i + 1] < 0.0) {
      ++changes;
    }
  rep.checks.push_back({"sphere_single_sign_change", changes == 1,
                        static_cast<double>(changes), 1.0,
                        "sign changes of d/dx [x f] on (0, 2)"});

  double xstar_sq = 0.0;
  if (changes == 1) {
    while (bhi - blo > 1e-6) {
      const double mid = 0.5 * (blo + bhi);
      if (interaction_xf_derivative(mid, Curvature::Sphere) < 0.0)
        blo = mid;
      else
        bhi = mid;
    }
    const double xstar = 0.5 * (blo + bhi);
    xstar_sq = xstar * xstar;
    const double dev = std::abs(xstar_sq - kSphereXfSignChangeSquared);
    rep.checks.push_back(
        {"sphere_threshold_location", dev <= 5e-6, dev, 5e-6,
         "|x*^2 - " + std::to_string(kSphereXfSignChangeSquared) +
             "| for the bisected sign change"});
  }

  nlohmann::ordered_json mono;
  mono["threshold_squared"] = xstar_sq;
  mono["candidates"] = {
      {"5/8",
       {{"value", kCandidateThresholdLowSquared},
        {"abs_diff", std::abs(xstar_sq - kCandidateThresholdLowSquared)},
        {"matches",
         std::abs(xstar_sq - kCandidateThresholdLowSquared) < 1e-4}}},
      {"8/5",
       {{"value", kCandidateThresholdHighSquared},
        {"abs_diff", std::abs(xstar_sq - kCandidateThresholdHighSquared)},
        {"matches",
         std::abs(xstar_sq - kCandidateThresholdHighSquared) < 1e-4}}}};
  mono["radius_bounds"] = {{"sqrt_5_32", kRadiusBoundSqrt5Over32},
                           {"sqrt_2_5", kRadiusBoundSqrt2Over5},
                           {"two_sqrt5_over_5", kRadiusBound2Sqrt5Over5}};
  mono["solver_r_hi_sphere"] = default_radius_range(Curvature::Sphere).second;
  rep.extra["monotonicity"] = std::move(mono);
}

}  // namespace

nlohmann::ordered_json VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = "verify";
  j["suite"] = suite;
  j["seed"] = seed;
  j["all_pass"] = all_pass;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name},
                   {"pass", c.pass},
                   {"value", c.value},
                   {"threshold", c.threshold},
                   {"detail", c.detail}});
  j["checks"] = std::move(arr);
  if (!extra.empty()) j["extra"] = extra;
  j["version"] = kVersion;
  return j;
}

VerifyReport run_verify_suite(const std::string& suite, unsigned seed) {
  VerifyReport rep;
  rep.suite = suite;
  rep.seed = seed;
  if (suite == "lemma1") {
    suite_lemma1(rep);
  } else if (suite == "theorem1") {
    suite_theorem1(rep, seed);
  } else if (suite == "theorem2") {
    suite_theorem2(rep);
  } else if (suite == "monotonicity") {
    suite_monotonicity(rep);
  } else if (suite == "all") {
    suite_lemma1(rep);
    suite_theorem1(rep, seed);
    suite_theorem2(rep);
    suite_monotonicity(rep);
  } else {
    throw DomainError("unknown verify suite '" + suite +
                      "'; expected lemma1, theorem1, theorem2, monotonicity "
                      "or all");
  }
  rep.all_pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                             [](const VerifyCheck& c) { return c.pass; });
  return rep;
}

}  // namespace rotopulse
