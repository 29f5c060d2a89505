#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rotopulse/analysis.hpp"
#include "rotopulse/config.hpp"
#include "rotopulse/dynamics.hpp"
#include "rotopulse/equilibria.hpp"
#include "rotopulse/io.hpp"
#include "rotopulse/verify.hpp"
#include "rotopulse/version.hpp"

namespace rp = rotopulse;

namespace {

int run_simulate(const std::string& config_path, const std::string& out_dir) {
  const auto cfg = rp::load_run_config(config_path);
  const auto st = rp::build_state(cfg.spec);
  const auto traj = rp::integrate(st, cfg.t_end, cfg.integrator, cfg.spec);

  std::filesystem::create_directories(out_dir);
  const auto tpath =
      (std::filesystem::path(out_dir) / cfg.output.trajectory_csv).string();
  const auto dpath =
      (std::filesystem::path(out_dir) / cfg.output.diagnostics_csv).string();
  rp::write_trajectory_csv(tpath, traj);
  rp::write_diagnostics_csv(dpath, traj);

  const auto& last = traj.samples.back();
  std::printf("integrated %d bodies (%s) to t = %.6g in %ld accepted / %ld "
              "rejected steps\n",
              cfg.spec.n, rp::orbit_class_name(cfg.spec.orbit_class),
              last.state.t, traj.stats.steps_accepted,
              traj.stats.steps_rejected);
  std::printf("final max constraint residual %.3e, max tangency residual "
              "%.3e\n",
              last.diag.max_constraint_residual,
              last.diag.max_tangency_residual);
  std::printf("wrote %s and %s\n", tpath.c_str(), dpath.c_str());
  return 0;
}

int run_equilibrium(int sigma_flag, int n, double mass,
                    const std::vector<double>& masses_list, bool have_speed,
                    double speed, bool have_rmin, double rmin, bool have_rmax,
                    double rmax, bool diagnostic,
                    const std::string& json_path) {
  if (sigma_flag != 1 && sigma_flag != -1)
    throw rp::DomainError("--sigma must be +1 or -1");
  rp::EquilibriumProblem prob;
  prob.sigma =
      sigma_flag == 1 ? rp::Curvature::Sphere : rp::Curvature::Hyperboloid;
  prob.n = n;
  prob.diagnostic = diagnostic;
  if (!masses_list.empty()) {
    if (!diagnostic)
      throw rp::DomainError(
          "--masses is only available with --diagnostic; use --mass for the "
          "common value");
    prob.masses = masses_list;
  } else {
    prob.masses.assign(std::max(n, 0), mass);
  }
  if (!diagnostic && !have_speed)
    throw rp::DomainError("--angular-speed is required");
  prob.angular_speed = speed;

  const auto [dlo, dhi] = rp::default_radius_range(prob.sigma);
  prob.r_lo = have_rmin ? rmin : dlo;
  prob.r_hi = have_rmax ? rmax : dhi;

  const auto rep = rp::solve_equilibrium(prob);

  nlohmann::ordered_json out;
  out["command"] = "equilibrium";
  out["sigma"] = sigma_flag;
  out["n"] = n;
  out["masses"] = prob.masses;
  if (have_speed) {
    out["angular_speed"] = prob.angular_speed;
    out["angular_speed_squared"] = prob.angular_speed * prob.angular_speed;
  }
  out["r_min"] = prob.r_lo;
  out["r_max"] = prob.r_hi;
  out["diagnostic"] = prob.diagnostic;
  out["roots"] = rep.roots;
  out["root_count"] = rep.root_count;
  out["monotone_certificate"] = rep.monotone_certificate;
  out["bracket_tol"] = rep.bracket_tol;
  if (rep.diagnostic_tangential)
    out["diagnostic_tangential"] = *rep.diagnostic_tangential;
  out["version"] = rp::kVersion;

  std::cout << out.dump(2) << "\n";
  if (!json_path.empty()) {
    std::ofstream f(json_path);
    if (!f) throw rp::Error("cannot open '" + json_path + "' for writing");
    f << out.dump(2) << "\n";
  }
  return 0;
}

int run_verify(const std::string& suite, unsigned seed,
               const std::string& json_path) {
  const auto rep = rp::run_verify_suite(suite, seed);
  int passed = 0;
  for (const auto& c : rep.checks) {
    std::printf("%s  %-40s  value %.6e  threshold %.6e  %s\n",
                c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value,
                c.threshold, c.detail.c_str());
    if (c.pass) ++passed;
  }
  std::printf("suite %s: %d/%zu checks passed\n", rep.suite.c_str(), passed,
              rep.checks.size());
  if (!json_path.empty()) {
    std::ofstream f(json_path);
    if (!f) throw rp::Error("cannot open '" + json_path + "' for writing");
    f << rep.to_json().dump(2) << "\n";
  }
  return rep.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polygonal rotopulsator simulation and verification on the "
               "unit sphere and hyperboloid"};
  app.set_version_flag("--version", std::string("rotopulse ") + rp::kVersion);
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  auto* sim = app.add_subcommand(
      "simulate", "integrate a configured run and write CSV output");
  sim->add_option("--config", config_path, "JSON run configuration file")
      ->required();
  sim->add_option("--out-dir", out_dir, "output directory (default: .)");

  int eq_sigma = 0, eq_n = 0;
  double eq_mass = 1.0, eq_speed = 0.0, eq_rmin = 0.0, eq_rmax = 0.0;
  std::string eq_json;
  bool eq_diag = false;
  std::vector<double> eq_masses;
  auto* eq = app.add_subcommand(
      "equilibrium", "scan for rigidly rotating polygon radii");
  eq->add_option("--sigma", eq_sigma, "curvature sign, +1 or -1")->required();
  eq->add_option("--n", eq_n, "number of bodies")->required();
  eq->add_option("--mass", eq_mass, "common body mass (default 1)");
  eq->add_option("--angular-speed", eq_speed, "target rotation rate A > 0");
  eq->add_option("--r-min", eq_rmin, "lower end of the radius scan");
  eq->add_option("--r-max", eq_rmax, "upper end of the radius scan");
  eq->add_option("--json", eq_json, "write the JSON report to this path too");
  eq->add_flag("--diagnostic", eq_diag,
               "allow unequal masses; report residuals instead of roots");
  eq->add_option("--masses", eq_masses,
                 "comma-separated per-body masses (with --diagnostic)")
      ->delimiter(',');

  std::string suite, verify_json;
  unsigned seed = 1;
  auto* ver =
      app.add_subcommand("verify", "run a named verification suite");
  ver->add_option("suite", suite,
                  "one of: lemma1, theorem1, theorem2, monotonicity, all")
      ->required();
  ver->add_option("--seed", seed, "seed for randomized suites (default 1)");
  ver->add_option("--json", verify_json,
                  "write the JSON report to this path too");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sim) return run_simulate(config_path, out_dir);
    if (*eq)
      return run_equilibrium(eq_sigma, eq_n, eq_mass, eq_masses,
                             eq->count("--angular-speed") > 0, eq_speed,
                             eq->count("--r-min") > 0, eq_rmin,
                             eq->count("--r-max") > 0, eq_rmax, eq_diag,
                             eq_json);
    return run_verify(suite, seed, verify_json);
  } catch (const rp::SingularConfiguration& e) {
    std::cerr << "rotopulse: singular configuration: " << e.what() << "\n";
    return 3;
  } catch (const rp::StepUnderflow& e) {
    std::cerr << "rotopulse: step underflow: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "rotopulse: error: " << e.what() << "\n";
    return 2;
  }
}
