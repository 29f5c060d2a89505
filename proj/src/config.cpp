#include "rotopulse/config.hpp"

#include <fstream>
#include <string>

namespace rotopulse {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw Error("config: " + field + " " + why);
}

const nlohmann::json* find(const nlohmann::json& j, const char* key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double get_number(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "must be a number");
  return j.get<double>();
}

double number_or(const nlohmann::json& obj, const char* key,
                 const std::string& prefix, double fallback) {
  const auto* p = find(obj, key);
  return p ? get_number(*p, prefix + key) : fallback;
}

std::vector<double> number_list(const nlohmann::json& j, int n,
                                const std::string& path) {
  if (!j.is_array()) bad(path, "must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(get_number(e, path + "[]"));
  if (static_cast<int>(out.size()) != n)
    bad(path, "must have exactly n = " + std::to_string(n) + " entries, has " +
                  std::to_string(out.size()));
  return out;
}

}  // namespace

const char* orbit_class_name(OrbitClass c) {
  switch (c) {
    case OrbitClass::PositiveElliptic:
      return "positive_elliptic";
    case OrbitClass::NegativeElliptic:
      return "negative_elliptic";
    case OrbitClass::NegativeHyperbolic:
      return "negative_hyperbolic";
    case OrbitClass::NegativeEllipticHyperbolic:
      return "negative_elliptic_hyperbolic";
  }
  return "?";
}

OrbitClass orbit_class_from_name(const std::string& name) {
  if (name == "positive_elliptic") return OrbitClass::PositiveElliptic;
  if (name == "negative_elliptic") return OrbitClass::NegativeElliptic;
  if (name == "negative_hyperbolic") return OrbitClass::NegativeHyperbolic;
  if (name == "negative_elliptic_hyperbolic")
    return OrbitClass::NegativeEllipticHyperbolic;
  throw Error("config: class '" + name +
              "' is not one of positive_elliptic, negative_elliptic, "
              "negative_hyperbolic, negative_elliptic_hyperbolic");
}

RunConfig parse_run_config(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("config: top level must be a JSON object");
  RunConfig cfg;

  const auto* cls = find(j, "class");
  if (!cls || !cls->is_string())
    bad("class", "is required and must be a string");
  cfg.spec.orbit_class = orbit_class_from_name(cls->get<std::string>());

  const auto* sig = find(j, "sigma");
  if (!sig || !sig->is_number_integer())
    bad("sigma", "is required and must be the integer +1 or -1");
  const int sv = sig->get<int>();
  if (sv != 1 && sv != -1) bad("sigma", "must be +1 or -1");
  if (sv != static_cast<int>(curvature_of(cfg.spec.orbit_class)))
    bad("sigma", "= " + std::to_string(sv) + " contradicts class " +
                     orbit_class_name(cfg.spec.orbit_class));

  const auto* np = find(j, "n");
  if (!np || !np->is_number_integer())
    bad("n", "is required and must be an integer");
  cfg.spec.n = np->get<int>();
  if (cfg.spec.n < 2) bad("n", "must be at least 2");

  const auto* mp = find(j, "masses");
  if (!mp) bad("masses", "is required");
  if (mp->is_number())
    cfg.spec.masses.assign(cfg.spec.n, mp->get<double>());
  else
    cfg.spec.masses = number_list(*mp, cfg.spec.n, "masses");
  for (double m : cfg.spec.masses)
    if (!(m > 0.0)) bad("masses", "must all be positive");

  const auto* ini = find(j, "initial");
  if (!ini || !ini->is_object())
    bad("initial", "is required and must be an object");
  const std::string pre = "initial.";
  const bool hyper = is_hyperbolic_class(cfg.spec.orbit_class);
  if (!hyper && !find(*ini, "r0"))
    bad("initial.r0", "is required for elliptic classes");
  if (hyper && !find(*ini, "rho0"))
    bad("initial.rho0", "is required for hyperbolic classes");

  cfg.spec.r0 = number_or(*ini, "r0", pre, 0.0);
  cfg.spec.rdot0 = number_or(*ini, "rdot0", pre, 0.0);
  cfg.spec.theta0 = number_or(*ini, "theta0", pre, 0.0);
  cfg.spec.thetadot0 = number_or(*ini, "thetadot0", pre, 0.0);
  cfg.spec.z1_0 = number_or(*ini, "z1_0", pre, 0.0);
  cfg.spec.z1dot0 = number_or(*ini, "z1dot0", pre, 0.0);
  cfg.spec.rho0 = number_or(*ini, "rho0", pre, 0.0);
  cfg.spec.rhodot0 = number_or(*ini, "rhodot0", pre, 0.0);
  cfg.spec.phi0 = number_or(*ini, "phi0", pre, 0.0);
  cfg.spec.phidot0 = number_or(*ini, "phidot0", pre, 0.0);

  if (const auto* zs = find(*ini, "z2_sign")) {
    if (!zs->is_number_integer()) bad("initial.z2_sign", "must be +1 or -1");
    cfg.spec.z2_sign = zs->get<int>();
    if (cfg.spec.z2_sign != 1 && cfg.spec.z2_sign != -1)
      bad("initial.z2_sign", "must be +1 or -1");
  }
  if (const auto* al = find(*ini, "alpha"))
    cfg.spec.alpha = number_list(*al, cfg.spec.n, "initial.alpha");
  if (const auto* be = find(*ini, "beta")) {
    if (be->is_number())
      cfg.spec.beta.assign(cfg.spec.n, be->get<double>());
    else
      cfg.spec.beta = number_list(*be, cfg.spec.n, "initial.beta");
  }

  const auto* ig = find(j, "integrator");
  if (!ig || !ig->is_object())
    bad("integrator", "is required and must be an object");
  if (const auto* me = find(*ig, "method")) {
    if (!me->is_string()) bad("integrator.method", "must be a string");
    const std::string m = me->get<std::string>();
    if (m == "rk45")
      cfg.integrator.method = IntegratorOptions::Method::AdaptiveRK45;
    else if (m == "rk4")
      cfg.integrator.method = IntegratorOptions::Method::FixedRK4;
    else
      bad("integrator.method", "must be 'rk45' or 'rk4', got '" + m + "'");
  }
  const auto* te = find(*ig, "t_end");
  if (!te) bad("integrator.t_end", "is required");
  cfg.t_end = get_number(*te, "integrator.t_end");
  if (!(cfg.t_end > 0.0)) bad("integrator.t_end", "must be positive");

  cfg.integrator.rtol = number_or(*ig, "rtol", "integrator.", 1e-10);
  cfg.integrator.atol = number_or(*ig, "atol", "integrator.", 1e-12);
  cfg.integrator.h0 = number_or(*ig, "h0", "integrator.", 0.0);
  cfg.integrator.sample_dt = number_or(*ig, "sample_dt", "integrator.", 0.0);
  cfg.integrator.min_step = number_or(*ig, "min_step", "integrator.", 1e-14);
  if (!(cfg.integrator.rtol > 0.0)) bad("integrator.rtol", "must be positive");
  if (!(cfg.integrator.atol > 0.0)) bad("integrator.atol", "must be positive");
  if (!(cfg.integrator.min_step > 0.0))
    bad("integrator.min_step", "must be positive");
  if (find(*ig, "h0") && !(cfg.integrator.h0 > 0.0))
    bad("integrator.h0", "must be positive when given");
  if (find(*ig, "sample_dt") && !(cfg.integrator.sample_dt > 0.0))
    bad("integrator.sample_dt", "must be positive when given");

  cfg.integrator.collision_eps =
      number_or(j, "collision_eps", "", 1e-12);
  if (!(cfg.integrator.collision_eps > 0.0))
    bad("collision_eps", "must be positive");

  if (const auto* op = find(j, "output")) {
    if (!op->is_object()) bad("output", "must be an object");
    if (const auto* tp = find(*op, "trajectory_csv")) {
      if (!tp->is_string()) bad("output.trajectory_csv", "must be a string");
      cfg.output.trajectory_csv = tp->get<std::string>();
    }
    if (const auto* dp = find(*op, "diagnostics_csv")) {
      if (!dp->is_string()) bad("output.diagnostics_csv", "must be a string");
      cfg.output.diagnostics_csv = dp->get<std::string>();
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("config: '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_run_config(j);
}

}  // namespace rotopulse
