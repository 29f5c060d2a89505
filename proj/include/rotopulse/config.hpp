#pragma once

#include <string>

#include <json.hpp>

#include "rotopulse/dynamics.hpp"
#include "rotopulse/rotopulsator.hpp"

namespace rotopulse {

struct OutputPaths {
  std::string trajectory_csv = "trajectory.csv";
  std::string diagnostics_csv = "diagnostics.csv";
};

/// Everything one simulation run needs, as read from a JSON config.
struct RunConfig {
  RotopulsatorSpec spec;
  IntegratorOptions integrator;
  double t_end = 0.0;
  OutputPaths output;
};

/// Parse and validate a run config. Every violation throws Error with
/// a message naming the offending field and constraint.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

const char* orbit_class_name(OrbitClass c);
OrbitClass orbit_class_from_name(const std::string& name);

}  // namespace rotopulse
