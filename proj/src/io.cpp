#include "rotopulse/io.hpp"

#include <cstdio>
#include <fstream>
#include <string>

namespace rotopulse {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  auto out = open_out(path);
  if (traj.samples.empty()) throw DegenerateSize("trajectory has no samples");
  const std::size_t n = traj.samples.front().state.size();
  out << "t";
  for (std::size_t i = 1; i <= n; ++i) {
    for (int k = 1; k <= 4; ++k) out << ",q" << i << "_" << k;
    for (int k = 1; k <= 4; ++k) out << ",v" << i << "_" << k;
  }
  out << "\n";
  for (const auto& s : traj.samples) {
    out << format_full(s.state.t);
    for (const auto& b : s.state.bodies) {
      for (int k = 0; k < 4; ++k) out << "," << format_full(b.q[k]);
      for (int k = 0; k < 4; ++k) out << "," << format_full(b.v[k]);
    }
    out << "\n";
  }
  if (!out) throw Error("write to '" + path + "' failed");
}

void write_diagnostics_csv(const std::string& path, const Trajectory& traj) {
  auto out = open_out(path);
  out << "t,max_constraint_residual,max_tangency_residual,"
         "wedge_12,wedge_13,wedge_14,wedge_23,wedge_24,wedge_34,"
         "shape_deviation,rho_sq_phi_dot\n";
  for (const auto& s : traj.samples) {
    out << format_full(s.state.t) << ","
        << format_full(s.diag.max_constraint_residual) << ","
        << format_full(s.diag.max_tangency_residual);
    for (int k = 0; k < 6; ++k) out << "," << format_full(s.diag.wedge[k]);
    out << "," << format_full(s.diag.shape_deviation) << ",";
    if (s.diag.rho_sq_phi_dot)
      out << format_full(*s.diag.rho_sq_phi_dot);
    else
      out << "nan";
    out << "\n";
  }
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace rotopulse
