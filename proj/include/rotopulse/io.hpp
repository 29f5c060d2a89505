#pragma once

#include <string>

#include "rotopulse/dynamics.hpp"

namespace rotopulse {

/// One value formatted as %.16e (17 significant digits, round-trip
/// exact for double).
std::string format_full(double v);

/// Header: t,q1_1,q1_2,q1_3,q1_4,v1_1,...,vN_4 followed by one row per
/// sample.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

/// Header: t,max_constraint_residual,max_tangency_residual,wedge_12,
/// wedge_13,wedge_14,wedge_23,wedge_24,wedge_34,shape_deviation,
/// rho_sq_phi_dot. The last column prints nan for non-hyperbolic runs.
void write_diagnostics_csv(const std::string& path, const Trajectory& traj);

}  // namespace rotopulse
