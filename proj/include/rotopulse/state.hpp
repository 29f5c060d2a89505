#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "rotopulse/geometry.hpp"

namespace rotopulse {

struct Body {
  Vec4 q;  // position on the manifold
  Vec4 v;  // velocity, tangent at q
};

/// Full phase-space state of the n-body system at one instant.
struct SystemState {
  double t = 0.0;
  std::vector<Body> bodies;
  std::vector<double> masses;
  Curvature sigma = Curvature::Sphere;

  std::size_t size() const { return bodies.size(); }

  /// Throws when the state violates its invariants: matching sizes,
  /// positive masses, finite components, |q.q - sigma| <= 1e-9,
  /// |q.v| <= 1e-9, and q4 > 0 on the hyperboloid.
  void validate() const;
};

/// Per-sample conserved-quantity and shape monitors.
struct Diagnostics {
  double max_constraint_residual = 0.0;  // max_i |q_i.q_i - sigma|
  double max_tangency_residual = 0.0;    // max_i |q_i.v_i|
  Bivector wedge;
  double shape_deviation = 0.0;
  // q4 v3 - q3 v4 of the first body; only meaningful for hyperbolic
  // classes, where it equals rho^2 phi'.
  std::optional<double> rho_sq_phi_dot;
};

struct IntegratorStats {
  long steps_accepted = 0;
  long steps_rejected = 0;
  double min_step = std::numeric_limits<double>::infinity();
};

}  // namespace rotopulse
