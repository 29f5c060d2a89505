#pragma once

#include <optional>
#include <vector>

#include "rotopulse/rotopulsator.hpp"
#include "rotopulse/state.hpp"

namespace rotopulse {

/// Right-hand side of the equations of motion:
///   a_i = sum_{j != i} m_j (q_j - sigma chi_ij q_i)
///                      / (sigma - sigma chi_ij^2)^{3/2}
///         - sigma (v_i . v_i) q_i,      chi_ij = q_i . q_j.
/// The constraint term keeps a_i tangent: q_i . a_i = -(v_i . v_i)
/// holds identically. Throws SingularConfiguration(i, j) when a
/// pairwise denominator falls to or below collision_eps.
std::vector<Vec4> accelerations(const SystemState& state,
                                double collision_eps = 1e-12);

struct IntegratorOptions {
  enum class Method { AdaptiveRK45, FixedRK4 };
  Method method = Method::AdaptiveRK45;

  double rtol = 1e-10;
  double atol = 1e-12;
  double h0 = 0.0;        // initial (adaptive) or base (fixed) step; <= 0 picks a default
  double sample_dt = 0.0; // output spacing; <= 0 selects (t_end - t0)/1000
  double min_step = 1e-14;
  double collision_eps = 1e-12;
};

struct Trajectory {
  struct Sample {
    SystemState state;
    Diagnostics diag;
  };
  std::vector<Sample> samples;
  IntegratorStats stats;
  // The ansatz the initial state was built from, when known; enables
  // the shape and rho^2 phi' diagnostics.
  std::optional<RotopulsatorSpec> spec;
};

/// Diagnostics for one state. When a spec is supplied the shape
/// deviation is evaluated against it, and for hyperbolic classes the
/// first body's q4 v3 - q3 v4 is recorded.
Diagnostics diagnostics_of(const SystemState& state,
                           const RotopulsatorSpec* spec = nullptr);

/// Integrate from state.t to t_end, emitting samples at t0 + k*sample_dt
/// and at t_end exactly. Adaptive mode uses an embedded 5(4) pair with
/// the mixed error norm  err = sqrt(mean((dy / (atol + rtol*max|y|))^2)),
/// step factor clamp(0.9 err^{-1/5}, 0.2, 5), and steps capped to land
/// on sample boundaries. Fixed mode takes classical 4th-order steps of
/// near-h0 size subdividing each sample interval evenly. After every
/// accepted step positions are rescaled onto the manifold and
/// velocities re-tangented. Throws DomainError (t_end <= t0 or bad
/// tolerances), SingularConfiguration, or StepUnderflow.
Trajectory integrate(const SystemState& state, double t_end,
                     const IntegratorOptions& opts = {},
                     const std::optional<RotopulsatorSpec>& spec = {});

}  // namespace rotopulse
