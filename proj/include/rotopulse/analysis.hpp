#pragma once

#include <vector>

#include "rotopulse/dynamics.hpp"

namespace rotopulse {

/// Largest deviation of q4 v3 - q3 v4 (first body) from its initial
/// value across a hyperbolic-class trajectory. This combination is the
/// boost momentum per unit mass and must stay constant.
double hyperbolic_momentum_drift(const Trajectory& traj);

/// Randomized exclusion check: sample configurations with distinct
/// phase offsets and verify the phase-coherence residual at the
/// minimal-offset body is strictly positive (> 1e-12) in every trial.
/// Returns true when no counterexample is found.
bool phase_alignment_certificate(int n, int trials, unsigned seed);

struct MassKernelReport {
  int n = 0;
  Curvature sigma = Curvature::Sphere;
  std::vector<double> r_samples;
  int matrix_rows = 0;
  int kernel_dim = 0;
  // Orthonormal kernel basis vectors, each of length n, sign-fixed so
  // the first nonzero entry is positive.
  std::vector<std::vector<double>> kernel_basis;
  // Smallest singular value above the null cluster, and the largest;
  // their ratio certifies the kernel dimension is well separated.
  double second_smallest_sv = 0.0;
  double largest_sv = 0.0;
};

/// Stack the tangential criterion rows for several radii (and, when
/// include_b_equality is set, the rows b_i - b_{i+1}) into one matrix
/// acting on the mass vector, and report its nullspace. For a regular
/// polygon the tangential-only kernel is the equal-mass line for odd n
/// and the two-parameter alternating family for even n; adding the b
/// equality rows cuts it back to the equal-mass line.
MassKernelReport mass_kernel(int n, Curvature sigma,
                             std::vector<double> r_samples,
                             bool include_b_equality);

/// Default radii used by the verification suites when none are given.
std::vector<double> default_kernel_radii(Curvature sigma);

/// Time series recovered from a polygonal trajectory: the rms planar
/// radius, the unwrapped mean rotation phase, and the worst shape
/// deviation across all samples.
struct ShapeRegression {
  std::vector<double> t;
  std::vector<double> r_series;
  std::vector<double> theta_series;
  double max_shape_deviation = 0.0;
};
ShapeRegression rotopulsator_regression(const Trajectory& traj);

}  // namespace rotopulse
