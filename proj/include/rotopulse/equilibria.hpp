#pragma once

#include <optional>
#include <vector>

#include "rotopulse/geometry.hpp"

namespace rotopulse {

/// Pairwise interaction kernel f(x) = (x^2 - sigma x^4/4)^{-3/2},
/// where x is the Euclidean chord length between two bodies. Domain:
/// x > 0, and x < 2 on the sphere (x = 2 is the antipodal singularity).
double interaction_kernel(double x, Curvature sigma);

/// Closed form of d/dx [x f(x)]:
///   ((5 sigma / 4) x^2 - 2) / (x^3 (1 - sigma x^2/4)^{5/2}).
/// Strictly negative on the hyperboloid; on the sphere it changes sign
/// exactly once, at x^2 = kSphereXfSignChangeSquared.
double interaction_xf_derivative(double x, Curvature sigma);

/// Verified squared location of the sphere sign change of d/dx [x f].
/// The numerator above vanishes at x^2 = 8/5.
inline constexpr double kSphereXfSignChangeSquared = 1.6;

/// Candidate threshold values in circulation; the monotonicity report
/// compares the bisected location against both.
inline constexpr double kCandidateThresholdLowSquared = 0.625;  // 5/8
inline constexpr double kCandidateThresholdHighSquared = 1.6;   // 8/5

/// Candidate safe-radius bounds implied by the thresholds (the largest
/// chord of a polygon of radius r is at most 2r, so the kernel slope
/// keeps one sign while 2r < x*): sqrt(5/32), sqrt(2/5), and the often
/// quoted (2/5) sqrt 5.
inline constexpr double kRadiusBoundSqrt5Over32 = 0.39528470752104744;
inline constexpr double kRadiusBoundSqrt2Over5 = 0.63245553203367588;
inline constexpr double kRadiusBound2Sqrt5Over5 = 0.89442719099991586;

struct EquilibriumProblem {
  int n = 0;
  std::vector<double> masses;  // must all coincide unless diagnostic
  Curvature sigma = Curvature::Hyperboloid;
  double angular_speed = 0.0;  // target rotation rate A > 0
  double r_lo = 0.0, r_hi = 0.0;
  bool diagnostic = false;  // unequal masses allowed; roots withheld
  int grid_points = 2048;   // values below 2048 are raised to 2048
  double bracket_tol = 1e-12;  // relative bisection width
};

struct AngularSpeedSample {
  double asq;         // squared rotation rate sustaining radius r
  double tangential;  // companion residual; 0 exactly for equal masses
};

/// Evaluate, for a regular polygon of radius r, the squared rotation
/// rate A^2(r) = sum_{g} m_g (1 - cos(2 pi g / n)) f(x_g) with chord
/// x_g = sqrt(2) r sqrt(1 - cos(2 pi g / n)), plus the tangential
/// residual r^{-3} sum_g m_g sin(2 pi g / n) f(x_g) which must vanish
/// for the polygon to rotate rigidly.
AngularSpeedSample angular_speed_squared(double r,
                                         const EquilibriumProblem& prob);

struct EquilibriumReport {
  std::vector<double> roots;
  int root_count = 0;
  // True when A^2(r) was strictly decreasing across the whole scan
  // grid, which certifies at most one root in the range.
  bool monotone_certificate = false;
  double bracket_tol = 0.0;
  // Diagnostic mode only: max |tangential| over sampled radii.
  std::optional<double> diagnostic_tangential;
};

/// Scan A^2(r) - A^2 for sign changes over a log-spaced grid of at
/// least 2048 points in [r_lo, r_hi] and bisect each bracket to
/// relative width bracket_tol. On the sphere r_hi must stay below 1.
EquilibriumReport solve_equilibrium(const EquilibriumProblem& prob);

/// Default search range for the curvature sign: [1e-3, 50] on the
/// hyperboloid; on the sphere the upper end keeps every polygon chord
/// inside the verified single-sign slope window,
/// min(0.99 * sqrt(kSphereXfSignChangeSquared)/2, 0.999).
std::pair<double, double> default_radius_range(Curvature sigma);

}  // namespace rotopulse
