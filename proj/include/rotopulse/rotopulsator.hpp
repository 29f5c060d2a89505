#pragma once

#include <vector>

#include "rotopulse/state.hpp"

namespace rotopulse {

/// The four families of polygonal ansatz. Positive* lives on the
/// sphere, Negative* on the hyperboloid. The two hyperbolic tags share
/// one constructor; NegativeEllipticHyperbolic is the conventional
/// label when all phase offsets coincide.
enum class OrbitClass {
  PositiveElliptic,
  NegativeElliptic,
  NegativeHyperbolic,
  NegativeEllipticHyperbolic,
};

Curvature curvature_of(OrbitClass c);
bool is_hyperbolic_class(OrbitClass c);

/// Initial data for a polygonal configuration: n bodies at planar
/// angles theta + alpha_i on a circle of radius r (elliptic classes) or
/// w = sqrt(rho^2 - 1) (hyperbolic classes), all sharing the remaining
/// two coordinates up to the per-body phase offsets beta_i.
struct RotopulsatorSpec {
  OrbitClass orbit_class = OrbitClass::PositiveElliptic;
  int n = 0;
  std::vector<double> masses;

  // Planar vertex angles; empty selects the regular polygon 2*pi*i/n.
  std::vector<double> alpha;

  double theta0 = 0.0;
  double thetadot0 = 0.0;

  // Elliptic classes.
  double r0 = 0.0;
  double rdot0 = 0.0;
  double z1_0 = 0.0;
  double z1dot0 = 0.0;
  int z2_sign = +1;  // sphere only; the hyperboloid pins z2 > 0

  // Hyperbolic classes.
  double rho0 = 0.0;
  double rhodot0 = 0.0;
  double phi0 = 0.0;
  double phidot0 = 0.0;
  std::vector<double> beta;  // empty selects all-zero offsets
};

std::vector<double> regular_polygon_angles(int n);

/// Place n bodies at (r cos a_i, r sin a_i, z1, z2) with
/// a_i = theta0 + alpha_i, z2 derived from the manifold constraint and
/// z2' from its time derivative. Velocities combine radial and angular
/// rates. Throws DomainError on a class/curvature mismatch,
/// DegenerateSize for r0 <= 0, OffManifold when no real z2 exists or
/// the equatorial case z2 = 0 is given inconsistent rates.
SystemState build_polygonal_elliptic(const RotopulsatorSpec& spec,
                                     Curvature sigma);

/// Place n bodies at (w cos a_i, w sin a_i, rho sinh u_i, rho cosh u_i)
/// with w = sqrt(rho^2 - 1) and u_i = phi0 + beta_i. When every beta_i
/// is identical the build reduces to the shared-coordinate constructor
/// above and reproduces its output bit for bit.
SystemState build_negative_hyperbolic(const RotopulsatorSpec& spec);

/// Dispatch to the constructor matching spec.orbit_class.
SystemState build_state(const RotopulsatorSpec& spec);

/// Pairwise signed products chi_ij = q_i . q_j (diagonal holds q_i.q_i).
std::vector<std::vector<double>> chord_matrix(const SystemState& state);

/// How far the configuration has drifted from the polygonal shape
/// class: the largest spread, over each vertex gap g, of the chord
/// values chi_{i,i+g}. Vanishes to rounding for a freshly built polygon.
double shape_deviation(const SystemState& state, const RotopulsatorSpec& spec);

/// Per-gap coefficient tables for a regular polygon of radius r:
/// radial[g]     = (1-cos)^{-1/2} (2 - sigma r^2 (1-cos))^{-3/2}
/// tangential[g] = sin * (1-cos)^{-3/2} (2 - sigma r^2 (1-cos))^{-3/2}
/// with the gap angle 2*pi*g/n. Built mirror-symmetric in g <-> n-g so
/// that paired tangential terms cancel exactly for equal masses.
struct CriterionCoefficients {
  std::vector<double> radial;      // index 1..n-1 used
  std::vector<double> tangential;  // index 1..n-1 used
};
CriterionCoefficients criterion_gap_coefficients(int n, double r,
                                                 Curvature sigma);

/// Existence-criterion residuals for masses on a polygon of radius r.
/// b[i] must be independent of i and tangential[i] must vanish for the
/// configuration to admit the polygonal ansatz. Empty alpha selects the
/// regular polygon (with exact equal-mass cancellation); otherwise the
/// general vertex angles are used directly.
struct CriterionResiduals {
  std::vector<double> b;
  std::vector<double> tangential;
  double b_spread = 0.0;  // max(b) - min(b)
};
CriterionResiduals criterion_residuals(const std::vector<double>& masses,
                                       double r, Curvature sigma,
                                       const std::vector<double>& alpha = {});

/// Phase-coherence residual at body i for a hyperbolic configuration:
///   sum_{j != i} m_j rho sinh(beta_j - beta_i) / (chi_ij^2 - 1)^{3/2}.
/// Nonnegative when i carries the smallest offset, and zero only when
/// every offset is equal, which is what rules out genuinely hyperbolic
/// polygonal solutions with distinct offsets.
double hyperbolic_phase_residual(const std::vector<double>& masses, double rho,
                                 const std::vector<double>& beta,
                                 const std::vector<std::vector<double>>& chords,
                                 int i);

}  // namespace rotopulse
