#include "rotopulse/rotopulsator.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <string>

namespace rotopulse {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_basics(const RotopulsatorSpec& spec) {
  if (spec.n < 2)
    throw DegenerateSize("n must be at least 2, got " + std::to_string(spec.n));
  if (static_cast<int>(spec.masses.size()) != spec.n)
    throw LengthMismatch("expected " + std::to_string(spec.n) + " masses, got " +
                         std::to_string(spec.masses.size()));
  for (int i = 0; i < spec.n; ++i)
    if (!(spec.masses[i] > 0.0))
      throw DomainError("mass " + std::to_string(i + 1) + " is not positive");
}

void check_alpha(const std::vector<double>& alpha, int n) {
  if (static_cast<int>(alpha.size()) != n)
    throw LengthMismatch("expected " + std::to_string(n) +
                         " vertex angles, got " + std::to_string(alpha.size()));
  if (!(alpha.front() >= 0.0))
    throw DomainError("vertex angles must start at or above 0");
  for (int i = 1; i < n; ++i)
    if (!(alpha[i] > alpha[i - 1]))
      throw DomainError("vertex angles must be strictly increasing");
  if (!(alpha.back() < kTwoPi))
    throw DomainError("vertex angles must stay below 2*pi");
}

std::vector<double> resolve_alpha(const RotopulsatorSpec& spec) {
  if (spec.alpha.empty()) return regular_polygon_angles(spec.n);
  check_alpha(spec.alpha, spec.n);
  return spec.alpha;
}

// Common core of both constructors: all bodies share (z1, z2) and the
// planar circle of radius r. z2 comes from the manifold constraint,
//   z2^2 = sigma (sigma - r^2 - z1^2),
// and z2' from its time derivative  r r' + z1 z1' + sigma z2 z2' = 0.
SystemState build_shared_z(const RotopulsatorSpec& spec, Curvature sigma,
                           const std::vector<double>& alpha, double r,
                           double rdot, double z1, double z1dot, int z2_sign) {
  const double sg = sign_of(sigma);
  if (!(r > 0.0))
    throw DegenerateSize("planar radius must be positive, got " +
                         std::to_string(r));
  const double z2sq = sg * (sg - r * r - z1 * z1);
  if (z2sq < 0.0)
    throw OffManifold("r^2 + z1^2 = " + std::to_string(r * r + z1 * z1) +
                      " exceeds 1: no real z2 on the sphere");
  const double z2 = (z2_sign >= 0 ? 1.0 : -1.0) * std::sqrt(z2sq);
  const double radial = r * rdot + z1 * z1dot;
  double z2dot = 0.0;
  if (z2 != 0.0) {
    z2dot = -sg * radial / z2;
  } else if (std::abs(radial) > 1e-12) {
    throw OffManifold(
        "z2 = 0 admits no radial motion, but r*rdot + z1*z1dot = " +
        std::to_string(radial));
  }

  SystemState st;
  st.sigma = sigma;
  st.masses = spec.masses;
  st.bodies.resize(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    const double a = spec.theta0 + alpha[i];
    const double ca = std::cos(a), sa = std::sin(a);
    Body& b = st.bodies[i];
    b.q = {{r * ca, r * sa, z1, z2}};
    b.v = {{rdot * ca - r * spec.thetadot0 * sa,
            rdot * sa + r * spec.thetadot0 * ca, z1dot, z2dot}};
  }
  st.validate();
  return st;
}

}  // namespace

Curvature curvature_of(OrbitClass c) {
  return c == OrbitClass::PositiveElliptic ? Curvature::Sphere
                                           : Curvature::Hyperboloid;
}

bool is_hyperbolic_class(OrbitClass c) {
  return c == OrbitClass::NegativeHyperbolic ||
         c == OrbitClass::NegativeEllipticHyperbolic;
}

std::vector<double> regular_polygon_angles(int n) {
  if (n < 1) throw DegenerateSize("polygon needs at least one vertex");
  std::vector<double> a(n);
  for (int i = 0; i < n; ++i) a[i] = (kTwoPi * i) / n;
  return a;
}

SystemState build_polygonal_elliptic(const RotopulsatorSpec& spec,
                                     Curvature sigma) {
  const bool ok =
      (spec.orbit_class == OrbitClass::PositiveElliptic &&
       sigma == Curvature::Sphere) ||
      (spec.orbit_class == OrbitClass::NegativeElliptic &&
       sigma == Curvature::Hyperboloid);
  if (!ok)
    throw DomainError(
        "orbit class does not match the requested curvature sign");
  check_basics(spec);
  const auto alpha = resolve_alpha(spec);
  if (sigma == Curvature::Sphere) {
    if (spec.z2_sign != 1 && spec.z2_sign != -1)
      throw DomainError("z2_sign must be +1 or -1");
    if (spec.n == 2 && spec.r0 >= 1.0 - 1e-6)
      std::cerr << "rotopulse: warning: two bodies at planar radius "
                << spec.r0
                << " are nearly antipodal; the pairwise force diverges "
                   "there\n";
  } else if (spec.z2_sign != 1) {
    throw OffManifold("z2 must be positive on the upper hyperboloid sheet");
  }
  return build_shared_z(spec, sigma, alpha, spec.r0, spec.rdot0, spec.z1_0,
                        spec.z1dot0, spec.z2_sign);
}

SystemState build_negative_hyperbolic(const RotopulsatorSpec& spec) {
  if (!is_hyperbolic_class(spec.orbit_class))
    throw DomainError("build_negative_hyperbolic requires a hyperbolic "
                      "orbit class");
  check_basics(spec);
  const auto alpha = resolve_alpha(spec);
  if (!(spec.rho0 > 1.0))
    throw DegenerateSize("rho0 must exceed 1 (all bodies coincide as the "
                         "planar radius sqrt(rho0^2 - 1) vanishes), got " +
                         std::to_string(spec.rho0));
  std::vector<double> beta = spec.beta;
  if (beta.empty()) beta.assign(spec.n, 0.0);
  if (static_cast<int>(beta.size()) != spec.n)
    throw LengthMismatch("expected " + std::to_string(spec.n) +
                         " phase offsets, got " + std::to_string(beta.size()));

  const double w = std::sqrt(spec.rho0 * spec.rho0 - 1.0);
  const bool shared = std::all_of(beta.begin(), beta.end(),
                                  [&](double b) { return b == beta[0]; });
  if (shared) {
    // Equal offsets make (x3, x4) common to all bodies, which is the
    // shared-coordinate configuration in disguise. Route through the
    // same construction so the two descriptions coincide exactly.
    const double u = spec.phi0 + beta[0];
    const double sh = std::sinh(u), ch = std::cosh(u);
    const double r = w;
    const double rdot = spec.rho0 * spec.rhodot0 / w;
    const double z1 = spec.rho0 * sh;
    const double z1dot = spec.rhodot0 * sh + spec.rho0 * spec.phidot0 * ch;
    return build_shared_z(spec, Curvature::Hyperboloid, alpha, r, rdot, z1,
                          z1dot, +1);
  }

  const double wdot = spec.rho0 * spec.rhodot0 / w;
  SystemState st;
  st.sigma = Curvature::Hyperboloid;
  st.masses = spec.masses;
  st.bodies.resize(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    const double a = spec.theta0 + alpha[i];
    const double ca = std::cos(a), sa = std::sin(a);
    const double u = spec.phi0 + beta[i];
    const double sh = std::sinh(u), ch = std::cosh(u);
    Body& b = st.bodies[i];
    b.q = {{w * ca, w * sa, spec.rho0 * sh, spec.rho0 * ch}};
    b.v = {{wdot * ca - w * spec.thetadot0 * sa,
            wdot * sa + w * spec.thetadot0 * ca,
            spec.rhodot0 * sh + spec.rho0 * spec.phidot0 * ch,
            spec.rhodot0 * ch + spec.rho0 * spec.phidot0 * sh}};
  }
  st.validate();
  return st;
}

SystemState build_state(const RotopulsatorSpec& spec) {
  if (is_hyperbolic_class(spec.orbit_class))
    return build_negative_hyperbolic(spec);
  return build_polygonal_elliptic(spec, curvature_of(spec.orbit_class));
}

std::vector<std::vector<double>> chord_matrix(const SystemState& state) {
  const int n = static_cast<int>(state.size());
  std::vector<std::vector<double>> ch(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double d =
          dot_sigma(state.bodies[i].q, state.bodies[j].q, state.sigma);
      ch[i][j] = d;
      ch[j][i] = d;
    }
  return ch;
}

double shape_deviation(const SystemState& state,
                       const RotopulsatorSpec& spec) {
  const int n = static_cast<int>(state.size());
  if (spec.n != n)
    throw LengthMismatch("spec is for " + std::to_string(spec.n) +
                         " bodies, state has " + std::to_string(n));
  const auto ch = chord_matrix(state);
  double dev = 0.0;
  for (int g = 1; 2 * g <= n; ++g) {
    double lo = ch[0][g % n], hi = lo;
    for (int i = 1; i < n; ++i) {
      const double v = ch[i][(i + g) % n];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    dev = std::max(dev, hi - lo);
  }
  return dev;
}

CriterionCoefficients criterion_gap_coefficients(int n, double r,
                                                 Curvature sigma) {
  if (n < 2)
    throw DegenerateSize("polygon needs at least two vertices, got " +
                         std::to_string(n));
  if (!(r > 0.0))
    throw DomainError("polygon radius must be positive, got " +
                      std::to_string(r));
  const double sg = sign_of(sigma);

  // Gap trig tables, symmetrized so that the g and n-g entries are
  // exact mirror images (same cos, opposite sin, and a hard zero at
  // the half gap). Summing the pairs (g, n-g) adjacently then cancels
  // equal-mass tangential contributions to exactly zero.
  std::vector<double> cos_t(n), sin_t(n);
  cos_t[0] = 1.0;
  sin_t[0] = 0.0;
  for (int g = 1; 2 * g <= n; ++g) {
    const double ang = (kTwoPi * g) / n;
    cos_t[g] = std::cos(ang);
    sin_t[g] = std::sin(ang);
  }
  if (n % 2 == 0) sin_t[n / 2] = 0.0;
  for (int g = n / 2 + 1; g < n; ++g) {
    cos_t[g] = cos_t[n - g];
    sin_t[g] = -sin_t[n - g];
  }

  CriterionCoefficients co;
  co.radial.assign(n, 0.0);
  co.tangential.assign(n, 0.0);
  for (int g = 1; g < n; ++g) {
    const double c = 1.0 - cos_t[g];
    const double den = 2.0 - sg * r * r * c;
    if (c <= 1e-12)
      throw SingularPair(0, g, "vertex gap " + std::to_string(g) +
                                   " has a vanishing chord");
    if (den <= 1e-12)
      throw SingularPair(0, g, "vertex gap " + std::to_string(g) +
                                   " reaches the antipodal singularity");
    const double droot = den * std::sqrt(den);
    const double croot = c * std::sqrt(c);
    co.radial[g] = 1.0 / (std::sqrt(c) * droot);
    co.tangential[g] = sin_t[g] / (croot * droot);
  }
  return co;
}

CriterionResiduals criterion_residuals(const std::vector<double>& masses,
                                       double r, Curvature sigma,
                                       const std::vector<double>& alpha) {
  const int n = static_cast<int>(masses.size());
  if (n < 2)
    throw DegenerateSize("need at least two masses, got " +
                         std::to_string(n));
  for (int i = 0; i < n; ++i)
    if (!(masses[i] > 0.0))
      throw DomainError("mass " + std::to_string(i + 1) + " is not positive");
  if (!(r > 0.0))
    throw DomainError("polygon radius must be positive, got " +
                      std::to_string(r));
  const double sg = sign_of(sigma);

  CriterionResiduals out;
  out.b.assign(n, 0.0);
  out.tangential.assign(n, 0.0);

  if (alpha.empty()) {
    const auto co = criterion_gap_coefficients(n, r, sigma);
    for (int i = 0; i < n; ++i) {
      double b = 0.0;
      for (int g = 1; g < n; ++g) b += masses[(i + g) % n] * co.radial[g];
      double tang = 0.0;
      // Mirror gaps paired; the even half gap has an exactly zero
      // coefficient and is skipped.
      for (int g = 1; 2 * g < n; ++g)
        tang += masses[(i + g) % n] * co.tangential[g] +
                masses[(i + n - g) % n] * co.tangential[n - g];
      out.b[i] = b;
      out.tangential[i] = tang;
    }
  } else {
    check_alpha(alpha, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double d = alpha[j] - alpha[i];
        const double c = 1.0 - std::cos(d);
        const double den = 2.0 - sg * r * r * c;
        if (c <= 1e-12)
          throw SingularPair(i, j, "bodies " + std::to_string(i + 1) +
                                       " and " + std::to_string(j + 1) +
                                       " coincide");
        if (den <= 1e-12)
          throw SingularPair(i, j, "bodies " + std::to_string(i + 1) +
                                       " and " + std::to_string(j + 1) +
                                       " reach the antipodal singularity");
        const double droot = den * std::sqrt(den);
        const double croot = c * std::sqrt(c);
        out.b[i] += masses[j] / (std::sqrt(c) * droot);
        out.tangential[i] += masses[j] * std::sin(d) / (croot * droot);
      }
  }

  const auto [lo, hi] = std::minmax_element(out.b.begin(), out.b.end());
  out.b_spread = *hi - *lo;
  return out;
}

double hyperbolic_phase_residual(const std::vector<double>& masses, double rho,
                                 const std::vector<double>& beta,
                                 const std::vector<std::vector<double>>& chords,
                                 int i) {
  const int n = static_cast<int>(masses.size());
  if (static_cast<int>(beta.size()) != n ||
      static_cast<int>(chords.size()) != n)
    throw LengthMismatch("masses, beta and chords must agree in size");
  for (const auto& row : chords)
    if (static_cast<int>(row.size()) != n)
      throw LengthMismatch("chord matrix is not square");
  if (i < 0 || i >= n) throw DomainError("body index out of range");
  if (!(rho > 0.0))
    throw DomainError("rho must be positive, got " + std::to_string(rho));

  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const double chi = chords[i][j];
    const double d = chi * chi - 1.0;
    if (d <= 1e-12)
      throw SingularPair(i, j, "chord between bodies " + std::to_string(i + 1) +
                                   " and " + std::to_string(j + 1) +
                                   " degenerates (chi^2 - 1 <= 1e-12)");
    acc += masses[j] * rho * std::sinh(beta[j] - beta[i]) / (d * std::sqrt(d));
  }
  return acc;
}

}  // namespace rotopulse
