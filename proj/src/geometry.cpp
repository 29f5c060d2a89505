#include "rotopulse/geometry.hpp"

#include <cmath>

namespace rotopulse {

bool Vec4::finite() const {
  for (int k = 0; k < 4; ++k)
    if (!std::isfinite(c[k])) return false;
  return true;
}

double dot_sigma(const Vec4& a, const Vec4& b, Curvature sigma) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] +
         sign_of(sigma) * a[3] * b[3];
}

Vec4 project_position(const Vec4& q, Curvature sigma) {
  const double sg = sign_of(sigma);
  const double s = dot_sigma(q, q, sigma);
  if (sigma == Curvature::Sphere) {
    if (!(s > 0.0))
      throw NotProjectable("cannot rescale onto the sphere: q.q <= 0");
  } else {
    if (!(s < 0.0))
      throw NotProjectable(
          "cannot rescale onto the hyperboloid: q.q >= 0 (spacelike)");
    if (!(q[3] > 0.0))
      throw NotProjectable(
          "cannot rescale onto the hyperboloid: q4 <= 0 (lower sheet)");
  }
  Vec4 p = q * (1.0 / std::sqrt(sg * s));
  // One extra multiplicative Newton step for |p.p| = 1; the sqrt above
  // already lands within a few ulps, this removes most of them.
  const double s1 = sg * dot_sigma(p, p, sigma);
  return p * (0.5 * (3.0 - s1));
}

Vec4 project_velocity(const Vec4& q, const Vec4& v, Curvature sigma) {
  return v - sign_of(sigma) * dot_sigma(q, v, sigma) * q;
}

Mat2 planar_rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c, -s, s, c};
}

Mat2 hyperbolic_boost(double rapidity) {
  const double c = std::cosh(rapidity), s = std::sinh(rapidity);
  return {c, s, s, c};
}

Bivector wedge_bivector(const std::vector<Vec4>& positions,
                        const std::vector<Vec4>& velocities,
                        const std::vector<double>& masses) {
  const std::size_t n = positions.size();
  if (velocities.size() != n || masses.size() != n)
    throw LengthMismatch("wedge_bivector: positions, velocities and masses "
                         "must have equal lengths");
  Bivector w;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec4& q = positions[i];
    const Vec4& v = velocities[i];
    for (std::size_t k = 0; k < 6; ++k) {
      const int a = Bivector::first[k], b = Bivector::second[k];
      w[k] += masses[i] * (q[a] * v[b] - q[b] * v[a]);
    }
  }
  return w;
}

}  // namespace rotopulse
