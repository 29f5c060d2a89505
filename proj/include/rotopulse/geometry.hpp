#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "rotopulse/errors.hpp"

namespace rotopulse {

/// Curvature sign selecting the ambient quadric in R^4:
/// +1 is the unit 3-sphere  x1^2+x2^2+x3^2+x4^2 = 1,
/// -1 is the upper sheet of x1^2+x2^2+x3^2-x4^2 = -1 (x4 > 0).
enum class Curvature : int { Sphere = +1, Hyperboloid = -1 };

constexpr double sign_of(Curvature sigma) {
  return static_cast<double>(static_cast<int>(sigma));
}

struct Vec4 {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  double& operator[](std::size_t i) { return c[i]; }
  double operator[](std::size_t i) const { return c[i]; }

  Vec4& operator+=(const Vec4& o) {
    for (int k = 0; k < 4; ++k) c[k] += o.c[k];
    return *this;
  }
  Vec4& operator-=(const Vec4& o) {
    for (int k = 0; k < 4; ++k) c[k] -= o.c[k];
    return *this;
  }
  Vec4& operator*=(double s) {
    for (int k = 0; k < 4; ++k) c[k] *= s;
    return *this;
  }

  friend Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
  friend Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
  friend Vec4 operator*(double s, Vec4 a) { return a *= s; }
  friend Vec4 operator*(Vec4 a, double s) { return a *= s; }
  friend Vec4 operator-(Vec4 a) { return a *= -1.0; }

  bool finite() const;
};

/// Signed bilinear form x.y = x1 y1 + x2 y2 + x3 y3 + sigma x4 y4.
/// Positions on the manifold satisfy dot_sigma(q, q, sigma) == sigma.
double dot_sigma(const Vec4& a, const Vec4& b, Curvature sigma);

/// Rescale q onto the manifold. Throws NotProjectable when the signed
/// norm has the wrong sign (or q sits on the lower hyperboloid sheet),
/// since no positive rescaling can reach the manifold from there.
Vec4 project_position(const Vec4& q, Curvature sigma);

/// Remove the component of v normal to the manifold at q:
/// v - sigma * dot_sigma(q, v, sigma) * q. Assumes q is on the manifold.
Vec4 project_velocity(const Vec4& q, const Vec4& v, Curvature sigma);

/// 2x2 block acting on a coordinate pair. Rotations act on (x1,x2) or
/// (x3,x4) of the sphere; boosts act on (x3,x4) of the hyperboloid.
struct Mat2 {
  double m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;

  std::array<double, 2> apply(const std::array<double, 2>& p) const {
    return {m00 * p[0] + m01 * p[1], m10 * p[0] + m11 * p[1]};
  }
  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
  }
  double det() const { return m00 * m11 - m01 * m10; }
};

/// Proper rotation by `angle`: rows (cos, -sin; sin, cos).
Mat2 planar_rotation(double angle);

/// Hyperbolic boost by `rapidity`: rows (cosh, sinh; sinh, cosh).
Mat2 hyperbolic_boost(double rapidity);

/// The six independent components of an antisymmetric 4x4 tensor,
/// stored in the order (1,2), (1,3), (1,4), (2,3), (2,4), (3,4).
struct Bivector {
  std::array<double, 6> comp{};

  static constexpr std::array<int, 6> first{0, 0, 0, 1, 1, 2};
  static constexpr std::array<int, 6> second{1, 2, 3, 2, 3, 3};

  double& operator[](std::size_t k) { return comp[k]; }
  double operator[](std::size_t k) const { return comp[k]; }
};

/// Mass-weighted total wedge  sum_i m_i q_i /\ v_i, component (a,b)
/// being sum_i m_i (q_i[a] v_i[b] - q_i[b] v_i[a]). Conserved along
/// solutions of the equations of motion for both curvature signs.
Bivector wedge_bivector(const std::vector<Vec4>& positions,
                        const std::vector<Vec4>& velocities,
                        const std::vector<double>& masses);

}  // namespace rotopulse
