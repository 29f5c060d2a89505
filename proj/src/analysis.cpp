#include "rotopulse/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Dense>

namespace rotopulse {

double hyperbolic_momentum_drift(const Trajectory& traj) {
  if (!traj.spec || !is_hyperbolic_class(traj.spec->orbit_class))
    throw NotHyperbolicClass(
        "trajectory was not built from a hyperbolic-class ansatz");
  if (traj.samples.empty())
    throw DegenerateSize("trajectory has no samples");
  auto value = [](const Trajectory::Sample& s) {
    const Body& b = s.state.bodies.front();
    return b.q[3] * b.v[2] - b.q[2] * b.v[3];
  };
  const double v0 = value(traj.samples.front());
  double drift = 0.0;
  for (const auto& s : traj.samples)
    drift = std::max(drift, std::abs(value(s) - v0));
  return drift;
}

bool phase_alignment_certificate(int n, int trials, unsigned seed) {
  if (n < 2)
    throw DegenerateSize("need at least two bodies, got " + std::to_string(n));
  if (trials < 1) throw DomainError("trial count must be positive");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mass_d(0.2, 5.0);
  std::uniform_real_distribution<double> rho_d(1.01, 5.0);
  std::uniform_real_distribution<double> beta_d(-1.5, 1.5);
  std::uniform_real_distribution<double> phi_d(-1.0, 1.0);
  std::uniform_real_distribution<double> theta_d(0.0, 2.0 * std::numbers::pi);

  for (int trial = 0; trial < trials; ++trial) {
    RotopulsatorSpec spec;
    spec.orbit_class = OrbitClass::NegativeHyperbolic;
    spec.n = n;
    spec.masses.resize(n);
    for (auto& m : spec.masses) m = mass_d(rng);
    spec.rho0 = rho_d(rng);
    spec.phi0 = phi_d(rng);
    spec.theta0 = theta_d(rng);
    spec.beta.resize(n);
    // Offsets must be genuinely distinct for the exclusion statement;
    // redraw until they spread by at least 0.1.
    for (;;) {
      for (auto& b : spec.beta) b = beta_d(rng);
      const auto [lo, hi] =
          std::minmax_element(spec.beta.begin(), spec.beta.end());
      if (*hi - *lo >= 0.1) break;
    }
    const auto st = build_negative_hyperbolic(spec);
    const auto ch = chord_matrix(st);
    const int imin = static_cast<int>(
        std::min_element(spec.beta.begin(), spec.beta.end()) -
        spec.beta.begin());
    const double res = hyperbolic_phase_residual(spec.masses, spec.rho0,
                                                 spec.beta, ch, imin);
    if (!(res > 1e-12)) return false;
  }
  return true;
}

MassKernelReport mass_kernel(int n, Curvature sigma,
                             std::vector<double> r_samples,
                             bool include_b_equality) {
  if (n < 3)
    throw DegenerateSize("mass kernel needs at least three bodies, got " +
                         std::to_string(n));
  std::sort(r_samples.begin(), r_samples.end());
  if (r_samples.size() < 2)
    throw DomainError("mass kernel needs at least two radii");
  for (std::size_t i = 0; i < r_samples.size(); ++i) {
    if (!(r_samples[i] > 0.0))
      throw DomainError("radii must be positive");
    if (sigma == Curvature::Sphere && !(r_samples[i] < 1.0))
      throw DomainError("radii must stay below 1 on the sphere");
    if (i > 0 && r_samples[i] == r_samples[i - 1])
      throw DomainError("radii must be distinct");
  }

  const int R = static_cast<int>(r_samples.size());
  const int rows = R * n * (include_b_equality ? 2 : 1);
  Eigen::MatrixXd M(rows, n);
  int row = 0;

  // Tangential rows: residual i at radius r is linear in the masses
  // with coefficient tangential[(j - i) mod n] on m_j.
  for (int ri = 0; ri < R; ++ri) {
    const auto co = criterion_gap_coefficients(n, r_samples[ri], sigma);
    for (int i = 0; i < n; ++i, ++row)
      for (int j = 0; j < n; ++j)
        M(row, j) = (j == i) ? 0.0 : co.tangential[((j - i) % n + n) % n];
  }
  // Optional rows b_i - b_{i+1}, which force the radial coefficient to
  // be vertex-independent.
  if (include_b_equality) {
    for (int ri = 0; ri < R; ++ri) {
      const auto co = criterion_gap_coefficients(n, r_samples[ri], sigma);
      auto bcoef = [&](int i, int j) {
        return (j == i) ? 0.0 : co.radial[((j - i) % n + n) % n];
      };
      for (int i = 0; i < n; ++i, ++row)
        for (int j = 0; j < n; ++j)
          M(row, j) = bcoef(i, j) - bcoef((i + 1) % n, j);
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv(0);
  const double null_thresh = 1e-10 * smax;
  int kd = 0;
  for (int i = n - 1; i >= 0 && sv(i) < null_thresh; --i) ++kd;

  MassKernelReport rep;
  rep.n = n;
  rep.sigma = sigma;
  rep.r_samples = std::move(r_samples);
  rep.matrix_rows = rows;
  rep.kernel_dim = kd;
  rep.largest_sv = smax;
  rep.second_smallest_sv = kd < n ? sv(n - 1 - kd) : 0.0;
  const Eigen::MatrixXd& V = svd.matrixV();
  for (int c = n - kd; c < n; ++c) {
    std::vector<double> vec(n);
    for (int j = 0; j < n; ++j) vec[j] = V(j, c);
    for (int j = 0; j < n; ++j) {
      if (std::abs(vec[j]) > 1e-12) {
        if (vec[j] < 0.0)
          for (auto& x : vec) x = -x;
        break;
      }
    }
    rep.kernel_basis.push_back(std::move(vec));
  }
  return rep;
}

std::vector<double> default_kernel_radii(Curvature sigma) {
  if (sigma == Curvature::Sphere) return {0.3, 0.7};
  return {0.5, 2.0};
}

ShapeRegression rotopulsator_regression(const Trajectory& traj) {
  if (!traj.spec)
    throw DomainError("trajectory carries no ansatz to regress against");
  if (traj.samples.empty())
    throw DegenerateSize("trajectory has no samples");
  const RotopulsatorSpec& spec = *traj.spec;
  const auto alpha =
      spec.alpha.empty() ? regular_polygon_angles(spec.n) : spec.alpha;

  ShapeRegression out;
  double prev = 0.0;
  bool have_prev = false;
  for (const auto& s : traj.samples) {
    const SystemState& st = s.state;
    double sumsq = 0.0, sc = 0.0, ss = 0.0;
    for (int i = 0; i < spec.n; ++i) {
      const Vec4& q = st.bodies[i].q;
      sumsq += q[0] * q[0] + q[1] * q[1];
      const double phase = std::atan2(q[1], q[0]) - alpha[i];
      sc += std::cos(phase);
      ss += std::sin(phase);
    }
    double theta = std::atan2(ss, sc);
    if (have_prev) {
      while (theta - prev > std::numbers::pi) theta -= 2.0 * std::numbers::pi;
      while (theta - prev < -std::numbers::pi) theta += 2.0 * std::numbers::pi;
    }
    prev = theta;
    have_prev = true;
    out.t.push_back(st.t);
    out.r_series.push_back(std::sqrt(sumsq / spec.n));
    out.theta_series.push_back(theta);
    out.max_shape_deviation =
        std::max(out.max_shape_deviation, shape_deviation(st, spec));
  }
  return out;
}

}  // namespace rotopulse
