#include "rotopulse/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace rotopulse {

std::vector<Vec4> accelerations(const SystemState& state,
                                double collision_eps) {
  const int n = static_cast<int>(state.size());
  const double sg = sign_of(state.sigma);

  // chi[i][j] = q_i . q_j and the pairwise weight (sigma - sigma chi^2)^{-3/2}.
  std::vector<double> chi(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> wgt(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double c =
          dot_sigma(state.bodies[i].q, state.bodies[j].q, state.sigma);
      const double den = sg * (1.0 - c * c);
      if (den <= collision_eps)
        throw SingularConfiguration(
            i, j,
            "bodies " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                " are at a singular separation (pair denominator " +
                std::to_string(den) + ")");
      const double w = 1.0 / (den * std::sqrt(den));
      chi[i * n + j] = c;
      chi[j * n + i] = c;
      wgt[i * n + j] = w;
      wgt[j * n + i] = w;
    }

  std::vector<Vec4> acc(n);
  for (int i = 0; i < n; ++i) {
    const Body& bi = state.bodies[i];
    Vec4 a = (-sg * dot_sigma(bi.v, bi.v, state.sigma)) * bi.q;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double c = chi[i * n + j];
      a += (state.masses[j] * wgt[i * n + j]) *
           (state.bodies[j].q - (sg * c) * bi.q);
    }
    acc[i] = a;
  }
  return acc;
}

namespace {

void pack(const SystemState& st, std::vector<double>& y) {
  for (std::size_t i = 0; i < st.size(); ++i)
    for (int k = 0; k < 4; ++k) {
      y[8 * i + k] = st.bodies[i].q[k];
      y[8 * i + 4 + k] = st.bodies[i].v[k];
    }
}

void unpack(const std::vector<double>& y, SystemState& st) {
  for (std::size_t i = 0; i < st.size(); ++i)
    for (int k = 0; k < 4; ++k) {
      st.bodies[i].q[k] = y[8 * i + k];
      st.bodies[i].v[k] = y[8 * i + 4 + k];
    }
}

void derivative(SystemState& scratch, const std::vector<double>& y,
                double collision_eps, std::vector<double>& dy) {
  unpack(y, scratch);
  const auto acc = accelerations(scratch, collision_eps);
  for (std::size_t i = 0; i < scratch.size(); ++i)
    for (int k = 0; k < 4; ++k) {
      dy[8 * i + k] = y[8 * i + 4 + k];
      dy[8 * i + 4 + k] = acc[i][k];
    }
}

// Rescale every position onto the manifold and strip the normal
// component from every velocity.
void project_state(SystemState& st) {
  for (auto& b : st.bodies) {
    b.q = project_position(b.q, st.sigma);
    b.v = project_velocity(b.q, b.v, st.sigma);
  }
}

double next_target(double t0, double dt, long k, double t_end) {
  const double t = t0 + static_cast<double>(k) * dt;
  const double snap = 1e-12 * std::max(1.0, std::abs(t_end));
  return (t >= t_end - snap) ? t_end : t;
}

}  // namespace

Diagnostics diagnostics_of(const SystemState& state,
                           const RotopulsatorSpec* spec) {
  Diagnostics d;
  const double sg = sign_of(state.sigma);
  std::vector<Vec4> qs(state.size()), vs(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    const Body& b = state.bodies[i];
    qs[i] = b.q;
    vs[i] = b.v;
    d.max_constraint_residual =
        std::max(d.max_constraint_residual,
                 std::abs(dot_sigma(b.q, b.q, state.sigma) - sg));
    d.max_tangency_residual = std::max(
        d.max_tangency_residual, std::abs(dot_sigma(b.q, b.v, state.sigma)));
  }
  d.wedge = wedge_bivector(qs, vs, state.masses);
  if (spec) {
    d.shape_deviation = shape_deviation(state, *spec);
    if (is_hyperbolic_class(spec->orbit_class)) {
      const Body& b = state.bodies.front();
      d.rho_sq_phi_dot = b.q[3] * b.v[2] - b.q[2] * b.v[3];
    }
  }
  return d;
}

Trajectory integrate(const SystemState& state, double t_end,
                     const IntegratorOptions& opts,
                     const std::optional<RotopulsatorSpec>& spec) {
  state.validate();
  if (!(t_end > state.t))
    throw DomainError("t_end must exceed the initial time");
  if (!(opts.rtol > 0.0) || !(opts.atol > 0.0))
    throw DomainError("tolerances must be positive");
  if (!(opts.min_step > 0.0)) throw DomainError("min_step must be positive");

  const double t0 = state.t;
  const double span = t_end - t0;
  const double dt = opts.sample_dt > 0.0 ? opts.sample_dt : span / 1000.0;

  Trajectory traj;
  traj.spec = spec;
  const RotopulsatorSpec* sp = spec ? &*spec : nullptr;

  const int n = static_cast<int>(state.size());
  const int N = 8 * n;
  std::vector<double> y(N), ynew(N), ytmp(N);
  std::array<std::vector<double>, 7> k;
  for (auto& ki : k) ki.assign(N, 0.0);
  pack(state, y);

  SystemState scratch = state;

  auto emit = [&](double t) {
    unpack(y, scratch);
    scratch.t = t;
    traj.samples.push_back({scratch, diagnostics_of(scratch, sp)});
  };
  emit(t0);

  double t = t0;
  long sample_idx = 1;
  double target = next_target(t0, dt, sample_idx, t_end);

  if (opts.method == IntegratorOptions::Method::FixedRK4) {
    const double hbase = opts.h0 > 0.0 ? opts.h0 : dt / 16.0;
    while (t < t_end) {
      const double seg = target - t;
      const long m = std::max(1L, std::lround(seg / hbase));
      const double h = seg / static_cast<double>(m);
      for (long s = 0; s < m; ++s) {
        derivative(scratch, y, opts.collision_eps, k[0]);
        for (int q = 0; q < N; ++q) ytmp[q] = y[q] + 0.5 * h * k[0][q];
        derivative(scratch, ytmp, opts.collision_eps, k[1]);
        for (int q = 0; q < N; ++q) ytmp[q] = y[q] + 0.5 * h * k[1][q];
        derivative(scratch, ytmp, opts.collision_eps, k[2]);
        for (int q = 0; q < N; ++q) ytmp[q] = y[q] + h * k[2][q];
        derivative(scratch, ytmp, opts.collision_eps, k[3]);
        for (int q = 0; q < N; ++q)
          y[q] += h / 6.0 * (k[0][q] + 2.0 * k[1][q] + 2.0 * k[2][q] + k[3][q]);
        unpack(y, scratch);
        project_state(scratch);
        pack(scratch, y);
        ++traj.stats.steps_accepted;
        traj.stats.min_step = std::min(traj.stats.min_step, h);
      }
      t = target;
      emit(t);
      if (t >= t_end) break;
      ++sample_idx;
      target = next_target(t0, dt, sample_idx, t_end);
    }
    return traj;
  }

  // Embedded 5(4) pair (Dormand-Prince coefficients). No first-same-as-last
  // reuse: the post-step projection perturbs the accepted state, so k1 is
  // re-evaluated each step anyway.
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  double h = opts.h0 > 0.0 ? opts.h0 : std::min(dt, span / 100.0);

  while (t < t_end) {
    if (h < opts.min_step)
      throw StepUnderflow("step size " + std::to_string(h) +
                          " fell below min_step at t = " + std::to_string(t));
    bool capped = false;
    double hs = h;
    if (t + hs >= target) {
      hs = target - t;
      capped = true;
    }

    derivative(scratch, y, opts.collision_eps, k[0]);
    for (int q = 0; q < N; ++q) ytmp[q] = y[q] + hs * a21 * k[0][q];
    derivative(scratch, ytmp, opts.collision_eps, k[1]);
    for (int q = 0; q < N; ++q)
      ytmp[q] = y[q] + hs * (a31 * k[0][q] + a32 * k[1][q]);
    derivative(scratch, ytmp, opts.collision_eps, k[2]);
    for (int q = 0; q < N; ++q)
      ytmp[q] = y[q] + hs * (a41 * k[0][q] + a42 * k[1][q] + a43 * k[2][q]);
    derivative(scratch, ytmp, opts.collision_eps, k[3]);
    for (int q = 0; q < N; ++q)
      ytmp[q] = y[q] + hs * (a51 * k[0][q] + a52 * k[1][q] + a53 * k[2][q] +
                             a54 * k[3][q]);
    derivative(scratch, ytmp, opts.collision_eps, k[4]);
    for (int q = 0; q < N; ++q)
      ytmp[q] = y[q] + hs * (a61 * k[0][q] + a62 * k[1][q] + a63 * k[2][q] +
                             a64 * k[3][q] + a65 * k[4][q]);
    derivative(scratch, ytmp, opts.collision_eps, k[5]);
    for (int q = 0; q < N; ++q)
      ynew[q] = y[q] + hs * (b1 * k[0][q] + b3 * k[2][q] + b4 * k[3][q] +
                             b5 * k[4][q] + b6 * k[5][q]);
    derivative(scratch, ynew, opts.collision_eps, k[6]);

    double errsq = 0.0;
    for (int q = 0; q < N; ++q) {
      const double e = hs * (e1 * k[0][q] + e3 * k[2][q] + e4 * k[3][q] +
                             e5 * k[4][q] + e6 * k[5][q] + e7 * k[6][q]);
      const double sc =
          opts.atol + opts.rtol * std::max(std::abs(y[q]), std::abs(ynew[q]));
      errsq += (e / sc) * (e / sc);
    }
    const double err = std::sqrt(errsq / N);

    if (std::isfinite(err) && err <= 1.0) {
      unpack(ynew, scratch);
      project_state(scratch);
      pack(scratch, y);
      ++traj.stats.steps_accepted;
      traj.stats.min_step = std::min(traj.stats.min_step, hs);
      t = capped ? target : t + hs;
      if (capped) {
        emit(t);
        if (t >= t_end) break;
        ++sample_idx;
        target = next_target(t0, dt, sample_idx, t_end);
      }
      const double fac =
          err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
      // A boundary-capped step says nothing about the natural step
      // size unless it struggled, so keep the previous h then.
      if (!capped)
        h = hs * fac;
      else if (fac < 1.0)
        h = hs * fac;
    } else {
      ++traj.stats.steps_rejected;
      const double fac =
          std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
      h = hs * std::min(fac, 0.9);
    }
  }
  return traj;
}

}  // namespace rotopulse
