#include "rotopulse/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rotopulse/rotopulsator.hpp"

namespace rotopulse {

namespace {

void check_kernel_domain(double x, Curvature sigma) {
  if (!(x > 0.0))
    throw DomainError("chord length must be positive, got " +
                      std::to_string(x));
  if (sigma == Curvature::Sphere && !(x < 2.0))
    throw DomainError("chord length must stay below the antipodal value 2 "
                      "on the sphere, got " +
                      std::to_string(x));
}

void check_problem(const EquilibriumProblem& prob) {
  if (prob.n < 2)
    throw DegenerateSize("need at least two bodies, got " +
                         std::to_string(prob.n));
  if (static_cast<int>(prob.masses.size()) != prob.n)
    throw LengthMismatch("expected " + std::to_string(prob.n) +
                         " masses, got " + std::to_string(prob.masses.size()));
  for (int i = 0; i < prob.n; ++i)
    if (!(prob.masses[i] > 0.0))
      throw DomainError("mass " + std::to_string(i + 1) + " is not positive");
  if (!prob.diagnostic)
    for (int i = 1; i < prob.n; ++i)
      if (prob.masses[i] != prob.masses[0])
        throw DomainError(
            "unequal masses admit no rigidly rotating polygon; rerun in "
            "diagnostic mode to inspect the residuals");
}

}  // namespace

double interaction_kernel(double x, Curvature sigma) {
  check_kernel_domain(x, sigma);
  const double u = 1.0 - sign_of(sigma) * x * x / 4.0;
  const double base = x * x * u;
  return 1.0 / (base * std::sqrt(base));
}

double interaction_xf_derivative(double x, Curvature sigma) {
  check_kernel_domain(x, sigma);
  const double sg = sign_of(sigma);
  const double u = 1.0 - sg * x * x / 4.0;
  return (1.25 * sg * x * x - 2.0) / (x * x * x * u * u * std::sqrt(u));
}

AngularSpeedSample angular_speed_squared(double r,
                                         const EquilibriumProblem& prob) {
  check_problem(prob);
  if (!(r > 0.0))
    throw DomainError("radius must be positive, got " + std::to_string(r));
  if (prob.sigma == Curvature::Sphere && !(r < 1.0))
    throw DomainError("radius must stay below 1 on the sphere, got " +
                      std::to_string(r));

  // With the polygon chord x_g = sqrt(2) r sqrt(1 - cos(2 pi g / n)),
  //   sum_g m_g (1-cos) f(x_g)  =  r^{-3} sum_g m_g  (1-cos)^{-1/2} D^{-3/2}
  //   sum_g m_g  sin    f(x_g)  =  r^{-3} sum_g m_g sin (1-cos)^{-3/2} D^{-3/2}
  // with D = 2 - sigma r^2 (1-cos), so both sums reduce to the shared
  // per-gap criterion coefficients. Reusing those keeps this evaluation
  // bit-consistent with the existence-criterion residuals (including
  // the exact equal-mass cancellation of the tangential part).
  const int n = prob.n;
  const auto co = criterion_gap_coefficients(n, r, prob.sigma);

  double radial = 0.0;
  for (int g = 1; g < n; ++g) radial += prob.masses[g % n] * co.radial[g];
  double tang = 0.0;
  for (int g = 1; 2 * g < n; ++g)
    tang += prob.masses[g % n] * co.tangential[g] +
            prob.masses[(n - g) % n] * co.tangential[n - g];

  AngularSpeedSample out;
  const double r3 = r * r * r;
  out.asq = radial / r3;
  out.tangential = tang / (r3 * r3);
  return out;
}

EquilibriumReport solve_equilibrium(const EquilibriumProblem& prob) {
  check_problem(prob);
  if (!(prob.r_lo > 0.0) || !(prob.r_hi > prob.r_lo))
    throw DomainError("need 0 < r_lo < r_hi, got [" +
                      std::to_string(prob.r_lo) + ", " +
                      std::to_string(prob.r_hi) + "]");
  if (prob.sigma == Curvature::Sphere && !(prob.r_hi < 1.0))
    throw DomainError("r_hi must stay below 1 on the sphere, got " +
                      std::to_string(prob.r_hi));
  if (!(prob.bracket_tol > 0.0))
    throw DomainError("bracket_tol must be positive");

  EquilibriumReport rep;
  rep.bracket_tol = prob.bracket_tol;

  if (prob.diagnostic) {
    double worst = 0.0;
    const double rs[3] = {prob.r_lo, std::sqrt(prob.r_lo * prob.r_hi),
                          prob.r_hi};
    for (double r : rs) {
      const auto cr = criterion_residuals(prob.masses, r, prob.sigma);
      for (double t : cr.tangential) worst = std::max(worst, std::abs(t));
    }
    rep.diagnostic_tangential = worst;
    return rep;
  }

  if (!(prob.angular_speed > 0.0))
    throw DomainError("angular speed must be positive, got " +
                      std::to_string(prob.angular_speed));

  const int grid = std::max(prob.grid_points, 2048);
  const double target = prob.angular_speed * prob.angular_speed;
  auto excess = [&](double r) {
    return angular_speed_squared(r, prob).asq - target;
  };

  const double loglo = std::log(prob.r_lo);
  const double loghi = std::log(prob.r_hi);
  std::vector<double> rs(grid), gs(grid);
  for (int i = 0; i < grid; ++i) {
    const double f = static_cast<double>(i) / (grid - 1);
    rs[i] = std::exp(loglo + f * (loghi - loglo));
  }
  rs.front() = prob.r_lo;
  rs.back() = prob.r_hi;

  // Certify monotonicity on A^2 itself: subtracting an extreme target
  // first would saturate the tail comparisons at -target and spoil the
  // strict-decrease test even though A^2 keeps falling.
  bool monotone = true;
  for (int i = 0; i < grid; ++i) {
    gs[i] = angular_speed_squared(rs[i], prob).asq;
    if (i > 0 && !(gs[i] < gs[i - 1])) monotone = false;
  }

  for (int i = 0; i < grid; ++i) {
    if (gs[i] == target) {
      rep.roots.push_back(rs[i]);
      continue;
    }
    if (i + 1 >= grid || !((gs[i] - target) * (gs[i + 1] - target) < 0.0))
      continue;
    double lo = rs[i], hi = rs[i + 1], glo = gs[i];
    while (hi - lo > prob.bracket_tol * hi) {
      const double mid = 0.5 * (lo + hi);
      const double gm = excess(mid);
      if (gm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((gm > 0.0) == (glo > 0.0)) {
        lo = mid;
        glo = gm;
      } else {
        hi = mid;
      }
    }
    rep.roots.push_back(0.5 * (lo + hi));
  }

  rep.root_count = static_cast<int>(rep.roots.size());
  rep.monotone_certificate = monotone;
  return rep;
}

std::pair<double, double> default_radius_range(Curvature sigma) {
  if (sigma == Curvature::Hyperboloid) return {1e-3, 50.0};
  // Keep every polygon chord (at most 2r) inside the window where the
  // kernel slope d/dx [x f] holds one sign, with a 1% margin.
  const double xstar = std::sqrt(kSphereXfSignChangeSquared);
  return {1e-3, std::min(0.99 * xstar / 2.0, 0.999)};
}

}  // namespace rotopulse
