#include "rotopulse/state.hpp"

#include <cmath>
#include <string>

namespace rotopulse {

void SystemState::validate() const {
  if (bodies.empty())
    throw DegenerateSize("state has no bodies");
  if (masses.size() != bodies.size())
    throw LengthMismatch("state has " + std::to_string(bodies.size()) +
                         " bodies but " + std::to_string(masses.size()) +
                         " masses");
  const double sg = sign_of(sigma);
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (!(masses[i] > 0.0))
      throw DomainError("mass " + std::to_string(i + 1) + " is not positive");
    const Body& b = bodies[i];
    if (!b.q.finite() || !b.v.finite())
      throw OffManifold("body " + std::to_string(i + 1) +
                        " has a non-finite component");
    const double cres = std::abs(dot_sigma(b.q, b.q, sigma) - sg);
    if (cres > 1e-9)
      throw OffManifold("body " + std::to_string(i + 1) +
                        " constraint residual " + std::to_string(cres) +
                        " exceeds 1e-9");
    const double tres = std::abs(dot_sigma(b.q, b.v, sigma));
    if (tres > 1e-9)
      throw OffManifold("body " + std::to_string(i + 1) +
                        " tangency residual " + std::to_string(tres) +
                        " exceeds 1e-9");
    if (sigma == Curvature::Hyperboloid && !(b.q[3] > 0.0))
      throw OffManifold("body " + std::to_string(i + 1) +
                        " is not on the upper sheet (q4 <= 0)");
  }
}

}  // namespace rotopulse
