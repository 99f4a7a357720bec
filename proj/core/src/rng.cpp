#include "mataf/rng.hpp"

#include <cmath>
#include <numbers>

namespace mataf {

double Pcg32::next_normal(double mu, double sigma) {
  if (has_cached_) {
    has_cached_ = false;
    return mu + sigma * cached_;
  }
  double u1;
  do {
    u1 = next_double();
  } while (u1 <= 0.0);
  double u2 = next_double();
  double r = std::sqrt(-2.0 * std::log(u1));
  double z0 = r * std::cos(2.0 * std::numbers::pi * u2);
  cached_ = r * std::sin(2.0 * std::numbers::pi * u2);
  has_cached_ = true;
  return mu + sigma * z0;
}

}  // namespace mataf
