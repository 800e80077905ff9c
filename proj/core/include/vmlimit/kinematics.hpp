#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace vmlimit {

using Vec2 = std::array<double, 2>;

struct SpeciesParams {
  double charge = 0.0;
  double mass = 1.0;
  std::string label;
};

// Speed of light as a value type with a distinguished infinite state.
// The nonrelativistic branch is selected by the state, never by comparing
// against a large float.
class SpeedOfLight {
 public:
  static SpeedOfLight finite(double c) {
    if (!(c > 0.0) || !std::isfinite(c))
      throw std::invalid_argument("SpeedOfLight::finite: c must be positive and finite");
    SpeedOfLight s;
    s.value_ = c;
    return s;
  }
  static SpeedOfLight infinite() { return SpeedOfLight{}; }

  // Parses "inf" / "infinity" or a positive real.
  static SpeedOfLight parse(const std::string& text);

  bool is_finite() const { return std::isfinite(value_); }
  bool is_infinite() const { return !std::isfinite(value_); }

  // Finite value; throws on the infinite state.
  double value() const {
    if (is_infinite())
      throw std::logic_error("SpeedOfLight::value called on the infinite state");
    return value_;
  }

  // 1/c, with 0 for the infinite state.  Safe in any formula where the
  // nonrelativistic limit is obtained by dropping the 1/c terms.
  double inverse() const { return is_infinite() ? 0.0 : 1.0 / value_; }

  // IEEE +inf for the infinite state (snapshot encoding).
  double storage_value() const { return value_; }

  bool operator==(const SpeedOfLight& o) const { return value_ == o.value_; }

  // Default-constructs to the infinite state; prefer the named factories.
  SpeedOfLight() = default;

 private:
  double value_ = std::numeric_limits<double>::infinity();
};

namespace kinematics {

// gamma(p) = sqrt(m^2 + |p|^2/c^2); carries mass units, gamma -> m as c -> inf.
double lorentz_gamma(Vec2 p, const SpeciesParams& sp, SpeedOfLight c);

// gamma(p) - m evaluated cancellation-free as (|p|^2/c^2) / (gamma + m).
// Exact 0 at p = 0 and fully accurate for c^-2 |p|^2 << m^2, where the direct
// difference would lose every significant digit.
double gamma_minus_mass(Vec2 p, const SpeciesParams& sp, SpeedOfLight c);

// V(p) = p / gamma(p); |V| < c strictly.  Infinite c gives p/m.
Vec2 velocity(Vec2 p, const SpeciesParams& sp, SpeedOfLight c);

// c^2 (gamma - m): kinetic energy density weight.  Finite limit p^2/(2m).
double kinetic_energy(Vec2 p, const SpeciesParams& sp, SpeedOfLight c);

// c^2 (p1 - m V1): momentum-flux weight, evaluated as p1 |p|^2 / (gamma (gamma + m)).
double momentum_energy(Vec2 p, const SpeciesParams& sp, SpeedOfLight c);

// sigma_pm = c^2 (gamma - m)(1 +- V1/c); both entries nonnegative.
// Limit value is p^2/(2m) for both signs.
std::array<double, 2> sigma_pm(Vec2 p, const SpeciesParams& sp, SpeedOfLight c);

// Lower bound |p|^2 (m^2 + p2^2/c^2) / (4 gamma^3) <= sigma_pm (both signs).
double sigma_pm_lower_bound(Vec2 p, const SpeciesParams& sp, SpeedOfLight c);

struct KinematicSample {
  Vec2 p{};
  double gamma = 0.0;
  Vec2 v{};
  double sigma_plus = 0.0;
  double sigma_minus = 0.0;
};

KinematicSample sample(Vec2 p, const SpeciesParams& sp, SpeedOfLight c);

}  // namespace kinematics

}  // namespace vmlimit
