#include "vmlimit/kinematics.hpp"

#include <algorithm>
#include <cctype>

namespace vmlimit {

SpeedOfLight SpeedOfLight::parse(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(static_cast<char>(std::tolower(ch)));
  if (t == "inf" || t == "infinity" || t == "+inf") return infinite();
  size_t pos = 0;
  double v = std::stod(t, &pos);
  if (pos != t.size()) throw std::invalid_argument("SpeedOfLight::parse: trailing characters in '" + text + "'");
  return finite(v);
}

namespace kinematics {

namespace {

void require_species(const SpeciesParams& sp) {
  if (!(sp.mass > 0.0))
    throw std::invalid_argument("kinematics: species mass must be positive (label '" + sp.label + "')");
}

}  // namespace

double lorentz_gamma(Vec2 p, const SpeciesParams& sp, SpeedOfLight c) {
  require_species(sp);
  if (c.is_infinite()) return sp.mass;
  double ic = c.inverse();
  double p2 = p[0] * p[0] + p[1] * p[1];
  return std::sqrt(sp.mass * sp.mass + ic * ic * p2);
}

double gamma_minus_mass(Vec2 p, const SpeciesParams& sp, SpeedOfLight c) {
  require_species(sp);
  if (c.is_infinite()) return 0.0;
  double ic = c.inverse();
  double p2 = p[0] * p[0] + p[1] * p[1];
  double gamma = std::sqrt(sp.mass * sp.mass + ic * ic * p2);
  return ic * ic * p2 / (gamma + sp.mass);
}

Vec2 velocity(Vec2 p, const SpeciesParams& sp, SpeedOfLight c) {
  require_species(sp);
  double gamma = lorentz_gamma(p, sp, c);
  return {p[0] / gamma, p[1] / gamma};
}

double kinetic_energy(Vec2 p, const SpeciesParams& sp, SpeedOfLight c) {
  require_species(sp);
  double p2 = p[0] * p[0] + p[1] * p[1];
  return p2 / (lorentz_gamma(p, sp, c) + sp.mass);
}

double momentum_energy(Vec2 p, const SpeciesParams& sp, SpeedOfLight c) {
  require_species(sp);
  double p2 = p[0] * p[0] + p[1] * p[1];
  double gamma = lorentz_gamma(p, sp, c);
  return p[0] * p2 / (gamma * (gamma + sp.mass));
}

std::array<double, 2> sigma_pm(Vec2 p, const SpeciesParams& sp, SpeedOfLight c) {
  require_species(sp);
  double kin = kinetic_energy(p, sp, c);
  double icv1 = c.inverse() * velocity(p, sp, c)[0];  // |icv1| < 1 strictly
  return {kin * (1.0 + icv1), kin * (1.0 - icv1)};
}

double sigma_pm_lower_bound(Vec2 p, const SpeciesParams& sp, SpeedOfLight c) {
  require_species(sp);
  double p2 = p[0] * p[0] + p[1] * p[1];
  if (c.is_infinite()) return p2 * sp.mass * sp.mass / (4.0 * sp.mass * sp.mass * sp.mass);
  double ic = c.inverse();
  double gamma = lorentz_gamma(p, sp, c);
  return p2 * (sp.mass * sp.mass + ic * ic * p[1] * p[1]) / (4.0 * gamma * gamma * gamma);
}

KinematicSample sample(Vec2 p, const SpeciesParams& sp, SpeedOfLight c) {
  KinematicSample s;
  s.p = p;
  s.gamma = lorentz_gamma(p, sp, c);
  s.v = velocity(p, sp, c);
  auto sg = sigma_pm(p, sp, c);
  s.sigma_plus = sg[0];
  s.sigma_minus = sg[1];
  return s;
}

}  // namespace kinematics
}  // namespace vmlimit
