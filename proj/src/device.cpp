#include "sawmzi/device.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sawmzi {

namespace {

void require_positive(double x, const char* what) {
  if (!(x > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
}

}  // namespace

void validate(const DeviceParams& p) {
  require_positive(p.v_saw, "v_saw");
  const struct { const std::optional<double>* field; const char* name; } fields[] = {
      {&p.d, "d"},       {&p.l_phase, "l_phase"},         {&p.l_tunnel, "l_tunnel"},
      {&p.area, "area"}, {&p.temperature, "temperature"}, {&p.f_saw, "f_saw"},
  };
  for (const auto& [field, name] : fields)
    if (field->has_value()) require_positive(**field, name);
}

double require(const std::optional<double>& field, const char* name) {
  if (!field)
    throw std::invalid_argument("device parameter " + std::string(name) + " is not set");
  return *field;
}

double transit_time(double length, double v_saw) {
  if (!(length >= 0.0)) throw std::invalid_argument("length must be >= 0");
  require_positive(v_saw, "v_saw");
  return length / v_saw;
}

double efield_phase(double e_field, double d, double l, double v_saw) {
  if (!(e_field >= 0.0)) throw std::invalid_argument("e_field must be >= 0");
  require_positive(d, "d");
  require_positive(l, "l");
  require_positive(v_saw, "v_saw");
  return constants::e * e_field * d * l / (constants::hbar * v_saw);
}

double max_gate_length(double v_min, double v_saw) {
  require_positive(v_min, "v_min");
  require_positive(v_saw, "v_saw");
  return constants::h * v_saw / (constants::e * v_min);
}

double ab_phase(double b_field, double area) {
  if (!(area >= 0.0)) throw std::invalid_argument("area must be >= 0");
  return constants::e * b_field * area / constants::hbar;
}

double ab_field_for_2pi(double area) {
  require_positive(area, "area");
  return constants::h / (constants::e * area);
}

TunnelAngle tunnel_angle(const TunnelSpec& spec, double gap_length, double v_saw) {
  if (!(spec.delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
  if (!(gap_length >= 0.0)) throw std::invalid_argument("gap_length must be >= 0");
  require_positive(v_saw, "v_saw");
  constexpr double half_pi = std::numbers::pi / 2;
  const double theta_raw = spec.delta / constants::hbar * gap_length / v_saw;
  // reflect at each quarter-period boundary; keeps cos^2 theta invariant
  const int wraps = static_cast<int>(std::floor(theta_raw / half_pi));
  const double rem = theta_raw - wraps * half_pi;
  const double principal = (wraps % 2 == 0) ? rem : half_pi - rem;
  return {{principal, -half_pi}, wraps, theta_raw};
}

double thermal_energy(double temperature) {
  if (!(temperature >= 0.0)) throw std::invalid_argument("temperature must be >= 0");
  return constants::k_B * temperature / constants::e;
}

double shot_noise_relative(double f_saw, double delta_t) {
  require_positive(f_saw, "f_saw");
  require_positive(delta_t, "delta_t");
  return 1.0 / std::sqrt(f_saw * delta_t);
}

}  // namespace sawmzi
