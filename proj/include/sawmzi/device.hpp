#pragma once

#include <optional>

#include "sawmzi/qubit.hpp"

namespace sawmzi {

/// CODATA 2018 exact values, SI.
namespace constants {
inline constexpr double e = 1.602176634e-19;     // elementary charge, C
inline constexpr double h = 6.62607015e-34;      // Planck constant, J s
inline constexpr double hbar = 1.054571817e-34;  // reduced Planck constant, J s
inline constexpr double k_B = 1.380649e-23;      // Boltzmann constant, J / K
}  // namespace constants

/// Device geometry and operating point, SI units.  v_saw defaults to the
/// GaAs value; the remaining fields are optional so that partial configs can
/// drive the individual calculators.
struct DeviceParams {
  double v_saw{2700.0};               // SAW velocity, m/s
  std::optional<double> d;            // channel separation, m
  std::optional<double> l_phase;      // phase-gate length, m
  std::optional<double> l_tunnel;     // tunnel-gap length, m
  std::optional<double> area;         // flux-loop area, m^2
  std::optional<double> temperature;  // K
  std::optional<double> f_saw;        // SAW repetition frequency, Hz
};

void validate(const DeviceParams& p);

/// Returns the field value or throws std::invalid_argument naming it.
double require(const std::optional<double>& field, const char* name);

/// Double-well splitting: tunnelling energy delta and well asymmetry
/// epsilon, both in joules.  The tunnel-angle map assumes small epsilon.
struct TunnelSpec {
  double delta{0.0};
  double epsilon{0.0};
};

/// Splitter angle produced by a tunnel gap, with the Rabi fold bookkeeping:
/// theta_raw = (delta/hbar) * gap_length / v_saw, folded into [0, pi/2] by
/// reflection at the quarter-period boundaries.  wraps counts the folds, so
/// theta_raw = wraps * pi/2 +/- spec.theta.  The fold preserves the
/// splitting ratio cos^2/sin^2; spec.gamma = -pi/2 so that on the principal
/// branch bs_unitary(spec) maps |0> to cos(theta)|0> - i sin(theta)|1>.
struct TunnelAngle {
  BeamsplitterSpec spec;
  int wraps{0};
  double theta_raw{0.0};
};

/// length / v_saw.
double transit_time(double length, double v_saw);

/// Phase picked up across a gate of length l from a transverse field
/// E over channel separation d:  e |E| d l / (hbar v_saw).
double efield_phase(double e_field, double d, double l, double v_saw);

/// Gate length at which a transverse potential change v_min produces
/// exactly 2 pi:  h v_saw / (e v_min).  Longer gates waste the thermally
/// limited voltage resolution.
double max_gate_length(double v_min, double v_saw);

/// Flux phase for a uniform perpendicular field through a planar loop:
/// e B area / hbar.
double ab_phase(double b_field, double area);

/// Field change giving a 2 pi flux phase: h / (e area).
double ab_field_for_2pi(double area);

TunnelAngle tunnel_angle(const TunnelSpec& spec, double gap_length, double v_saw);

/// k_B T / e, in eV.
double thermal_energy(double temperature);

/// Relative shot noise 1/sqrt(N) of an N = f_saw * delta_t electron count.
double shot_noise_relative(double f_saw, double delta_t);

}  // namespace sawmzi
