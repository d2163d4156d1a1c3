#pragma once

#include <numbers>

#include "sawmzi/qubit.hpp"

namespace sawmzi {

/// Full interferometer: splitter bs1, phase gate phi, dephasing exposure
/// (tau, t2) between the splitters, recombining splitter bs2.
struct MziConfig {
  BeamsplitterSpec bs1;
  BeamsplitterSpec bs2;
  double phi{0.0};  // phase-gate angle, radians
  double tau{0.0};  // exposure between the splitters, seconds
  double t2{1.0};   // coherence 1/e time, seconds

  /// Coherence factor exp(-tau/t2) surviving the arm segment.
  double coherence() const;
};

struct DetectorProbs {
  double p0;
  double p1;
};

void validate(const MziConfig& cfg);

/// Composition convention.  mzi_closed_form_probs places the bright fringe of
/// detector 0 at gamma + phi = 0; literal left-multiplication of two
/// bs_unitary matrices around phase_unitary(phi) places it at
/// gamma + phi = pi.  mzi_simulate therefore adds this fixed offset on the
/// phase leg, which makes the two routes agree entry for entry in the final
/// state.  Pinned by the derivation-oracle test.
inline constexpr double kRecombinationPhaseOffset = std::numbers::pi;

/// Final state of the symmetric interferometer (both splitters (theta,
/// gamma)) with coherence factor v in [0, 1]:
///   rho00 = cos^4 t + sin^4 t + (v/2) sin^2 2t cos(g + phi)
///   rho01 = (1/2) e^{-ig} sin 2t (cos 2t + v e^{i(g+phi)}
///           - 2 v cos^2 t cos(g + phi))
///   rho11 = (1/2) sin^2 2t (1 - v cos(g + phi))
DensityMatrix mzi_closed_form_state(double theta, double gamma, double phi, double v);

/// Detector probabilities (rho00, rho11) of the closed-form final state.
/// p0 + p1 = 1 identically.
DetectorProbs mzi_closed_form_probs(double theta, double gamma, double phi, double v);

/// Pipeline route: bs1 -> phase gate -> dephase -> bs2 by channel
/// composition.  Matches mzi_closed_form_probs whenever bs1 == bs2.
/// Defined for arbitrary splitter pairs; probabilities are read off the
/// final diagonals.
DetectorProbs mzi_simulate(const MziConfig& cfg, const QubitState& input = QubitState::ket0());

/// Full final state of the pipeline route.
DensityMatrix mzi_simulate_state(const MziConfig& cfg, const QubitState& input = QubitState::ket0());

struct Visibility {
  double v0;
  double v1;
};

/// Fringe visibilities of the two detectors for the symmetric device:
///   v0 = v sin^2 2t / (2 (cos^4 t + sin^4 t)),   v1 = v for every theta.
/// theta = 0 and pi/2 are rejected: detector 1 never fires there and its
/// visibility is 0/0.
Visibility visibility_closed_form(double theta, double v);

}  // namespace sawmzi
