#include "sawmzi/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sawmzi {

namespace {

void check_v(double v) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument("coherence factor v outside [0, 1]");
}

double clamp_prob(double p, const char* what) {
  if (p < -1e-12 || p > 1.0 + 1e-12)
    throw std::invalid_argument(std::string(what) + ": probability outside [0, 1]");
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

double MziConfig::coherence() const { return std::exp(-tau / t2); }

void validate(const MziConfig& cfg) {
  validate(cfg.bs1);
  validate(cfg.bs2);
  if (!std::isfinite(cfg.phi)) throw std::invalid_argument("MziConfig: phi not finite");
  if (!(cfg.tau >= 0.0)) throw std::invalid_argument("MziConfig: tau must be >= 0");
  if (!(cfg.t2 > 0.0)) throw std::invalid_argument("MziConfig: t2 must be > 0");
}

DensityMatrix mzi_closed_form_state(double theta, double gamma, double phi, double v) {
  check_v(v);
  const double c = std::cos(theta), s = std::sin(theta);
  const double s2t = std::sin(2.0 * theta), c2t = std::cos(2.0 * theta);
  const double cgp = std::cos(gamma + phi);
  const double rho00 = c * c * c * c + s * s * s * s + 0.5 * v * s2t * s2t * cgp;
  const double rho11 = 0.5 * s2t * s2t * (1.0 - v * cgp);
  const complexd rho01 = 0.5 * std::polar(1.0, -gamma) * s2t *
                         (c2t + v * std::polar(1.0, gamma + phi) - 2.0 * v * c * c * cgp);
  return {rho00, rho01, rho11};
}

DetectorProbs mzi_closed_form_probs(double theta, double gamma, double phi, double v) {
  const DensityMatrix rho = mzi_closed_form_state(theta, gamma, phi, v);
  return {clamp_prob(rho.rho00, "p0"), clamp_prob(rho.rho11, "p1")};
}

DensityMatrix mzi_simulate_state(const MziConfig& cfg, const QubitState& input) {
  validate(cfg);
  validate(input);
  DensityMatrix rho = DensityMatrix::from_pure(input);
  rho = apply_unitary(rho, bs_unitary(cfg.bs1));
  rho = apply_unitary(rho, phase_unitary(cfg.phi + kRecombinationPhaseOffset));
  rho = dephase(rho, cfg.tau, cfg.t2);
  return apply_unitary(rho, bs_unitary(cfg.bs2));
}

DetectorProbs mzi_simulate(const MziConfig& cfg, const QubitState& input) {
  const DensityMatrix rho = mzi_simulate_state(cfg, input);
  return {clamp_prob(rho.rho00, "p0"), clamp_prob(rho.rho11, "p1")};
}

Visibility visibility_closed_form(double theta, double v) {
  check_v(v);
  constexpr double half_pi = std::numbers::pi / 2;
  if (!(theta > 0.0 && theta < half_pi))
    throw std::invalid_argument(
        "visibility undefined at theta in {0, pi/2}: detector 1 never fires");
  const double c = std::cos(theta), s = std::sin(theta);
  const double s2t = std::sin(2.0 * theta);
  const double v0 = v * s2t * s2t / (2.0 * (c * c * c * c + s * s * s * s));
  return {v0, v};
}

}  // namespace sawmzi
