#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sawmzi/device.hpp"
#include "sawmzi/interferometer.hpp"

namespace sawmzi {

/// Swept detector probabilities over one phase period.
struct FringeData {
  std::vector<double> phi;  // strictly increasing, covers a full 2 pi period
  std::vector<double> p0;
  std::vector<double> p1;
  std::optional<long long> n_samples;   // per-point electron count when sampled
  std::optional<std::uint64_t> seed;
};

void validate(const FringeData& data);

/// Evaluate mzi_simulate on the uniform grid phi_k = 2 pi k / n_points,
/// k = 0 .. n_points-1 (cfg.phi is replaced by the grid value).  With
/// n_samples set, each p1 is replaced by a binomial draw k1/n and p0 by its
/// complement; identical (cfg, n_points, n_samples, seed) give bit-identical
/// output.  An unset seed defaults to 0.
FringeData fringe_sweep(const MziConfig& cfg, int n_points,
                        std::optional<long long> n_samples = std::nullopt,
                        std::optional<std::uint64_t> seed = std::nullopt);

struct VisibilityEstimate {
  double v0;
  double v1;
};

/// Grid (max - min) / (max + min) per detector.  Rejects a detector whose
/// max + min is zero (it never fires; visibility is 0/0).
VisibilityEstimate extract_visibility(const FringeData& data);

/// Secondary estimator: least-squares single-harmonic fit, amplitude over
/// offset.  Less biased than extract_visibility under sampling noise but
/// not the canonical definition.  Requires the uniform fringe_sweep grid.
VisibilityEstimate fit_visibility(const FringeData& data);

double mean_p0(const FringeData& data);
double mean_p1(const FringeData& data);

class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Device under calibration: commanded splitter angles in, fringe data out.
/// The mapping may hide actuator offsets and dephasing.
using SweepFn = std::function<FringeData(double theta1_cmd, double theta2_cmd)>;

struct CalibrationResult {
  double theta1_hat;  // commanded angle balancing the first splitter
  double theta2_hat;  // commanded angle maximizing detector-1 visibility
  double v1_max;      // visibility at the optimum
};

/// Two-stage tuning: bisect theta1 until the phase-averaged p1 is 1/2, then
/// golden-section maximize the extracted v1 over theta2.  Stage 1 holds the
/// second splitter at fixed probe commands (pi/3, pi/5) and uses the more
/// responsive probe; the averaged criterion is insensitive to theta1 exactly
/// when the actual second splitter is 50:50, and two distinct probes cannot
/// both land there.  Throws CalibrationError when the 1/2 average cannot be
/// bracketed.
CalibrationResult calibrate(const SweepFn& device, double tol = 1e-6);

/// Simulated calibration target: actual angle = commanded + offset, folded
/// into [0, pi/2] by reflection.  theta2_fixed models a stuck second
/// splitter that ignores its command.
struct SimulatedMzi {
  double theta1_offset{0.0};
  double theta2_offset{0.0};
  double gamma1{0.0};
  double tau{0.0};
  double t2{1.0};
  int n_points{256};
  std::optional<double> theta2_fixed;

  double actual_theta1(double cmd) const;
  double actual_theta2(double cmd) const;
  FringeData operator()(double theta1_cmd, double theta2_cmd) const;
};

/// Variable-path-length schedule for a coherence-time measurement.
struct T2Design {
  std::vector<double> lengths;  // m, strictly increasing, uniform increments
  std::vector<double> taus;     // s, lengths / v_saw
};

/// n_settings uniformly spaced exposures tau_k = k * (2.3 t2_guess /
/// n_settings); the longest exposure leaves about 10% of the initial
/// visibility (e^-2.3 = 0.100).  Requires n_settings >= 5.
T2Design design_t2_experiment(double t2_guess, int n_settings, double v_saw);

struct T2FitResult {
  double t2_hat;         // s; +inf sentinel when the fitted slope is >= 0
  double amplitude_hat;  // constant gate-error factor absorbed by the intercept
  double residual_rms;   // in log-visibility
  /// OLS covariance of (intercept ln A, slope -1/T2).
  std::array<std::array<double, 2>, 2> covariance;
  double t2_stderr;      // delta-method standard error on t2_hat

  static constexpr double kNoDecay = std::numeric_limits<double>::infinity();
};

/// Ordinary least squares on ln(v_i) = ln(A) - tau_i / T2.  Needs >= 3
/// points; rejects v outside (0, 1.05] naming the offending index.
T2FitResult estimate_t2(const std::vector<double>& taus,
                        const std::vector<double>& visibilities);

struct FieldEstimate {
  double e_hat;        // V/m
  double sigma;        // V/m, shot-noise standard error
  double n_electrons;  // f_saw * delta_t
};

/// One-shot transverse-field readout at a calibrated 50:50 working point:
/// invert p1 = (1 - cos phi)/2 on the branch nearest working_point, convert
/// phi to E through the phase-gate geometry, and propagate the binomial
/// bound 1/(2 sqrt N) through the local fringe slope.  Working points
/// within 0.1 rad of a fringe extremum are rejected as ill-conditioned.
/// Needs d, l_phase and f_saw set on the device.
FieldEstimate sense_field(const DeviceParams& device, double observed_p1,
                          double working_point, double delta_t);

// --- CSV formats (15 significant digits, bit-stable for fixed seeds) ---

/// Header `phi,p0,p1`, one row per grid point.
std::string to_csv(const FringeData& data);

/// Header `tau_s,visibility`, one row per setting, then a `#` summary line
/// with the fit parameters.
std::string t2_csv(const std::vector<double>& taus,
                   const std::vector<double>& visibilities,
                   const T2FitResult& fit);

/// Parse a `tau_s,visibility` CSV ('#' comments ignored).
std::pair<std::vector<double>, std::vector<double>> read_tau_visibility_csv(
    std::istream& in);

}  // namespace sawmzi
