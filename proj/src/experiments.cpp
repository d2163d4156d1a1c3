#include "sawmzi/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace sawmzi {

namespace {

constexpr double pi = std::numbers::pi;

std::string fmtg(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

double vec_mean(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// Reflect x into [0, pi/2]; period pi, continuous at the boundaries.
double fold_angle(double x) {
  x = std::fmod(x, pi);
  if (x < 0.0) x += pi;
  return x <= pi / 2 ? x : pi - x;
}

struct MinMax {
  double lo, hi;
};

MinMax min_max(const std::vector<double>& xs) {
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return {*lo, *hi};
}

double visibility_from(const MinMax& m, const char* detector) {
  if (m.lo + m.hi <= 0.0)
    throw std::invalid_argument(std::string("visibility undefined for ") + detector +
                                ": detector never fires");
  return (m.hi - m.lo) / (m.hi + m.lo);
}

}  // namespace

void validate(const FringeData& data) {
  const std::size_t n = data.phi.size();
  if (data.p0.size() != n || data.p1.size() != n)
    throw std::invalid_argument("FringeData: column lengths differ");
  if (n < 2) throw std::invalid_argument("FringeData: need at least 2 points");
  for (std::size_t i = 1; i < n; ++i)
    if (!(data.phi[i] > data.phi[i - 1]))
      throw std::invalid_argument("FringeData: phi grid not strictly increasing");
  const double span = data.phi.back() - data.phi.front();
  const double spacing = span / static_cast<double>(n - 1);
  if (span + spacing < 2 * pi - 1e-9)
    throw std::invalid_argument("FringeData: grid does not cover a full period");
  for (std::size_t i = 0; i < n; ++i)
    if (data.p0[i] < -1e-12 || data.p0[i] > 1 + 1e-12 || data.p1[i] < -1e-12 ||
        data.p1[i] > 1 + 1e-12)
      throw std::invalid_argument("FringeData: probability outside [0, 1]");
}

FringeData fringe_sweep(const MziConfig& cfg, int n_points,
                        std::optional<long long> n_samples,
                        std::optional<std::uint64_t> seed) {
  validate(cfg);
  if (n_points < 8)
    throw std::invalid_argument("fringe_sweep: need n_points >= 8 to resolve a fringe");
  if (n_samples && *n_samples <= 0)
    throw std::invalid_argument("fringe_sweep: n_samples must be positive");

  FringeData data;
  data.phi.reserve(n_points);
  data.p0.reserve(n_points);
  data.p1.reserve(n_points);
  data.n_samples = n_samples;
  if (n_samples) data.seed = seed.value_or(0);

  std::mt19937_64 rng(data.seed.value_or(0));
  MziConfig point = cfg;
  for (int k = 0; k < n_points; ++k) {
    point.phi = 2 * pi * k / n_points;
    DetectorProbs probs = mzi_simulate(point);
    if (n_samples) {
      std::binomial_distribution<long long> draw(*n_samples, probs.p1);
      const double p1 = static_cast<double>(draw(rng)) / static_cast<double>(*n_samples);
      probs = {1.0 - p1, p1};
    }
    data.phi.push_back(point.phi);
    data.p0.push_back(probs.p0);
    data.p1.push_back(probs.p1);
  }
  return data;
}

VisibilityEstimate extract_visibility(const FringeData& data) {
  validate(data);
  return {visibility_from(min_max(data.p0), "detector 0"),
          visibility_from(min_max(data.p1), "detector 1")};
}

VisibilityEstimate fit_visibility(const FringeData& data) {
  validate(data);
  const std::size_t n = data.phi.size();
  const double spacing = (data.phi.back() - data.phi.front()) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs((data.phi[i] - data.phi[i - 1]) - spacing) > 1e-9 * spacing)
      throw std::invalid_argument("fit_visibility: requires a uniform grid");

  auto harmonic_visibility = [&](const std::vector<double>& p, const char* detector) {
    double a0 = 0.0, ac = 0.0, as = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      a0 += p[i];
      ac += p[i] * std::cos(data.phi[i]);
      as += p[i] * std::sin(data.phi[i]);
    }
    a0 /= static_cast<double>(n);
    ac *= 2.0 / static_cast<double>(n);
    as *= 2.0 / static_cast<double>(n);
    if (a0 <= 0.0)
      throw std::invalid_argument(std::string("visibility undefined for ") + detector +
                                  ": detector never fires");
    return std::hypot(ac, as) / a0;
  };
  return {harmonic_visibility(data.p0, "detector 0"),
          harmonic_visibility(data.p1, "detector 1")};
}

double mean_p0(const FringeData& data) { return vec_mean(data.p0); }
double mean_p1(const FringeData& data) { return vec_mean(data.p1); }

namespace {

double averaged_p1_minus_half(const SweepFn& device, double theta1, double theta2_probe) {
  return mean_p1(device(theta1, theta2_probe)) - 0.5;
}

double golden_section_max(const std::function<double(double)>& f, double a, double b,
                          double tol) {
  const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_gr * (b - a);
  double d = a + inv_gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_gr * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2;
}

}  // namespace

CalibrationResult calibrate(const SweepFn& device, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("calibrate: tol must be > 0");
  // Commanded angles sweep a full actuator fold period so a balanced setting
  // is reachable whatever constant offset the device hides.
  constexpr double margin = 0.02;
  constexpr int scan_n = 33;
  const double lo = margin, hi = pi - margin;
  const auto node = [&](int i) {
    return lo + (hi - lo) * i / (scan_n - 1);
  };

  // Stage 1: root of the phase-averaged p1 minus 1/2 over theta1.  The
  // criterion is flat exactly when the actual second splitter sits at 50:50,
  // so probe two commanded settings that cannot both land there and keep the
  // more responsive one.
  const double probes[] = {pi / 3, pi / 5};
  std::array<double, scan_n> h{};
  double probe = probes[0], best_range = -1.0;
  for (double candidate : probes) {
    std::array<double, scan_n> h_cand{};
    double h_min = std::numeric_limits<double>::infinity();
    double h_max = -h_min;
    for (int i = 0; i < scan_n; ++i) {
      h_cand[i] = averaged_p1_minus_half(device, node(i), candidate);
      h_min = std::min(h_min, h_cand[i]);
      h_max = std::max(h_max, h_cand[i]);
    }
    if (h_max - h_min > best_range) {
      best_range = h_max - h_min;
      probe = candidate;
      h = h_cand;
    }
  }

  double theta1_hat = (lo + hi) / 2;
  if (best_range < 1e-9) {
    // The averaged criterion holds everywhere or nowhere.
    if (std::abs(h[0]) > 1e-9)
      throw CalibrationError(
          "cannot bracket the 50:50 point: device does not reach it");
  } else {
    int left = -1;
    for (int i = 0; i < scan_n && left < 0; ++i) {
      if (h[i] == 0.0) {
        theta1_hat = node(i);
        left = scan_n;  // exact hit, skip bisection
      } else if (i + 1 < scan_n && h[i] * h[i + 1] < 0.0) {
        left = i;
      }
    }
    if (left < 0)
      throw CalibrationError(
          "cannot bracket the 50:50 point: device does not reach it");
    if (left < scan_n) {
      double a = node(left), b = node(left + 1), h_a = h[left];
      while (b - a > tol) {
        const double mid = (a + b) / 2;
        const double h_mid = averaged_p1_minus_half(device, mid, probe);
        if (h_mid == 0.0) {
          a = b = mid;
        } else if (h_a * h_mid < 0.0) {
          b = mid;
        } else {
          a = mid;
          h_a = h_mid;
        }
      }
      theta1_hat = (a + b) / 2;
    }
  }

  // Stage 2: maximize detector-1 visibility over the second splitter.  The
  // fold can put two equal peaks in the commanded window, so bracket the best
  // scan node before the golden-section refinement.
  const auto v1_of = [&](double theta2) {
    return extract_visibility(device(theta1_hat, theta2)).v1;
  };
  int best_i = 0;
  double best_v = -1.0;
  for (int i = 0; i < scan_n; ++i) {
    const double v = v1_of(node(i));
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double a2 = std::max(lo, node(best_i) - (hi - lo) / (scan_n - 1));
  const double b2 = std::min(hi, node(best_i) + (hi - lo) / (scan_n - 1));
  const double theta2_hat = golden_section_max(v1_of, a2, b2, tol);
  return {theta1_hat, theta2_hat, v1_of(theta2_hat)};
}

double SimulatedMzi::actual_theta1(double cmd) const { return fold_angle(cmd + theta1_offset); }

double SimulatedMzi::actual_theta2(double cmd) const {
  if (theta2_fixed) return *theta2_fixed;
  return fold_angle(cmd + theta2_offset);
}

FringeData SimulatedMzi::operator()(double theta1_cmd, double theta2_cmd) const {
  MziConfig cfg;
  cfg.bs1 = {actual_theta1(theta1_cmd), gamma1};
  cfg.bs2 = {actual_theta2(theta2_cmd), 0.0};
  cfg.tau = tau;
  cfg.t2 = t2;
  return fringe_sweep(cfg, n_points);
}

T2Design design_t2_experiment(double t2_guess, int n_settings, double v_saw) {
  if (!(t2_guess > 0.0)) throw std::invalid_argument("t2_guess must be > 0");
  if (n_settings < 5)
    throw std::invalid_argument("design_t2_experiment: need at least 5 settings");
  if (!(v_saw > 0.0)) throw std::invalid_argument("v_saw must be > 0");

  // Longest exposure 2.3 * t2 leaves e^-2.3, about 10% of the visibility.
  const double step = 2.3 * t2_guess / n_settings;
  T2Design design;
  design.taus.reserve(n_settings);
  design.lengths.reserve(n_settings);
  for (int k = 1; k <= n_settings; ++k) {
    design.taus.push_back(k * step);
    design.lengths.push_back(v_saw * k * step);
  }
  return design;
}

T2FitResult estimate_t2(const std::vector<double>& taus,
                        const std::vector<double>& visibilities) {
  const std::size_t n = taus.size();
  if (visibilities.size() != n)
    throw std::invalid_argument("estimate_t2: input lengths differ");
  if (n < 3) throw std::invalid_argument("estimate_t2: need at least 3 points");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(visibilities[i] > 0.0))
      throw std::invalid_argument("estimate_t2: non-positive visibility at row " +
                                  std::to_string(i) +
                                  " (fully dephased; shorten the horizon)");
    if (visibilities[i] > 1.05)
      throw std::invalid_argument("estimate_t2: visibility > 1.05 at row " +
                                  std::to_string(i));
  }

  std::vector<double> y(n);
  std::transform(visibilities.begin(), visibilities.end(), y.begin(),
                 [](double v) { return std::log(v); });
  const double x_bar = vec_mean(taus);
  const double y_bar = vec_mean(y);
  double s_xx = 0.0, s_xy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s_xx += (taus[i] - x_bar) * (taus[i] - x_bar);
    s_xy += (taus[i] - x_bar) * (y[i] - y_bar);
  }
  if (s_xx <= 0.0) throw std::invalid_argument("estimate_t2: all taus identical");

  const double slope = s_xy / s_xx;
  const double intercept = y_bar - slope * x_bar;

  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (intercept + slope * taus[i]);
    rss += r * r;
  }
  const double sigma2 = rss / static_cast<double>(n - 2);
  const double mean_x2 =
      std::inner_product(taus.begin(), taus.end(), taus.begin(), 0.0) /
      static_cast<double>(n);

  T2FitResult fit;
  fit.amplitude_hat = std::exp(intercept);
  fit.residual_rms = std::sqrt(rss / static_cast<double>(n));
  fit.covariance = {{{sigma2 * mean_x2 / s_xx, -sigma2 * x_bar / s_xx},
                     {-sigma2 * x_bar / s_xx, sigma2 / s_xx}}};
  if (slope >= 0.0) {
    fit.t2_hat = T2FitResult::kNoDecay;
    fit.t2_stderr = T2FitResult::kNoDecay;
  } else {
    fit.t2_hat = -1.0 / slope;
    fit.t2_stderr = std::sqrt(fit.covariance[1][1]) / (slope * slope);
  }
  return fit;
}

FieldEstimate sense_field(const DeviceParams& device, double observed_p1,
                          double working_point, double delta_t) {
  validate(device);
  const double d = require(device.d, "d");
  const double l = require(device.l_phase, "l_phase");
  const double f = require(device.f_saw, "f_saw");
  if (!(delta_t > 0.0)) throw std::invalid_argument("delta_t must be > 0");
  if (!(observed_p1 >= 0.0 && observed_p1 <= 1.0))
    throw std::invalid_argument("observed_p1 outside [0, 1]");

  // Distance of the working point from the nearest extremum of cos(phi).
  double m = std::fmod(working_point, pi);
  if (m < 0.0) m += pi;
  if (std::min(m, pi - m) < 0.1)
    throw std::invalid_argument(
        "working point within 0.1 rad of a fringe extremum: slope too small");

  // Invert p1 = (1 - cos phi)/2 on the branch nearest the working point.
  const double cos_phi = std::clamp(1.0 - 2.0 * observed_p1, -1.0, 1.0);
  const double base = std::acos(cos_phi);
  double phi_hat = 0.0, best = std::numeric_limits<double>::infinity();
  for (double sign : {1.0, -1.0}) {
    const double k = std::round((working_point - sign * base) / (2 * pi));
    const double candidate = sign * base + 2 * pi * k;
    if (std::abs(candidate - working_point) < best) {
      best = std::abs(candidate - working_point);
      phi_hat = candidate;
    }
  }

  // E = phi * hbar v / (e d l); noise through the local slope |sin(wp)|/2.
  const double phi_to_field = constants::hbar * device.v_saw / (constants::e * d * l);
  const double n_electrons = f * delta_t;
  const double sigma_p1 = 0.5 / std::sqrt(n_electrons);
  const double slope = std::abs(std::sin(working_point)) / 2.0;
  return {phi_hat * phi_to_field, sigma_p1 / slope * phi_to_field, n_electrons};
}

std::string to_csv(const FringeData& data) {
  validate(data);
  std::string out = "phi,p0,p1\n";
  for (std::size_t i = 0; i < data.phi.size(); ++i)
    out += fmtg(data.phi[i]) + "," + fmtg(data.p0[i]) + "," + fmtg(data.p1[i]) + "\n";
  return out;
}

std::string t2_csv(const std::vector<double>& taus,
                   const std::vector<double>& visibilities, const T2FitResult& fit) {
  if (taus.size() != visibilities.size())
    throw std::invalid_argument("t2_csv: input lengths differ");
  std::string out = "tau_s,visibility\n";
  for (std::size_t i = 0; i < taus.size(); ++i)
    out += fmtg(taus[i]) + "," + fmtg(visibilities[i]) + "\n";
  out += "# t2_hat_s = " + fmtg(fit.t2_hat) + ", t2_stderr_s = " + fmtg(fit.t2_stderr) +
         ", amplitude_hat = " + fmtg(fit.amplitude_hat) +
         ", residual_rms = " + fmtg(fit.residual_rms) + "\n";
  return out;
}

std::pair<std::vector<double>, std::vector<double>> read_tau_visibility_csv(
    std::istream& in) {
  std::vector<double> taus, visibilities;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (line == "tau_s,visibility") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("tau,visibility csv line " + std::to_string(lineno) +
                                  ": expected two comma-separated columns");
    std::size_t used = 0;
    double tau = 0.0, vis = 0.0;
    try {
      tau = std::stod(line.substr(0, comma), &used);
      vis = std::stod(line.substr(comma + 1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("tau,visibility csv line " + std::to_string(lineno) +
                                  ": not numeric");
    }
    taus.push_back(tau);
    visibilities.push_back(vis);
  }
  return {std::move(taus), std::move(visibilities)};
}

}  // namespace sawmzi
