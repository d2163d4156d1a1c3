// sawmzi: command line front end for the SAW Mach-Zehnder toolkit.
//
// Exit codes: 0 success, 2 configuration/usage error, 3 domain violation
// (out-of-range physics input, failed fit, etc.). No abort paths.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sawmzi/config.hpp"
#include "sawmzi/device.hpp"
#include "sawmzi/experiments.hpp"
#include "sawmzi/interferometer.hpp"
#include "sawmzi/qubit.hpp"

namespace {

using namespace sawmzi;

std::string fmt(double x, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << content;
  out.flush();
  if (!out.good()) throw ConfigError("failed while writing '" + path + "'");
}

// Shared fringe-interferometer settings. Dephasing is given either as a
// bare visibility v (mapped onto tau/t2 with t2 = 1) or as explicit tau + t2.
MziConfig mzi_from(const Config& cfg) {
  MziConfig mzi;
  mzi.bs1.theta = cfg.num("theta1");
  mzi.bs2.theta = cfg.num_or("theta2", mzi.bs1.theta);
  mzi.bs1.gamma = cfg.num_or("gamma", 0.0);
  mzi.bs2.gamma = mzi.bs1.gamma;
  mzi.phi = 0.0;
  if (cfg.has("v")) {
    if (cfg.has("tau") || cfg.has("t2"))
      throw ConfigError("give either v or tau + t2, not both");
    const double v = cfg.num("v");
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("v = " + fmt(v) + " outside [0, 1]");
    mzi.t2 = 1.0;
    mzi.tau = v > 0.0 ? -std::log(v) : std::numeric_limits<double>::infinity();
  } else {
    mzi.tau = cfg.num_or("tau", 0.0);
    mzi.t2 = cfg.num_or("t2", 1.0);
  }
  return mzi;
}

std::optional<long long> sample_count(const Config& cfg) {
  if (!cfg.has("n_samples")) return std::nullopt;
  return cfg.integer("n_samples");
}

int cmd_fringe(const Config& cfg, const std::string& out,
               std::optional<std::uint64_t> seed) {
  if (out.empty()) throw ConfigError("fringe: --out <csv path> is required");
  const MziConfig mzi = mzi_from(cfg);
  const int n_points = static_cast<int>(cfg.integer_or("n_points", 256));
  const FringeData data = fringe_sweep(mzi, n_points, sample_count(cfg), seed);
  const VisibilityEstimate grid = extract_visibility(data);
  const VisibilityEstimate fit = fit_visibility(data);
  write_text(out, to_csv(data));
  std::printf("n_points = %d\n", n_points);
  std::printf("mean_p0 = %s\n", fmt(mean_p0(data), "%.15g").c_str());
  std::printf("mean_p1 = %s\n", fmt(mean_p1(data), "%.15g").c_str());
  std::printf("v0_grid = %s\n", fmt(grid.v0, "%.15g").c_str());
  std::printf("v1_grid = %s\n", fmt(grid.v1, "%.15g").c_str());
  std::printf("v0_fit = %s\n", fmt(fit.v0, "%.15g").c_str());
  std::printf("v1_fit = %s\n", fmt(fit.v1, "%.15g").c_str());
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

int cmd_calibrate(const Config& cfg, const std::string& out) {
  SimulatedMzi device;
  device.theta1_offset = cfg.num_or("offset1", 0.0);
  device.theta2_offset = cfg.num_or("offset2", 0.0);
  device.gamma1 = cfg.num_or("gamma", 0.0);
  if (cfg.has("v")) {
    const double v = cfg.num("v");
    if (!(v > 0.0 && v <= 1.0))
      throw std::invalid_argument("v = " + fmt(v) + " outside (0, 1]");
    device.t2 = 1.0;
    device.tau = -std::log(v);
  } else {
    device.tau = cfg.num_or("tau", 0.0);
    device.t2 = cfg.num_or("t2", 1.0);
  }
  device.n_points = static_cast<int>(cfg.integer_or("n_points", 256));
  const double tol = cfg.num_or("tol", 1e-6);

  const CalibrationResult result = calibrate(device, tol);
  std::printf("theta1_hat_rad = %s\n", fmt(result.theta1_hat, "%.15g").c_str());
  std::printf("theta2_hat_rad = %s\n", fmt(result.theta2_hat, "%.15g").c_str());
  std::printf("v1_max = %s\n", fmt(result.v1_max, "%.15g").c_str());
  std::printf("theta1_actual_rad = %s\n",
              fmt(device.actual_theta1(result.theta1_hat), "%.15g").c_str());
  std::printf("theta2_actual_rad = %s\n",
              fmt(device.actual_theta2(result.theta2_hat), "%.15g").c_str());
  if (!out.empty()) {
    std::ostringstream text;
    text << "theta1_hat_rad," << fmt(result.theta1_hat, "%.15g") << "\n"
         << "theta2_hat_rad," << fmt(result.theta2_hat, "%.15g") << "\n"
         << "v1_max," << fmt(result.v1_max, "%.15g") << "\n";
    write_text(out, text.str());
    std::printf("wrote %s\n", out.c_str());
  }
  return 0;
}

int cmd_t2_design(const Config& cfg, const std::string& out) {
  const double t2_guess = cfg.num("t2_guess");
  const int n_settings = static_cast<int>(cfg.integer_or("n_settings", 5));
  const double v_saw = cfg.num_or("v_saw", 2700.0);
  const T2Design design = design_t2_experiment(t2_guess, n_settings, v_saw);

  std::ostringstream text;
  text << "tau_s,length_m\n";
  for (std::size_t i = 0; i < design.taus.size(); ++i)
    text << fmt(design.taus[i], "%.15g") << ","
         << fmt(design.lengths[i], "%.15g") << "\n";
  std::printf("n_settings = %d\n", n_settings);
  std::printf("longest_channel_m = %s\n",
              fmt(design.lengths.back(), "%.15g").c_str());
  std::printf("channel_increment_m = %s\n",
              fmt(design.lengths.front(), "%.15g").c_str());
  std::printf("visibility_floor = %s\n",
              fmt(std::exp(-design.taus.back() / t2_guess), "%.15g").c_str());
  if (!out.empty()) {
    write_text(out, text.str());
    std::printf("wrote %s\n", out.c_str());
  } else {
    std::fputs(text.str().c_str(), stdout);
  }
  return 0;
}

int cmd_t2_fit(const Config& cfg, const std::string& out,
               std::optional<std::uint64_t> seed) {
  std::vector<double> taus;
  std::vector<double> vis;

  if (cfg.has("input_csv")) {
    const std::string path = cfg.str("input_csv");
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open input_csv '" + path + "'");
    const auto rows = read_tau_visibility_csv(in);
    taus = rows.first;
    vis = rows.second;
  } else {
    // Simulation mode: sweep the designed delay channels end to end with
    // balanced splitters and pull each visibility from its own fringe.
    const double t2_true = cfg.num("t2_true");
    const double t2_guess = cfg.num_or("t2_guess", t2_true);
    const int n_settings = static_cast<int>(cfg.integer_or("n_settings", 5));
    const double v_saw = cfg.num_or("v_saw", 2700.0);
    const int n_points = static_cast<int>(cfg.integer_or("n_points", 256));
    const auto n_samples = sample_count(cfg);
    const T2Design design = design_t2_experiment(t2_guess, n_settings, v_saw);

    MziConfig mzi;
    mzi.bs1.theta = std::numbers::pi / 4.0;
    mzi.bs2.theta = std::numbers::pi / 4.0;
    mzi.t2 = t2_true;
    for (std::size_t i = 0; i < design.taus.size(); ++i) {
      mzi.tau = design.taus[i];
      std::optional<std::uint64_t> run_seed;
      if (seed) run_seed = *seed + i;
      const FringeData data = fringe_sweep(mzi, n_points, n_samples, run_seed);
      taus.push_back(design.taus[i]);
      vis.push_back(extract_visibility(data).v1);
    }
  }

  const T2FitResult fit = estimate_t2(taus, vis);
  std::printf("n_settings = %zu\n", taus.size());
  std::printf("t2_hat_s = %s\n", fmt(fit.t2_hat, "%.15g").c_str());
  std::printf("t2_stderr_s = %s\n", fmt(fit.t2_stderr, "%.15g").c_str());
  std::printf("amplitude_hat = %s\n", fmt(fit.amplitude_hat, "%.15g").c_str());
  std::printf("residual_rms = %s\n", fmt(fit.residual_rms, "%.15g").c_str());
  if (!out.empty()) {
    write_text(out, t2_csv(taus, vis, fit));
    std::printf("wrote %s\n", out.c_str());
  }
  return 0;
}

int cmd_design(const Config& cfg, const std::string& out) {
  // Required inputs surface as missing-key config errors before any physics.
  const double area = cfg.num("area");
  const double temperature = cfg.num("temperature");
  const double v_saw = cfg.num_or("v_saw", 2700.0);
  const double v_min = cfg.num_or("v_min", 100e-6);
  const double t2_guess = cfg.num_or("t2_guess", 1e-9);
  const int n_settings = static_cast<int>(cfg.integer_or("n_settings", 5));

  DeviceParams device = device_params_from(cfg);
  device.area = area;
  device.temperature = temperature;
  validate(device);

  // Exact decimal rescalings of the SI values, printed alongside them.
  const auto um = [](double m) { return fmt(m * 1e6) + " um"; };
  const auto ns = [](double s) { return fmt(s * 1e9) + " ns"; };

  std::ostringstream text;
  text << "device design summary\n";
  text << "  v_saw_m_per_s = " << fmt(v_saw) << "\n";
  text << "  area_m2 = " << fmt(area) << " (" << fmt(area * 1e12)
       << " um^2), b_field_for_2pi_T = " << fmt(ab_field_for_2pi(area)) << " ("
       << fmt(ab_field_for_2pi(area) * 1e3) << " mT)\n";
  text << "  v_min_V = " << fmt(v_min) << " (" << fmt(v_min * 1e6)
       << " uV), max_gate_length_m = " << fmt(max_gate_length(v_min, v_saw))
       << " (" << um(max_gate_length(v_min, v_saw)) << ")\n";
  text << "  temperature_K = " << fmt(temperature) << ", thermal_energy_eV = "
       << fmt(thermal_energy(temperature)) << " ("
       << fmt(thermal_energy(temperature) * 1e6) << " ueV)\n";
  if (device.l_tunnel) {
    text << "  l_tunnel_m = " << fmt(*device.l_tunnel) << " ("
         << um(*device.l_tunnel) << "), transit_s = "
         << fmt(transit_time(*device.l_tunnel, v_saw)) << " ("
         << ns(transit_time(*device.l_tunnel, v_saw)) << ")\n";
  }

  const T2Design design = design_t2_experiment(t2_guess, n_settings, v_saw);
  text << "  t2 schedule (t2_guess_s = " << fmt(t2_guess) << " ("
       << ns(t2_guess) << "), " << n_settings << " settings):\n";
  for (std::size_t i = 0; i < design.taus.size(); ++i)
    text << "    tau_s = " << fmt(design.taus[i]) << " (" << ns(design.taus[i])
         << "), length_m = " << fmt(design.lengths[i]) << " ("
         << um(design.lengths[i]) << ")\n";
  text << "  longest_channel_m = " << fmt(design.lengths.back()) << " ("
       << um(design.lengths.back()) << ")\n";
  text << "  channel_increment_m = " << fmt(design.lengths.front()) << " ("
       << um(design.lengths.front()) << ")\n";
  text << "  visibility_floor = "
       << fmt(std::exp(-design.taus.back() / t2_guess)) << "\n";

  if (device.f_saw) {
    text << "  shot noise (f_saw_Hz = " << fmt(*device.f_saw) << "):\n";
    for (double dt = 1e-6; dt <= 1.0 + 1e-12; dt *= 10.0)
      text << "    delta_t_s = " << fmt(dt) << ", relative_noise = "
           << fmt(shot_noise_relative(*device.f_saw, dt)) << "\n";
  }

  std::fputs(text.str().c_str(), stdout);
  if (!out.empty()) {
    write_text(out, text.str());
    std::printf("wrote %s\n", out.c_str());
  }
  return 0;
}

int cmd_sense(const Config& cfg, const std::string& out,
              std::optional<std::uint64_t> seed) {
  DeviceParams device = device_params_from(cfg);
  device.d = cfg.num("d");
  device.l_phase = cfg.num("l_phase");
  device.f_saw = cfg.num("f_saw");
  validate(device);
  const double delta_t = cfg.num("delta_t");

  double observed_p1 = 0.0;
  double working_point = 0.0;
  std::optional<double> e_true;
  if (cfg.has("e_field")) {
    if (cfg.has("observed_p1"))
      throw ConfigError("give either e_field (simulation) or observed_p1, not both");
    e_true = cfg.num("e_field");
    const double phi =
        efield_phase(*e_true, *device.d, *device.l_phase, device.v_saw);
    working_point = cfg.num_or("working_point", phi);
    double p1 = 0.5 * (1.0 - std::cos(phi));
    if (seed) {
      const double n = std::floor(*device.f_saw * delta_t);
      if (n < 1.0) throw std::invalid_argument("delta_t too short: no electrons");
      std::mt19937_64 rng(*seed);
      std::binomial_distribution<long long> draw(static_cast<long long>(n), p1);
      p1 = static_cast<double>(draw(rng)) / n;
    }
    observed_p1 = p1;
  } else {
    observed_p1 = cfg.num("observed_p1");
    working_point = cfg.num("working_point");
  }

  const FieldEstimate est =
      sense_field(device, observed_p1, working_point, delta_t);
  std::ostringstream text;
  text << "n_electrons = " << fmt(est.n_electrons, "%.15g") << "\n";
  text << "observed_p1 = " << fmt(observed_p1, "%.15g") << "\n";
  text << "e_hat_V_per_m = " << fmt(est.e_hat, "%.15g") << "\n";
  text << "sigma_V_per_m = " << fmt(est.sigma, "%.15g") << "\n";
  if (e_true) {
    text << "e_true_V_per_m = " << fmt(*e_true, "%.15g") << "\n";
    text << "error_V_per_m = " << fmt(est.e_hat - *e_true, "%.15g") << "\n";
  }
  std::fputs(text.str().c_str(), stdout);
  if (!out.empty()) {
    write_text(out, text.str());
    std::printf("wrote %s\n", out.c_str());
  }
  return 0;
}

int cmd_cp_check(const Config& cfg) {
  ChannelContraction channel;
  channel.eta_x = cfg.num("eta_x");
  channel.eta_y = cfg.num("eta_y");
  channel.eta_z = cfg.num("eta_z");
  validate(channel);
  const bool cp = check_complete_positivity(channel);
  std::printf("eta = (%s, %s, %s)\n", fmt(channel.eta_x, "%.15g").c_str(),
              fmt(channel.eta_y, "%.15g").c_str(),
              fmt(channel.eta_z, "%.15g").c_str());
  std::printf("|eta_x + eta_y| = %s, 1 + eta_z = %s\n",
              fmt(std::abs(channel.eta_x + channel.eta_y)).c_str(),
              fmt(1.0 + channel.eta_z).c_str());
  std::printf("|eta_x - eta_y| = %s, 1 - eta_z = %s\n",
              fmt(std::abs(channel.eta_x - channel.eta_y)).c_str(),
              fmt(1.0 - channel.eta_z).c_str());
  std::printf("completely_positive = %s\n", cp ? "true" : "false");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SAW single-electron Mach-Zehnder interferometer toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;

  for (const char* name : {"fringe", "calibrate", "t2-design", "t2-fit",
                           "design", "sense", "cp-check"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "configuration file (key = value)")
        ->required();
    sub->add_option("--out", out_path, "output file path");
    sub->add_option("--seed", seed, "seed for sampled runs");
  }
  app.get_subcommand("fringe")->description("sweep phi and write a fringe CSV");
  app.get_subcommand("calibrate")
      ->description("two-stage splitter calibration on a simulated device");
  app.get_subcommand("t2-design")
      ->description("delay-channel schedule for a coherence-time scan");
  app.get_subcommand("t2-fit")
      ->description("fit t2 from tau/visibility data or an end-to-end simulation");
  app.get_subcommand("design")->description("device design summary");
  app.get_subcommand("sense")
      ->description("electric field estimate from one fringe working point");
  app.get_subcommand("cp-check")
      ->description("complete-positivity check for a Pauli contraction channel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    const sawmzi::Config cfg = sawmzi::Config::load(config_path);
    if (cmd == "fringe") return cmd_fringe(cfg, out_path, seed);
    if (cmd == "calibrate") return cmd_calibrate(cfg, out_path);
    if (cmd == "t2-design") return cmd_t2_design(cfg, out_path);
    if (cmd == "t2-fit") return cmd_t2_fit(cfg, out_path, seed);
    if (cmd == "design") return cmd_design(cfg, out_path);
    if (cmd == "sense") return cmd_sense(cfg, out_path, seed);
    if (cmd == "cp-check") return cmd_cp_check(cfg);
    std::fprintf(stderr, "unknown command '%s'\n", cmd.c_str());
    return 2;
  } catch (const sawmzi::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
