#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include <doctest.h>

#include "sawmzi/interferometer.hpp"

using namespace sawmzi;

namespace {

constexpr double kPi = std::numbers::pi;

// Generic 2x2 complex matrix algebra, kept separate from the hand-expanded
// conjugation in the library so the two routes share no arithmetic.
using M2 = std::array<complexd, 4>;  // row major

M2 mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

M2 dagger(const M2& a) {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

M2 splitter(double theta, double gamma) {
  const complexd eg = std::polar(1.0, gamma);
  return {std::cos(theta), -std::sin(theta), eg * std::sin(theta),
          eg * std::cos(theta)};
}

// Literal left-to-right composition of the printed matrices, with no phase
// offset anywhere: bs1, then diag(1, e^{i phi}), then coherence damping v,
// then bs2, acting on |0><0|.
M2 literal_pipeline(double theta1, double gamma1, double theta2, double gamma2,
                    double phi, double v) {
  const M2 u1 = splitter(theta1, gamma1);
  const M2 u2 = splitter(theta2, gamma2);
  const M2 p = {1.0, 0.0, 0.0, std::polar(1.0, phi)};
  M2 rho = {1.0, 0.0, 0.0, 0.0};
  rho = mul(mul(u1, rho), dagger(u1));
  rho = mul(mul(p, rho), dagger(p));
  rho[1] *= v;
  rho[2] *= v;
  rho = mul(mul(u2, rho), dagger(u2));
  return rho;
}

MziConfig symmetric(double theta, double gamma, double phi, double v) {
  MziConfig cfg;
  cfg.bs1 = {theta, gamma};
  cfg.bs2 = {theta, gamma};
  cfg.phi = phi;
  cfg.t2 = 1.0;
  cfg.tau = v > 0.0 ? -std::log(v) : std::numeric_limits<double>::infinity();
  return cfg;
}

}  // namespace

TEST_CASE("recombination offset pins the composition convention") {
  // The simulated state must equal the literal matrix product evaluated at
  // phi + kRecombinationPhaseOffset, entry for entry.  This is the whole
  // content of the convention: one fixed pi on the phase leg.
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> ang(0.0, kPi / 2.0);
  std::uniform_real_distribution<double> ph(-kPi, kPi);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 400; ++i) {
    const double t1 = ang(rng), t2 = ang(rng);
    const double g1 = ph(rng), g2 = ph(rng);
    const double phi = 2.0 * kPi * u01(rng);
    const double v = u01(rng);
    MziConfig cfg;
    cfg.bs1 = {t1, g1};
    cfg.bs2 = {t2, g2};
    cfg.phi = phi;
    cfg.t2 = 1.0;
    cfg.tau = -std::log(std::max(v, 1e-300));
    const DensityMatrix sim = mzi_simulate_state(cfg);
    const M2 lit = literal_pipeline(t1, g1, t2, g2,
                                    phi + kRecombinationPhaseOffset,
                                    cfg.coherence());
    CHECK(std::abs(sim.rho00 - lit[0].real()) < 1e-12);
    CHECK(std::abs(sim.rho11 - lit[3].real()) < 1e-12);
    CHECK(std::abs(sim.rho01 - lit[1]) < 1e-12);
  }
}

TEST_CASE("simulated and closed-form states agree on symmetric devices") {
  std::mt19937 rng(22);
  std::uniform_real_distribution<double> ang(0.0, kPi / 2.0);
  std::uniform_real_distribution<double> ph(-kPi, kPi);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double theta = ang(rng), gamma = ph(rng);
    const double phi = 2.0 * kPi * u01(rng), v = u01(rng);
    const MziConfig cfg = symmetric(theta, gamma, phi, v);
    const DetectorProbs sim = mzi_simulate(cfg);
    const DetectorProbs closed = mzi_closed_form_probs(theta, gamma, phi, v);
    CHECK(std::abs(sim.p0 - closed.p0) <= 1e-12);
    CHECK(std::abs(sim.p1 - closed.p1) <= 1e-12);

    const DensityMatrix srho = mzi_simulate_state(cfg);
    const DensityMatrix crho = mzi_closed_form_state(theta, gamma, phi, v);
    CHECK(std::abs(srho.rho01 - crho.rho01) <= 1e-12);
  }
}

TEST_CASE("closed-form state is a valid density matrix") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> ang(0.0, kPi / 2.0);
  std::uniform_real_distribution<double> ph(-kPi, kPi);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const DensityMatrix rho = mzi_closed_form_state(ang(rng), ph(rng),
                                                    2.0 * kPi * u01(rng),
                                                    u01(rng));
    CHECK_NOTHROW(validate(rho, 1e-9));
    const DetectorProbs p = mzi_closed_form_probs(0.3, 0.1, 0.2, 0.5);
    CHECK(p.p0 + p.p1 == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("closed form rejects out-of-range coherence") {
  CHECK_THROWS_AS(mzi_closed_form_probs(0.3, 0.0, 0.0, -0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(mzi_closed_form_probs(0.3, 0.0, 0.0, 1.1),
                  std::invalid_argument);
}

TEST_CASE("balanced coherent fringe hits the textbook extremes") {
  // 50:50 splitters, no dephasing: p0 = cos^2((phi)/2) up to the gamma
  // shift, so the bright fringe of detector 0 sits at gamma + phi = 0.
  const double v = 1.0;
  const DetectorProbs bright = mzi_closed_form_probs(kPi / 4.0, 0.0, 0.0, v);
  CHECK(bright.p0 == doctest::Approx(1.0).epsilon(1e-14));
  const DetectorProbs dark = mzi_closed_form_probs(kPi / 4.0, 0.0, kPi, v);
  CHECK(dark.p0 == doctest::Approx(0.0).epsilon(1e-14));

  const double g = 0.8;
  const DetectorProbs shifted = mzi_closed_form_probs(kPi / 4.0, g, -g, v);
  CHECK(shifted.p0 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("probabilities do not depend on the recombiner gamma") {
  std::mt19937 rng(24);
  std::uniform_real_distribution<double> ang(0.0, kPi / 2.0);
  std::uniform_real_distribution<double> ph(-kPi, kPi);
  for (int i = 0; i < 100; ++i) {
    MziConfig a;
    a.bs1 = {ang(rng), ph(rng)};
    a.bs2 = {ang(rng), ph(rng)};
    a.phi = ph(rng);
    a.tau = 0.3;
    MziConfig b = a;
    b.bs2.gamma = ph(rng);
    const DetectorProbs pa = mzi_simulate(a);
    const DetectorProbs pb = mzi_simulate(b);
    CHECK(pa.p0 == doctest::Approx(pb.p0).epsilon(1e-14));
    CHECK(pa.p1 == doctest::Approx(pb.p1).epsilon(1e-14));
  }
}

TEST_CASE("phase-averaged p1 follows (1 - cos2t1 cos2t2)/2") {
  // Independent of the fringe phase; the average is 1/2 exactly when either
  // splitter is balanced.
  std::mt19937 rng(25);
  std::uniform_real_distribution<double> ang(0.0, kPi / 2.0);
  std::uniform_real_distribution<double> ph(-kPi, kPi);
  const int n = 64;
  for (int i = 0; i < 50; ++i) {
    MziConfig cfg;
    cfg.bs1 = {ang(rng), ph(rng)};
    cfg.bs2 = {ang(rng), ph(rng)};
    cfg.tau = 0.2;
    double mean = 0.0;
    for (int k = 0; k < n; ++k) {
      cfg.phi = 2.0 * kPi * k / n;
      mean += mzi_simulate(cfg).p1;
    }
    mean /= n;
    const double expected =
        0.5 * (1.0 - std::cos(2.0 * cfg.bs1.theta) *
                         std::cos(2.0 * cfg.bs2.theta));
    CHECK(mean == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("visibility closed form") {
  // v1 equals the coherence factor for every splitting angle.
  for (double v : {1.0, 0.5, 0.1}) {
    for (int i = 1; i < 20; ++i) {
      const double theta = i * kPi / 40.0;  // (0, pi/2)
      const Visibility vis = visibility_closed_form(theta, v);
      CHECK(vis.v1 == doctest::Approx(v).epsilon(1e-14));
      const double s2 = std::sin(2.0 * theta);
      const double denom = std::pow(std::cos(theta), 4) +
                           std::pow(std::sin(theta), 4);
      CHECK(vis.v0 == doctest::Approx(v * s2 * s2 / (2.0 * denom)));
    }
  }

  // balanced device: both detectors see the full coherence
  const Visibility bal = visibility_closed_form(kPi / 4.0, 0.7);
  CHECK(bal.v0 == doctest::Approx(0.7));
  CHECK(bal.v1 == doctest::Approx(0.7));

  // the pi/8 splitter keeps detector 1 at full contrast while detector 0
  // drops to 1/3
  const Visibility oct = visibility_closed_form(kPi / 8.0, 1.0);
  CHECK(oct.v0 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(oct.v1 == doctest::Approx(1.0));

  CHECK_THROWS_AS(visibility_closed_form(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(visibility_closed_form(kPi / 2.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("visibility matches fringe extrema of the closed form") {
  for (double v : {1.0, 0.6, 0.15}) {
    for (double theta : {0.3, kPi / 8.0, 1.1}) {
      double p0max = 0.0, p0min = 1.0, p1max = 0.0, p1min = 1.0;
      const int n = 4096;
      for (int k = 0; k < n; ++k) {
        const DetectorProbs p =
            mzi_closed_form_probs(theta, 0.0, 2.0 * kPi * k / n, v);
        p0max = std::max(p0max, p.p0);
        p0min = std::min(p0min, p.p0);
        p1max = std::max(p1max, p.p1);
        p1min = std::min(p1min, p.p1);
      }
      const Visibility vis = visibility_closed_form(theta, v);
      CHECK((p0max - p0min) / (p0max + p0min) ==
            doctest::Approx(vis.v0).epsilon(1e-6));
      CHECK((p1max - p1min) / (p1max + p1min) ==
            doctest::Approx(vis.v1).epsilon(1e-6));
    }
  }
}

TEST_CASE("closed-form state spot values") {
  {
    const DensityMatrix rho = mzi_closed_form_state(kPi / 4.0, 0.0, kPi, 1.0);
    CHECK(rho.rho11 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rho.rho00 == doctest::Approx(0.0));
  }
  {
    const DensityMatrix rho = mzi_closed_form_state(0.0, 0.3, 1.0, 0.7);
    CHECK(rho.rho00 == doctest::Approx(1.0));
    CHECK(std::abs(rho.rho01) == doctest::Approx(0.0));
    CHECK(rho.rho11 == doctest::Approx(0.0));
  }
  {
    const DensityMatrix rho = mzi_closed_form_state(kPi / 8.0, 0.0, 0.0, 1.0);
    CHECK(rho.rho11 == doctest::Approx(0.0));
  }
  {
    // fully dephased balanced device sends half the population to each exit
    const DetectorProbs p = mzi_closed_form_probs(kPi / 4.0, 0.0, 1.234, 0.0);
    CHECK(p.p0 == doctest::Approx(0.5));
    CHECK(p.p1 == doctest::Approx(0.5));
  }
}

TEST_CASE("degenerate splitters pass the electron straight through") {
  MziConfig cfg;
  cfg.bs1 = {0.0, 0.0};
  cfg.bs2 = {0.0, 0.0};
  for (double phi : {0.0, 0.7, 3.0}) {
    cfg.phi = phi;
    const DetectorProbs p = mzi_simulate(cfg);
    CHECK(p.p0 == doctest::Approx(1.0));
  }
}

TEST_CASE("fringes depend on gamma1 and phi only through their sum") {
  std::mt19937 rng(27);
  std::uniform_real_distribution<double> ang(0.0, kPi / 2.0);
  std::uniform_real_distribution<double> ph(-kPi, kPi);
  for (int i = 0; i < 100; ++i) {
    MziConfig a;
    a.bs1 = {ang(rng), ph(rng)};
    a.bs2 = {ang(rng), ph(rng)};
    a.phi = ph(rng);
    a.tau = 0.4;
    const double delta = ph(rng);
    MziConfig b = a;
    b.bs1.gamma = a.bs1.gamma + delta;
    if (b.bs1.gamma > kPi) b.bs1.gamma -= 2.0 * kPi;
    if (b.bs1.gamma <= -kPi) b.bs1.gamma += 2.0 * kPi;
    b.phi = a.phi - delta;
    const DetectorProbs pa = mzi_simulate(a);
    const DetectorProbs pb = mzi_simulate(b);
    CHECK(std::abs(pa.p1 - pb.p1) < 1e-12);
  }
}

TEST_CASE("balanced-device visibility decays monotonically with exposure") {
  double last = 2.0;
  for (double tau : {0.0, 0.2, 0.5, 1.0, 2.0, 4.0}) {
    MziConfig cfg = symmetric(kPi / 4.0, 0.0, 0.0, 1.0);
    cfg.tau = tau;
    cfg.t2 = 1.0;
    double pmax = 0.0, pmin = 1.0;
    const int n = 512;
    for (int k = 0; k < n; ++k) {
      cfg.phi = 2.0 * kPi * k / n;
      const double p1 = mzi_simulate(cfg).p1;
      pmax = std::max(pmax, p1);
      pmin = std::min(pmin, p1);
    }
    const double vis = (pmax - pmin) / (pmax + pmin);
    CHECK(vis == doctest::Approx(std::exp(-tau)).epsilon(1e-9));
    CHECK(vis < last);
    last = vis;
  }
}

TEST_CASE("config validation") {
  MziConfig cfg = symmetric(0.4, 0.0, 0.0, 0.8);
  CHECK_NOTHROW(validate(cfg));
  CHECK(cfg.coherence() == doctest::Approx(0.8));

  cfg.tau = -1.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.tau = 0.0;
  cfg.t2 = 0.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.t2 = 1.0;
  cfg.bs1.theta = 2.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}

TEST_CASE("input on the lower channel keeps the pipeline physical") {
  std::mt19937 rng(26);
  std::uniform_real_distribution<double> ang(0.0, kPi / 2.0);
  std::uniform_real_distribution<double> ph(-kPi, kPi);
  for (int i = 0; i < 100; ++i) {
    MziConfig cfg;
    cfg.bs1 = {ang(rng), ph(rng)};
    cfg.bs2 = {ang(rng), ph(rng)};
    cfg.phi = ph(rng);
    cfg.tau = 0.1;
    const DetectorProbs p = mzi_simulate(cfg, QubitState::ket1());
    CHECK(p.p0 + p.p1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.p0 >= -1e-12);
    CHECK(p.p1 >= -1e-12);
  }
}
