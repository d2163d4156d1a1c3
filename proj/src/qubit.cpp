#include "sawmzi/qubit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sawmzi {

namespace {

bool finite(const complexd& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

}  // namespace

DensityMatrix DensityMatrix::from_pure(const QubitState& psi) {
  return {std::norm(psi.alpha), psi.alpha * std::conj(psi.beta),
          std::norm(psi.beta)};
}

void validate(const QubitState& psi, double tol) {
  if (!finite(psi.alpha) || !finite(psi.beta)) fail("QubitState: non-finite amplitude");
  const double n = std::norm(psi.alpha) + std::norm(psi.beta);
  if (std::abs(n - 1.0) > tol) fail("QubitState: norm " + std::to_string(n) + " != 1");
}

void validate(const DensityMatrix& rho, double tol) {
  if (!std::isfinite(rho.rho00) || !std::isfinite(rho.rho11) || !finite(rho.rho01))
    fail("DensityMatrix: non-finite entry");
  if (std::abs(rho.trace() - 1.0) > tol) fail("DensityMatrix: trace != 1");
  if (rho.rho00 < -tol || rho.rho11 < -tol) fail("DensityMatrix: negative diagonal");
  if (rho.det() < -tol) fail("DensityMatrix: negative eigenvalue");
}

void validate(const Unitary2& u, double tol) {
  // rows of U U^dagger
  const double d0 = std::norm(u.u00) + std::norm(u.u01);
  const double d1 = std::norm(u.u10) + std::norm(u.u11);
  const complexd off = u.u00 * std::conj(u.u10) + u.u01 * std::conj(u.u11);
  if (std::abs(d0 - 1.0) > tol || std::abs(d1 - 1.0) > tol || std::abs(off) > tol)
    fail("Unitary2: U U^dagger != I");
}

void validate(const BeamsplitterSpec& spec) {
  constexpr double pi = std::numbers::pi;
  if (!(spec.theta >= 0.0 && spec.theta <= pi / 2))
    fail("BeamsplitterSpec: theta outside [0, pi/2]");
  if (!(spec.gamma > -pi - 1e-12 && spec.gamma <= pi + 1e-12))
    fail("BeamsplitterSpec: gamma outside (-pi, pi]");
}

void validate(const ChannelContraction& c) {
  for (double eta : {c.eta_x, c.eta_y, c.eta_z})
    if (!(std::abs(eta) <= 1.0)) fail("ChannelContraction: |eta| > 1");
}

Unitary2 bs_unitary(const BeamsplitterSpec& spec) {
  const double c = std::cos(spec.theta);
  const double s = std::sin(spec.theta);
  const complexd eg = std::polar(1.0, spec.gamma);
  return {c, -s, eg * s, eg * c};
}

Unitary2 phase_unitary(double phi) {
  if (!std::isfinite(phi)) fail("phase_unitary: phi not finite");
  return {1.0, 0.0, 0.0, std::polar(1.0, phi)};
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Unitary2& u) {
  const complexd rho10 = std::conj(rho.rho01);
  // (U rho)
  const complexd a00 = u.u00 * rho.rho00 + u.u01 * rho10;
  const complexd a01 = u.u00 * rho.rho01 + u.u01 * rho.rho11;
  const complexd a10 = u.u10 * rho.rho00 + u.u11 * rho10;
  const complexd a11 = u.u10 * rho.rho01 + u.u11 * rho.rho11;
  // (U rho) U^dagger
  return {(a00 * std::conj(u.u00) + a01 * std::conj(u.u01)).real(),
          a00 * std::conj(u.u10) + a01 * std::conj(u.u11),
          (a10 * std::conj(u.u10) + a11 * std::conj(u.u11)).real()};
}

DensityMatrix dephase(const DensityMatrix& rho, double tau, double t2) {
  if (!(tau >= 0.0)) fail("dephase: tau must be >= 0");
  if (!(t2 > 0.0)) fail("dephase: t2 must be > 0");
  return {rho.rho00, rho.rho01 * std::exp(-tau / t2), rho.rho11};
}

BlochVector bloch_vector(const DensityMatrix& rho) {
  return {2.0 * rho.rho01.real(), -2.0 * rho.rho01.imag(), rho.rho00 - rho.rho11};
}

bool check_complete_positivity(const ChannelContraction& c, double tol) {
  return std::abs(c.eta_x + c.eta_y) <= 1.0 + c.eta_z + tol &&
         std::abs(c.eta_x - c.eta_y) <= 1.0 - c.eta_z + tol;
}

}  // namespace sawmzi
