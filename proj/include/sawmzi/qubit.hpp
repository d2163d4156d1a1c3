#pragma once

#include <complex>

namespace sawmzi {

using complexd = std::complex<double>;

/// Pure state of the channel-position qubit: |0> is the upper channel,
/// |1> the lower channel.  |alpha|^2 + |beta|^2 must be 1 within 1e-12.
struct QubitState {
  complexd alpha{1.0, 0.0};
  complexd beta{0.0, 0.0};

  static QubitState ket0() { return {}; }
  static QubitState ket1() { return {{0.0, 0.0}, {1.0, 0.0}}; }
};

/// 2x2 density matrix; rho10 is implied by Hermiticity.
/// Valid states have unit trace, non-negative diagonals and
/// |rho01|^2 <= rho00 * rho11.
struct DensityMatrix {
  double rho00{1.0};
  complexd rho01{0.0, 0.0};
  double rho11{0.0};

  static DensityMatrix from_pure(const QubitState& psi);
  double trace() const { return rho00 + rho11; }
  /// Determinant, real for a Hermitian matrix.  Negative determinant means
  /// a negative eigenvalue.
  double det() const { return rho00 * rho11 - std::norm(rho01); }
};

/// 2x2 unitary, row major.
struct Unitary2 {
  complexd u00, u01, u10, u11;

  static Unitary2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

/// Beamsplitter parameters.  Transmittance is cos^2(theta), reflectance
/// sin^2(theta); gamma is the phase picked up on the reflected row.
struct BeamsplitterSpec {
  double theta{0.0};  // [0, pi/2]
  double gamma{0.0};  // (-pi, pi]
};

/// Per-axis contraction factors of a Pauli-diagonal (unital) channel acting
/// on the Bloch ball.
struct ChannelContraction {
  double eta_x{1.0};
  double eta_y{1.0};
  double eta_z{1.0};
};

/// Bloch components under the convention rho = (I + x sx + y sy + z sz) / 2,
/// i.e. x = 2 Re(rho01), y = 2 Im(rho10), z = rho00 - rho11.
struct BlochVector {
  double x, y, z;
};

// Invariant checks; throw std::invalid_argument on violation.
void validate(const QubitState& psi, double tol = 1e-12);
void validate(const DensityMatrix& rho, double tol = 1e-12);
void validate(const Unitary2& u, double tol = 1e-12);
void validate(const BeamsplitterSpec& spec);
void validate(const ChannelContraction& c);

/// [[cos t, -sin t], [e^{ig} sin t, e^{ig} cos t]] for spec (t, g).
Unitary2 bs_unitary(const BeamsplitterSpec& spec);

/// diag(1, e^{i phi}).
Unitary2 phase_unitary(double phi);

/// U rho U^dagger.
DensityMatrix apply_unitary(const DensityMatrix& rho, const Unitary2& u);

/// Markovian pure dephasing for exposure tau with 1/e constant t2:
/// diagonals untouched, rho01 scaled by exp(-tau/t2).
/// Rejects tau < 0 and t2 <= 0.
DensityMatrix dephase(const DensityMatrix& rho, double tau, double t2);

BlochVector bloch_vector(const DensityMatrix& rho);

/// Whether the unital Pauli-diagonal channel with the given axis contractions
/// is completely positive: |eta_x + eta_y| <= 1 + eta_z and
/// |eta_x - eta_y| <= 1 - eta_z, both within tol.  Equivalent to the Choi
/// matrix of the channel being positive semidefinite.
bool check_complete_positivity(const ChannelContraction& c, double tol = 1e-12);

}  // namespace sawmzi
