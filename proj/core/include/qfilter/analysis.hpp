#pragma once

#include <array>
#include <string>

#include "qfilter/detection.hpp"
#include "qfilter/fock.hpp"

namespace qfilter {

/// 4x4 density matrix over the two-photon polarization basis
/// (HH, HV, VH, VV). May be sub-normalized; trace() reports the contained
/// probability weight.
struct TwoQubitDensity {
  std::array<std::array<Amplitude, 4>, 4> entries{};

  double trace() const;
  /// Throws unless Hermitian within 1e-12 and positive semidefinite down to
  /// a -1e-10 eigenvalue floor.
  void validate() const;
};

/// Mode labels holding the two polarization qubits: (H, V) rail per path.
struct PathPair {
  std::string path1_h = "p1H";
  std::string path1_v = "p1V";
  std::string path2_h = "p2H";
  std::string path2_v = "p2V";
};

struct PolarizationReduction {
  /// Sub-normalized density over (HH, HV, VH, VV); its trace plus `leakage`
  /// equals the ensemble's acceptance probability.
  TwoQubitDensity rho;
  /// Accepted weight outside the one-photon-per-path subspace.
  double leakage = 0.0;
};

/// Projects every branch onto the one-photon-per-path polarization
/// subspace of the given path pair; anything else (single-photon and
/// vacuum branches, multi-photon rails) lands in `leakage`.
PolarizationReduction reduce_to_polarization(const Ensemble& ensemble,
                                             const PathPair& paths = {});

/// Wootters concurrence. Requires a normalized density (trace within 1e-6
/// of 1).
double concurrence(const TwoQubitDensity& rho);

/// <target| rho |target> for a normalized pure target state.
double fidelity_to_pure(const TwoQubitDensity& rho,
                        const std::array<Amplitude, 4>& target);

/// Eigenvalues of a 4x4 Hermitian matrix, descending. Cyclic complex
/// Jacobi iteration, converged to 1e-13 relative off-diagonal mass.
std::array<double, 4> hermitian_eigenvalues(
    const std::array<std::array<Amplitude, 4>, 4>& matrix);

}  // namespace qfilter
