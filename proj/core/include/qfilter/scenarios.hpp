#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qfilter/circuit.hpp"
#include "qfilter/detection.hpp"
#include "qfilter/fock.hpp"

namespace qfilter {

/// Registry of the filter's two photon paths, one (H, V) mode pair each.
const ModeRegistry& polarization_registry();

/// Parameters of the rotated-Bell family
///   (1/sqrt 2) [ |H> (c1|H> + c2|V>) + e^{-i phi} |V> (c2|H> - c1|V>) ].
/// Normalization |c1|^2 + |c2|^2 = 1 is required. The state is maximally
/// entangled exactly when c1 and c2 are real up to one common phase, which
/// is what random_max_entangled_params draws.
struct MaxEntangledParams {
  Amplitude c1{1.0, 0.0};
  Amplitude c2{0.0, 0.0};
  double phi = 0.0;
};

FockState max_entangled_state(const MaxEntangledParams& params);

/// Draws from the maximally entangled subfamily: c1 = e^{ia} cos t,
/// c2 = e^{ia} sin t, with |c1| >= min_c1 enforced by redraw.
MaxEntangledParams random_max_entangled_params(std::mt19937_64& rng,
                                               double min_c1 = 0.1);

/// One photon pair with right/left circular polarization, the standard
/// demonstration input: filtering it yields (|HH> + |VV>)/sqrt 2.
FockState circular_pair_state();

/// Qubit amplitudes (|h|^2 + |v|^2 = 1).
struct QubitCoeffs {
  Amplitude h{1.0, 0.0};
  Amplitude v{0.0, 0.0};
};

struct FilterOutcome {
  Ensemble output;
  double acceptance = 0.0;
};

/// Runs one photon pair (exactly one photon per path) through the filter.
/// The returned ensemble lives on the polarization registry; herald modes
/// are absorbed before reporting.
FilterOutcome filter_pair(const FockState& input,
                          const DetectorModel& model = DetectorModel::ideal());

/// Fuses two Bell pairs into a four-photon GHZ state by filtering the two
/// inner photons. Output modes, photon-ordered: s1, path 1, path 2, s4.
/// `swap_filter_paths` exchanges which inner photon meets which filter
/// path; the outcome is identical up to a global phase.
FilterOutcome ghz4(bool swap_filter_paths = false);

/// Two-photon redundant encoding of one qubit: a diagonally polarized
/// photon plus the qubit photon filter into h|HH> + v|VV>.
FilterOutcome encode2(const QubitCoeffs& coeffs, bool swap_filter_paths = false);

/// Extends encode2 by one photon: a Bell pair feeds path 1 (spectator mode
/// s1), the qubit photon feeds path 2, producing h|HHH> + v|VVV>.
FilterOutcome encode3(const QubitCoeffs& coeffs);

/// Imperfect-detector budget of the filter at quantum efficiency eta with
/// per-reading dark-count probability `dark`.
struct ErrorReport {
  double eta = 1.0;
  double dark = 0.0;
  /// P(detector reports 1 | 2 photons incident).
  double misread_2_as_1 = 0.0;
  /// Acceptance of the pure |HV> pair through the lossy filter.
  double hv_error_rate = 0.0;
  /// Acceptance of the circular pair through the ideal filter.
  double ideal_success_prob = 0.0;
  /// Accepted weight contributed by the HV and VH components of the
  /// circular pair under the lossy model.
  double false_transmission_prob = 0.0;
  /// Successful operations vs. false transmissions, normalized to sum 1.
  double mixture_entangled_fraction = 0.0;
  double mixture_single_photon_fraction = 0.0;
  /// dark_rate_cps * window_s.
  double dark_counts_per_pulse = 0.0;
};

ErrorReport error_analysis(double eta, double dark, double dark_rate_cps = 1e4,
                           double window_s = 1e-9);

/// Renders an occupation as one polarization letter per (H, V) pair, e.g.
/// "HV"; std::nullopt when any pair does not hold exactly one photon or
/// any other mode is occupied.
std::optional<std::string> polarization_word(
    const ModeRegistry& registry, const OccupationVector& occupation,
    const std::vector<std::pair<std::string, std::string>>& hv_pairs);

}  // namespace qfilter
