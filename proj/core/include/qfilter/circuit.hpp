#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qfilter/detection.hpp"
#include "qfilter/fock.hpp"

namespace qfilter {

/// Raised by parse_circuit with the offending element index and mode label
/// in the message.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BeamSplitterElement {
  std::string mode_a;
  std::string mode_b;
  double reflectivity = 0.5;
  friend bool operator==(const BeamSplitterElement&,
                         const BeamSplitterElement&) = default;
};

struct PhaseElement {
  std::string mode;
  double phi = 0.0;
  friend bool operator==(const PhaseElement&, const PhaseElement&) = default;
};

/// Partial permutation given as {from: to}; mentioned labels must form a
/// bijection among themselves, unmentioned modes stay put.
struct PermuteElement {
  std::map<std::string, std::string> map;
  friend bool operator==(const PermuteElement&,
                         const PermuteElement&) = default;
};

struct InjectElement {
  std::string mode;
  int photons = 0;
  friend bool operator==(const InjectElement&, const InjectElement&) = default;
};

struct DetectElement {
  std::string mode;
  int expected = 0;
  DetectorModel model;
  friend bool operator==(const DetectElement&, const DetectElement&) = default;
};

using CircuitElement = std::variant<BeamSplitterElement, PhaseElement,
                                    PermuteElement, InjectElement,
                                    DetectElement>;

/// A linear-optics netlist over a fixed mode registry. Elements execute in
/// order; a mode stops being usable once a Detect element has consumed it.
struct Circuit {
  ModeRegistry registry;
  std::vector<CircuitElement> elements;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  /// Optional occupation the file declares as its default input
  /// (mode label -> photon count); CLI flags override it.
  std::map<std::string, int> default_input;

  /// Checks mode references, detect-once discipline, element parameter
  /// ranges. Throws std::invalid_argument naming the element index.
  void validate() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Construction options for the two-photon polarization filter.
struct FilterOptions {
  /// Compensation phase on the first interferometer output; std::nullopt
  /// resolves it automatically so the HH entry of the effective operator
  /// comes out real positive.
  std::optional<double> compensation_phi;
  DetectorModel detector_model = DetectorModel::ideal();
  double attenuator_reflectivity = 0.75;
  /// Which photon path carries the V-rail attenuator (1 or 2). Path 1
  /// matches the reference interferometer layout; the ideal effective
  /// operator is identical either way.
  int attenuator_path = 1;
  /// Extra modes appended to the registry for photons that bypass the
  /// filter (entangled-pair spectators).
  std::vector<std::string> spectator_modes;
};

/// Canonical filter mode labels, in registry order:
/// p1H, p1V, p2H, p2V, anc1, anc2, attAnc.
const std::vector<std::string>& filter_mode_labels();

/// Builds the polarization-filter netlist: input routing, balanced beam
/// splitter across the two H rails, a heralded one-photon filter block per
/// rail, the closing beam splitter, compensation phase, V-rail attenuator
/// with its vacuum herald, output routing.
Circuit build_filter_circuit(const FilterOptions& options = {});

/// The compensation phase an AUTO build would pick for these options.
double resolve_compensation_phase(const FilterOptions& options);

/// Executes the circuit on an input ensemble (registries must match).
Ensemble run_circuit(const Circuit& circuit, const Ensemble& input);
Ensemble run_circuit(const Circuit& circuit, const FockState& input);

/// Conditional single-pair transfer matrix in the basis (HH, HV, VH, VV)
/// over the canonical polarization modes: entries[out][in]. Requires Ideal
/// detectors throughout.
struct PolarizationOperator {
  std::array<std::array<Amplitude, 4>, 4> entries{};
  /// Acceptance probability per basis input.
  std::array<double, 4> acceptance{};
};

PolarizationOperator effective_polarization_operator(const Circuit& circuit);

/// Names of the four polarization basis states, index-aligned with
/// PolarizationOperator.
const std::array<std::string, 4>& polarization_basis_names();

/// Circuit file I/O (JSON). Unknown fields and malformed elements are
/// rejected with element-indexed messages. parse(serialize(c)) == c.
Circuit parse_circuit(std::string_view json_text);
std::string serialize_circuit(const Circuit& circuit);

}  // namespace qfilter
