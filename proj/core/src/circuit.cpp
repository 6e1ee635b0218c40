#include "qfilter/circuit.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <set>
#include <utility>

#include "qfilter/elements.hpp"

namespace qfilter {

namespace {

std::string element_prefix(std::size_t index) {
  return "element " + std::to_string(index) + ": ";
}

void check_label(const ModeRegistry& registry, const std::string& label,
                 std::size_t index) {
  if (!registry.contains(label)) {
    throw std::invalid_argument(element_prefix(index) + "unknown mode '" +
                                label + "'");
  }
}

void check_live(const std::set<std::string>& detected, const std::string& label,
                std::size_t index) {
  if (detected.count(label) != 0) {
    throw std::invalid_argument(element_prefix(index) + "mode '" + label +
                                "' was already consumed by a detector");
  }
}

// Shared by validate() and run_circuit() so static checks and execution
// enforce the same discipline.
void walk_circuit(const Circuit& circuit,
                  const std::function<void(std::size_t, const CircuitElement&)>&
                      execute) {
  std::set<std::string> detected;
  for (std::size_t i = 0; i < circuit.elements.size(); ++i) {
    const CircuitElement& element = circuit.elements[i];
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, BeamSplitterElement>) {
            check_label(circuit.registry, e.mode_a, i);
            check_label(circuit.registry, e.mode_b, i);
            check_live(detected, e.mode_a, i);
            check_live(detected, e.mode_b, i);
            if (e.mode_a == e.mode_b) {
              throw std::invalid_argument(element_prefix(i) +
                                          "beam splitter modes must differ");
            }
            if (!(e.reflectivity >= 0.0 && e.reflectivity <= 1.0)) {
              throw std::invalid_argument(element_prefix(i) +
                                          "reflectivity must lie in [0, 1]");
            }
          } else if constexpr (std::is_same_v<T, PhaseElement>) {
            check_label(circuit.registry, e.mode, i);
            check_live(detected, e.mode, i);
            if (!std::isfinite(e.phi)) {
              throw std::invalid_argument(element_prefix(i) +
                                          "phase must be finite");
            }
          } else if constexpr (std::is_same_v<T, PermuteElement>) {
            std::set<std::string> sources;
            std::set<std::string> targets;
            for (const auto& [from, to] : e.map) {
              check_label(circuit.registry, from, i);
              check_label(circuit.registry, to, i);
              check_live(detected, from, i);
              check_live(detected, to, i);
              sources.insert(from);
              targets.insert(to);
            }
            if (sources != targets) {
              throw std::invalid_argument(
                  element_prefix(i) +
                  "permute map must be a bijection on its labels");
            }
          } else if constexpr (std::is_same_v<T, InjectElement>) {
            check_label(circuit.registry, e.mode, i);
            check_live(detected, e.mode, i);
            if (e.photons < 0) {
              throw std::invalid_argument(element_prefix(i) +
                                          "photons must be non-negative");
            }
          } else if constexpr (std::is_same_v<T, DetectElement>) {
            check_label(circuit.registry, e.mode, i);
            check_live(detected, e.mode, i);
            if (e.expected < 0) {
              throw std::invalid_argument(element_prefix(i) +
                                          "expected count must be non-negative");
            }
            try {
              e.model.validate();
            } catch (const std::invalid_argument& err) {
              throw std::invalid_argument(element_prefix(i) + err.what());
            }
            detected.insert(e.mode);
          }
        },
        element);
    if (execute) execute(i, element);
  }
}

Ensemble map_branches(const Ensemble& ensemble,
                      const std::function<FockState(const FockState&)>& op) {
  std::vector<Branch> branches;
  branches.reserve(ensemble.branches().size());
  for (const auto& branch : ensemble.branches()) {
    branches.push_back({branch.weight, op(branch.state)});
  }
  return Ensemble(ensemble.registry(), std::move(branches));
}

FockState inject_photons(const FockState& state, std::size_t mode, int photons,
                         std::size_t element_index) {
  std::map<OccupationVector, Amplitude> terms;
  for (const auto& [occupation, amplitude] : state.terms()) {
    if (occupation[mode] != 0) {
      throw std::invalid_argument(
          element_prefix(element_index) + "inject target mode '" +
          state.registry().label(mode) + "' is not in vacuum");
    }
    OccupationVector out = occupation;
    out[mode] = photons;
    terms.emplace(std::move(out), amplitude);
  }
  return FockState::from_terms(state.registry(), std::move(terms),
                               state.photon_cap());
}

}  // namespace

void Circuit::validate() const {
  for (const auto& label : inputs) {
    if (!registry.contains(label)) {
      throw std::invalid_argument("declared input mode '" + label +
                                  "' is not in the registry");
    }
  }
  for (const auto& label : outputs) {
    if (!registry.contains(label)) {
      throw std::invalid_argument("declared output mode '" + label +
                                  "' is not in the registry");
    }
  }
  for (const auto& [label, count] : default_input) {
    if (!registry.contains(label)) {
      throw std::invalid_argument("default input mode '" + label +
                                  "' is not in the registry");
    }
    if (count < 0) {
      throw std::invalid_argument("default input count for mode '" + label +
                                  "' must be non-negative");
    }
  }
  walk_circuit(*this, nullptr);
}

const std::vector<std::string>& filter_mode_labels() {
  static const std::vector<std::string> labels = {
      "p1H", "p1V", "p2H", "p2V", "anc1", "anc2", "attAnc"};
  return labels;
}

const std::array<std::string, 4>& polarization_basis_names() {
  static const std::array<std::string, 4> names = {"HH", "HV", "VH", "VV"};
  return names;
}

namespace {

Circuit build_filter_with_phi(double phi, const FilterOptions& options) {
  if (options.attenuator_path != 1 && options.attenuator_path != 2) {
    throw std::invalid_argument("attenuator path must be 1 or 2");
  }
  if (!(options.attenuator_reflectivity >= 0.0 &&
        options.attenuator_reflectivity <= 1.0)) {
    throw std::invalid_argument("attenuator reflectivity must lie in [0, 1]");
  }
  options.detector_model.validate();

  std::vector<std::string> labels = filter_mode_labels();
  for (const auto& spectator : options.spectator_modes) {
    labels.push_back(spectator);
  }

  const std::string attenuated_v =
      options.attenuator_path == 1 ? "p1V" : "p2V";
  const std::map<std::string, std::string> pbs_routing = {
      {"p1H", "p1H"}, {"p1V", "p1V"}, {"p2H", "p2H"}, {"p2V", "p2V"}};

  Circuit circuit;
  circuit.registry = ModeRegistry(std::move(labels));
  circuit.inputs = {"p1H", "p1V", "p2H", "p2V"};
  circuit.outputs = circuit.inputs;

  // Input polarizing beam splitters: pure routing, identity in this mode
  // encoding because each (path, polarization) pair already owns a mode.
  circuit.elements.push_back(PermuteElement{pbs_routing});
  circuit.elements.push_back(BeamSplitterElement{"p1H", "p2H", 0.5});
  // Heralded one-photon filter on each interferometer arm.
  circuit.elements.push_back(InjectElement{"anc1", 1});
  circuit.elements.push_back(BeamSplitterElement{"p1H", "anc1", 0.5});
  circuit.elements.push_back(DetectElement{"anc1", 1, options.detector_model});
  circuit.elements.push_back(InjectElement{"anc2", 1});
  circuit.elements.push_back(BeamSplitterElement{"p2H", "anc2", 0.5});
  circuit.elements.push_back(DetectElement{"anc2", 1, options.detector_model});
  circuit.elements.push_back(BeamSplitterElement{"p1H", "p2H", 0.5});
  circuit.elements.push_back(PhaseElement{"p1H", phi});
  // V-rail attenuator: beam splitter against a heralded vacuum mode.
  circuit.elements.push_back(InjectElement{"attAnc", 0});
  circuit.elements.push_back(BeamSplitterElement{
      attenuated_v, "attAnc", options.attenuator_reflectivity});
  circuit.elements.push_back(DetectElement{"attAnc", 0, options.detector_model});
  circuit.elements.push_back(PermuteElement{pbs_routing});
  return circuit;
}

}  // namespace

double resolve_compensation_phase(const FilterOptions& options) {
  if (options.compensation_phi.has_value()) {
    return *options.compensation_phi;
  }
  // Probe an ideal, spectator-free twin with zero compensation and rotate
  // the HH entry onto the positive real axis.
  FilterOptions probe = options;
  probe.compensation_phi = 0.0;
  probe.detector_model = DetectorModel::ideal();
  probe.spectator_modes.clear();
  const PolarizationOperator op =
      effective_polarization_operator(build_filter_with_phi(0.0, probe));
  const Amplitude hh = op.entries[0][0];
  if (std::abs(hh) < 1e-12) {
    return 0.0;
  }
  const double phi = -std::arg(hh);
  return phi == 0.0 ? 0.0 : phi;
}

Circuit build_filter_circuit(const FilterOptions& options) {
  return build_filter_with_phi(resolve_compensation_phase(options), options);
}

Ensemble run_circuit(const Circuit& circuit, const Ensemble& input) {
  if (circuit.registry != input.registry()) {
    throw std::invalid_argument("input registry does not match the circuit");
  }
  Ensemble current = input;
  walk_circuit(circuit, [&](std::size_t index, const CircuitElement& element) {
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, BeamSplitterElement>) {
            const BeamSplitterSpec spec{circuit.registry.index_of(e.mode_a),
                                        circuit.registry.index_of(e.mode_b),
                                        e.reflectivity};
            current = map_branches(current, [&](const FockState& state) {
              return apply_beam_splitter(state, spec);
            });
          } else if constexpr (std::is_same_v<T, PhaseElement>) {
            const PhaseSpec spec{circuit.registry.index_of(e.mode), e.phi};
            current = map_branches(current, [&](const FockState& state) {
              return apply_phase(state, spec);
            });
          } else if constexpr (std::is_same_v<T, PermuteElement>) {
            std::vector<std::size_t> permutation(circuit.registry.size());
            for (std::size_t m = 0; m < permutation.size(); ++m) {
              permutation[m] = m;
            }
            for (const auto& [from, to] : e.map) {
              permutation[circuit.registry.index_of(from)] =
                  circuit.registry.index_of(to);
            }
            current = map_branches(current, [&](const FockState& state) {
              return permute_modes(state, permutation);
            });
          } else if constexpr (std::is_same_v<T, InjectElement>) {
            const std::size_t mode = circuit.registry.index_of(e.mode);
            current = map_branches(current, [&](const FockState& state) {
              return inject_photons(state, mode, e.photons, index);
            });
          } else if constexpr (std::is_same_v<T, DetectElement>) {
            current = lossy_postselect(
                current, circuit.registry.index_of(e.mode), e.expected,
                e.model);
          }
        },
        element);
  });
  return current;
}

Ensemble run_circuit(const Circuit& circuit, const FockState& input) {
  return run_circuit(circuit, Ensemble::from_pure(input));
}

PolarizationOperator effective_polarization_operator(const Circuit& circuit) {
  for (const auto& element : circuit.elements) {
    if (const auto* detect = std::get_if<DetectElement>(&element)) {
      if (detect->model.kind != DetectorModel::Kind::kIdeal) {
        throw std::invalid_argument(
            "operator extraction requires ideal detectors");
      }
    }
  }
  const std::size_t p1h = circuit.registry.index_of("p1H");
  const std::size_t p1v = circuit.registry.index_of("p1V");
  const std::size_t p2h = circuit.registry.index_of("p2H");
  const std::size_t p2v = circuit.registry.index_of("p2V");

  auto basis_occupation = [&](std::size_t basis) {
    OccupationVector occupation(circuit.registry.size(), 0);
    occupation[basis < 2 ? p1h : p1v] = 1;
    occupation[(basis % 2) == 0 ? p2h : p2v] = 1;
    return occupation;
  };

  PolarizationOperator result;
  for (std::size_t in = 0; in < 4; ++in) {
    const Ensemble out = run_circuit(
        circuit, make_basis_state(circuit.registry, basis_occupation(in)));
    result.acceptance[in] = out.acceptance_probability();
    if (out.empty()) continue;
    if (out.branches().size() != 1) {
      throw std::invalid_argument(
          "operator extraction expects a single conditional branch");
    }
    const Branch& branch = out.branches().front();
    const double scale = std::sqrt(branch.weight);
    for (std::size_t o = 0; o < 4; ++o) {
      result.entries[o][in] =
          scale * branch.state.amplitude(basis_occupation(o));
    }
  }
  return result;
}

}  // namespace qfilter
