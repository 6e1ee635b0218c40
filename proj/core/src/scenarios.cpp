#include "qfilter/scenarios.hpp"

#include <cmath>
#include <complex>
#include <initializer_list>
#include <map>
#include <stdexcept>

namespace qfilter {
namespace {

constexpr double kNormTolerance = 1e-9;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

OccupationVector occupation_of(
    const ModeRegistry& registry,
    std::initializer_list<std::pair<const char*, int>> filled) {
  OccupationVector occupation(registry.size(), 0);
  for (const auto& [label, count] : filled) {
    occupation[registry.index_of(label)] = count;
  }
  return occupation;
}

void require_normalized(const FockState& state, const char* what) {
  if (std::abs(squared_norm(state) - 1.0) > kNormTolerance) {
    throw std::invalid_argument(std::string(what) + " must be normalized");
  }
}

/// Re-expresses `input` on the circuit registry; modes absent from the
/// input registry stay in vacuum.
FockState embed_input(const FockState& input, const ModeRegistry& target) {
  const ModeRegistry& source = input.registry();
  std::map<OccupationVector, Amplitude> terms;
  for (const auto& [occupation, amplitude] : input.terms()) {
    OccupationVector embedded(target.size(), 0);
    for (std::size_t i = 0; i < source.size(); ++i) {
      embedded[target.index_of(source.label(i))] = occupation[i];
    }
    terms[embedded] = amplitude;
  }
  return FockState::from_terms(target, terms, input.photon_cap());
}

FilterOutcome run_filter(const FockState& input, const FilterOptions& options,
                         const std::vector<std::string>& output_labels) {
  const Circuit circuit = build_filter_circuit(options);
  const Ensemble raw =
      run_circuit(circuit, embed_input(input, circuit.registry));
  FilterOutcome outcome{raw.restricted_to(output_labels),
                        raw.acceptance_probability()};
  return outcome;
}

}  // namespace

const ModeRegistry& polarization_registry() {
  static const ModeRegistry registry(
      std::vector<std::string>{"p1H", "p1V", "p2H", "p2V"});
  return registry;
}

FockState max_entangled_state(const MaxEntangledParams& params) {
  if (!std::isfinite(params.phi)) {
    throw std::invalid_argument("phi must be finite");
  }
  const double norm = std::norm(params.c1) + std::norm(params.c2);
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw std::invalid_argument("|c1|^2 + |c2|^2 must equal 1");
  }
  const Amplitude rel = std::exp(Amplitude(0.0, -params.phi));
  const ModeRegistry& registry = polarization_registry();
  std::map<OccupationVector, Amplitude> terms;
  terms[occupation_of(registry, {{"p1H", 1}, {"p2H", 1}})] =
      params.c1 * kInvSqrt2;
  terms[occupation_of(registry, {{"p1H", 1}, {"p2V", 1}})] =
      params.c2 * kInvSqrt2;
  terms[occupation_of(registry, {{"p1V", 1}, {"p2H", 1}})] =
      rel * params.c2 * kInvSqrt2;
  terms[occupation_of(registry, {{"p1V", 1}, {"p2V", 1}})] =
      -rel * params.c1 * kInvSqrt2;
  return FockState::from_terms(registry, terms);
}

MaxEntangledParams random_max_entangled_params(std::mt19937_64& rng,
                                               double min_c1) {
  if (!(min_c1 >= 0.0) || min_c1 >= 1.0) {
    throw std::invalid_argument("min_c1 must lie in [0, 1)");
  }
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  double theta = 0.0;
  do {
    theta = angle(rng);
  } while (std::abs(std::cos(theta)) < min_c1);
  const Amplitude common = std::exp(Amplitude(0.0, angle(rng)));
  MaxEntangledParams params;
  params.c1 = common * std::cos(theta);
  params.c2 = common * std::sin(theta);
  params.phi = angle(rng);
  return params;
}

FockState circular_pair_state() {
  const ModeRegistry& registry = polarization_registry();
  std::map<OccupationVector, Amplitude> terms;
  terms[occupation_of(registry, {{"p1H", 1}, {"p2H", 1}})] = Amplitude(0.5, 0.0);
  terms[occupation_of(registry, {{"p1H", 1}, {"p2V", 1}})] =
      Amplitude(0.0, -0.5);
  terms[occupation_of(registry, {{"p1V", 1}, {"p2H", 1}})] = Amplitude(0.0, 0.5);
  terms[occupation_of(registry, {{"p1V", 1}, {"p2V", 1}})] = Amplitude(0.5, 0.0);
  return FockState::from_terms(registry, terms);
}

FilterOutcome filter_pair(const FockState& input, const DetectorModel& model) {
  if (input.registry() != polarization_registry()) {
    throw std::invalid_argument(
        "filter_pair input must live on the polarization registry");
  }
  require_normalized(input, "filter_pair input");
  for (const auto& [occupation, amplitude] : input.terms()) {
    (void)amplitude;
    if (occupation[0] + occupation[1] != 1 ||
        occupation[2] + occupation[3] != 1) {
      throw std::invalid_argument(
          "filter_pair input must hold exactly one photon per path");
    }
  }
  FilterOptions options;
  options.detector_model = model;
  return run_filter(input, options, polarization_registry().labels());
}

FilterOutcome ghz4(bool swap_filter_paths) {
  FilterOptions options;
  options.spectator_modes = {"s1H", "s1V", "s4H", "s4V"};
  const Circuit circuit = build_filter_circuit(options);
  const ModeRegistry& registry = circuit.registry;
  const std::string inner2 = swap_filter_paths ? "p2" : "p1";
  const std::string inner3 = swap_filter_paths ? "p1" : "p2";

  std::map<OccupationVector, Amplitude> terms;
  const char* letters[2] = {"H", "V"};
  for (const char* b1 : letters) {
    for (const char* b2 : letters) {
      OccupationVector occupation(registry.size(), 0);
      occupation[registry.index_of(std::string("s1") + b1)] = 1;
      occupation[registry.index_of(inner2 + b1)] = 1;
      occupation[registry.index_of(inner3 + b2)] = 1;
      occupation[registry.index_of(std::string("s4") + b2)] = 1;
      terms[occupation] = Amplitude(0.5, 0.0);
    }
  }
  const FockState input = FockState::from_terms(registry, terms);

  const std::vector<std::string> output_labels = {
      "s1H", "s1V", inner2 + "H", inner2 + "V",
      inner3 + "H", inner3 + "V", "s4H", "s4V"};
  const Ensemble raw = run_circuit(circuit, input);
  return FilterOutcome{raw.restricted_to(output_labels),
                       raw.acceptance_probability()};
}

FilterOutcome encode2(const QubitCoeffs& coeffs, bool swap_filter_paths) {
  const double norm = std::norm(coeffs.h) + std::norm(coeffs.v);
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw std::invalid_argument("|h|^2 + |v|^2 must equal 1");
  }
  const std::string diagonal = swap_filter_paths ? "p2" : "p1";
  const std::string qubit = swap_filter_paths ? "p1" : "p2";
  const ModeRegistry& registry = polarization_registry();
  std::map<OccupationVector, Amplitude> terms;
  const char* letters[2] = {"H", "V"};
  for (const char* d : letters) {
    terms[occupation_of(registry,
                        {{(diagonal + d).c_str(), 1}, {(qubit + "H").c_str(), 1}})] +=
        coeffs.h * kInvSqrt2;
    terms[occupation_of(registry,
                        {{(diagonal + d).c_str(), 1}, {(qubit + "V").c_str(), 1}})] +=
        coeffs.v * kInvSqrt2;
  }
  const FockState input = FockState::from_terms(registry, terms);
  FilterOptions options;
  return run_filter(input, options, registry.labels());
}

FilterOutcome encode3(const QubitCoeffs& coeffs) {
  const double norm = std::norm(coeffs.h) + std::norm(coeffs.v);
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw std::invalid_argument("|h|^2 + |v|^2 must equal 1");
  }
  FilterOptions options;
  options.spectator_modes = {"s1H", "s1V"};
  const Circuit circuit = build_filter_circuit(options);
  const ModeRegistry& registry = circuit.registry;

  std::map<OccupationVector, Amplitude> terms;
  const char* letters[2] = {"H", "V"};
  for (const char* b : letters) {
    OccupationVector with_h(registry.size(), 0);
    with_h[registry.index_of(std::string("s1") + b)] = 1;
    with_h[registry.index_of(std::string("p1") + b)] = 1;
    with_h[registry.index_of("p2H")] = 1;
    terms[with_h] = coeffs.h * kInvSqrt2;

    OccupationVector with_v(registry.size(), 0);
    with_v[registry.index_of(std::string("s1") + b)] = 1;
    with_v[registry.index_of(std::string("p1") + b)] = 1;
    with_v[registry.index_of("p2V")] = 1;
    terms[with_v] = coeffs.v * kInvSqrt2;
  }
  const FockState input = FockState::from_terms(registry, terms);

  const std::vector<std::string> output_labels = {"s1H", "s1V", "p1H",
                                                  "p1V", "p2H", "p2V"};
  const Ensemble raw = run_circuit(circuit, input);
  return FilterOutcome{raw.restricted_to(output_labels),
                       raw.acceptance_probability()};
}

ErrorReport error_analysis(double eta, double dark, double dark_rate_cps,
                           double window_s) {
  if (!(eta > 0.0) || eta > 1.0) {
    throw std::invalid_argument("eta must lie in (0, 1]");
  }
  if (!(dark >= 0.0) || dark >= 1.0) {
    throw std::invalid_argument("dark must lie in [0, 1)");
  }
  if (!(dark_rate_cps >= 0.0) || !(window_s >= 0.0)) {
    throw std::invalid_argument("dark rate and window must be non-negative");
  }
  const DetectorModel model = DetectorModel::lossy(eta, dark);
  const ModeRegistry& registry = polarization_registry();

  ErrorReport report;
  report.eta = eta;
  report.dark = dark;
  report.misread_2_as_1 = povm_probability(model, 1, 2);

  const FockState hv = make_basis_state(
      registry, occupation_of(registry, {{"p1H", 1}, {"p2V", 1}}));
  const FockState vh = make_basis_state(
      registry, occupation_of(registry, {{"p1V", 1}, {"p2H", 1}}));
  report.hv_error_rate = filter_pair(hv, model).acceptance;

  report.ideal_success_prob = filter_pair(circular_pair_state()).acceptance;

  // The circular pair carries weight 1/4 on each of HV and VH; those
  // components alone produce accepted-but-wrong events.
  report.false_transmission_prob =
      0.25 * report.hv_error_rate + 0.25 * filter_pair(vh, model).acceptance;

  const double total =
      report.ideal_success_prob + report.false_transmission_prob;
  report.mixture_entangled_fraction = report.ideal_success_prob / total;
  report.mixture_single_photon_fraction =
      report.false_transmission_prob / total;
  report.dark_counts_per_pulse = dark_rate_cps * window_s;
  return report;
}

std::optional<std::string> polarization_word(
    const ModeRegistry& registry, const OccupationVector& occupation,
    const std::vector<std::pair<std::string, std::string>>& hv_pairs) {
  if (occupation.size() != registry.size()) {
    throw std::invalid_argument("occupation size does not match registry");
  }
  std::vector<bool> consumed(registry.size(), false);
  std::string word;
  for (const auto& [h_label, v_label] : hv_pairs) {
    const std::size_t h = registry.index_of(h_label);
    const std::size_t v = registry.index_of(v_label);
    consumed[h] = true;
    consumed[v] = true;
    if (occupation[h] + occupation[v] != 1) return std::nullopt;
    word.push_back(occupation[h] == 1 ? 'H' : 'V');
  }
  for (std::size_t i = 0; i < registry.size(); ++i) {
    if (!consumed[i] && occupation[i] != 0) return std::nullopt;
  }
  return word;
}

}  // namespace qfilter
