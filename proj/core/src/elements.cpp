#include "qfilter/elements.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "factorial_table.hpp"

namespace qfilter {

namespace {

void check_mode_index(const FockState& state, std::size_t mode,
                      const char* what) {
  if (mode >= state.registry().size()) {
    throw std::invalid_argument(std::string(what) + " mode index " +
                                std::to_string(mode) + " out of range");
  }
}

void check_reflectivity(double reflectivity) {
  if (!(reflectivity >= 0.0 && reflectivity <= 1.0)) {
    throw std::invalid_argument("reflectivity must lie in [0, 1]");
  }
}

// Powers with integer exponents; pow(0, 0) == 1 by the multinomial
// convention used here.
double ipow(double base, int exponent) {
  double result = 1.0;
  for (int k = 0; k < exponent; ++k) result *= base;
  return result;
}

Amplitude ipow(Amplitude base, int exponent) {
  Amplitude result(1.0, 0.0);
  for (int k = 0; k < exponent; ++k) result *= base;
  return result;
}

}  // namespace

FockState apply_beam_splitter(const FockState& state,
                              const BeamSplitterSpec& spec) {
  check_mode_index(state, spec.mode_a, "beam splitter");
  check_mode_index(state, spec.mode_b, "beam splitter");
  if (spec.mode_a == spec.mode_b) {
    throw std::invalid_argument("beam splitter modes must be distinct");
  }
  check_reflectivity(spec.reflectivity);

  const double t = std::sqrt(1.0 - spec.reflectivity);
  const Amplitude ir(0.0, std::sqrt(spec.reflectivity));

  std::map<OccupationVector, Amplitude> terms;
  for (const auto& [occupation, amplitude] : state.terms()) {
    const int na = occupation[spec.mode_a];
    const int nb = occupation[spec.mode_b];
    const double input_norm =
        std::sqrt(detail::factorial(na) * detail::factorial(nb));
    // Expand (t a+ + i r b+)^na (i r a+ + t b+)^nb term by term. Photon
    // number is conserved: j + k photons land in mode a, the rest in b.
    for (int j = 0; j <= na; ++j) {
      for (int k = 0; k <= nb; ++k) {
        const int out_a = j + k;
        const int out_b = na + nb - out_a;
        if (out_a > state.photon_cap() || out_b > state.photon_cap()) {
          throw std::invalid_argument(
              "beam splitter output exceeds the photon cap of " +
              std::to_string(state.photon_cap()));
        }
        const Amplitude coefficient =
            detail::binomial(na, j) * detail::binomial(nb, k) *
            ipow(t, j + nb - k) * ipow(ir, (na - j) + k);
        const double output_norm =
            std::sqrt(detail::factorial(out_a) * detail::factorial(out_b));
        OccupationVector out = occupation;
        out[spec.mode_a] = out_a;
        out[spec.mode_b] = out_b;
        terms[std::move(out)] +=
            amplitude * coefficient * output_norm / input_norm;
      }
    }
  }
  return FockState::from_terms(state.registry(), std::move(terms),
                               state.photon_cap());
}

FockState apply_phase(const FockState& state, const PhaseSpec& spec) {
  check_mode_index(state, spec.mode, "phase");
  if (!std::isfinite(spec.phi)) {
    throw std::invalid_argument("phase angle must be finite");
  }
  std::map<OccupationVector, Amplitude> terms;
  for (const auto& [occupation, amplitude] : state.terms()) {
    const int n = occupation[spec.mode];
    terms.emplace(occupation,
                  amplitude * std::exp(Amplitude(0.0, spec.phi * n)));
  }
  return FockState::from_terms(state.registry(), std::move(terms),
                               state.photon_cap());
}

FockState permute_modes(const FockState& state,
                        const std::vector<std::size_t>& permutation) {
  const std::size_t n = state.registry().size();
  if (permutation.size() != n) {
    throw std::invalid_argument("permutation length must match registry size");
  }
  std::vector<bool> hit(n, false);
  for (std::size_t target : permutation) {
    if (target >= n || hit[target]) {
      throw std::invalid_argument("permutation is not a bijection");
    }
    hit[target] = true;
  }
  std::map<OccupationVector, Amplitude> terms;
  for (const auto& [occupation, amplitude] : state.terms()) {
    OccupationVector out(n, 0);
    for (std::size_t i = 0; i < n; ++i) out[permutation[i]] = occupation[i];
    terms.emplace(std::move(out), amplitude);
  }
  return FockState::from_terms(state.registry(), std::move(terms),
                               state.photon_cap());
}

Amplitude s11_element(int n) {
  if (n < 0) {
    throw std::invalid_argument("photon number must be non-negative");
  }
  const Amplitude base(0.0, 1.0 / std::sqrt(2.0));
  return ipow(base, n + 1) * static_cast<double>(n - 1);
}

FockState apply_s11(const FockState& state, std::size_t signal,
                    std::size_t ancilla) {
  check_mode_index(state, signal, "s11");
  check_mode_index(state, ancilla, "s11");
  if (signal == ancilla) {
    throw std::invalid_argument("signal and ancilla modes must be distinct");
  }

  // Inject the herald photon; the ancilla must start in vacuum.
  std::map<OccupationVector, Amplitude> injected;
  for (const auto& [occupation, amplitude] : state.terms()) {
    if (occupation[ancilla] != 0) {
      throw std::invalid_argument("s11 ancilla mode '" +
                                  state.registry().label(ancilla) +
                                  "' is not in vacuum");
    }
    OccupationVector out = occupation;
    out[ancilla] = 1;
    injected.emplace(std::move(out), amplitude);
  }
  const FockState mixed = apply_beam_splitter(
      FockState::from_terms(state.registry(), std::move(injected),
                            state.photon_cap()),
      BeamSplitterSpec{signal, ancilla, 0.5});

  // Herald: keep the one-photon ancilla sector and absorb the photon.
  std::map<OccupationVector, Amplitude> kept;
  for (const auto& [occupation, amplitude] : mixed.terms()) {
    if (occupation[ancilla] != 1) continue;
    OccupationVector out = occupation;
    out[ancilla] = 0;
    kept.emplace(std::move(out), amplitude);
  }
  return FockState::from_terms(state.registry(), std::move(kept),
                               state.photon_cap());
}

FockState apply_vacuum_attenuator(const FockState& state, std::size_t mode,
                                  double reflectivity) {
  check_mode_index(state, mode, "attenuator");
  check_reflectivity(reflectivity);
  const double t = std::sqrt(1.0 - reflectivity);
  std::map<OccupationVector, Amplitude> terms;
  for (const auto& [occupation, amplitude] : state.terms()) {
    terms.emplace(occupation, amplitude * ipow(t, occupation[mode]));
  }
  return FockState::from_terms(state.registry(), std::move(terms),
                               state.photon_cap());
}

}  // namespace qfilter
