#include "qfilter/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace qfilter {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) {
    throw std::invalid_argument(message);
  }
}

void check_occupation(const ModeRegistry& registry,
                      const OccupationVector& occupation, int photon_cap) {
  require(occupation.size() == registry.size(),
          "occupation vector length " + std::to_string(occupation.size()) +
              " does not match registry size " +
              std::to_string(registry.size()));
  for (std::size_t i = 0; i < occupation.size(); ++i) {
    if (occupation[i] < 0) {
      throw std::invalid_argument("negative photon count in mode '" +
                                  registry.label(i) + "'");
    }
    if (occupation[i] > photon_cap) {
      throw std::invalid_argument(
          "photon count " + std::to_string(occupation[i]) + " in mode '" +
          registry.label(i) + "' exceeds cap " + std::to_string(photon_cap));
    }
  }
}

void check_finite(const Amplitude& amplitude) {
  if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag())) {
    throw std::invalid_argument("non-finite amplitude");
  }
}

}  // namespace

ModeRegistry::ModeRegistry(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels_) {
    require(!label.empty(), "mode labels must be non-empty");
    require(seen.insert(label).second, "duplicate mode label '" + label + "'");
  }
}

const std::string& ModeRegistry::label(std::size_t index) const {
  require(index < labels_.size(), "mode index out of range");
  return labels_[index];
}

bool ModeRegistry::contains(std::string_view label) const {
  for (const auto& candidate : labels_) {
    if (candidate == label) return true;
  }
  return false;
}

std::size_t ModeRegistry::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  throw std::invalid_argument("unknown mode '" + std::string(label) + "'");
}

FockState::FockState(ModeRegistry registry, int photon_cap)
    : registry_(std::move(registry)), photon_cap_(photon_cap) {
  require(photon_cap_ >= 0, "photon cap must be non-negative");
}

FockState FockState::from_terms(ModeRegistry registry,
                                std::map<OccupationVector, Amplitude> terms,
                                int photon_cap) {
  FockState state(std::move(registry), photon_cap);
  for (auto it = terms.begin(); it != terms.end();) {
    check_occupation(state.registry_, it->first, photon_cap);
    check_finite(it->second);
    if (std::abs(it->second) < kPruneTolerance) {
      it = terms.erase(it);
    } else {
      ++it;
    }
  }
  state.terms_ = std::move(terms);
  return state;
}

Amplitude FockState::amplitude(const OccupationVector& occupation) const {
  auto it = terms_.find(occupation);
  return it == terms_.end() ? Amplitude(0.0, 0.0) : it->second;
}

FockState make_basis_state(ModeRegistry registry, OccupationVector occupation,
                           int photon_cap) {
  std::map<OccupationVector, Amplitude> terms;
  terms.emplace(std::move(occupation), Amplitude(1.0, 0.0));
  return FockState::from_terms(std::move(registry), std::move(terms),
                               photon_cap);
}

Amplitude inner_product(const FockState& a, const FockState& b) {
  require(a.registry() == b.registry(),
          "inner product requires matching registries");
  // Walk the smaller map, look up in the larger one.
  const auto& small = a.terms().size() <= b.terms().size() ? a : b;
  const auto& large = a.terms().size() <= b.terms().size() ? b : a;
  const bool small_is_a = &small == &a;
  Amplitude result(0.0, 0.0);
  for (const auto& [occupation, amplitude] : small.terms()) {
    const Amplitude other = large.amplitude(occupation);
    if (small_is_a) {
      result += std::conj(amplitude) * other;
    } else {
      result += std::conj(other) * amplitude;
    }
  }
  return result;
}

double squared_norm(const FockState& state) {
  double total = 0.0;
  for (const auto& [occupation, amplitude] : state.terms()) {
    total += std::norm(amplitude);
  }
  return total;
}

FockState normalized(const FockState& state) {
  const double norm = std::sqrt(squared_norm(state));
  require(norm > 0.0, "cannot normalize the zero state");
  return scale(state, Amplitude(1.0 / norm, 0.0));
}

FockState scale(const FockState& state, Amplitude factor) {
  check_finite(factor);
  std::map<OccupationVector, Amplitude> terms;
  for (const auto& [occupation, amplitude] : state.terms()) {
    terms.emplace(occupation, amplitude * factor);
  }
  return FockState::from_terms(state.registry(), std::move(terms),
                               state.photon_cap());
}

FockState add(const FockState& a, const FockState& b) {
  require(a.registry() == b.registry(), "addition requires matching registries");
  std::map<OccupationVector, Amplitude> terms = a.terms();
  for (const auto& [occupation, amplitude] : b.terms()) {
    terms[occupation] += amplitude;
  }
  return FockState::from_terms(a.registry(), std::move(terms),
                               std::max(a.photon_cap(), b.photon_cap()));
}

FockState conjugate(const FockState& state) {
  std::map<OccupationVector, Amplitude> terms;
  for (const auto& [occupation, amplitude] : state.terms()) {
    terms.emplace(occupation, std::conj(amplitude));
  }
  return FockState::from_terms(state.registry(), std::move(terms),
                               state.photon_cap());
}

FockState tensor(const FockState& a, const FockState& b) {
  std::vector<std::string> labels = a.registry().labels();
  for (const auto& label : b.registry().labels()) {
    require(!a.registry().contains(label),
            "tensor product with duplicate mode label '" + label + "'");
    labels.push_back(label);
  }
  ModeRegistry joint(std::move(labels));
  std::map<OccupationVector, Amplitude> terms;
  for (const auto& [occ_a, amp_a] : a.terms()) {
    for (const auto& [occ_b, amp_b] : b.terms()) {
      OccupationVector occupation = occ_a;
      occupation.insert(occupation.end(), occ_b.begin(), occ_b.end());
      terms.emplace(std::move(occupation), amp_a * amp_b);
    }
  }
  return FockState::from_terms(std::move(joint), std::move(terms),
                               std::max(a.photon_cap(), b.photon_cap()));
}

std::set<int> total_photon_number(const FockState& state) {
  std::set<int> totals;
  for (const auto& [occupation, amplitude] : state.terms()) {
    int total = 0;
    for (int count : occupation) total += count;
    totals.insert(total);
  }
  return totals;
}

FockState restrict_to(const FockState& state,
                      const std::vector<std::string>& labels) {
  std::vector<std::size_t> kept;
  kept.reserve(labels.size());
  for (const auto& label : labels) {
    kept.push_back(state.registry().index_of(label));
  }
  std::vector<bool> is_kept(state.registry().size(), false);
  for (std::size_t index : kept) is_kept[index] = true;

  std::map<OccupationVector, Amplitude> terms;
  for (const auto& [occupation, amplitude] : state.terms()) {
    for (std::size_t i = 0; i < occupation.size(); ++i) {
      if (!is_kept[i] && occupation[i] != 0) {
        throw std::invalid_argument("cannot drop occupied mode '" +
                                    state.registry().label(i) + "'");
      }
    }
    OccupationVector reduced;
    reduced.reserve(kept.size());
    for (std::size_t index : kept) reduced.push_back(occupation[index]);
    terms[std::move(reduced)] += amplitude;
  }
  return FockState::from_terms(ModeRegistry(labels), std::move(terms),
                               state.photon_cap());
}

}  // namespace qfilter
