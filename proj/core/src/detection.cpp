#include "qfilter/detection.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "factorial_table.hpp"

namespace qfilter {

namespace {

// Branches lighter than this carry no numerical meaning and are dropped.
constexpr double kWeightFloor = 1e-30;

double binomial_report_probability(double eta, int reported, int incident) {
  if (reported < 0 || reported > incident) return 0.0;
  return detail::binomial(incident, reported) * std::pow(eta, reported) *
         std::pow(1.0 - eta, incident - reported);
}

}  // namespace

void DetectorModel::validate() const {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("detector eta must lie in [0, 1]");
  }
  if (!(dark >= 0.0 && dark < 1.0)) {
    throw std::invalid_argument("detector dark probability must lie in [0, 1)");
  }
  if (kind == Kind::kIdeal && (eta != 1.0 || dark != 0.0)) {
    throw std::invalid_argument("ideal detector requires eta = 1, dark = 0");
  }
}

double povm_probability(const DetectorModel& model, int reported,
                        int incident) {
  model.validate();
  if (reported < 0 || incident < 0) {
    throw std::invalid_argument("photon counts must be non-negative");
  }
  if (model.kind == DetectorModel::Kind::kIdeal) {
    return reported == incident ? 1.0 : 0.0;
  }
  // At most one dark count per reading.
  return (1.0 - model.dark) *
             binomial_report_probability(model.eta, reported, incident) +
         model.dark *
             binomial_report_probability(model.eta, reported - 1, incident);
}

FockState ideal_postselect(const FockState& state, std::size_t mode,
                           int count) {
  if (mode >= state.registry().size()) {
    throw std::invalid_argument("postselect mode index out of range");
  }
  if (count < 0) {
    throw std::invalid_argument("postselect count must be non-negative");
  }
  std::map<OccupationVector, Amplitude> kept;
  for (const auto& [occupation, amplitude] : state.terms()) {
    if (occupation[mode] != count) continue;
    OccupationVector out = occupation;
    out[mode] = 0;
    kept.emplace(std::move(out), amplitude);
  }
  return FockState::from_terms(state.registry(), std::move(kept),
                               state.photon_cap());
}

Ensemble::Ensemble(ModeRegistry registry) : registry_(std::move(registry)) {}

Ensemble::Ensemble(ModeRegistry registry, std::vector<Branch> branches)
    : registry_(std::move(registry)), branches_(std::move(branches)) {
  double total = 0.0;
  for (const auto& branch : branches_) {
    if (!(branch.weight >= 0.0)) {
      throw std::invalid_argument("branch weights must be non-negative");
    }
    if (branch.state.registry() != registry_) {
      throw std::invalid_argument("branch registry mismatch");
    }
    if (std::abs(squared_norm(branch.state) - 1.0) > 1e-9) {
      throw std::invalid_argument("branch states must be normalized");
    }
    total += branch.weight;
  }
  if (total > 1.0 + 1e-9) {
    throw std::invalid_argument("branch weights exceed unit probability");
  }
}

Ensemble Ensemble::from_pure(const FockState& state) {
  const double weight = squared_norm(state);
  if (weight <= kWeightFloor) {
    return Ensemble(state.registry());
  }
  return Ensemble(state.registry(), {{weight, normalized(state)}});
}

double Ensemble::acceptance_probability() const {
  double total = 0.0;
  for (const auto& branch : branches_) total += branch.weight;
  return total;
}

Ensemble Ensemble::restricted_to(const std::vector<std::string>& labels) const {
  std::vector<Branch> branches;
  branches.reserve(branches_.size());
  for (const auto& branch : branches_) {
    branches.push_back({branch.weight, restrict_to(branch.state, labels)});
  }
  return Ensemble(ModeRegistry(labels), std::move(branches));
}

Ensemble lossy_postselect(const Ensemble& ensemble, std::size_t mode,
                          int reported, const DetectorModel& model) {
  if (mode >= ensemble.registry().size()) {
    throw std::invalid_argument("postselect mode index out of range");
  }
  if (reported < 0) {
    throw std::invalid_argument("reported count must be non-negative");
  }
  model.validate();

  std::vector<Branch> branches;
  for (const auto& branch : ensemble.branches()) {
    // Split the branch into incident-count sectors; sectors stay coherent
    // internally and become separate branches across different counts.
    std::map<int, std::map<OccupationVector, Amplitude>> sectors;
    for (const auto& [occupation, amplitude] : branch.state.terms()) {
      OccupationVector out = occupation;
      out[mode] = 0;
      sectors[occupation[mode]].emplace(std::move(out), amplitude);
    }
    for (auto& [incident, terms] : sectors) {
      const double outcome = povm_probability(model, reported, incident);
      if (outcome <= 0.0) continue;
      FockState sector_state = FockState::from_terms(
          ensemble.registry(), std::move(terms), branch.state.photon_cap());
      const double sector_probability = squared_norm(sector_state);
      const double weight = branch.weight * sector_probability * outcome;
      if (weight <= kWeightFloor) continue;
      branches.push_back({weight, normalized(sector_state)});
    }
  }
  return Ensemble(ensemble.registry(), std::move(branches));
}

}  // namespace qfilter
