#pragma once

#include <cstddef>
#include <vector>

#include "qfilter/fock.hpp"

namespace qfilter {

/// Photon-number-resolving detector response.
///
/// Ideal: reported count always equals the incident count.
/// Lossy: each photon is registered independently with probability eta
/// (binomial), and with probability `dark` one spurious count is added.
struct DetectorModel {
  enum class Kind { kIdeal, kLossy };

  Kind kind = Kind::kIdeal;
  double eta = 1.0;
  double dark = 0.0;

  static DetectorModel ideal() { return {}; }
  static DetectorModel lossy(double eta, double dark = 0.0) {
    return {Kind::kLossy, eta, dark};
  }

  /// Throws unless eta in [0,1], dark in [0,1), and Ideal implies
  /// eta == 1, dark == 0.
  void validate() const;

  friend bool operator==(const DetectorModel&, const DetectorModel&) = default;
};

/// P(reported | incident) under the model. Sums to 1 over reported counts.
double povm_probability(const DetectorModel& model, int reported,
                        int incident);

/// Projects onto `count` photons in `mode` and absorbs them (the mode reads
/// zero afterwards). Result is sub-normalized: its squared norm is the
/// outcome probability.
FockState ideal_postselect(const FockState& state, std::size_t mode,
                           int count);

/// One classical branch of a post-selected evolution: a normalized pure
/// state together with the probability weight of reaching it.
struct Branch {
  double weight = 0.0;
  FockState state;
};

/// Weighted list of pure branches sharing one registry. Weights sum to the
/// acceptance probability of the conditions applied so far (<= 1). Branch
/// order is deterministic: derived branches keep their parent's position,
/// sub-branches are ordered by incident photon count.
class Ensemble {
 public:
  explicit Ensemble(ModeRegistry registry);
  Ensemble(ModeRegistry registry, std::vector<Branch> branches);

  /// Single-branch ensemble. `state` need not be normalized: its squared
  /// norm becomes the branch weight.
  static Ensemble from_pure(const FockState& state);

  const ModeRegistry& registry() const { return registry_; }
  const std::vector<Branch>& branches() const { return branches_; }
  bool empty() const { return branches_.empty(); }

  double acceptance_probability() const;

  /// Restricts every branch to the given sub-registry (see restrict_to).
  Ensemble restricted_to(const std::vector<std::string>& labels) const;

 private:
  ModeRegistry registry_;
  std::vector<Branch> branches_;
};

/// Applies a detector reading `reported` on `mode` to every branch: each
/// incident-count sector becomes its own branch weighted by the POVM
/// probability, with the detected photons absorbed. With an Ideal model
/// this coincides with ideal_postselect branch by branch.
Ensemble lossy_postselect(const Ensemble& ensemble, std::size_t mode,
                          int reported, const DetectorModel& model);

}  // namespace qfilter
