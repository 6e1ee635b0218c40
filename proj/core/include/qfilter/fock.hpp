#pragma once

#include <complex>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qfilter {

using Amplitude = std::complex<double>;

/// Amplitudes below this magnitude are dropped when states are assembled.
inline constexpr double kPruneTolerance = 1e-14;

/// Default per-mode photon cap. Exceeding the cap is a hard error, never a
/// silent truncation.
inline constexpr int kDefaultPhotonCap = 8;

/// Ordered list of mode labels. The order fixes the meaning of every
/// occupation vector, so two states are only compatible when their
/// registries compare equal (same labels, same order).
class ModeRegistry {
 public:
  ModeRegistry() = default;
  explicit ModeRegistry(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t index) const;
  const std::vector<std::string>& labels() const { return labels_; }

  bool contains(std::string_view label) const;
  /// Index of `label`; throws std::invalid_argument when absent.
  std::size_t index_of(std::string_view label) const;

  friend bool operator==(const ModeRegistry&, const ModeRegistry&) = default;

 private:
  std::vector<std::string> labels_;
};

/// Photon count per mode, aligned with a ModeRegistry.
using OccupationVector = std::vector<int>;

/// Sparse superposition of occupation-number basis states. Immutable after
/// construction; all mutating operations return new states.
class FockState {
 public:
  /// The zero state (no stored terms).
  explicit FockState(ModeRegistry registry, int photon_cap = kDefaultPhotonCap);

  /// Assembles a state from raw terms: validates occupations, drops
  /// amplitudes below the prune tolerance.
  static FockState from_terms(ModeRegistry registry,
                              std::map<OccupationVector, Amplitude> terms,
                              int photon_cap = kDefaultPhotonCap);

  const ModeRegistry& registry() const { return registry_; }
  int photon_cap() const { return photon_cap_; }

  /// Terms in lexicographic occupation order (std::map), which makes every
  /// iteration over a state deterministic.
  const std::map<OccupationVector, Amplitude>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }

  /// Amplitude of one basis state (0 when absent).
  Amplitude amplitude(const OccupationVector& occupation) const;

 private:
  ModeRegistry registry_;
  std::map<OccupationVector, Amplitude> terms_;
  int photon_cap_ = kDefaultPhotonCap;
};

/// Basis state |occupation>. Throws on length mismatch, negative counts,
/// counts above the cap.
FockState make_basis_state(ModeRegistry registry, OccupationVector occupation,
                           int photon_cap = kDefaultPhotonCap);

/// <a|b>, conjugate-linear in the first argument. Registries must match.
Amplitude inner_product(const FockState& a, const FockState& b);

double squared_norm(const FockState& state);

/// state / ||state||; throws when the norm is zero.
FockState normalized(const FockState& state);

FockState scale(const FockState& state, Amplitude factor);

/// a + b. Registries must match; cancellations below the prune tolerance
/// disappear from the result.
FockState add(const FockState& a, const FockState& b);

/// Complex conjugate of every amplitude.
FockState conjugate(const FockState& state);

/// Tensor product. Mode label sets must be disjoint; the result registry is
/// a's labels followed by b's.
FockState tensor(const FockState& a, const FockState& b);

/// Set of total photon numbers across stored terms. Empty for the zero
/// state; {0} for vacuum.
std::set<int> total_photon_number(const FockState& state);

/// Projects the state onto a sub-registry given by `labels` (in the given
/// order). Every dropped mode must carry zero photons in every term.
FockState restrict_to(const FockState& state,
                      const std::vector<std::string>& labels);

}  // namespace qfilter
