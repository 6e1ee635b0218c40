#pragma once

#include <cstddef>
#include <vector>

#include "qfilter/fock.hpp"

namespace qfilter {

/// Two-mode beam splitter with reflectivity in [0, 1].
///
/// Convention: creation operators map as
///   a+ -> sqrt(1-R) a+ + i sqrt(R) b+
///   b+ -> i sqrt(R) a+ + sqrt(1-R) b+
/// i.e. reflection carries phase i. The matrix is symmetric, so the two
/// mode roles are interchangeable.
struct BeamSplitterSpec {
  std::size_t mode_a = 0;
  std::size_t mode_b = 0;
  double reflectivity = 0.5;
};

/// Single-mode phase shifter: |n> -> exp(i phi n) |n>.
struct PhaseSpec {
  std::size_t mode = 0;
  double phi = 0.0;
};

FockState apply_beam_splitter(const FockState& state,
                              const BeamSplitterSpec& spec);

FockState apply_phase(const FockState& state, const PhaseSpec& spec);

/// Reroutes occupations: new_occupation[permutation[i]] = occupation[i].
/// `permutation` must be a bijection on mode indices. Amplitudes are
/// untouched, which is exactly what a polarizing beam splitter does when
/// polarization components are modeled as separate modes.
FockState permute_modes(const FockState& state,
                        const std::vector<std::size_t>& permutation);

/// Closed-form matrix element of the heralded one-photon filter built from
/// a balanced beam splitter with a single-photon ancilla, post-selected on
/// one ancilla photon: (i/sqrt(2))^(n+1) (n-1).
///
/// The phase follows the textbook real-reflection convention, which differs
/// from apply_s11's i-on-reflection construction by an n-dependent phase.
/// Magnitudes and the n = 1 zero agree; tests compare exactly that.
Amplitude s11_element(int n);

/// Applies the heralded filter to `signal` using `ancilla` as the herald
/// mode: injects one photon into the (vacuum) ancilla, applies a balanced
/// beam splitter across (signal, ancilla), projects the ancilla onto count
/// 1 and absorbs it. Returns the sub-normalized conditional state with the
/// ancilla back at zero.
FockState apply_s11(const FockState& state, std::size_t signal,
                    std::size_t ancilla);

/// Vacuum-ancilla attenuator: per term, multiplies the amplitude by
/// sqrt(1-R)^n where n is the photon count in `mode`. Equivalent to a beam
/// splitter against a fresh vacuum mode, post-selected on zero reflected
/// photons (the construction the unit tests replay).
FockState apply_vacuum_attenuator(const FockState& state, std::size_t mode,
                                  double reflectivity);

}  // namespace qfilter
