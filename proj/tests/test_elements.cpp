#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "qfilter/detection.hpp"
#include "qfilter/elements.hpp"
#include "qfilter/fock.hpp"
#include "test_support.hpp"

using qfilter::Amplitude;
using qfilter::BeamSplitterSpec;
using qfilter::FockState;
using qfilter::ModeRegistry;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ModeRegistry two_modes() { return ModeRegistry({"a", "b"}); }

FockState basis2(int na, int nb) {
  return qfilter::make_basis_state(two_modes(), {na, nb});
}

}  // namespace

TEST_CASE("beam splitter on a single photon follows the convention") {
  const double r = 0.3;
  const FockState out =
      qfilter::apply_beam_splitter(basis2(1, 0), {0, 1, r});
  CHECK(test_support::amp_distance(out.amplitude({1, 0}),
                                   Amplitude(std::sqrt(1.0 - r), 0.0)) < 1e-15);
  CHECK(test_support::amp_distance(out.amplitude({0, 1}),
                                   Amplitude(0.0, std::sqrt(r))) < 1e-15);
  const FockState swapped =
      qfilter::apply_beam_splitter(basis2(0, 1), {0, 1, r});
  CHECK(test_support::amp_distance(swapped.amplitude({0, 1}),
                                   Amplitude(std::sqrt(1.0 - r), 0.0)) < 1e-15);
  CHECK(test_support::amp_distance(swapped.amplitude({1, 0}),
                                   Amplitude(0.0, std::sqrt(r))) < 1e-15);
}

TEST_CASE("extreme reflectivities reduce to identity and swap") {
  const FockState in = basis2(2, 1);
  const FockState same = qfilter::apply_beam_splitter(in, {0, 1, 0.0});
  CHECK(test_support::amp_distance(same.amplitude({2, 1}),
                                   Amplitude(1.0, 0.0)) < 1e-15);
  // R = 1 swaps the modes and multiplies by i per photon.
  const FockState swapped = qfilter::apply_beam_splitter(in, {0, 1, 1.0});
  CHECK(test_support::amp_distance(swapped.amplitude({1, 2}),
                                   std::pow(Amplitude(0.0, 1.0), 3)) < 1e-15);
}

TEST_CASE("two photons bunch on a balanced beam splitter") {
  const FockState out = qfilter::apply_beam_splitter(basis2(1, 1), {0, 1, 0.5});
  CHECK(test_support::amp_distance(out.amplitude({2, 0}),
                                   Amplitude(0.0, kInvSqrt2)) < 1e-12);
  CHECK(test_support::amp_distance(out.amplitude({0, 2}),
                                   Amplitude(0.0, kInvSqrt2)) < 1e-12);
  CHECK(test_support::amp_distance(out.amplitude({1, 1}),
                                   Amplitude(0.0, 0.0)) < 1e-12);

  const FockState back = qfilter::apply_beam_splitter(out, {0, 1, 0.5});
  CHECK(test_support::amp_distance(back.amplitude({1, 1}),
                                   Amplitude(-1.0, 0.0)) < 1e-12);
  CHECK(std::abs(qfilter::squared_norm(back) - 1.0) < 1e-12);
}

TEST_CASE("balanced beam splitter splits |2,0> into three terms") {
  const FockState out = qfilter::apply_beam_splitter(basis2(2, 0), {0, 1, 0.5});
  CHECK(test_support::amp_distance(out.amplitude({2, 0}),
                                   Amplitude(0.5, 0.0)) < 1e-12);
  CHECK(test_support::amp_distance(out.amplitude({1, 1}),
                                   Amplitude(0.0, kInvSqrt2)) < 1e-12);
  CHECK(test_support::amp_distance(out.amplitude({0, 2}),
                                   Amplitude(-0.5, 0.0)) < 1e-12);
}

TEST_CASE("beam splitter validates its spec") {
  CHECK_THROWS_AS(qfilter::apply_beam_splitter(basis2(1, 0), {0, 0, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(qfilter::apply_beam_splitter(basis2(1, 0), {0, 5, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(qfilter::apply_beam_splitter(basis2(1, 0), {0, 1, 1.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(qfilter::apply_beam_splitter(basis2(1, 0), {0, 1, -0.1}),
                  std::invalid_argument);
}

TEST_CASE("photon cap overflow is a hard error") {
  const ModeRegistry registry = two_modes();
  const FockState tight =
      qfilter::make_basis_state(registry, {2, 2}, /*photon_cap=*/3);
  CHECK_THROWS_AS(qfilter::apply_beam_splitter(tight, {0, 1, 0.5}),
                  std::invalid_argument);
}

TEST_CASE("phase shifter multiplies by exp(i phi n)") {
  const FockState state = FockState::from_terms(
      two_modes(), {{{2, 0}, Amplitude(1.0, 0.0)}, {{0, 3}, Amplitude(1.0, 0.0)}});
  const double phi = 0.7;
  const FockState out = qfilter::apply_phase(state, {0, phi});
  CHECK(test_support::amp_distance(out.amplitude({2, 0}),
                                   std::exp(Amplitude(0.0, 2.0 * phi))) < 1e-15);
  CHECK(test_support::amp_distance(out.amplitude({0, 3}),
                                   Amplitude(1.0, 0.0)) < 1e-15);
  CHECK_THROWS_AS(qfilter::apply_phase(state, {0, std::nan("")}),
                  std::invalid_argument);
  CHECK_THROWS_AS(qfilter::apply_phase(state, {7, 0.1}),
                  std::invalid_argument);
}

TEST_CASE("permutation reroutes occupations without touching amplitudes") {
  const ModeRegistry registry({"a", "b", "c"});
  const FockState state = FockState::from_terms(
      registry, {{{1, 2, 0}, Amplitude(0.0, 1.0)}});
  // a -> c, b -> a, c -> b.
  const FockState out = qfilter::permute_modes(state, {2, 0, 1});
  CHECK(test_support::amp_distance(out.amplitude({2, 0, 1}),
                                   Amplitude(0.0, 1.0)) < 1e-15);
  CHECK_THROWS_AS(qfilter::permute_modes(state, {0, 0, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(qfilter::permute_modes(state, {0, 1}),
                  std::invalid_argument);
}

TEST_CASE("unitarity and photon conservation on random states") {
  std::mt19937_64 rng(2024);
  const ModeRegistry registry({"a", "b", "c"});
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const FockState state = test_support::random_state(rng, registry, 2);
    const std::set<int> photons = qfilter::total_photon_number(state);

    const BeamSplitterSpec bs{0, 2, uniform(rng)};
    const FockState after_bs = qfilter::apply_beam_splitter(state, bs);
    CHECK(std::abs(qfilter::squared_norm(after_bs) - 1.0) < 1e-12);
    CHECK(qfilter::total_photon_number(after_bs) == photons);

    const FockState after_phase =
        qfilter::apply_phase(state, {1, 2.0 * M_PI * uniform(rng)});
    CHECK(std::abs(qfilter::squared_norm(after_phase) - 1.0) < 1e-12);
    CHECK(qfilter::total_photon_number(after_phase) == photons);

    const FockState after_permute = qfilter::permute_modes(state, {1, 2, 0});
    CHECK(std::abs(qfilter::squared_norm(after_permute) - 1.0) < 1e-12);
    CHECK(qfilter::total_photon_number(after_permute) == photons);
  }
}

TEST_CASE("beam splitter preserves inner products") {
  std::mt19937_64 rng(5);
  const ModeRegistry registry({"a", "b"});
  for (int i = 0; i < 20; ++i) {
    const FockState state = test_support::random_state(rng, registry, 3);
    const FockState other = test_support::random_state(rng, registry, 3);
    const BeamSplitterSpec bs{0, 1, 0.37};
    const Amplitude before = qfilter::inner_product(state, other);
    const Amplitude after =
        qfilter::inner_product(qfilter::apply_beam_splitter(state, bs),
                               qfilter::apply_beam_splitter(other, bs));
    CHECK(test_support::amp_distance(before, after) < 1e-12);
  }
}

TEST_CASE("closed-form heralded filter element matches its magnitude law") {
  for (int n = 0; n <= 6; ++n) {
    const double expected =
        std::pow(kInvSqrt2, n + 1) * std::abs(double(n - 1));
    CHECK(std::abs(std::abs(qfilter::s11_element(n)) - expected) < 1e-12);
  }
  CHECK(qfilter::s11_element(1) == Amplitude(0.0, 0.0));
  CHECK_THROWS_AS(qfilter::s11_element(-1), std::invalid_argument);
}

TEST_CASE("heralded filter construction is diagonal and matches magnitudes") {
  const ModeRegistry registry({"s", "anc"});
  for (int n = 0; n <= 4; ++n) {
    const FockState in = qfilter::make_basis_state(registry, {n, 0});
    const FockState out = qfilter::apply_s11(in, 0, 1);
    for (int m = 0; m <= 4; ++m) {
      const Amplitude element = out.amplitude({m, 0});
      if (m == n) {
        CHECK(std::abs(std::abs(element) -
                       std::abs(qfilter::s11_element(n))) < 1e-12);
      } else {
        CHECK(std::abs(element) < 1e-12);
      }
    }
  }
  // The herald demands a vacuum ancilla.
  const FockState bad = qfilter::make_basis_state(registry, {1, 1});
  CHECK_THROWS_AS(qfilter::apply_s11(bad, 0, 1), std::invalid_argument);
}

TEST_CASE("attenuator closed form equals the vacuum-ancilla construction") {
  const ModeRegistry registry({"s"});
  const ModeRegistry with_ancilla({"s", "aux"});
  for (const double r : {0.75, 0.3, 0.0, 1.0}) {
    std::map<qfilter::OccupationVector, Amplitude> terms;
    for (int n = 0; n <= 4; ++n) {
      terms[{n}] = Amplitude(0.4, 0.1 * n);
    }
    const FockState state = FockState::from_terms(registry, terms);
    const FockState closed = qfilter::apply_vacuum_attenuator(state, 0, r);

    // Reference route: beam splitter against a fresh vacuum mode, then
    // post-select zero photons in that mode. The signal keeps amplitude
    // sqrt(1-r) per photon, exactly the closed form.
    const FockState embedded =
        qfilter::tensor(state, qfilter::make_basis_state(ModeRegistry({"aux"}), {0}));
    const FockState split = qfilter::apply_beam_splitter(embedded, {0, 1, r});
    const FockState projected = qfilter::ideal_postselect(split, 1, 0);
    for (int n = 0; n <= 4; ++n) {
      CHECK(test_support::amp_distance(closed.amplitude({n}),
                                       projected.amplitude({n, 0})) < 1e-12);
    }
  }
  CHECK_THROWS_AS(qfilter::apply_vacuum_attenuator(
                      qfilter::make_basis_state(registry, {1}), 0, 1.5),
                  std::invalid_argument);
}
