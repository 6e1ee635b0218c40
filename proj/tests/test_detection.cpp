#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "qfilter/detection.hpp"
#include "qfilter/fock.hpp"
#include "test_support.hpp"

using qfilter::Amplitude;
using qfilter::Branch;
using qfilter::DetectorModel;
using qfilter::Ensemble;
using qfilter::FockState;
using qfilter::ModeRegistry;

namespace {

double binomial(int n, int k) {
  double result = 1.0;
  for (int i = 0; i < k; ++i) {
    result = result * double(n - i) / double(i + 1);
  }
  return result;
}

/// Independent reference for the detector response: binomial thinning with
/// at most one dark count per reading.
double povm_reference(double eta, double dark, int reported, int incident) {
  auto thin = [&](int m) {
    if (m < 0 || m > incident) return 0.0;
    return binomial(incident, m) * std::pow(eta, m) *
           std::pow(1.0 - eta, incident - m);
  };
  return (1.0 - dark) * thin(reported) + dark * thin(reported - 1);
}

}  // namespace

TEST_CASE("detector models validate their parameters") {
  CHECK_NOTHROW(DetectorModel::ideal().validate());
  CHECK_NOTHROW(DetectorModel::lossy(0.5, 0.01).validate());
  CHECK_THROWS_AS(DetectorModel::lossy(-0.1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(DetectorModel::lossy(1.2).validate(), std::invalid_argument);
  CHECK_THROWS_AS(DetectorModel::lossy(0.5, 1.0).validate(),
                  std::invalid_argument);
  DetectorModel broken = DetectorModel::ideal();
  broken.eta = 0.9;
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
}

TEST_CASE("ideal detector response is a delta") {
  const DetectorModel ideal = DetectorModel::ideal();
  for (int n = 0; n <= 4; ++n) {
    for (int m = 0; m <= 5; ++m) {
      CHECK(qfilter::povm_probability(ideal, m, n) == (m == n ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("lossy detector response matches the binomial reference") {
  for (const auto& [eta, dark] : std::vector<std::pair<double, double>>{
           {0.88, 0.0}, {0.7, 1e-5}, {0.5, 0.1}, {1.0, 0.0}}) {
    const DetectorModel model = DetectorModel::lossy(eta, dark);
    for (int n = 0; n <= 6; ++n) {
      for (int m = 0; m <= n + 1; ++m) {
        CHECK(std::abs(qfilter::povm_probability(model, m, n) -
                       povm_reference(eta, dark, m, n)) < 1e-15);
      }
    }
  }
}

TEST_CASE("frozen detector values") {
  CHECK(std::abs(qfilter::povm_probability(DetectorModel::lossy(0.88), 1, 2) -
                 0.2112) < 1e-12);
  CHECK(std::abs(qfilter::povm_probability(DetectorModel::lossy(0.88), 1, 1) -
                 0.88) < 1e-12);
  CHECK(std::abs(qfilter::povm_probability(DetectorModel::lossy(0.88), 2, 2) -
                 0.7744) < 1e-12);
}

TEST_CASE("detector response sums to one over all outcomes") {
  for (const auto& [eta, dark] : std::vector<std::pair<double, double>>{
           {0.88, 0.0}, {0.88, 1e-5}, {0.7, 0.3}}) {
    const DetectorModel model = DetectorModel::lossy(eta, dark);
    for (int n = 0; n <= 6; ++n) {
      double total = 0.0;
      for (int m = 0; m <= n + 1; ++m) {
        total += qfilter::povm_probability(model, m, n);
      }
      CHECK(std::abs(total - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("impossible outcomes are rejected or zero") {
  const DetectorModel model = DetectorModel::lossy(0.88, 0.0);
  CHECK(qfilter::povm_probability(model, 3, 2) == 0.0);
  CHECK(qfilter::povm_probability(model, 1, 0) == 0.0);
  CHECK_THROWS_AS(qfilter::povm_probability(model, -1, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(qfilter::povm_probability(model, 0, -2),
                  std::invalid_argument);
}

TEST_CASE("ideal post-selection projects and absorbs the mode") {
  const ModeRegistry registry({"a", "d"});
  const FockState state = FockState::from_terms(
      registry,
      {{{1, 1}, Amplitude(0.6, 0.0)}, {{2, 0}, Amplitude(0.8, 0.0)}});
  const FockState kept = qfilter::ideal_postselect(state, 1, 1);
  CHECK(test_support::amp_distance(kept.amplitude({1, 0}),
                                   Amplitude(0.6, 0.0)) < 1e-15);
  CHECK(kept.terms().size() == 1);
  CHECK(std::abs(qfilter::squared_norm(kept) - 0.36) < 1e-15);
}

TEST_CASE("ensembles validate weights and branch states") {
  const ModeRegistry registry({"a"});
  const FockState unit = qfilter::make_basis_state(registry, {1});
  CHECK_NOTHROW(Ensemble(registry, {Branch{0.5, unit}}));
  CHECK_THROWS_AS(Ensemble(registry, {Branch{-0.1, unit}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Ensemble(registry, {Branch{0.6, unit}, Branch{0.6, unit}}),
                  std::invalid_argument);
  const FockState sub = qfilter::scale(unit, Amplitude(0.5, 0.0));
  CHECK_THROWS_AS(Ensemble(registry, {Branch{0.5, sub}}),
                  std::invalid_argument);
  const Ensemble from_pure = Ensemble::from_pure(sub);
  CHECK(from_pure.branches().size() == 1);
  CHECK(from_pure.branches()[0].weight == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(qfilter::squared_norm(from_pure.branches()[0].state) - 1.0) <
        1e-12);
}

TEST_CASE("lossy post-selection splits branches by incident photon count") {
  const ModeRegistry registry({"d"});
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const FockState state = FockState::from_terms(
      registry, {{{1}, Amplitude(inv_sqrt2, 0.0)}, {{2}, Amplitude(inv_sqrt2, 0.0)}});
  const Ensemble out = qfilter::lossy_postselect(
      Ensemble::from_pure(state), 0, 1, DetectorModel::lossy(0.88));
  REQUIRE(out.branches().size() == 2);
  // Ascending incident count: one photon seen as one, two misread as one.
  CHECK(out.branches()[0].weight == doctest::Approx(0.44).epsilon(1e-12));
  CHECK(out.branches()[1].weight == doctest::Approx(0.1056).epsilon(1e-12));
  CHECK(std::abs(out.acceptance_probability() - 0.5456) < 1e-12);
  for (const auto& branch : out.branches()) {
    CHECK(branch.state.amplitude({0}) != Amplitude(0.0, 0.0));
    CHECK(std::abs(qfilter::squared_norm(branch.state) - 1.0) < 1e-12);
  }
}

TEST_CASE("equal incident counts stay coherent through lossy detection") {
  const ModeRegistry registry({"a", "b", "d"});
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const FockState state = FockState::from_terms(
      registry, {{{1, 0, 1}, Amplitude(inv_sqrt2, 0.0)},
                 {{0, 1, 1}, Amplitude(0.0, -inv_sqrt2)}});
  const Ensemble out = qfilter::lossy_postselect(
      Ensemble::from_pure(state), 2, 1, DetectorModel::lossy(0.88));
  REQUIRE(out.branches().size() == 1);
  CHECK(out.branches()[0].weight == doctest::Approx(0.88).epsilon(1e-12));
  const FockState& kept = out.branches()[0].state;
  CHECK(test_support::amp_distance(kept.amplitude({1, 0, 0}),
                                   Amplitude(inv_sqrt2, 0.0)) < 1e-12);
  CHECK(test_support::amp_distance(kept.amplitude({0, 1, 0}),
                                   Amplitude(0.0, -inv_sqrt2)) < 1e-12);
}

TEST_CASE("distinct incident counts decohere into separate branches") {
  const ModeRegistry registry({"a", "d"});
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const FockState state = FockState::from_terms(
      registry, {{{1, 1}, Amplitude(inv_sqrt2, 0.0)},
                 {{0, 2}, Amplitude(inv_sqrt2, 0.0)}});
  const Ensemble out = qfilter::lossy_postselect(
      Ensemble::from_pure(state), 1, 1, DetectorModel::lossy(0.5));
  REQUIRE(out.branches().size() == 2);
  // Each surviving branch is a pure basis state, not a superposition.
  for (const auto& branch : out.branches()) {
    CHECK(branch.state.terms().size() == 1);
  }
}

TEST_CASE("zero-probability outcomes produce no branches") {
  const ModeRegistry registry({"d"});
  const FockState one = qfilter::make_basis_state(registry, {1});
  const Ensemble none = qfilter::lossy_postselect(
      Ensemble::from_pure(one), 0, 3, DetectorModel::lossy(0.88));
  CHECK(none.empty());
  CHECK(none.acceptance_probability() == 0.0);
}

TEST_CASE("ideal model inside lossy post-selection reduces to projection") {
  const ModeRegistry registry({"a", "d"});
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const FockState state = FockState::from_terms(
      registry, {{{1, 1}, Amplitude(inv_sqrt2, 0.0)},
                 {{0, 2}, Amplitude(inv_sqrt2, 0.0)}});
  const Ensemble out = qfilter::lossy_postselect(
      Ensemble::from_pure(state), 1, 1, DetectorModel::ideal());
  REQUIRE(out.branches().size() == 1);
  CHECK(out.branches()[0].weight == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(test_support::amp_distance(out.branches()[0].state.amplitude({1, 0}),
                                   Amplitude(1.0, 0.0)) < 1e-12);
}

TEST_CASE("restriction keeps branch structure") {
  const ModeRegistry registry({"a", "b"});
  const FockState left = qfilter::make_basis_state(registry, {1, 0});
  const Ensemble ensemble(registry, {Branch{0.25, left}});
  const Ensemble cut = ensemble.restricted_to({"a"});
  CHECK(cut.registry().labels() == std::vector<std::string>{"a"});
  REQUIRE(cut.branches().size() == 1);
  CHECK(cut.branches()[0].weight == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(ensemble.restricted_to({"b"}), std::invalid_argument);
}
