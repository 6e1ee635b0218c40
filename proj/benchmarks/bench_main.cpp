#include <cmath>
#include <map>
#include <random>

#include <benchmark/benchmark.h>

#include "qfilter/circuit.hpp"
#include "qfilter/detection.hpp"
#include "qfilter/elements.hpp"
#include "qfilter/fock.hpp"
#include "qfilter/scenarios.hpp"

namespace {

/// Dense normalized state over `modes` modes with up to `max_per_mode`
/// photons in each, deterministic amplitudes.
qfilter::FockState dense_state(std::size_t modes, int max_per_mode) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < modes; ++i) {
    labels.push_back("m" + std::to_string(i));
  }
  const qfilter::ModeRegistry registry(labels);
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::map<qfilter::OccupationVector, qfilter::Amplitude> terms;
  qfilter::OccupationVector occupation(modes, 0);
  while (true) {
    terms[occupation] = qfilter::Amplitude(coeff(rng), coeff(rng));
    std::size_t i = 0;
    for (; i < occupation.size(); ++i) {
      if (occupation[i] < max_per_mode) {
        ++occupation[i];
        break;
      }
      occupation[i] = 0;
    }
    if (i == occupation.size()) break;
  }
  return qfilter::normalized(qfilter::FockState::from_terms(registry, terms));
}

void BM_BeamSplitter(benchmark::State& state) {
  const int max_per_mode = static_cast<int>(state.range(0));
  const qfilter::FockState input = dense_state(4, max_per_mode);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qfilter::apply_beam_splitter(input, {0, 1, 0.5}));
  }
}
BENCHMARK(BM_BeamSplitter)->Arg(1)->Arg(2)->Arg(3);

void BM_EffectiveOperator(benchmark::State& state) {
  const qfilter::Circuit circuit = qfilter::build_filter_circuit();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfilter::effective_polarization_operator(circuit));
  }
}
BENCHMARK(BM_EffectiveOperator);

void BM_IdealFilterPair(benchmark::State& state) {
  const qfilter::FockState input = qfilter::circular_pair_state();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfilter::filter_pair(input));
  }
}
BENCHMARK(BM_IdealFilterPair);

void BM_LossyFilterPair(benchmark::State& state) {
  const qfilter::FockState input = qfilter::circular_pair_state();
  const qfilter::DetectorModel model = qfilter::DetectorModel::lossy(0.88);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfilter::filter_pair(input, model));
  }
}
BENCHMARK(BM_LossyFilterPair);

void BM_ErrorAnalysis(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfilter::error_analysis(0.88, 1e-5));
  }
}
BENCHMARK(BM_ErrorAnalysis);

}  // namespace

BENCHMARK_MAIN();
