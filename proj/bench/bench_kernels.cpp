#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "crowtrack/io.hpp"
#include "crowtrack/kernels.hpp"
#include "crowtrack/rng.hpp"

using namespace crowtrack;

namespace {

struct Scene {
  Frame frame;
  AppearanceModel model;
  std::vector<ParticleState> states;
  double base_w = 40, base_h = 40;
  FeatureParams params;

  explicit Scene(std::size_t n) {
    SynthSpec spec;
    spec.frames = 1;
    const auto synth = render_synth(spec, 1);
    frame = synth.front().frame;
    const Box b = synth.front().truth;
    base_w = b.w;
    base_h = b.h;
    ParticleState centre;
    centre.x = b.cx();
    centre.y = b.cy();
    model = build_appearance(extract_patch(frame, centre, base_w, base_h), params);
    RandomStream rng(3);
    NoiseParams noise;
    noise.sigma_pos = 8;
    ParticleSet set = init_particles(b, static_cast<int>(n), noise, rng);
    for (const auto& p : set.particles) states.push_back(p.state);
  }
};

void BM_EvaluateSerial(benchmark::State& st) {
  const Scene s(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(evaluate_cues_serial(s.frame, s.states, s.base_w, s.base_h, s.model, s.params));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_EvaluateParallel(benchmark::State& st) {
  const Scene s(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(evaluate_cues_parallel(s.frame, s.states, s.base_w, s.base_h, s.model, s.params));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_PropagateSerial(benchmark::State& st) {
  const Scene s(static_cast<std::size_t>(st.range(0)));
  const NoiseParams noise;
  std::uint64_t k = 0;
  for (auto _ : st) benchmark::DoNotOptimize(propagate_serial(s.states, noise, 5, k++, {320, 240}));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_PropagateParallel(benchmark::State& st) {
  const Scene s(static_cast<std::size_t>(st.range(0)));
  const NoiseParams noise;
  std::uint64_t k = 0;
  for (auto _ : st) benchmark::DoNotOptimize(propagate_parallel(s.states, noise, 5, k++, {320, 240}));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_EvaluateSerial)->Arg(49)->Arg(500);
BENCHMARK(BM_EvaluateParallel)->Arg(49)->Arg(500);
BENCHMARK(BM_PropagateSerial)->Arg(49)->Arg(5000);
BENCHMARK(BM_PropagateParallel)->Arg(49)->Arg(5000);

BENCHMARK_MAIN();
