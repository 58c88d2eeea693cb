#include "crowtrack/kernels.hpp"

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "crowtrack/errors.hpp"

namespace crowtrack {

CueLikelihood evaluate_cues(const Frame& frame, const ParticleState& state, double base_w, double base_h,
                            const AppearanceModel& model, const FeatureParams& params) {
  try {
    const Frame patch = extract_patch(frame, state, base_w, base_h);
    const ColorHistogram hc = color_histogram(patch, params.bins_per_channel);
    const LbpHistogram ht = lbp_histogram(patch, params.lbp_p, params.lbp_z);
    CueLikelihood out;
    out.alpha_c = likelihood(bhattacharyya_distance(model.ref_color.bins, hc.bins), params.sigma_c);
    out.alpha_t = likelihood(bhattacharyya_distance(model.ref_texture.bins, ht.bins), params.sigma_t);
    out.valid = true;
    return out;
  } catch (const DegeneratePatchError&) {
    return CueLikelihood{};
  }
}

std::vector<CueLikelihood> evaluate_cues_serial(const Frame& frame, std::span<const ParticleState> states,
                                                double base_w, double base_h, const AppearanceModel& model,
                                                const FeatureParams& params) {
  std::vector<CueLikelihood> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    out[i] = evaluate_cues(frame, states[i], base_w, base_h, model, params);
  }
  return out;
}

std::vector<CueLikelihood> evaluate_cues_parallel(const Frame& frame, std::span<const ParticleState> states,
                                                  double base_w, double base_h, const AppearanceModel& model,
                                                  const FeatureParams& params) {
  std::vector<CueLikelihood> out(states.size());
  const auto n = static_cast<std::ptrdiff_t>(states.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = evaluate_cues(frame, states[static_cast<std::size_t>(i)], base_w, base_h,
                                                     model, params);
  }
  return out;
}

std::vector<CueLikelihood> evaluate_cues(const Frame& frame, std::span<const ParticleState> states, double base_w,
                                         double base_h, const AppearanceModel& model, const FeatureParams& params,
                                         Execution exec) {
  return exec == Execution::parallel ? evaluate_cues_parallel(frame, states, base_w, base_h, model, params)
                                     : evaluate_cues_serial(frame, states, base_w, base_h, model, params);
}

std::vector<ParticleState> propagate_serial(std::span<const ParticleState> states, const NoiseParams& noise,
                                            std::uint64_t seed, std::uint64_t frame, FrameDims dims) {
  std::vector<ParticleState> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    RandomStream rng = make_stream(seed, {tag(StreamTag::transition), frame, i});
    out[i] = transition(states[i], noise, rng, dims);
  }
  return out;
}

std::vector<ParticleState> propagate_parallel(std::span<const ParticleState> states, const NoiseParams& noise,
                                              std::uint64_t seed, std::uint64_t frame, FrameDims dims) {
  std::vector<ParticleState> out(states.size());
  const auto n = static_cast<std::ptrdiff_t>(states.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    RandomStream rng = make_stream(seed, {tag(StreamTag::transition), frame, k});
    out[k] = transition(states[k], noise, rng, dims);
  }
  return out;
}

std::vector<ParticleState> propagate(std::span<const ParticleState> states, const NoiseParams& noise,
                                     std::uint64_t seed, std::uint64_t frame, FrameDims dims, Execution exec) {
  return exec == Execution::parallel ? propagate_parallel(states, noise, seed, frame, dims)
                                     : propagate_serial(states, noise, seed, frame, dims);
}

void set_worker_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int worker_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace crowtrack
