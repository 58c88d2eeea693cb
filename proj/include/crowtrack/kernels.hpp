#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "crowtrack/features.hpp"
#include "crowtrack/state.hpp"

// Per-particle kernels of a tracking step. Each has a serial reference and an
// OpenMP version; both produce bit-identical output because every particle is
// computed independently and results are stored by index.

namespace crowtrack {

enum class Execution { serial, parallel };

/// Raw (undiscounted) cue likelihoods of one candidate state.
struct CueLikelihood {
  double alpha_c = 0.0;
  double alpha_t = 0.0;
  bool valid = false;  // false: degenerate patch, both likelihoods are 0

  bool operator==(const CueLikelihood&) const = default;
};

CueLikelihood evaluate_cues(const Frame& frame, const ParticleState& state, double base_w, double base_h,
                            const AppearanceModel& model, const FeatureParams& params);

std::vector<CueLikelihood> evaluate_cues_serial(const Frame& frame, std::span<const ParticleState> states,
                                                double base_w, double base_h, const AppearanceModel& model,
                                                const FeatureParams& params);

std::vector<CueLikelihood> evaluate_cues_parallel(const Frame& frame, std::span<const ParticleState> states,
                                                  double base_w, double base_h, const AppearanceModel& model,
                                                  const FeatureParams& params);

std::vector<CueLikelihood> evaluate_cues(const Frame& frame, std::span<const ParticleState> states, double base_w,
                                         double base_h, const AppearanceModel& model, const FeatureParams& params,
                                         Execution exec);

/// Transition of every state; particle i of frame k draws from the sub-stream
/// keyed (seed, k, i).
std::vector<ParticleState> propagate_serial(std::span<const ParticleState> states, const NoiseParams& noise,
                                            std::uint64_t seed, std::uint64_t frame, FrameDims dims);

std::vector<ParticleState> propagate_parallel(std::span<const ParticleState> states, const NoiseParams& noise,
                                              std::uint64_t seed, std::uint64_t frame, FrameDims dims);

std::vector<ParticleState> propagate(std::span<const ParticleState> states, const NoiseParams& noise,
                                     std::uint64_t seed, std::uint64_t frame, FrameDims dims, Execution exec);

/// Sets the OpenMP worker count; n <= 0 keeps the runtime default.
void set_worker_threads(int n);
int worker_threads();

}  // namespace crowtrack
