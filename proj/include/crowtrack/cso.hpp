#pragma once

#include <functional>
#include <span>
#include <vector>

#include "crowtrack/image.hpp"
#include "crowtrack/rng.hpp"
#include "crowtrack/state.hpp"

namespace crowtrack {

struct CsoParams {
  double fl = 2.0;                   // flight length
  double ap = 0.1;                   // awareness probability
  int iters = 10;                    // J
  double redistribute_sigma = 10.0;  // px, random-move step
  double min_gain = 1e-10;           // fitness gain a memory update needs

  void validate() const;
};

/// Index split of a particle set by temporal score.
struct Partition {
  std::vector<std::size_t> inliers;
  std::vector<std::size_t> outliers;
};

/// Outlier iff score <= threshold.
Partition classify(std::span<const double> scores, double threshold);

/// Best state a crow has visited and its fitness.
struct CrowMemory {
  ParticleState state;
  double fitness = 0.0;
};

/// Evaluates a batch of candidate states. Implementations may evaluate the
/// batch in parallel; results must be returned in input order.
using BatchFitness = std::function<std::vector<double>(std::span<const ParticleState>)>;

struct CsoResult {
  std::vector<CrowMemory> memories;
  /// memory_history[j][c]: crow c's memory fitness after iteration j.
  std::vector<std::vector<double>> memory_history;
  std::size_t evaluations = 0;
};

/// One crow-search move of a single coordinate toward a peer's memory.
constexpr double follow_move(double position, double memory, double r, double fl) noexcept {
  return position + r * fl * (memory - position);
}

/// Crow search over the (x, y) components of the given starting states.
/// Memories start at the inputs with fitness `start_fitness`. Each iteration
/// every crow draws r ~ U(0,1) and a peer; r >= ap moves it toward the peer's
/// memory, otherwise it takes a Gaussian step. Moves use the memories of the
/// previous iteration; memories update greedily in crow order when fitness rises by more than
/// min_gain. Velocity, rotation and scale of each crow are carried over unchanged.
CsoResult cso_resample(std::span<const ParticleState> starts, std::span<const double> start_fitness,
                       const BatchFitness& fitness, const CsoParams& params, RandomStream& rng, FrameDims dims);

/// Same, evaluating the starting fitness first.
CsoResult cso_resample(std::span<const ParticleState> starts, const BatchFitness& fitness,
                       const CsoParams& params, RandomStream& rng, FrameDims dims);

}  // namespace crowtrack
