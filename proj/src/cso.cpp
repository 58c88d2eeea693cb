#include "crowtrack/cso.hpp"

#include <random>
#include <string>

#include "crowtrack/errors.hpp"

namespace crowtrack {

void CsoParams::validate() const {
  if (!(fl > 0.0)) throw ContractViolation("flight length must be positive");
  if (!(ap >= 0.0 && ap <= 1.0)) throw ContractViolation("awareness probability must lie in [0, 1]");
  if (iters < 1) throw ContractViolation("CSO needs at least one iteration");
  if (!(redistribute_sigma >= 0.0)) throw ContractViolation("redistribute_sigma must be >= 0");
  if (!(min_gain >= 0.0)) throw ContractViolation("min_gain must be >= 0");
}

Partition classify(std::span<const double> scores, double threshold) {
  Partition part;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    (scores[i] <= threshold ? part.outliers : part.inliers).push_back(i);
  }
  return part;
}

CsoResult cso_resample(std::span<const ParticleState> starts, std::span<const double> start_fitness,
                       const BatchFitness& fitness, const CsoParams& params, RandomStream& rng, FrameDims dims) {
  params.validate();
  if (starts.size() != start_fitness.size()) {
    throw ContractViolation("CSO got " + std::to_string(starts.size()) + " states but " +
                            std::to_string(start_fitness.size()) + " fitness values");
  }
  CsoResult result;
  const std::size_t n = starts.size();
  if (n == 0) return result;

  result.memories.reserve(n);
  for (std::size_t c = 0; c < n; ++c) result.memories.push_back({starts[c], start_fitness[c]});
  std::vector<ParticleState> positions(starts.begin(), starts.end());
  result.memory_history.reserve(static_cast<std::size_t>(params.iters));

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> n01(0.0, 1.0);

  for (int j = 0; j < params.iters; ++j) {
    for (std::size_t c = 0; c < n; ++c) {
      const double r = unit(rng);
      // Peer is any other crow; a lone crow follows its own memory.
      std::size_t peer = c;
      if (n > 1) {
        peer = std::uniform_int_distribution<std::size_t>(0, n - 2)(rng);
        if (peer >= c) ++peer;
      }
      ParticleState& pos = positions[c];
      if (r >= params.ap) {
        const ParticleState& target = result.memories[peer].state;
        pos.x = follow_move(pos.x, target.x, r, params.fl);
        pos.y = follow_move(pos.y, target.y, r, params.fl);
      } else {
        pos.x += params.redistribute_sigma * n01(rng);
        pos.y += params.redistribute_sigma * n01(rng);
      }
      clamp_to_frame(pos, dims);
    }

    const std::vector<double> f = fitness(positions);
    if (f.size() != n) throw ContractViolation("fitness batch returned the wrong number of values");
    result.evaluations += n;

    std::vector<double> snapshot(n);
    for (std::size_t c = 0; c < n; ++c) {
      if (f[c] > result.memories[c].fitness + params.min_gain) result.memories[c] = {positions[c], f[c]};
      snapshot[c] = result.memories[c].fitness;
    }
    result.memory_history.push_back(std::move(snapshot));
  }
  return result;
}

CsoResult cso_resample(std::span<const ParticleState> starts, const BatchFitness& fitness,
                       const CsoParams& params, RandomStream& rng, FrameDims dims) {
  const std::vector<double> f0 = starts.empty() ? std::vector<double>{} : fitness(starts);
  CsoResult r = cso_resample(starts, f0, fitness, params, rng, dims);
  r.evaluations += starts.size();
  return r;
}

}  // namespace crowtrack
