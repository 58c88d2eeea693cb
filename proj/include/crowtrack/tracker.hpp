#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "crowtrack/cso.hpp"
#include "crowtrack/features.hpp"
#include "crowtrack/fuzzy.hpp"
#include "crowtrack/image.hpp"
#include "crowtrack/kernels.hpp"
#include "crowtrack/state.hpp"

namespace crowtrack {

struct TrackerConfig {
  int n_particles = 49;
  FeatureParams features;
  NoiseParams noise;
  double kappa_th = 0.4;
  CsoParams cso;
  double reliability_floor = 1e-3;
  int runs = 10;
  std::uint64_t seed = 0;
  Execution execution = Execution::parallel;

  /// Throws ContractViolation naming the first field outside its domain.
  void validate() const;
};

/// Per-cue trust factors, both in [floor, 1].
struct Reliabilities {
  double r_c = 1.0;
  double r_t = 1.0;

  bool operator==(const Reliabilities&) const = default;
};

struct FrameRecord {
  Box box;
  ParticleState estimate;
  double mean_weight = 0.0;
  double min_weight = 0.0;
  double max_weight = 0.0;
  std::size_t outliers = 0;
  Reliabilities reliabilities;
  bool failed = false;  // no estimate this frame; box carried over

  bool operator==(const FrameRecord&) const = default;
};

struct TrackRecord {
  std::vector<FrameRecord> frames;

  std::vector<Box> boxes() const;
  bool operator==(const TrackRecord&) const = default;
};

/// Output of one tracking step, plus what is needed to audit it.
struct StepOutput {
  ParticleState estimate;
  ParticleSet particles;
  Reliabilities reliabilities;

  std::vector<ParticleState> predicted;  // after transition, before resampling
  std::vector<double> scores;            // temporal score per particle
  Partition partition;
  ParticleState colour_state;
  ParticleState texture_state;
  std::size_t evaluations = 0;  // multicue evaluations spent this step
};

/// Weighted mean of all particle states using their fused weights.
ParticleState estimate_state(const ParticleSet& particles);

/// Weighted means using the discounted colour and texture likelihoods.
/// A cue whose likelihoods all vanished falls back to uniform weights.
std::pair<ParticleState, ParticleState> cue_states(const ParticleSet& particles);

/// r = exp(-d / norm) for each cue, d the planar distance of the cue's state
/// from the fused one, clamped below at `floor`.
Reliabilities update_reliability(const ParticleState& fused, const ParticleState& colour,
                                 const ParticleState& texture, double norm, double floor = 1e-3);

/// One predict / evaluate / fuse / classify / resample / estimate cycle.
/// `frame_index` keys the random sub-streams. Throws TrackingFailure when no
/// particle yields a usable patch.
StepOutput track_step(const Frame& frame, const ParticleSet& particles, const AppearanceModel& model,
                      const Reliabilities& rel, const FuzzyEngine& engine, const TrackerConfig& config,
                      std::uint64_t frame_index);

/// Stateful single-run tracker.
class Tracker {
 public:
  Tracker(TrackerConfig config, std::uint64_t seed);

  FrameRecord initialize(const Frame& first, const Box& init_box);
  /// Tracks the next frame. A TrackingFailure is absorbed: the previous
  /// estimate is carried over and the record is flagged.
  FrameRecord step(const Frame& frame);

  const ParticleSet& particles() const noexcept { return particles_; }
  const Reliabilities& reliabilities() const noexcept { return rel_; }
  const AppearanceModel& model() const noexcept { return model_; }
  const StepOutput& last_step() const noexcept { return last_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  TrackerConfig config_;
  std::uint64_t seed_;
  FuzzyEngine engine_;
  AppearanceModel model_;
  ParticleSet particles_;
  Reliabilities rel_;
  FrameRecord last_record_;
  StepOutput last_;
  std::uint64_t frame_index_ = 0;
};

/// Random-access frame supply; load(i) may throw IoError.
struct FrameSource {
  std::size_t count = 0;
  std::function<Frame(std::size_t)> load;
};

FrameSource frames_from(std::span<const Frame> frames);

struct MultiRunRecord {
  std::vector<TrackRecord> runs;
  std::vector<std::uint64_t> seeds;
  std::vector<Box> mean_boxes;  // per-frame mean over runs
};

/// Seed of run r derived from the master seed.
std::uint64_t run_seed(std::uint64_t master, std::size_t run);

/// Single run with the given seed; frame 0 initializes from init_box.
TrackRecord run(const FrameSource& frames, const Box& init_box, const TrackerConfig& config, std::uint64_t seed);

/// config.runs independent runs stepped in lockstep so each frame is loaded once.
MultiRunRecord run_multi(const FrameSource& frames, const Box& init_box, const TrackerConfig& config);

}  // namespace crowtrack
