#include "crowtrack/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "crowtrack/errors.hpp"

namespace crowtrack {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ContractViolation("invalid tracker config: " + what);
}

template <typename WeightOf>
ParticleState weighted_mean(const ParticleSet& set, WeightOf weight_of, double total) {
  ParticleState m{0, 0, 0, 0, 0, 0};
  for (const Particle& p : set.particles) {
    const double w = weight_of(p) / total;
    m.x += w * p.state.x;
    m.y += w * p.state.y;
    m.vx += w * p.state.vx;
    m.vy += w * p.state.vy;
    m.rot += w * p.state.rot;
    m.scale += w * p.state.scale;
  }
  return m;
}

template <typename WeightOf>
ParticleState cue_mean(const ParticleSet& set, WeightOf weight_of, const char* cue) {
  double total = 0.0;
  for (const Particle& p : set.particles) total += weight_of(p);
  if (total > 0.0) return weighted_mean(set, weight_of, total);
  std::clog << "warning: all " << cue << " likelihoods vanished, using uniform weights\n";
  return weighted_mean(set, [](const Particle&) { return 1.0; }, static_cast<double>(set.size()));
}

}  // namespace

void TrackerConfig::validate() const {
  require(n_particles >= 1, "n_particles must be >= 1");
  require(features.bins_per_channel >= 1 && features.bins_per_channel <= 256, "bins_per_channel must be in [1, 256]");
  require(features.lbp_p >= 4, "lbp_p must be >= 4");
  require(features.lbp_z >= 1, "lbp_z must be >= 1");
  require(features.sigma_c > 0 && features.sigma_t > 0, "sigma_c and sigma_t must be positive");
  require(noise.sigma_pos >= 0 && noise.sigma_vel >= 0 && noise.sigma_rot >= 0 && noise.sigma_scale >= 0,
          "noise sigmas must be >= 0");
  require(noise.scale_floor > 0, "scale_floor must be positive");
  require(kappa_th > 0 && kappa_th < 1, "kappa_th must be in (0, 1)");
  require(reliability_floor > 0 && reliability_floor <= 1, "reliability_floor must be in (0, 1]");
  require(runs >= 1, "runs must be >= 1");
  try {
    cso.validate();
  } catch (const ContractViolation& e) {
    require(false, e.what());
  }
}

std::vector<Box> TrackRecord::boxes() const {
  std::vector<Box> out;
  out.reserve(frames.size());
  for (const FrameRecord& f : frames) out.push_back(f.box);
  return out;
}

ParticleState estimate_state(const ParticleSet& particles) {
  double total = 0.0;
  for (const Particle& p : particles.particles) total += p.weight;
  if (!(total > 0.0)) throw ContractViolation("estimate_state: fused weights sum to zero");
  return weighted_mean(particles, [](const Particle& p) { return p.weight; }, total);
}

std::pair<ParticleState, ParticleState> cue_states(const ParticleSet& particles) {
  if (particles.particles.empty()) throw ContractViolation("cue_states: empty particle set");
  return {cue_mean(particles, [](const Particle& p) { return p.gamma_c; }, "colour"),
          cue_mean(particles, [](const Particle& p) { return p.gamma_t; }, "texture")};
}

Reliabilities update_reliability(const ParticleState& fused, const ParticleState& colour,
                                 const ParticleState& texture, double norm, double floor) {
  if (!(norm > 0.0)) throw ContractViolation("reliability normalizer must be positive");
  const double d_c = std::hypot(fused.x - colour.x, fused.y - colour.y);
  const double d_t = std::hypot(fused.x - texture.x, fused.y - texture.y);
  return {std::max(std::exp(-d_c / norm), floor), std::max(std::exp(-d_t / norm), floor)};
}

StepOutput track_step(const Frame& frame, const ParticleSet& particles, const AppearanceModel& model,
                      const Reliabilities& rel, const FuzzyEngine& engine, const TrackerConfig& config,
                      std::uint64_t frame_index) {
  const FrameDims dims{frame.width, frame.height};
  const std::size_t n = particles.size();
  if (n == 0) throw ContractViolation("track_step: empty particle set");

  std::vector<ParticleState> current;
  current.reserve(n);
  for (const Particle& p : particles.particles) current.push_back(p.state);

  StepOutput out;
  out.predicted = propagate(current, config.noise, config.seed, frame_index, dims, config.execution);

  auto score = [&](std::span<const ParticleState> states) {
    return evaluate_cues(frame, states, particles.base_w, particles.base_h, model, config.features,
                         config.execution);
  };

  const std::vector<CueLikelihood> cues = score(out.predicted);
  out.evaluations += n;
  if (std::none_of(cues.begin(), cues.end(), [](const CueLikelihood& c) { return c.valid; })) {
    throw TrackingFailure("frame " + std::to_string(frame_index) + ": every particle patch is degenerate");
  }

  ParticleSet next;
  next.base_w = particles.base_w;
  next.base_h = particles.base_h;
  next.has_history = true;
  next.particles.resize(n);
  out.scores.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Particle& p = next.particles[i];
    p.state = out.predicted[i];
    p.gamma_c = discount(cues[i].alpha_c, rel.r_c);
    p.gamma_t = discount(cues[i].alpha_t, rel.r_t);
    p.weight = engine.fuse(p.gamma_c, p.gamma_t);
    p.prev_weight = particles.has_history ? particles.particles[i].weight : p.weight;
    out.scores[i] = engine.temporal_score(p.weight, p.prev_weight);
  }

  out.partition = classify(out.scores, config.kappa_th);

  if (!out.partition.outliers.empty()) {
    std::vector<ParticleState> starts;
    std::vector<double> start_fitness;
    for (std::size_t idx : out.partition.outliers) {
      starts.push_back(next.particles[idx].state);
      start_fitness.push_back(next.particles[idx].weight);
    }
    BatchFitness fitness = [&](std::span<const ParticleState> states) {
      const std::vector<CueLikelihood> c = score(states);
      std::vector<double> f(c.size());
      for (std::size_t k = 0; k < c.size(); ++k) {
        f[k] = engine.fuse(discount(c[k].alpha_c, rel.r_c), discount(c[k].alpha_t, rel.r_t));
      }
      return f;
    };
    RandomStream rng = make_stream(config.seed, {tag(StreamTag::cso), frame_index});
    const CsoResult cso = cso_resample(starts, start_fitness, fitness, config.cso, rng, dims);
    out.evaluations += cso.evaluations;

    // Relocated outliers get their weights and cue scores re-obtained at the new position.
    std::vector<ParticleState> relocated;
    relocated.reserve(cso.memories.size());
    for (const CrowMemory& m : cso.memories) relocated.push_back(m.state);
    const std::vector<CueLikelihood> fresh = score(relocated);
    out.evaluations += relocated.size();
    for (std::size_t k = 0; k < relocated.size(); ++k) {
      Particle& p = next.particles[out.partition.outliers[k]];
      p.state = relocated[k];
      p.gamma_c = discount(fresh[k].alpha_c, rel.r_c);
      p.gamma_t = discount(fresh[k].alpha_t, rel.r_t);
      p.weight = engine.fuse(p.gamma_c, p.gamma_t);
    }
  }

  out.estimate = estimate_state(next);
  std::tie(out.colour_state, out.texture_state) = cue_states(next);
  const double norm = std::hypot(particles.base_w, particles.base_h);
  out.reliabilities =
      update_reliability(out.estimate, out.colour_state, out.texture_state, norm, config.reliability_floor);
  out.particles = std::move(next);
  return out;
}

Tracker::Tracker(TrackerConfig config, std::uint64_t seed) : config_(std::move(config)), seed_(seed) {
  config_.seed = seed;
  config_.validate();
}

FrameRecord Tracker::initialize(const Frame& first, const Box& init_box) {
  if (first.empty()) throw InitializationError("first frame is empty");
  const double cx = init_box.cx();
  const double cy = init_box.cy();
  if (!(cx >= 0 && cx < first.width && cy >= 0 && cy < first.height)) {
    throw InitializationError("initial box centre lies outside the first frame");
  }
  RandomStream rng = make_stream(seed_, {tag(StreamTag::init)});
  particles_ = init_particles(init_box, config_.n_particles, config_.noise, rng);
  ParticleState centre;
  centre.x = cx;
  centre.y = cy;
  try {
    model_ = build_appearance(extract_patch(first, centre, init_box.w, init_box.h), config_.features);
  } catch (const DegeneratePatchError& e) {
    throw InitializationError(std::string("initial box too small for the appearance model: ") + e.what());
  }
  rel_ = Reliabilities{};
  frame_index_ = 0;
  last_ = StepOutput{};
  last_record_ = FrameRecord{};
  last_record_.box = init_box;
  last_record_.estimate = centre;
  last_record_.reliabilities = rel_;
  const double w0 = 1.0 / config_.n_particles;
  last_record_.mean_weight = last_record_.min_weight = last_record_.max_weight = w0;
  return last_record_;
}

FrameRecord Tracker::step(const Frame& frame) {
  ++frame_index_;
  FrameRecord rec;
  try {
    last_ = track_step(frame, particles_, model_, rel_, engine_, config_, frame_index_);
  } catch (const TrackingFailure& e) {
    std::clog << "warning: " << e.what() << "\n";
    rec = last_record_;
    rec.failed = true;
    rec.outliers = 0;
    last_record_ = rec;
    return rec;
  }
  particles_ = last_.particles;
  rel_ = last_.reliabilities;

  rec.estimate = last_.estimate;
  rec.box = state_box(last_.estimate, particles_.base_w, particles_.base_h);
  double sum = 0.0;
  rec.min_weight = particles_.particles.front().weight;
  rec.max_weight = rec.min_weight;
  for (const Particle& p : particles_.particles) {
    sum += p.weight;
    rec.min_weight = std::min(rec.min_weight, p.weight);
    rec.max_weight = std::max(rec.max_weight, p.weight);
  }
  rec.mean_weight = sum / static_cast<double>(particles_.size());
  rec.outliers = last_.partition.outliers.size();
  rec.reliabilities = rel_;
  last_record_ = rec;
  return rec;
}

FrameSource frames_from(std::span<const Frame> frames) {
  return FrameSource{frames.size(), [frames](std::size_t i) { return frames[i]; }};
}

std::uint64_t run_seed(std::uint64_t master, std::size_t run) {
  return derive_seed(master, {tag(StreamTag::run), run});
}

namespace {

Frame load_frame(const FrameSource& frames, std::size_t i) {
  try {
    return frames.load(i);
  } catch (const IoError& e) {
    throw IoError("frame " + std::to_string(i) + ": " + e.what());
  }
}

}  // namespace

TrackRecord run(const FrameSource& frames, const Box& init_box, const TrackerConfig& config, std::uint64_t seed) {
  if (frames.count == 0) throw InitializationError("sequence has no frames");
  Tracker tracker(config, seed);
  TrackRecord record;
  record.frames.reserve(frames.count);
  record.frames.push_back(tracker.initialize(load_frame(frames, 0), init_box));
  for (std::size_t k = 1; k < frames.count; ++k) record.frames.push_back(tracker.step(load_frame(frames, k)));
  return record;
}

MultiRunRecord run_multi(const FrameSource& frames, const Box& init_box, const TrackerConfig& config) {
  if (frames.count == 0) throw InitializationError("sequence has no frames");
  config.validate();
  const auto runs = static_cast<std::size_t>(config.runs);
  MultiRunRecord out;
  std::vector<Tracker> trackers;
  trackers.reserve(runs);
  for (std::size_t r = 0; r < runs; ++r) {
    out.seeds.push_back(run_seed(config.seed, r));
    trackers.emplace_back(config, out.seeds.back());
  }
  out.runs.resize(runs);

  for (std::size_t k = 0; k < frames.count; ++k) {
    const Frame frame = load_frame(frames, k);
    Box mean{0, 0, 0, 0};
    for (std::size_t r = 0; r < runs; ++r) {
      FrameRecord rec = k == 0 ? trackers[r].initialize(frame, init_box) : trackers[r].step(frame);
      mean.x += rec.box.x / runs;
      mean.y += rec.box.y / runs;
      mean.w += rec.box.w / runs;
      mean.h += rec.box.h / runs;
      out.runs[r].frames.push_back(std::move(rec));
    }
    out.mean_boxes.push_back(mean);
  }
  return out;
}

}  // namespace crowtrack
