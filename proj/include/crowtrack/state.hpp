#pragma once

#include <cstdint>
#include <vector>

#include "crowtrack/image.hpp"
#include "crowtrack/rng.hpp"

namespace crowtrack {

/// One target hypothesis: box center, velocity, in-plane rotation and scale.
struct ParticleState {
  double x = 0.0;      // px, box center
  double y = 0.0;      // px
  double vx = 0.0;     // px/frame
  double vy = 0.0;     // px/frame
  double rot = 0.0;    // rad
  double scale = 1.0;  // multiplier on the base box size

  bool operator==(const ParticleState&) const = default;
};

struct Particle {
  ParticleState state;
  double weight = 0.0;       // fused weight of the current frame
  double gamma_c = 0.0;      // reliability-discounted color likelihood
  double gamma_t = 0.0;      // reliability-discounted texture likelihood
  double prev_weight = 0.0;  // fused weight of the previous frame

  bool operator==(const Particle&) const = default;
};

struct ParticleSet {
  std::vector<Particle> particles;
  double base_w = 0.0;
  double base_h = 0.0;
  bool has_history = false;  // weights hold fused values from a previous step

  std::size_t size() const noexcept { return particles.size(); }
  bool operator==(const ParticleSet&) const = default;
};

struct NoiseParams {
  double sigma_pos = 4.0;
  double sigma_vel = 1.0;
  double sigma_rot = 0.03;
  double sigma_scale = 0.02;
  double scale_floor = 0.1;
};

/// Spreads n particles around the center of `box` with positional jitter
/// sigma_pos. Throws InitializationError for an empty box or n == 0.
ParticleSet init_particles(const Box& box, int n, const NoiseParams& noise, RandomStream& rng);

/// Constant velocity on position, random walk on velocity, rotation and scale.
/// The resulting position is clamped into [0, width) x [0, height).
ParticleState transition(const ParticleState& s, const NoiseParams& noise, RandomStream& rng, FrameDims dims);

/// Clamps (x, y) into the frame.
void clamp_to_frame(ParticleState& s, FrameDims dims) noexcept;

/// Axis-aligned box reported for a state.
Box state_box(const ParticleState& s, double base_w, double base_h) noexcept;

}  // namespace crowtrack
