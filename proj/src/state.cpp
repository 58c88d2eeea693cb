#include "crowtrack/state.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "crowtrack/errors.hpp"

namespace crowtrack {
namespace {

double gauss(RandomStream& rng, double sigma) {
  std::normal_distribution<double> n01(0.0, 1.0);
  return sigma * n01(rng);
}

}  // namespace

ParticleSet init_particles(const Box& box, int n, const NoiseParams& noise, RandomStream& rng) {
  if (n < 1) throw InitializationError("particle count must be >= 1, got " + std::to_string(n));
  if (!(box.w > 0.0) || !(box.h > 0.0)) {
    throw InitializationError("initial box has zero area (" + std::to_string(box.w) + "x" +
                              std::to_string(box.h) + ")");
  }
  ParticleSet set;
  set.base_w = box.w;
  set.base_h = box.h;
  set.particles.resize(static_cast<std::size_t>(n));
  const double w0 = 1.0 / n;
  for (Particle& p : set.particles) {
    p.state.x = box.cx() + gauss(rng, noise.sigma_pos);
    p.state.y = box.cy() + gauss(rng, noise.sigma_pos);
    p.weight = w0;
    p.prev_weight = w0;
  }
  return set;
}

void clamp_to_frame(ParticleState& s, FrameDims dims) noexcept {
  s.x = std::clamp(s.x, 0.0, static_cast<double>(std::max(dims.width - 1, 0)));
  s.y = std::clamp(s.y, 0.0, static_cast<double>(std::max(dims.height - 1, 0)));
}

ParticleState transition(const ParticleState& s, const NoiseParams& noise, RandomStream& rng, FrameDims dims) {
  ParticleState out;
  // Draw order is fixed so a stream reproduces the same state bit for bit.
  const double ex = gauss(rng, noise.sigma_pos);
  const double ey = gauss(rng, noise.sigma_pos);
  const double evx = gauss(rng, noise.sigma_vel);
  const double evy = gauss(rng, noise.sigma_vel);
  const double erot = gauss(rng, noise.sigma_rot);
  const double escale = gauss(rng, noise.sigma_scale);

  out.x = s.x + s.vx + ex;
  out.y = s.y + s.vy + ey;
  out.vx = s.vx + evx;
  out.vy = s.vy + evy;
  out.rot = s.rot + erot;
  out.scale = std::max(s.scale + escale, noise.scale_floor);
  clamp_to_frame(out, dims);
  return out;
}

Box state_box(const ParticleState& s, double base_w, double base_h) noexcept {
  return Box::from_center(s.x, s.y, s.scale * base_w, s.scale * base_h);
}

}  // namespace crowtrack
