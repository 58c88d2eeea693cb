#pragma once

#include <span>
#include <vector>

#include "crowtrack/image.hpp"
#include "crowtrack/state.hpp"

namespace crowtrack {

/// Normalized joint RGB histogram with bins_per_channel^3 bins.
struct ColorHistogram {
  int bins_per_channel = 0;
  std::vector<double> bins;
};

/// Normalized rotation-invariant uniform LBP histogram: codes 0..p uniform, p+1 non-uniform.
struct LbpHistogram {
  int neighbors = 0;
  std::vector<double> bins;
};

/// Reference appearance captured at initialization.
struct AppearanceModel {
  ColorHistogram ref_color;
  LbpHistogram ref_texture;
};

struct FeatureParams {
  int bins_per_channel = 8;
  int lbp_p = 8;
  int lbp_z = 1;
  double sigma_c = 0.1;
  double sigma_t = 0.1;
};

/// Samples the (scale*base_w) x (scale*base_h) patch centred on (x, y), with the
/// sampling grid rotated by `rot`. Nearest-neighbour lookup; outside samples
/// take the nearest edge pixel. Throws DegeneratePatchError below 2x2.
Frame extract_patch(const Frame& frame, const ParticleState& state, double base_w, double base_h);

ColorHistogram color_histogram(const Frame& patch, int bins_per_channel);

/// riu2 LBP with p neighbours at radius z, bilinear sampling of the circle.
LbpHistogram lbp_histogram(const Frame& patch, int p, int z);

/// Bhattacharyya coefficient sum_r sqrt(h1_r * h2_r). Throws ContractViolation on size mismatch.
double bhattacharyya_coeff(std::span<const double> h1, std::span<const double> h2);

/// sqrt(1 - coeff), with the coefficient clipped to [0, 1] against rounding.
double bhattacharyya_distance(std::span<const double> h1, std::span<const double> h2);

/// exp(-bd^2 / (2 sigma^2)); equals 1 at bd = 0.
double likelihood(double bd, double sigma);

AppearanceModel build_appearance(const Frame& patch, const FeatureParams& params);

/// Grey level used by the texture cue.
inline int luma(const std::uint8_t* rgb) noexcept {
  return static_cast<int>(0.299 * rgb[0] + 0.587 * rgb[1] + 0.114 * rgb[2] + 0.5);
}

}  // namespace crowtrack
