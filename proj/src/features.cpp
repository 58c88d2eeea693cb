#include "crowtrack/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "crowtrack/errors.hpp"

namespace crowtrack {
namespace {

void normalize(std::vector<double>& bins, double total) {
  for (double& b : bins) b /= total;
}

// Offsets this close to an integer are snapped so axis-aligned neighbours
// read exactly one pixel.
double snap(double v) {
  const double r = std::round(v);
  return std::abs(v - r) < 1e-9 ? r : v;
}

}  // namespace

Frame extract_patch(const Frame& frame, const ParticleState& state, double base_w, double base_h) {
  const int pw = static_cast<int>(std::lround(state.scale * base_w));
  const int ph = static_cast<int>(std::lround(state.scale * base_h));
  if (pw < 2 || ph < 2) {
    throw DegeneratePatchError("patch " + std::to_string(pw) + "x" + std::to_string(ph) + " is smaller than 2x2");
  }
  if (frame.empty()) throw DegeneratePatchError("source frame is empty");

  Frame patch(pw, ph);
  const double c = std::cos(state.rot);
  const double s = std::sin(state.rot);
  const double half_w = 0.5 * pw;
  const double half_h = 0.5 * ph;
  const int max_x = frame.width - 1;
  const int max_y = frame.height - 1;

  for (int j = 0; j < ph; ++j) {
    const double dy = j + 0.5 - half_h;
    for (int i = 0; i < pw; ++i) {
      const double dx = i + 0.5 - half_w;
      const double sx = state.x + c * dx - s * dy;
      const double sy = state.y + s * dx + c * dy;
      const int px = std::clamp(static_cast<int>(std::floor(sx)), 0, max_x);
      const int py = std::clamp(static_cast<int>(std::floor(sy)), 0, max_y);
      const std::uint8_t* src = frame.at(px, py);
      std::uint8_t* dst = patch.at(i, j);
      dst[0] = src[0];
      dst[1] = src[1];
      dst[2] = src[2];
    }
  }
  return patch;
}

ColorHistogram color_histogram(const Frame& patch, int bins_per_channel) {
  if (bins_per_channel < 1) throw ContractViolation("bins_per_channel must be >= 1");
  if (patch.empty()) throw DegeneratePatchError("color histogram of an empty patch");

  const int b = bins_per_channel;
  ColorHistogram h;
  h.bins_per_channel = b;
  h.bins.assign(static_cast<std::size_t>(b) * b * b, 0.0);
  const std::size_t n = static_cast<std::size_t>(patch.width) * patch.height;
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint8_t* px = patch.pixels.data() + 3 * k;
    const int r = px[0] * b / 256;
    const int g = px[1] * b / 256;
    const int bl = px[2] * b / 256;
    h.bins[static_cast<std::size_t>((r * b + g) * b + bl)] += 1.0;
  }
  normalize(h.bins, static_cast<double>(n));
  return h;
}

LbpHistogram lbp_histogram(const Frame& patch, int p, int z) {
  if (p < 4) throw ContractViolation("LBP needs at least 4 neighbours");
  if (z < 1) throw ContractViolation("LBP radius must be >= 1");
  const int w = patch.width;
  const int h = patch.height;
  if (w < 2 * z + 1 || h < 2 * z + 1) {
    throw DegeneratePatchError("patch " + std::to_string(w) + "x" + std::to_string(h) +
                               " too small for LBP radius " + std::to_string(z));
  }

  std::vector<double> gray(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) gray[static_cast<std::size_t>(y) * w + x] = luma(patch.at(x, y));
  auto g = [&](int x, int y) { return gray[static_cast<std::size_t>(y) * w + x]; };

  struct Offset {
    int ix, iy;      // integer part
    double fx, fy;   // fractional part
  };
  std::vector<Offset> ring(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) {
    const double a = 2.0 * std::numbers::pi * j / p;
    const double dx = snap(z * std::cos(a));
    const double dy = snap(-z * std::sin(a));
    const double fdx = std::floor(dx);
    const double fdy = std::floor(dy);
    ring[j] = {static_cast<int>(fdx), static_cast<int>(fdy), dx - fdx, dy - fdy};
  }

  LbpHistogram hist;
  hist.neighbors = p;
  hist.bins.assign(static_cast<std::size_t>(p) + 2, 0.0);
  std::vector<int> sign(static_cast<std::size_t>(p));
  double count = 0.0;

  for (int y = z; y < h - z; ++y) {
    for (int x = z; x < w - z; ++x) {
      const double center = g(x, y);
      for (int j = 0; j < p; ++j) {
        const Offset& o = ring[j];
        const int x0 = x + o.ix;
        const int y0 = y + o.iy;
        const int x1 = std::min(x0 + 1, w - 1);
        const int y1 = std::min(y0 + 1, h - 1);
        // Written as lerps so a flat neighbourhood interpolates to exactly the centre value.
        const double top = g(x0, y0) + o.fx * (g(x1, y0) - g(x0, y0));
        const double bottom = g(x0, y1) + o.fx * (g(x1, y1) - g(x0, y1));
        const double v = top + o.fy * (bottom - top);
        sign[j] = v - center >= 0.0 ? 1 : 0;
      }
      int transitions = std::abs(sign[p - 1] - sign[0]);
      int ones = sign[0];
      for (int j = 1; j < p; ++j) {
        transitions += std::abs(sign[j] - sign[j - 1]);
        ones += sign[j];
      }
      const int code = transitions <= 2 ? ones : p + 1;
      hist.bins[static_cast<std::size_t>(code)] += 1.0;
      count += 1.0;
    }
  }
  normalize(hist.bins, count);
  return hist;
}

double bhattacharyya_coeff(std::span<const double> h1, std::span<const double> h2) {
  if (h1.size() != h2.size()) {
    throw ContractViolation("histogram sizes differ: " + std::to_string(h1.size()) + " vs " +
                            std::to_string(h2.size()));
  }
  double sum = 0.0;
  for (std::size_t r = 0; r < h1.size(); ++r) sum += std::sqrt(h1[r] * h2[r]);
  return sum;
}

double bhattacharyya_distance(std::span<const double> h1, std::span<const double> h2) {
  const double beta = std::clamp(bhattacharyya_coeff(h1, h2), 0.0, 1.0);
  return std::sqrt(1.0 - beta);
}

double likelihood(double bd, double sigma) {
  if (!(sigma > 0.0)) throw ContractViolation("likelihood sigma must be positive");
  return std::exp(-(bd * bd) / (2.0 * sigma * sigma));
}

AppearanceModel build_appearance(const Frame& patch, const FeatureParams& params) {
  return AppearanceModel{color_histogram(patch, params.bins_per_channel),
                         lbp_histogram(patch, params.lbp_p, params.lbp_z)};
}

}  // namespace crowtrack
