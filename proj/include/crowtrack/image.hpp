#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace crowtrack {

/// Row-major 8-bit RGB image. Used both for whole video frames and for patches.
struct Frame {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // width * height * 3

  Frame() = default;
  Frame(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}

  bool empty() const noexcept { return width <= 0 || height <= 0; }

  std::size_t offset(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * width + x) * 3;
  }
  const std::uint8_t* at(int x, int y) const noexcept { return pixels.data() + offset(x, y); }
  std::uint8_t* at(int x, int y) noexcept { return pixels.data() + offset(x, y); }

  void set(int x, int y, std::array<std::uint8_t, 3> rgb) noexcept {
    std::uint8_t* p = at(x, y);
    p[0] = rgb[0];
    p[1] = rgb[1];
    p[2] = rgb[2];
  }

  bool operator==(const Frame&) const = default;
};

struct FrameDims {
  int width = 0;
  int height = 0;
};

/// Axis-aligned box, top-left origin.
struct Box {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double cx() const noexcept { return x + 0.5 * w; }
  double cy() const noexcept { return y + 0.5 * h; }
  double area() const noexcept { return w * h; }

  static Box from_center(double cx, double cy, double w, double h) noexcept {
    return Box{cx - 0.5 * w, cy - 0.5 * h, w, h};
  }

  bool operator==(const Box&) const = default;
};

}  // namespace crowtrack
