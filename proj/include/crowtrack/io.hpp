#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crowtrack/eval.hpp"
#include "crowtrack/image.hpp"
#include "crowtrack/tracker.hpp"

namespace crowtrack {

namespace fs = std::filesystem;

/// Decodes a PNG/JPEG to 8-bit RGB. Throws IoError naming the file.
Frame read_image(const fs::path& path);
void write_png(const fs::path& path, const Frame& frame);

/// Image files (png, jpg, jpeg) of a directory in lexicographic order.
std::vector<fs::path> list_frames(const fs::path& dir);

/// Parses "x,y,w,h" rows (comma, tab or space separated). A non-numeric
/// first line is taken as a header. Throws IoError with the line number.
std::vector<Box> parse_boxes(std::istream& in);
std::vector<Box> read_boxes(const fs::path& path);

/// Parses "frame,x,y,w,h" rows; header optional. Rows are returned in file order.
std::vector<Box> parse_trajectory(std::istream& in);
std::vector<Box> read_trajectory(const fs::path& path);

void write_trajectory(std::ostream& out, const std::vector<Box>& boxes);
void write_trajectory(const fs::path& path, const std::vector<Box>& boxes);

struct SequenceSpec {
  fs::path frames_dir;
  fs::path gt_path;  // may be empty
  std::string name;
};

struct Sequence {
  std::string name;
  std::vector<fs::path> frame_paths;
  std::vector<Box> truth;  // empty if no ground truth was given

  /// Lazily decoding frame source.
  FrameSource source() const;
};

/// Lists frames and parses ground truth without decoding images. Throws
/// IoError on a frame / ground-truth count mismatch.
Sequence open_sequence(const SequenceSpec& spec);

/// Decoded frames paired with ground truth.
struct LoadedSequence {
  std::vector<Frame> frames;
  std::vector<Box> truth;
};
LoadedSequence load_sequence(const SequenceSpec& spec);

/// Flat JSON object of TrackerConfig keys. Missing keys keep `base`;
/// unknown keys throw ContractViolation.
TrackerConfig config_from_json(const nlohmann::json& j, TrackerConfig base = {});
nlohmann::json config_to_json(const TrackerConfig& c);
TrackerConfig read_config(const fs::path& path, TrackerConfig base = {});

/// Synthetic sequence: a checkerboard target on a noisy background.
struct SynthSpec {
  int frames = 100;
  int width = 320;
  int height = 240;
  int target_w = 40;
  int target_h = 40;
  double x0 = 60;  // top-left of the target in frame 1
  double y0 = 60;
  double vx = 2;
  double vy = 1;
  int jitter = 0;  // max per-frame offset, px
  bool occluder = false;
  int occluder_first = 40;  // 1-based frame numbers, inclusive
  int occluder_last = 50;
  int cell = 8;  // checker cell size
  std::string name = "synth";
};

/// Target box of frame k (1-based) before jitter.
Box synth_nominal_box(const SynthSpec& spec, int k);

/// Renders one frame and its exact ground truth (in memory).
struct SynthFrame {
  Frame frame;
  Box truth;
};
std::vector<SynthFrame> render_synth(const SynthSpec& spec, std::uint64_t seed);

/// Writes frame_0001.png... and groundtruth.txt into out_dir.
SequenceSpec synth_sequence(const SynthSpec& spec, const fs::path& out_dir, std::uint64_t seed);

/// Minimal line plot of a curve.
void write_curve_svg(const fs::path& path, const Curve& curve, const std::string& title, const std::string& x_label,
                     const std::string& y_label);

void write_curve_csv(const fs::path& path, const Curve& curve);

}  // namespace crowtrack
