#include "crowtrack/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "crowtrack/errors.hpp"

namespace crowtrack {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Splits on commas, tabs, semicolons and spaces; empty fields are dropped.
std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',' || ch == '\t' || ch == ' ' || ch == ';') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::optional<double> to_number(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// Reads rows of `width` numeric fields; the last four become the box.
std::vector<Box> parse_rows(std::istream& in, std::size_t width, const char* what) {
  std::vector<Box> boxes;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto fields = split_fields(t);
    std::vector<double> values;
    bool numeric = fields.size() == width;
    for (const auto& f : fields) {
      const auto v = to_number(f);
      if (!v) {
        numeric = false;
        break;
      }
      values.push_back(*v);
    }
    if (!numeric) {
      const bool header = first && !fields.empty() && !to_number(fields.front());
      if (header) {
        first = false;
        continue;
      }
      throw IoError(std::string("malformed ") + what + " line " + std::to_string(lineno) + ": \"" + t +
                    "\" (expected " + std::to_string(width) + " numbers)");
    }
    first = false;
    const std::size_t o = width - 4;
    boxes.push_back(Box{values[o], values[o + 1], values[o + 2], values[o + 3]});
  }
  return boxes;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::array<std::uint8_t, 3> noisy(std::array<int, 3> base, int amp, RandomStream& rng) {
  std::uniform_int_distribution<int> d(-amp, amp);
  std::array<std::uint8_t, 3> px{};
  for (int c = 0; c < 3; ++c) px[c] = static_cast<std::uint8_t>(std::clamp(base[c] + d(rng), 0, 255));
  return px;
}

}  // namespace

Frame read_image(const fs::path& path) {
  cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (bgr.empty()) throw IoError("cannot decode image " + path.string());
  Frame f(bgr.cols, bgr.rows);
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x) f.set(x, y, {row[x][2], row[x][1], row[x][0]});
  }
  return f;
}

void write_png(const fs::path& path, const Frame& frame) {
  cv::Mat bgr(frame.height, frame.width, CV_8UC3);
  for (int y = 0; y < frame.height; ++y) {
    auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < frame.width; ++x) {
      const std::uint8_t* p = frame.at(x, y);
      row[x] = cv::Vec3b(p[2], p[1], p[0]);
    }
  }
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), bgr);
  } catch (const cv::Exception&) {
    ok = false;
  }
  if (!ok) throw IoError("cannot write image " + path.string());
}

std::vector<fs::path> list_frames(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const std::string ext = lower(e.path().extension().string());
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
  return out;
}

std::vector<Box> parse_boxes(std::istream& in) { return parse_rows(in, 4, "ground-truth"); }

std::vector<Box> read_boxes(const fs::path& path) {
  auto in = open_in(path);
  try {
    return parse_boxes(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

std::vector<Box> parse_trajectory(std::istream& in) { return parse_rows(in, 5, "trajectory"); }

std::vector<Box> read_trajectory(const fs::path& path) {
  auto in = open_in(path);
  try {
    return parse_trajectory(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_trajectory(std::ostream& out, const std::vector<Box>& boxes) {
  out << "frame,x,y,w,h\n";
  for (std::size_t k = 0; k < boxes.size(); ++k) {
    const Box& b = boxes[k];
    out << (k + 1) << ',' << fmt(b.x) << ',' << fmt(b.y) << ',' << fmt(b.w) << ',' << fmt(b.h) << '\n';
  }
}

void write_trajectory(const fs::path& path, const std::vector<Box>& boxes) {
  auto out = open_out(path);
  write_trajectory(out, boxes);
}

FrameSource Sequence::source() const {
  return FrameSource{frame_paths.size(), [paths = frame_paths](std::size_t i) { return read_image(paths.at(i)); }};
}

Sequence open_sequence(const SequenceSpec& spec) {
  Sequence seq;
  seq.name = spec.name;
  seq.frame_paths = list_frames(spec.frames_dir);
  if (seq.frame_paths.empty()) throw IoError("no PNG/JPEG frames in " + spec.frames_dir.string());
  if (!spec.gt_path.empty()) {
    seq.truth = read_boxes(spec.gt_path);
    if (seq.truth.size() != seq.frame_paths.size()) {
      throw IoError("frame/ground-truth count mismatch: " + std::to_string(seq.frame_paths.size()) + " frames, " +
                    std::to_string(seq.truth.size()) + " ground-truth lines");
    }
  }
  return seq;
}

LoadedSequence load_sequence(const SequenceSpec& spec) {
  const Sequence seq = open_sequence(spec);
  LoadedSequence out;
  out.truth = seq.truth;
  out.frames.reserve(seq.frame_paths.size());
  for (const auto& p : seq.frame_paths) out.frames.push_back(read_image(p));
  return out;
}

TrackerConfig config_from_json(const nlohmann::json& j, TrackerConfig c) {
  if (!j.is_object()) throw ContractViolation("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "n_particles") c.n_particles = v.get<int>();
      else if (key == "bins_per_channel") c.features.bins_per_channel = v.get<int>();
      else if (key == "lbp_p") c.features.lbp_p = v.get<int>();
      else if (key == "lbp_z") c.features.lbp_z = v.get<int>();
      else if (key == "sigma_c") c.features.sigma_c = v.get<double>();
      else if (key == "sigma_t") c.features.sigma_t = v.get<double>();
      else if (key == "kappa_th") c.kappa_th = v.get<double>();
      else if (key == "fl") c.cso.fl = v.get<double>();
      else if (key == "ap") c.cso.ap = v.get<double>();
      else if (key == "cso_iters") c.cso.iters = v.get<int>();
      else if (key == "redistribute_sigma") c.cso.redistribute_sigma = v.get<double>();
      else if (key == "cso_min_gain") c.cso.min_gain = v.get<double>();
      else if (key == "sigma_pos") c.noise.sigma_pos = v.get<double>();
      else if (key == "sigma_vel") c.noise.sigma_vel = v.get<double>();
      else if (key == "sigma_rot") c.noise.sigma_rot = v.get<double>();
      else if (key == "sigma_scale") c.noise.sigma_scale = v.get<double>();
      else if (key == "scale_floor") c.noise.scale_floor = v.get<double>();
      else if (key == "reliability_floor") c.reliability_floor = v.get<double>();
      else if (key == "runs") c.runs = v.get<int>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else throw ContractViolation("unknown config key \"" + key + "\"");
    } catch (const nlohmann::json::exception& e) {
      throw ContractViolation("config key \"" + key + "\": " + e.what());
    }
  }
  return c;
}

nlohmann::json config_to_json(const TrackerConfig& c) {
  return {
      {"n_particles", c.n_particles},
      {"bins_per_channel", c.features.bins_per_channel},
      {"lbp_p", c.features.lbp_p},
      {"lbp_z", c.features.lbp_z},
      {"sigma_c", c.features.sigma_c},
      {"sigma_t", c.features.sigma_t},
      {"kappa_th", c.kappa_th},
      {"fl", c.cso.fl},
      {"ap", c.cso.ap},
      {"cso_iters", c.cso.iters},
      {"redistribute_sigma", c.cso.redistribute_sigma},
      {"cso_min_gain", c.cso.min_gain},
      {"sigma_pos", c.noise.sigma_pos},
      {"sigma_vel", c.noise.sigma_vel},
      {"sigma_rot", c.noise.sigma_rot},
      {"sigma_scale", c.noise.sigma_scale},
      {"scale_floor", c.noise.scale_floor},
      {"reliability_floor", c.reliability_floor},
      {"runs", c.runs},
      {"seed", c.seed},
  };
}

TrackerConfig read_config(const fs::path& path, TrackerConfig base) {
  auto in = open_in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cannot parse config " + path.string() + ": " + e.what());
  }
  return config_from_json(j, std::move(base));
}

Box synth_nominal_box(const SynthSpec& spec, int k) {
  return Box{std::round(spec.x0 + spec.vx * (k - 1)), std::round(spec.y0 + spec.vy * (k - 1)),
             static_cast<double>(spec.target_w), static_cast<double>(spec.target_h)};
}

std::vector<SynthFrame> render_synth(const SynthSpec& spec, std::uint64_t seed) {
  if (spec.frames < 1 || spec.width < 8 || spec.height < 8 || spec.target_w < 4 || spec.target_h < 4 ||
      spec.cell < 1 || spec.jitter < 0) {
    throw ContractViolation("synthetic sequence parameters out of range");
  }
  RandomStream rng = make_stream(seed, {tag(StreamTag::synth)});
  std::uniform_int_distribution<int> jit(-spec.jitter, spec.jitter);

  const std::array<int, 3> background{48, 112, 144};
  const std::array<int, 3> checker_a{208, 48, 48};
  const std::array<int, 3> checker_b{240, 208, 80};
  const std::array<int, 3> bar{96, 96, 96};

  // The bar covers the target over the whole occluded span.
  const Box occ_a = synth_nominal_box(spec, spec.occluder_first);
  const Box occ_b = synth_nominal_box(spec, spec.occluder_last);
  const int bar_x0 = static_cast<int>(std::min(occ_a.x, occ_b.x)) - spec.jitter - 4;
  const int bar_x1 = static_cast<int>(std::max(occ_a.x, occ_b.x)) + spec.target_w + spec.jitter + 4;

  std::vector<SynthFrame> out;
  out.reserve(static_cast<std::size_t>(spec.frames));
  for (int k = 1; k <= spec.frames; ++k) {
    Box truth = synth_nominal_box(spec, k);
    if (spec.jitter > 0) {
      truth.x += jit(rng);
      truth.y += jit(rng);
    }
    Frame f(spec.width, spec.height);
    const int tx = static_cast<int>(truth.x);
    const int ty = static_cast<int>(truth.y);
    const bool occluded = spec.occluder && k >= spec.occluder_first && k <= spec.occluder_last;
    for (int y = 0; y < spec.height; ++y) {
      for (int x = 0; x < spec.width; ++x) {
        const int u = x - tx;
        const int v = y - ty;
        std::array<int, 3> base = background;
        int amp = 30;
        if (occluded && x >= bar_x0 && x < bar_x1) {
          base = bar;
          amp = 10;
        } else if (u >= 0 && v >= 0 && u < spec.target_w && v < spec.target_h) {
          base = ((u / spec.cell + v / spec.cell) % 2 == 0) ? checker_a : checker_b;
          amp = 0;
        }
        f.set(x, y, noisy(base, amp, rng));
      }
    }
    out.push_back({std::move(f), truth});
  }
  return out;
}

SequenceSpec synth_sequence(const SynthSpec& spec, const fs::path& out_dir, std::uint64_t seed) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) throw IoError("cannot create directory " + out_dir.string());
  const auto frames = render_synth(spec, seed);
  std::vector<Box> truth;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%04zu.png", k + 1);
    write_png(out_dir / name, frames[k].frame);
    truth.push_back(frames[k].truth);
  }
  const fs::path gt = out_dir / "groundtruth.txt";
  auto out = open_out(gt);
  for (const Box& b : truth) out << b.x << ',' << b.y << ',' << b.w << ',' << b.h << '\n';
  if (!out) throw IoError("cannot write " + gt.string());
  return SequenceSpec{out_dir, gt, spec.name};
}

void write_curve_csv(const fs::path& path, const Curve& curve) {
  auto out = open_out(path);
  out << "threshold,value\n";
  for (const auto& p : curve) out << fmt(p.threshold) << ',' << fmt(p.value) << '\n';
}

void write_curve_svg(const fs::path& path, const Curve& curve, const std::string& title, const std::string& x_label,
                     const std::string& y_label) {
  constexpr double W = 480, H = 360, L = 60, R = 20, T = 40, B = 50;
  double x_max = 0;
  for (const auto& p : curve) x_max = std::max(x_max, p.threshold);
  if (x_max <= 0) x_max = 1;
  auto px = [&](double t) { return L + (W - L - R) * t / x_max; };
  auto py = [&](double v) { return H - B - (H - T - B) * v; };

  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << py(0) << "\" x2=\"" << W - R << "\" y2=\"" << py(0)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << py(0) << "\" x2=\"" << L << "\" y2=\"" << py(1)
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = i * 0.25;
    out << "<text x=\"" << L - 8 << "\" y=\"" << py(v) + 4 << "\" font-size=\"11\" text-anchor=\"end\">" << v
        << "</text>\n";
    const double t = x_max * i / 4;
    out << "<text x=\"" << px(t) << "\" y=\"" << py(0) + 16 << "\" font-size=\"11\" text-anchor=\"middle\">" << t
        << "</text>\n";
  }
  out << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\" points=\"";
  for (const auto& p : curve) out << fmt(px(p.threshold)) << ',' << fmt(py(p.value)) << ' ';
  out << "\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"" << T - 15 << "\" font-size=\"14\" text-anchor=\"middle\">" << title
      << "</text>\n";
  out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" font-size=\"12\" text-anchor=\"middle\">"
      << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (T + H - B) / 2 << ")\">" << y_label << "</text>\n";
  out << "</svg>\n";
}

}  // namespace crowtrack
