#include "crowtrack/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "crowtrack/errors.hpp"
#include "crowtrack/eval.hpp"
#include "crowtrack/fuzzy.hpp"
#include "crowtrack/io.hpp"
#include "crowtrack/kernels.hpp"
#include "crowtrack/tracker.hpp"

namespace crowtrack {
namespace {

struct TrackArgs {
  std::string frames;
  std::string gt;
  std::string init;
  std::string config;
  std::string out = "trajectory.csv";
  std::string diag;
  std::optional<int> particles;
  std::optional<int> runs;
  std::optional<std::uint64_t> seed;
  std::optional<double> kappa_th;
  std::optional<double> fl;
  std::optional<double> ap;
  std::optional<int> cso_iters;
  int threads = 0;
  bool serial = false;
};

struct EvalArgs {
  std::string traj;
  std::string gt;
  std::string out_dir = ".";
  std::string prefix;
  bool svg = false;
};

struct SynthArgs {
  std::string out;
  SynthSpec spec;
  std::uint64_t seed = 1;
};

Box parse_init(const std::string& s) {
  std::istringstream in(s);
  const auto boxes = parse_boxes(in);
  if (boxes.size() != 1) throw ContractViolation("--init expects \"x,y,w,h\"");
  return boxes.front();
}

fs::path with_suffix(const fs::path& p, const std::string& suffix) {
  fs::path out = p;
  out.replace_filename(p.stem().string() + suffix + p.extension().string());
  return out;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void print_metrics(std::ostream& out, const MetricsReport& m) {
  out << "mean_cle," << num(m.mean_cle) << "\nmean_f," << num(m.mean_f) << "\nscored_frames," << m.scored_frames
      << "\nskipped_frames," << m.skipped_frames << '\n';
}

int do_track(const TrackArgs& a, std::ostream& out, std::ostream& err) {
  if (a.gt.empty() && a.init.empty()) {
    err << "track: need --gt or --init to place the first box\n";
    return 2;
  }
  TrackerConfig cfg;
  std::string config_path = a.config;
  if (config_path.empty()) {
    if (const char* env = std::getenv("CROWTRACK_CONFIG")) config_path = env;
  }
  if (!config_path.empty()) cfg = read_config(config_path);
  if (a.particles) cfg.n_particles = *a.particles;
  if (a.runs) cfg.runs = *a.runs;
  if (a.seed) cfg.seed = *a.seed;
  if (a.kappa_th) cfg.kappa_th = *a.kappa_th;
  if (a.fl) cfg.cso.fl = *a.fl;
  if (a.ap) cfg.cso.ap = *a.ap;
  if (a.cso_iters) cfg.cso.iters = *a.cso_iters;
  cfg.execution = a.serial ? Execution::serial : Execution::parallel;
  cfg.validate();
  set_worker_threads(a.threads);

  const Sequence seq = open_sequence(SequenceSpec{a.frames, a.gt, "cli"});
  const Box init = a.init.empty() ? seq.truth.front() : parse_init(a.init);

  const MultiRunRecord rec = run_multi(seq.source(), init, cfg);
  const fs::path out_path = a.out;
  if (cfg.runs == 1) {
    write_trajectory(out_path, rec.runs.front().boxes());
  } else {
    for (std::size_t r = 0; r < rec.runs.size(); ++r) {
      write_trajectory(with_suffix(out_path, "_run" + std::to_string(r + 1)), rec.runs[r].boxes());
    }
    write_trajectory(out_path, rec.mean_boxes);
  }

  if (!a.diag.empty()) {
    std::ofstream d(a.diag, std::ios::binary);
    if (!d) throw IoError("cannot write " + a.diag);
    d << "run,frame,mean_weight,min_weight,max_weight,outliers,r_c,r_t,failed\n";
    for (std::size_t r = 0; r < rec.runs.size(); ++r) {
      const auto& frames = rec.runs[r].frames;
      for (std::size_t k = 0; k < frames.size(); ++k) {
        const FrameRecord& f = frames[k];
        d << r + 1 << ',' << k + 1 << ',' << num(f.mean_weight) << ',' << num(f.min_weight) << ','
          << num(f.max_weight) << ',' << f.outliers << ',' << num(f.reliabilities.r_c) << ','
          << num(f.reliabilities.r_t) << ',' << (f.failed ? 1 : 0) << '\n';
      }
    }
  }

  if (!seq.truth.empty()) {
    double cle_sum = 0.0;
    double f_sum = 0.0;
    for (const TrackRecord& r : rec.runs) {
      const MetricsReport m = evaluate(r.boxes(), seq.truth);
      cle_sum += m.mean_cle;
      f_sum += m.mean_f;
    }
    const double n = static_cast<double>(rec.runs.size());
    out << "runs," << rec.runs.size() << "\nmean_cle," << num(cle_sum / n) << "\nmean_f," << num(f_sum / n) << '\n';
  }
  return 0;
}

int do_evaluate(const EvalArgs& a, std::ostream& out) {
  const auto traj = read_trajectory(a.traj);
  const auto truth = read_boxes(a.gt);
  const MetricsReport m = evaluate(traj, truth);
  const fs::path dir = a.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  const std::string p = a.prefix.empty() ? "" : a.prefix + "_";
  {
    std::ofstream mf(dir / (p + "metrics.csv"), std::ios::binary);
    if (!mf) throw IoError("cannot write " + (dir / (p + "metrics.csv")).string());
    mf << "metric,value\n";
    print_metrics(mf, m);
  }
  write_curve_csv(dir / (p + "precision.csv"), m.precision);
  write_curve_csv(dir / (p + "success.csv"), m.success);
  if (a.svg) {
    write_curve_svg(dir / (p + "precision.svg"), m.precision, "Precision", "CLE threshold (px)", "Precision");
    write_curve_svg(dir / (p + "success.svg"), m.success, "Success", "Overlap threshold", "Success rate");
  }
  print_metrics(out, m);
  return 0;
}

int do_synth(const SynthArgs& a, std::ostream& out) {
  const SequenceSpec s = synth_sequence(a.spec, a.out, a.seed);
  out << "frames," << s.frames_dir.string() << "\ngt," << s.gt_path.string() << '\n';
  return 0;
}

int do_cogtable(std::ostream& out) {
  static constexpr const char* names[] = {"VS", "S", "M", "L", "VL"};
  const FuzzyEngine engine;
  out << "label,cog\n";
  char buf[64];
  for (std::size_t k = 0; k < kLabels; ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", engine.cog()[k]);
    out << names[k] << ',' << buf << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"crowtrack: multicue particle-filter tracker with crow-search resampling"};
  app.require_subcommand(1);

  TrackArgs ta;
  auto* track = app.add_subcommand("track", "Track a target through a frame sequence");
  track->add_option("--frames", ta.frames, "Directory of PNG/JPEG frames")->required();
  track->add_option("--gt", ta.gt, "Ground truth, one x,y,w,h line per frame");
  track->add_option("--init", ta.init, "Initial box \"x,y,w,h\" (overrides the first ground-truth line)");
  track->add_option("--config", ta.config, "JSON config (falls back to $CROWTRACK_CONFIG)");
  track->add_option("--out", ta.out, "Trajectory CSV");
  track->add_option("--diag", ta.diag, "Per-frame diagnostics CSV");
  track->add_option("--particles", ta.particles);
  track->add_option("--runs", ta.runs);
  track->add_option("--seed", ta.seed);
  track->add_option("--kappa-th", ta.kappa_th);
  track->add_option("--fl", ta.fl);
  track->add_option("--ap", ta.ap);
  track->add_option("--cso-iters", ta.cso_iters);
  track->add_option("--threads", ta.threads, "OpenMP threads (0 = runtime default)");
  track->add_flag("--serial", ta.serial, "Use the serial reference kernels");

  EvalArgs ea;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a trajectory against ground truth");
  evaluate_cmd->add_option("--traj", ea.traj, "Trajectory CSV")->required();
  evaluate_cmd->add_option("--gt", ea.gt, "Ground truth file")->required();
  evaluate_cmd->add_option("--out-dir", ea.out_dir, "Output directory");
  evaluate_cmd->add_option("--prefix", ea.prefix, "Output file prefix");
  evaluate_cmd->add_flag("--svg", ea.svg, "Also write SVG plots of the curves");

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "Render a synthetic sequence with exact ground truth");
  synth->add_option("--out", sa.out, "Output directory")->required();
  synth->add_option("--frames", sa.spec.frames);
  synth->add_option("--width", sa.spec.width);
  synth->add_option("--height", sa.spec.height);
  synth->add_option("--size", sa.spec.target_w, "Target side length")->each([&](const std::string& v) {
    sa.spec.target_h = std::stoi(v);
  });
  synth->add_option("--x0", sa.spec.x0);
  synth->add_option("--y0", sa.spec.y0);
  synth->add_option("--vx", sa.spec.vx);
  synth->add_option("--vy", sa.spec.vy);
  synth->add_option("--jitter", sa.spec.jitter);
  synth->add_flag("--occluder", sa.spec.occluder);
  synth->add_option("--occ-first", sa.spec.occluder_first);
  synth->add_option("--occ-last", sa.spec.occluder_last);
  synth->add_option("--seed", sa.seed);

  app.add_subcommand("cogtable", "Print the centre of gravity of each fuzzy label");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (track->parsed()) return do_track(ta, out, err);
    if (evaluate_cmd->parsed()) return do_evaluate(ea, out);
    if (synth->parsed()) return do_synth(sa, out);
    return do_cogtable(out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace crowtrack
