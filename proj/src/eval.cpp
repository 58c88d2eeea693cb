#include "crowtrack/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "crowtrack/errors.hpp"

namespace crowtrack {
namespace {

double intersection(const Box& a, const Box& b) {
  const double iw = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
  const double ih = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
  return (iw > 0.0 && ih > 0.0) ? iw * ih : 0.0;
}

double mean(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

double cle(const Box& tracked, const Box& truth) {
  return std::hypot(tracked.cx() - truth.cx(), tracked.cy() - truth.cy());
}

double f_measure(const Box& tracked, const Box& truth) {
  if (!(tracked.area() > 0.0)) {
    std::clog << "warning: zero-area tracked box scores F = 0\n";
    return 0.0;
  }
  if (!(truth.area() > 0.0)) throw ContractViolation("f_measure: ground-truth box has zero area");
  const double inter = intersection(tracked, truth);
  if (inter <= 0.0) return 0.0;
  const double pr = inter / tracked.area();
  const double rl = inter / truth.area();
  return 2.0 * pr * rl / (pr + rl);
}

double iou(const Box& a, const Box& b) {
  const double inter = intersection(a, b);
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

Curve precision_curve(std::span<const double> cles, std::span<const double> thresholds) {
  if (cles.empty()) throw ContractViolation("precision_curve: no frames");
  Curve c;
  c.reserve(thresholds.size());
  for (double t : thresholds) {
    const auto hits = std::count_if(cles.begin(), cles.end(), [t](double e) { return e <= t; });
    c.push_back({t, static_cast<double>(hits) / static_cast<double>(cles.size())});
  }
  return c;
}

Curve success_curve(std::span<const double> ious, std::span<const double> thresholds) {
  if (ious.empty()) throw ContractViolation("success_curve: no frames");
  Curve c;
  c.reserve(thresholds.size());
  for (double t : thresholds) {
    const auto hits = std::count_if(ious.begin(), ious.end(), [t](double o) { return o > t; });
    c.push_back({t, static_cast<double>(hits) / static_cast<double>(ious.size())});
  }
  return c;
}

std::vector<double> precision_thresholds() {
  std::vector<double> t;
  for (int i = 0; i <= 50; ++i) t.push_back(i);
  return t;
}

std::vector<double> success_thresholds() {
  std::vector<double> t;
  for (int i = 0; i <= 20; ++i) t.push_back(i * 0.05);
  return t;
}

MetricsReport evaluate(std::span<const Box> tracked, std::span<const Box> truth) {
  if (tracked.empty()) throw ContractViolation("evaluate: empty trajectory");
  if (tracked.size() != truth.size()) {
    throw ContractViolation("evaluate: trajectory has " + std::to_string(tracked.size()) +
                            " rows but ground truth has " + std::to_string(truth.size()));
  }
  MetricsReport rep;
  for (std::size_t k = 0; k < tracked.size(); ++k) {
    if (!(truth[k].area() > 0.0)) {
      ++rep.skipped_frames;
      continue;
    }
    rep.cle.push_back(cle(tracked[k], truth[k]));
    rep.f.push_back(f_measure(tracked[k], truth[k]));
    rep.iou.push_back(iou(tracked[k], truth[k]));
  }
  rep.scored_frames = rep.cle.size();
  if (rep.scored_frames == 0) throw ContractViolation("evaluate: no frame has a usable ground-truth box");
  rep.mean_cle = mean(rep.cle);
  rep.mean_f = mean(rep.f);
  const auto pt = precision_thresholds();
  const auto st = success_thresholds();
  rep.precision = precision_curve(rep.cle, pt);
  rep.success = success_curve(rep.iou, st);
  return rep;
}

}  // namespace crowtrack
