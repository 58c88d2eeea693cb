#pragma once

#include <span>
#include <vector>

#include "crowtrack/image.hpp"

namespace crowtrack {

/// Distance between box centres.
double cle(const Box& tracked, const Box& truth);

/// Harmonic mean of overlap precision (w.r.t. the tracked box) and recall
/// (w.r.t. the truth box). 0 for empty intersection or a zero-area tracked box.
double f_measure(const Box& tracked, const Box& truth);

/// Intersection over union; 0 when both boxes are empty.
double iou(const Box& a, const Box& b);

struct CurvePoint {
  double threshold = 0.0;
  double value = 0.0;
};

using Curve = std::vector<CurvePoint>;

/// Fraction of frames with CLE <= threshold.
Curve precision_curve(std::span<const double> cles, std::span<const double> thresholds);

/// Fraction of frames with IoU > threshold.
Curve success_curve(std::span<const double> ious, std::span<const double> thresholds);

std::vector<double> precision_thresholds();  // 0..50 px, step 1
std::vector<double> success_thresholds();    // 0..1, step 0.05

struct MetricsReport {
  std::vector<double> cle;
  std::vector<double> f;
  std::vector<double> iou;
  double mean_cle = 0.0;
  double mean_f = 0.0;
  Curve precision;
  Curve success;
  std::size_t scored_frames = 0;
  std::size_t skipped_frames = 0;  // truth missing or zero-area
};

/// Per-frame metrics and curves. Throws ContractViolation on length mismatch
/// or an empty trajectory.
MetricsReport evaluate(std::span<const Box> tracked, std::span<const Box> truth);

}  // namespace crowtrack
