#include <gtest/gtest.h>

#include <random>

#include "crowtrack/errors.hpp"
#include "crowtrack/eval.hpp"

namespace crowtrack {
namespace {

TEST(Cle, Examples) {
  const Box a{0, 0, 10, 10};
  EXPECT_EQ(cle(a, a), 0.0);
  EXPECT_EQ(cle(Box::from_center(0, 0, 4, 4), Box::from_center(3, 4, 8, 2)), 5.0);
  EXPECT_DOUBLE_EQ(cle(Box{5, 5, 10, 10}, Box{8, 9, 10, 10}), cle(Box{105, -5, 10, 10}, Box{108, -1, 10, 10}));
}

TEST(FMeasure, Examples) {
  const Box g{0, 0, 10, 10};
  EXPECT_EQ(f_measure(g, g), 1.0);
  EXPECT_EQ(f_measure(Box{20, 20, 5, 5}, g), 0.0);
  EXPECT_DOUBLE_EQ(f_measure(Box{0, 0, 10, 10}, Box{5, 0, 10, 10}), 0.5);
  EXPECT_EQ(f_measure(Box{0, 0, 0, 10}, g), 0.0);
  EXPECT_THROW(f_measure(g, Box{0, 0, 0, 0}), ContractViolation);
}

TEST(Iou, Examples) {
  const Box g{0, 0, 10, 10};
  EXPECT_EQ(iou(g, g), 1.0);
  EXPECT_EQ(iou(g, Box{30, 0, 10, 10}), 0.0);
  EXPECT_NEAR(iou(Box{0, 0, 10, 10}, Box{5, 0, 10, 10}), 1.0 / 3.0, 1e-12);
}

TEST(MetricProperty, EqualAreaFMeasureFollowsIou) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> pos(-20, 20), side(1, 30);
  for (int t = 0; t < 500; ++t) {
    const double w = side(rng), h = side(rng);
    const double k = std::uniform_real_distribution<double>(0.3, 3)(rng);
    const Box a{pos(rng), pos(rng), w, h};
    const Box b{pos(rng), pos(rng), w * k, h / k};
    const double o = iou(a, b);
    EXPECT_NEAR(f_measure(a, b), 2 * o / (1 + o), 1e-12);
  }
}

TEST(MetricProperty, TranslationInvariant) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> pos(-50, 50), side(1, 30);
  for (int t = 0; t < 200; ++t) {
    const Box a{pos(rng), pos(rng), side(rng), side(rng)};
    const Box b{pos(rng), pos(rng), side(rng), side(rng)};
    const double dx = pos(rng), dy = pos(rng);
    const Box a2{a.x + dx, a.y + dy, a.w, a.h};
    const Box b2{b.x + dx, b.y + dy, b.w, b.h};
    EXPECT_NEAR(cle(a, b), cle(a2, b2), 1e-9);
    EXPECT_NEAR(f_measure(a, b), f_measure(a2, b2), 1e-9);
    EXPECT_NEAR(iou(a, b), iou(a2, b2), 1e-9);
  }
}

TEST(PrecisionCurve, Examples) {
  const std::vector<double> zeros(5, 0.0);
  for (const auto& p : precision_curve(zeros, precision_thresholds())) EXPECT_EQ(p.value, 1.0);
  const std::vector<double> cles{5, 15, 25};
  const std::vector<double> t20{20}, t0{0};
  EXPECT_DOUBLE_EQ(precision_curve(cles, t20)[0].value, 2.0 / 3.0);
  EXPECT_EQ(precision_curve(cles, t0)[0].value, 0.0);
  EXPECT_THROW(precision_curve(std::vector<double>{}, t0), ContractViolation);
}

TEST(SuccessCurve, Examples) {
  const std::vector<double> ones(4, 1.0);
  for (const auto& p : success_curve(ones, success_thresholds())) {
    if (p.threshold < 1.0) EXPECT_EQ(p.value, 1.0);
  }
  const std::vector<double> o{0.1, 0.5, 0.9};
  const std::vector<double> t{0.2};
  EXPECT_DOUBLE_EQ(success_curve(o, t)[0].value, 2.0 / 3.0);
  const std::vector<double> partial{0.0, 0.3, 0.0, 0.01};
  const std::vector<double> t0{0.0};
  EXPECT_DOUBLE_EQ(success_curve(partial, t0)[0].value, 0.5);
}

TEST(CurveProperty, Monotone) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> e(0, 60), o(0, 1);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> cles(40), ious(40);
    for (auto& v : cles) v = e(rng);
    for (auto& v : ious) v = o(rng);
    const Curve p = precision_curve(cles, precision_thresholds());
    const Curve s = success_curve(ious, success_thresholds());
    ASSERT_EQ(p.size(), 51u);
    ASSERT_EQ(s.size(), 21u);
    for (std::size_t i = 1; i < p.size(); ++i) ASSERT_GE(p[i].value, p[i - 1].value);
    for (std::size_t i = 1; i < s.size(); ++i) ASSERT_LE(s[i].value, s[i - 1].value);
    for (const auto& c : p) ASSERT_TRUE(c.value >= 0 && c.value <= 1);
  }
}

TEST(Evaluate, PerfectTrajectory) {
  const std::vector<Box> gt{{0, 0, 10, 10}, {2, 1, 10, 10}, {4, 2, 12, 10}};
  const MetricsReport m = evaluate(gt, gt);
  EXPECT_EQ(m.mean_cle, 0.0);
  EXPECT_EQ(m.mean_f, 1.0);
  for (const auto& p : m.precision) EXPECT_EQ(p.value, 1.0);
  EXPECT_EQ(m.scored_frames, 3u);
}

TEST(Evaluate, SkipsFramesWithoutTruth) {
  const std::vector<Box> gt{{0, 0, 10, 10}, {0, 0, 0, 0}, {4, 2, 12, 10}};
  const std::vector<Box> tr{{3, 4, 10, 10}, {50, 50, 10, 10}, {4, 2, 12, 10}};
  const MetricsReport m = evaluate(tr, gt);
  EXPECT_EQ(m.scored_frames, 2u);
  EXPECT_EQ(m.skipped_frames, 1u);
  EXPECT_DOUBLE_EQ(m.mean_cle, 2.5);
}

TEST(Evaluate, Errors) {
  const std::vector<Box> gt{{0, 0, 10, 10}};
  EXPECT_THROW(evaluate(std::vector<Box>{}, gt), ContractViolation);
  EXPECT_THROW(evaluate(std::vector<Box>{{0, 0, 1, 1}, {0, 0, 1, 1}}, gt), ContractViolation);
}

}  // namespace
}  // namespace crowtrack
