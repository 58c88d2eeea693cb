#include <gtest/gtest.h>

#include "crowtrack/io.hpp"
#include "crowtrack/kernels.hpp"
#include "crowtrack/tracker.hpp"

namespace crowtrack {
namespace {

struct KernelFixture : ::testing::Test {
  SynthSpec spec;
  std::vector<SynthFrame> frames;
  AppearanceModel model;
  std::vector<ParticleState> states;

  void SetUp() override {
    spec.frames = 2;
    frames = render_synth(spec, 5);
    const Box b = frames[0].truth;
    model = build_appearance(extract_patch(frames[0].frame, ParticleState{b.cx(), b.cy(), 0, 0, 0, 1}, b.w, b.h),
                             FeatureParams{});
    RandomStream rng(17);
    states.clear();
    for (int i = 0; i < 64; ++i) {
      ParticleState s;
      s.x = b.cx() + std::normal_distribution<double>(0, 15)(rng);
      s.y = b.cy() + std::normal_distribution<double>(0, 15)(rng);
      s.rot = std::normal_distribution<double>(0, 0.2)(rng);
      s.scale = i == 3 ? 0.01 : 1.0 + std::normal_distribution<double>(0, 0.1)(rng);
      states.push_back(s);
    }
  }
};

TEST_F(KernelFixture, ParallelEvaluationMatchesSerialBitwise) {
  set_worker_threads(4);
  const auto serial = evaluate_cues_serial(frames[1].frame, states, 40, 40, model, FeatureParams{});
  const auto parallel = evaluate_cues_parallel(frames[1].frame, states, 40, 40, model, FeatureParams{});
  EXPECT_EQ(serial, parallel);
  EXPECT_FALSE(serial[3].valid);
  EXPECT_EQ(serial[3].alpha_c, 0.0);
}

TEST_F(KernelFixture, ParallelPropagationMatchesSerialBitwise) {
  set_worker_threads(4);
  const FrameDims dims{spec.width, spec.height};
  for (std::uint64_t frame = 1; frame < 4; ++frame) {
    EXPECT_EQ(propagate_serial(states, NoiseParams{}, 77, frame, dims),
              propagate_parallel(states, NoiseParams{}, 77, frame, dims));
  }
}

TEST_F(KernelFixture, PerfectCandidateScoresOne) {
  const Box b = frames[0].truth;
  const CueLikelihood c =
      evaluate_cues(frames[0].frame, ParticleState{b.cx(), b.cy(), 0, 0, 0, 1}, b.w, b.h, model, FeatureParams{});
  EXPECT_TRUE(c.valid);
  EXPECT_NEAR(c.alpha_c, 1.0, 1e-6);
  EXPECT_NEAR(c.alpha_t, 1.0, 1e-6);
}

TEST_F(KernelFixture, SerialAndParallelTrackersAgree) {
  set_worker_threads(3);
  std::vector<Frame> seq;
  SynthSpec s = spec;
  s.frames = 8;
  for (auto& f : render_synth(s, 9)) seq.push_back(std::move(f.frame));
  TrackerConfig a;
  a.execution = Execution::serial;
  TrackerConfig b = a;
  b.execution = Execution::parallel;
  const Box init = render_synth(s, 9)[0].truth;
  EXPECT_EQ(run(frames_from(seq), init, a, 123), run(frames_from(seq), init, b, 123));
}

}  // namespace
}  // namespace crowtrack
