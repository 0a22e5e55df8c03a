#pragma once

#include <cstdint>
#include <vector>

#include "tapg/features.hpp"
#include "tapg/rng.hpp"

namespace tapg {

/// Synthetic stand-in for the C3D features of paired video/flow streams.
/// Background blocks are base Gaussians; blocks inside planted segments get
/// a mean shift on `num_signal_dims` coordinates. The split s assigns
/// round(s * num_signal_dims) of those coordinates to the flow stream and
/// the rest to the video stream, so neither stream alone carries the full
/// signal when 0 < s < 1.
struct SynthConfig {
  std::uint32_t num_videos = 60;
  std::uint32_t min_blocks = 40;
  std::uint32_t max_blocks = 80;
  std::uint32_t dim = 32;  // per stream
  std::uint32_t num_signal_dims = 8;
  double signal_split = 0.5;   // s: fraction of signal dims on the flow stream
  double action_density = 0.25;
  std::uint32_t min_segment_blocks = 2;
  std::uint32_t max_segment_blocks = 8;
  double signal_shift = 1.1;
  double noise_sigma = 1.0;
  std::uint32_t block_size_frames = 16;
  std::uint64_t seed = 42;
};

void validate(const SynthConfig& cfg);

struct StreamPair {
  FeatureSequence video;
  FeatureSequence flow;
};

struct SynthDataset {
  std::vector<StreamPair> videos;
  std::vector<Annotation> annotations;  // same order as videos
};

/// Fully deterministic per (cfg, seed): every video draws from its own
/// forked generator, so the content of video i never depends on the others.
SynthDataset synth_dataset(const SynthConfig& cfg, std::uint64_t seed);

}  // namespace tapg
