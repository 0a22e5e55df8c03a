#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "tapg/mat.hpp"

namespace tapg {

enum class Stream : std::uint8_t { kVideo = 0, kFlow = 1 };

inline const char* stream_name(Stream s) {
  return s == Stream::kVideo ? "video" : "flow";
}

/// Per-video sequence of per-block feature vectors for one stream; the
/// stand-in for C3D fc6/fc7 activations. Row t is the feature vector of
/// block t (16 frames by default).
struct FeatureSequence {
  std::string video_id;
  Stream stream = Stream::kVideo;
  std::uint32_t block_size_frames = 16;
  std::string provenance;  // free-form tag, e.g. "synthetic" or "L2,fc7"
  Matrix data;             // num_blocks x dim

  std::size_t num_blocks() const { return data.rows; }
  std::size_t dim() const { return data.cols; }
};

struct Segment {
  std::uint32_t start_block = 0;
  std::uint32_t end_block = 0;  // inclusive

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct Annotation {
  std::string video_id;
  std::uint32_t num_blocks = 0;
  std::vector<Segment> segments;
};

/// Binary ".fseq" container, little-endian:
///   magic "FSEQ", u32 version=1, u8 stream, u32 dim, u32 num_blocks,
///   u32 block_size_frames, u16 tag length + UTF-8 tag,
///   then num_blocks*dim float32, row-major.
/// The video id is not stored; it is derived from the file name
/// ("<id>.video.fseq" / "<id>.flow.fseq").
void save_features(const FeatureSequence& f, const std::filesystem::path& path);
FeatureSequence load_features(const std::filesystem::path& path);

/// Canonical file name for a stream of a video.
std::filesystem::path fseq_filename(const std::string& video_id, Stream s);

/// Scales every block row to unit Euclidean norm; all-zero rows stay zero.
FeatureSequence l2_normalize(const FeatureSequence& f);

/// Maps a [start,end] segment in seconds onto inclusive block indices:
/// floor(t*fps/block_size) at both ends, clamped into [0, num_blocks-1].
std::pair<std::uint32_t, std::uint32_t> seconds_to_blocks(
    double start_seconds, double end_seconds, double fps,
    std::uint32_t block_size_frames, std::uint32_t num_blocks);

/// Annotations round-trip as a JSON array of
/// {"video_id", "num_blocks", "segments": [{"start_block","end_block"}]}.
void save_annotations(const std::vector<Annotation>& annos,
                      const std::filesystem::path& path);
std::vector<Annotation> load_annotations(const std::filesystem::path& path);

}  // namespace tapg
