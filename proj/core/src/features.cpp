#include "tapg/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

#include "tapg/io_util.hpp"

namespace tapg {

namespace {

constexpr char kMagic[4] = {'F', 'S', 'E', 'Q'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

std::filesystem::path fseq_filename(const std::string& video_id, Stream s) {
  return video_id + "." + stream_name(s) + ".fseq";
}

void save_features(const FeatureSequence& f, const std::filesystem::path& path) {
  BinaryWriter w(path);
  w.bytes(kMagic, 4);
  w.u32(kVersion);
  w.u8(static_cast<std::uint8_t>(f.stream));
  w.u32(static_cast<std::uint32_t>(f.dim()));
  w.u32(static_cast<std::uint32_t>(f.num_blocks()));
  w.u32(f.block_size_frames);
  if (f.provenance.size() > 0xFFFF)
    fail(ErrorCode::kConfig, "save_features: provenance tag too long");
  w.u16(static_cast<std::uint16_t>(f.provenance.size()));
  w.bytes(f.provenance.data(), f.provenance.size());
  w.f32_array(f.data.data.data(), f.data.data.size());
  w.commit();
}

FeatureSequence load_features(const std::filesystem::path& path) {
  BinaryReader r(path);
  char magic[4];
  r.bytes(magic, 4, "magic");
  if (std::memcmp(magic, kMagic, 4) != 0)
    fail(ErrorCode::kBadMagic,
         path.string() + ": not a feature file (bad magic)");
  const std::uint32_t version = r.u32("version");
  if (version != kVersion)
    fail(ErrorCode::kVersionMismatch,
         path.string() + ": unsupported feature file version " +
             std::to_string(version));

  FeatureSequence f;
  const std::uint8_t stream = r.u8("stream");
  if (stream > 1)
    fail(ErrorCode::kData,
         path.string() + ": unknown stream tag " + std::to_string(stream));
  f.stream = static_cast<Stream>(stream);
  const std::uint32_t dim = r.u32("dim");
  const std::uint32_t num_blocks = r.u32("num_blocks");
  f.block_size_frames = r.u32("block_size_frames");
  const std::uint16_t tag_len = r.u16("tag length");
  f.provenance.resize(tag_len);
  if (tag_len) r.bytes(f.provenance.data(), tag_len, "provenance tag");

  f.data = Matrix(num_blocks, dim);
  r.f32_array(f.data.data.data(), f.data.data.size(), "feature payload");
  r.expect_eof();
  if (!all_finite(std::span<const float>(f.data.data)))
    fail(ErrorCode::kNonFinite,
         path.string() + ": feature payload contains NaN or Inf");

  // <id>.video.fseq -> id; plain stems are taken verbatim.
  std::string stem = path.stem().string();
  for (const char* suffix : {".video", ".flow"}) {
    if (stem.size() > std::strlen(suffix) &&
        stem.ends_with(suffix)) {
      stem.resize(stem.size() - std::strlen(suffix));
      break;
    }
  }
  f.video_id = stem;
  return f;
}

FeatureSequence l2_normalize(const FeatureSequence& f) {
  FeatureSequence out = f;
  for (std::size_t t = 0; t < out.data.rows; ++t) {
    auto row = out.data.row(t);
    double sq = 0.0;
    for (float v : row) sq += static_cast<double>(v) * v;
    if (sq == 0.0) continue;
    const float inv = static_cast<float>(1.0 / std::sqrt(sq));
    for (float& v : row) v *= inv;
  }
  return out;
}

std::pair<std::uint32_t, std::uint32_t> seconds_to_blocks(
    double start_seconds, double end_seconds, double fps,
    std::uint32_t block_size_frames, std::uint32_t num_blocks) {
  if (!(fps > 0.0))
    fail(ErrorCode::kConfig, "seconds_to_blocks: fps must be > 0");
  if (end_seconds < start_seconds || start_seconds < 0.0)
    fail(ErrorCode::kConfig, "seconds_to_blocks: need 0 <= start <= end");
  const double per_block = static_cast<double>(block_size_frames);
  const auto clamp_block = [num_blocks](double b) {
    const double hi = num_blocks == 0 ? 0.0 : static_cast<double>(num_blocks - 1);
    return static_cast<std::uint32_t>(std::clamp(b, 0.0, hi));
  };
  const std::uint32_t start_block =
      clamp_block(std::floor(start_seconds * fps / per_block));
  const std::uint32_t end_block =
      clamp_block(std::floor(end_seconds * fps / per_block));
  return {start_block, end_block};
}

void save_annotations(const std::vector<Annotation>& annos,
                      const std::filesystem::path& path) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Annotation& a : annos) {
    nlohmann::json segs = nlohmann::json::array();
    for (const Segment& s : a.segments)
      segs.push_back({{"start_block", s.start_block}, {"end_block", s.end_block}});
    arr.push_back({{"video_id", a.video_id},
                   {"num_blocks", a.num_blocks},
                   {"segments", segs}});
  }
  write_text_atomic(path, arr.dump(2) + "\n");
}

std::vector<Annotation> load_annotations(const std::filesystem::path& path) {
  nlohmann::json arr = parse_json_file(path);
  if (!arr.is_array())
    fail(ErrorCode::kData, path.string() + ": annotations must be a JSON array");
  std::vector<Annotation> annos;
  for (const auto& item : arr) {
    Annotation a;
    try {
      a.video_id = item.at("video_id").get<std::string>();
      a.num_blocks = item.at("num_blocks").get<std::uint32_t>();
      for (const auto& seg : item.at("segments")) {
        Segment s;
        s.start_block = seg.at("start_block").get<std::uint32_t>();
        s.end_block = seg.at("end_block").get<std::uint32_t>();
        a.segments.push_back(s);
      }
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::kData, path.string() + ": bad annotation entry: " + e.what());
    }
    for (const Segment& s : a.segments)
      if (s.start_block > s.end_block || s.end_block >= a.num_blocks)
        fail(ErrorCode::kData,
             path.string() + ": segment [" + std::to_string(s.start_block) +
                 "," + std::to_string(s.end_block) + "] out of range for " +
                 a.video_id + " with " + std::to_string(a.num_blocks) +
                 " blocks");
    annos.push_back(std::move(a));
  }
  return annos;
}

}  // namespace tapg
