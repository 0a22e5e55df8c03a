#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tapg/error.hpp"

namespace tapg {

/// Little-endian binary writer. Writes to "<path>.tmp" and renames on
/// commit so a failed run never leaves a partial file behind.
class BinaryWriter {
 public:
  explicit BinaryWriter(const std::filesystem::path& path);
  ~BinaryWriter();
  BinaryWriter(const BinaryWriter&) = delete;
  BinaryWriter& operator=(const BinaryWriter&) = delete;

  void u8(std::uint8_t v);
  void u16(std::uint16_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f32(float v);
  void f32_array(const float* v, std::size_t n);
  void bytes(const char* p, std::size_t n);
  void commit();

 private:
  std::filesystem::path path_, tmp_;
  std::vector<char> buf_;
  bool committed_ = false;
};

/// Little-endian binary reader over a whole file; every accessor names the
/// field it was reading when the payload runs short.
class BinaryReader {
 public:
  explicit BinaryReader(const std::filesystem::path& path);

  std::uint8_t u8(const char* field);
  std::uint16_t u16(const char* field);
  std::uint32_t u32(const char* field);
  std::uint64_t u64(const char* field);
  float f32(const char* field);
  void f32_array(float* out, std::size_t n, const char* field);
  void bytes(char* out, std::size_t n, const char* field);
  void expect_eof();
  std::size_t remaining() const { return buf_.size() - pos_; }

 private:
  void need(std::size_t n, const char* field);
  std::filesystem::path path_;
  std::vector<char> buf_;
  std::size_t pos_ = 0;
};

void write_text_atomic(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);
nlohmann::json parse_json_file(const std::filesystem::path& path);

/// FNV-1a 64-bit; stable content hash used in run manifests.
std::uint64_t fnv1a64(const void* data, std::size_t n);
std::uint64_t hash_file(const std::filesystem::path& path);
std::string hash_hex(std::uint64_t h);

}  // namespace tapg
