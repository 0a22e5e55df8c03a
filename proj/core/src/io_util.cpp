#include "tapg/io_util.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

namespace tapg {

BinaryWriter::BinaryWriter(const std::filesystem::path& path)
    : path_(path), tmp_(path.string() + ".tmp") {}

BinaryWriter::~BinaryWriter() {
  if (!committed_) {
    std::error_code ec;
    std::filesystem::remove(tmp_, ec);
  }
}

void BinaryWriter::bytes(const char* p, std::size_t n) {
  buf_.insert(buf_.end(), p, p + n);
}

void BinaryWriter::u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }

void BinaryWriter::u16(std::uint16_t v) {
  for (int i = 0; i < 2; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void BinaryWriter::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void BinaryWriter::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void BinaryWriter::f32(float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  u32(bits);
}

void BinaryWriter::f32_array(const float* v, std::size_t n) {
  buf_.reserve(buf_.size() + n * 4);
  for (std::size_t i = 0; i < n; ++i) f32(v[i]);
}

void BinaryWriter::commit() {
  std::ofstream out(tmp_, std::ios::binary | std::ios::trunc);
  if (!out)
    fail(ErrorCode::kIo, "cannot open " + tmp_.string() + " for writing");
  out.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
  out.close();
  if (!out) fail(ErrorCode::kIo, "short write to " + tmp_.string());
  std::error_code ec;
  std::filesystem::rename(tmp_, path_, ec);
  if (ec)
    fail(ErrorCode::kIo,
         "cannot move " + tmp_.string() + " to " + path_.string() + ": " +
             ec.message());
  committed_ = true;
}

BinaryReader::BinaryReader(const std::filesystem::path& path) : path_(path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  in.seekg(0, std::ios::end);
  const std::streamoff size = in.tellg();
  in.seekg(0, std::ios::beg);
  buf_.resize(static_cast<std::size_t>(size));
  in.read(buf_.data(), size);
  if (!in) fail(ErrorCode::kIo, "cannot read " + path.string());
}

void BinaryReader::need(std::size_t n, const char* field) {
  if (pos_ + n > buf_.size())
    fail(ErrorCode::kTruncated,
         path_.string() + ": truncated while reading " + field + " (need " +
             std::to_string(n) + " bytes, have " +
             std::to_string(buf_.size() - pos_) + ")");
}

std::uint8_t BinaryReader::u8(const char* field) {
  need(1, field);
  return static_cast<std::uint8_t>(buf_[pos_++]);
}

std::uint16_t BinaryReader::u16(const char* field) {
  need(2, field);
  std::uint16_t v = 0;
  for (int i = 0; i < 2; ++i)
    v |= static_cast<std::uint16_t>(static_cast<unsigned char>(buf_[pos_++])) << (8 * i);
  return v;
}

std::uint32_t BinaryReader::u32(const char* field) {
  need(4, field);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf_[pos_++])) << (8 * i);
  return v;
}

std::uint64_t BinaryReader::u64(const char* field) {
  need(8, field);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf_[pos_++])) << (8 * i);
  return v;
}

float BinaryReader::f32(const char* field) {
  const std::uint32_t bits = u32(field);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

void BinaryReader::f32_array(float* out, std::size_t n, const char* field) {
  need(n * 4, field);
  for (std::size_t i = 0; i < n; ++i) out[i] = f32(field);
}

void BinaryReader::bytes(char* out, std::size_t n, const char* field) {
  need(n, field);
  std::memcpy(out, buf_.data() + pos_, n);
  pos_ += n;
}

void BinaryReader::expect_eof() {
  if (pos_ != buf_.size())
    fail(ErrorCode::kTruncated,
         path_.string() + ": " + std::to_string(buf_.size() - pos_) +
             " unexpected trailing bytes");
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  BinaryWriter w(path);
  w.bytes(text.data(), text.size());
  w.commit();
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  std::string s((std::istreambuf_iterator<char>(in)),
                std::istreambuf_iterator<char>());
  return s;
}

nlohmann::json parse_json_file(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded())
    fail(ErrorCode::kData, path.string() + ": invalid JSON");
  return j;
}

std::uint64_t fnv1a64(const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t hash_file(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  return fnv1a64(text.data(), text.size());
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace tapg
