#include "srr/serialize.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace srr {

namespace {

constexpr std::array<char, 4> kMagic = {'S', 'R', 'I', 'X'};
constexpr uint32_t kVersion = 1;

void put_u32(std::ostream& out, uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void put_u64(std::ostream& out, uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

void put_i64(std::ostream& out, int64_t v) {
  put_u64(out, static_cast<uint64_t>(v));
}

uint32_t get_u32(std::istream& in) {
  char b[4];
  if (!in.read(b, 4)) throw std::runtime_error("index file: truncated");
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<uint32_t>(static_cast<unsigned char>(b[i])) << (8 * i);
  return v;
}

uint64_t get_u64(std::istream& in) {
  char b[8];
  if (!in.read(b, 8)) throw std::runtime_error("index file: truncated");
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
  return v;
}

int64_t get_i64(std::istream& in) {
  return static_cast<int64_t>(get_u64(in));
}

}  // namespace

std::string to_string(IndexKind kind) {
  switch (kind) {
    case IndexKind::kSuccessor:
      return "succ";
    case IndexKind::kThreeSided:
      return "3sided";
    case IndexKind::kFourSided:
      return "sorted";
    case IndexKind::kText:
      return "text";
  }
  return "unknown";
}

std::optional<IndexKind> kind_from_string(std::string_view name) {
  if (name == "succ") return IndexKind::kSuccessor;
  if (name == "3sided") return IndexKind::kThreeSided;
  if (name == "sorted") return IndexKind::kFourSided;
  if (name == "text") return IndexKind::kText;
  return std::nullopt;
}

void save_index(std::ostream& out, const IndexFile& file) {
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, kVersion);
  out.put(static_cast<char>(file.kind));
  put_u32(out, file.stride);
  put_u32(out, file.group_len);
  put_u32(out, file.sample_len);
  put_u64(out, file.points.size());
  for (const Point& p : file.points) {
    put_i64(out, p.x);
    put_i64(out, p.y);
    put_u32(out, p.id);
  }
  put_u64(out, file.text.size());
  out.write(file.text.data(), static_cast<std::streamsize>(file.text.size()));
  if (!out) throw std::runtime_error("index file: write failed");
}

IndexFile load_index(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic)
    throw std::runtime_error("index file: bad magic");
  const uint32_t version = get_u32(in);
  if (version != kVersion)
    throw std::runtime_error("index file: unsupported version " +
                             std::to_string(version));
  IndexFile file;
  const int kind_byte = in.get();
  if (kind_byte < 0 || kind_byte > static_cast<int>(IndexKind::kText))
    throw std::runtime_error("index file: bad kind byte");
  file.kind = static_cast<IndexKind>(kind_byte);
  file.stride = get_u32(in);
  file.group_len = get_u32(in);
  file.sample_len = get_u32(in);
  const uint64_t n = get_u64(in);
  file.points.resize(n);
  for (uint64_t i = 0; i < n; ++i) {
    file.points[i].x = get_i64(in);
    file.points[i].y = get_i64(in);
    file.points[i].id = get_u32(in);
  }
  const uint64_t len = get_u64(in);
  file.text.resize(len);
  if (len > 0 &&
      !in.read(file.text.data(), static_cast<std::streamsize>(len)))
    throw std::runtime_error("index file: truncated");
  return file;
}

void save_index_file(const std::string& path, const IndexFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  save_index(out, file);
}

IndexFile load_index_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return load_index(in);
}

}  // namespace srr
