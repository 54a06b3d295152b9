#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "srr/points.hpp"

namespace srr {

enum class IndexKind : uint8_t {
  kSuccessor = 0,   // range successor + sorted walks + staircases
  kThreeSided = 1,  // rectangles open on one y side
  kFourSided = 2,   // fully bounded rectangles, grouped structure
  kText = 3,        // suffix-array position set
};

std::string to_string(IndexKind kind);
std::optional<IndexKind> kind_from_string(std::string_view name);

// On-disk form of an index: the canonical inputs plus build knobs. Loading
// rebuilds the structure, which is deterministic for fixed inputs and knobs,
// so query answers round-trip exactly. Unknown magic or version fails the
// load rather than guessing.
struct IndexFile {
  IndexKind kind = IndexKind::kSuccessor;
  uint32_t stride = 0;      // successor family; 0 = default
  uint32_t group_len = 0;   // four-sided; 0 = default
  uint32_t sample_len = 0;  // four-sided; 0 = default
  std::vector<Point> points;
  std::string text;
};

void save_index(std::ostream& out, const IndexFile& file);
// Throws std::runtime_error on bad magic, unsupported version, or truncation.
IndexFile load_index(std::istream& in);

void save_index_file(const std::string& path, const IndexFile& file);
IndexFile load_index_file(const std::string& path);

}  // namespace srr
