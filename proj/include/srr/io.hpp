#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "srr/points.hpp"

namespace srr {

// Point files: one "x y" pair of integers per line; blank lines and lines
// starting with '#' are skipped. Ids are assigned in reading order. Parse
// failures throw std::runtime_error naming the line.
std::vector<Point> read_points(std::istream& in);
std::vector<Point> read_points_file(const std::string& path);

// Whole file as bytes, with one trailing newline stripped if present (text
// editors add one; a literal trailing newline can be kept by adding two).
std::string read_text_file(const std::string& path);

// Rectangle spec "xlo:xhi:ylo:yhi"; an empty field leaves that side
// unbounded (":::" is the whole plane). Throws std::invalid_argument.
QueryRect parse_rect(std::string_view spec);

// Splits a chain pattern at unescaped '*' separators into its literal parts;
// "\*" is a literal star, "\\" a literal backslash. Runs of separators and
// empty parts collapse, so "*a**b" gives {"a","b"}. Throws
// std::invalid_argument on a dangling or unknown escape.
std::vector<std::string> split_pattern(std::string_view pattern);

}  // namespace srr
