#include "srr/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace srr {

namespace {

int64_t parse_int(std::string_view field, const std::string& context) {
  int64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw std::runtime_error(context + ": expected integer, got '" +
                             std::string(field) + "'");
  return value;
}

}  // namespace

std::vector<Point> read_points(std::istream& in) {
  std::vector<Point> pts;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string xs, ys, extra;
    if (!(fields >> xs)) continue;  // blank
    if (xs[0] == '#') continue;
    const std::string where = "line " + std::to_string(line_no);
    if (!(fields >> ys))
      throw std::runtime_error(where + ": expected 'x y'");
    if (fields >> extra)
      throw std::runtime_error(where + ": trailing tokens after 'x y'");
    Point p;
    p.x = parse_int(xs, where);
    p.y = parse_int(ys, where);
    p.id = static_cast<uint32_t>(pts.size());
    pts.push_back(p);
  }
  return pts;
}

std::vector<Point> read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_points(in);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (!text.empty() && text.back() == '\n') text.pop_back();
  return text;
}

QueryRect parse_rect(std::string_view spec) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    const size_t colon = spec.find(':', start);
    if (colon == std::string_view::npos) {
      fields.push_back(spec.substr(start));
      break;
    }
    fields.push_back(spec.substr(start, colon - start));
    start = colon + 1;
  }
  if (fields.size() != 4)
    throw std::invalid_argument(
        "rectangle spec must be xlo:xhi:ylo:yhi, got '" + std::string(spec) +
        "'");
  QueryRect q;
  auto side = [&](std::string_view f) -> std::optional<int64_t> {
    if (f.empty()) return std::nullopt;
    try {
      return parse_int(f, "rectangle spec");
    } catch (const std::runtime_error& e) {
      throw std::invalid_argument(e.what());
    }
  };
  q.x_lo = side(fields[0]);
  q.x_hi = side(fields[1]);
  q.y_lo = side(fields[2]);
  q.y_hi = side(fields[3]);
  return q;
}

std::vector<std::string> split_pattern(std::string_view pattern) {
  std::vector<std::string> parts{""};
  for (size_t i = 0; i < pattern.size(); ++i) {
    const char c = pattern[i];
    if (c == '\\') {
      if (i + 1 >= pattern.size())
        throw std::invalid_argument("pattern ends with a dangling escape");
      const char esc = pattern[++i];
      if (esc != '*' && esc != '\\')
        throw std::invalid_argument(std::string("unknown escape '\\") + esc +
                                    "'");
      parts.back() += esc;
      continue;
    }
    if (c == '*') {
      if (!parts.back().empty()) parts.emplace_back();
      continue;
    }
    parts.back() += c;
  }
  if (parts.back().empty()) parts.pop_back();
  return parts;
}

}  // namespace srr
