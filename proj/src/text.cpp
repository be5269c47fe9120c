#include "agtk/text.hpp"

#include <utility>

#include "agtk/error.hpp"

namespace agtk::text {

namespace {

bool is_continuation(unsigned char c) { return (c & 0xC0) == 0x80; }

// Width of the sequence starting at s[i], validating continuation bytes.
std::size_t sequence_width(std::string_view s, std::size_t i) {
  auto lead = static_cast<unsigned char>(s[i]);
  std::size_t width = 1;
  if (lead >= 0xF0 && lead < 0xF8) width = 4;
  else if (lead >= 0xE0) width = lead < 0xF0 ? 3 : 1;
  else if (lead >= 0xC0) width = 2;
  if (i + width > s.size()) return 1;
  for (std::size_t k = 1; k < width; ++k) {
    if (!is_continuation(static_cast<unsigned char>(s[i + k]))) return 1;
  }
  return width;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

}  // namespace

std::size_t length(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); i += sequence_width(s, i)) ++n;
  return n;
}

std::size_t byte_offset(std::string_view s, std::size_t index) {
  std::size_t i = 0;
  for (std::size_t n = 0; n < index; ++n) {
    if (i >= s.size()) {
      throw Error(ErrorCode::BadTextOffset,
                  "offset " + std::to_string(index) + " beyond text of length " +
                      std::to_string(length(s)));
    }
    i += sequence_width(s, i);
  }
  return i;
}

std::size_t char_index(std::string_view s, std::size_t byte) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < byte && i < s.size(); i += sequence_width(s, i)) ++n;
  return n;
}

std::string_view trim_left(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && is_space(s[i])) ++i;
  return s.substr(i);
}

std::string_view trim_right(std::string_view s) {
  std::size_t n = s.size();
  while (n > 0 && is_space(s[n - 1])) --n;
  return s.substr(0, n);
}

std::string_view trim(std::string_view s) { return trim_right(trim_left(s)); }

std::pair<std::string, std::string> split_trimmed(std::string_view s, std::size_t index) {
  std::size_t cut = byte_offset(s, index);
  return {std::string(trim_right(s.substr(0, cut))), std::string(trim_left(s.substr(cut)))};
}

std::string join_collapsing(std::string_view left, std::string_view sep, std::string_view right) {
  if (left.empty()) return std::string(right);
  if (right.empty()) return std::string(left);
  std::string out;
  out.reserve(left.size() + sep.size() + right.size());
  out.append(left).append(sep).append(right);
  return out;
}

}  // namespace agtk::text
