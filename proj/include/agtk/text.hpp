#pragma once

#include <cstddef>
#include <string>
#include <string_view>

// Text positions exposed by the editing modules (split offsets, cursor
// offsets, find spans) count Unicode code points of UTF-8 strings.
namespace agtk::text {

/// Number of code points. Invalid sequences count one per byte.
std::size_t length(std::string_view s);

/// Byte index of code point `index`; `index == length(s)` maps to s.size().
/// Throws BadTextOffset when out of range.
std::size_t byte_offset(std::string_view s, std::size_t index);

/// Code point index of byte position `byte` (which must start a code point).
std::size_t char_index(std::string_view s, std::size_t byte);

std::string_view trim_left(std::string_view s);
std::string_view trim_right(std::string_view s);
std::string_view trim(std::string_view s);

/// Splits at code point `index`, trimming whitespace at the cut.
std::pair<std::string, std::string> split_trimmed(std::string_view s, std::size_t index);

/// `left + sep + right`, except an empty side collapses to the other side alone.
std::string join_collapsing(std::string_view left, std::string_view sep, std::string_view right);

}  // namespace agtk::text
