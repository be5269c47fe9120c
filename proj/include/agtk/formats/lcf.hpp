#pragma once

#include <string>
#include <string_view>

#include "agtk/graph.hpp"

namespace agtk::formats {

inline constexpr std::string_view kSegmentType = "segment";

/// LDC Callhome-style transcript lines:
///
///   # comment
///   0.50 2.10 A: hello there
///
/// Each line becomes a "segment" annotation with features {speaker, text}
/// over two fresh timed anchors. Text is trimmed. Errors: BadLine(lineno).
AnnotationGraph parse_lcf(std::string_view text);

/// Emits every "segment" annotation in graph order. Throws Unrepresentable
/// for untimed anchors, speakers that are empty or contain whitespace or
/// ':', and texts with line breaks or boundary whitespace.
std::string emit_lcf(const AnnotationGraph& graph);

}  // namespace agtk::formats
