#pragma once

#include <string>
#include <string_view>

#include "agtk/graph.hpp"

namespace agtk::formats {

enum class AifMode {
  /// Annotations must reference anchors declared in the same AG.
  strict,
  /// Referential checks are left to AnnotationGraph::validate().
  lenient,
};

/// Reads an AGSet document:
///
///   <AGSet id="S">
///    <AG id="g1">
///     <Anchor id="a1" offset="1.500000" unit="sec"/>
///     <Annotation id="e1" type="segment" start="a1" end="a2">
///      <Feature name="text">hi</Feature>
///     </Annotation>
///    </AG>
///   </AGSet>
///
/// Errors: MalformedXml (position = 1-based line), SchemaViolation, DuplicateId.
AgSet parse_aif(std::string_view xml, AifMode mode = AifMode::strict);

/// Canonical form: XML declaration, one element per line, one space of
/// indent per depth, attributes in schema order, trailing newline.
std::string emit_aif(const AgSet& set);

}  // namespace agtk::formats
