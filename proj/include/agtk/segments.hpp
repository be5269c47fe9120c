#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "agtk/graph.hpp"
#include "agtk/time.hpp"

namespace agtk::segments {

using SegmentId = std::uint64_t;

struct Segment {
  SegmentId id = 0;
  Region region;
  std::string speaker;
  std::string text;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// One channel's transcript. Segments stay sorted by (start, end, id) and
/// may overlap.
struct ChannelDoc {
  int channel = 0;
  /// Speaker given to newly created segments.
  std::string speaker;
  std::vector<Segment> segments;
  std::optional<SegmentId> current;
  std::optional<TimeOffset> pending_anchor;
  SegmentId next_id = 1;

  const Segment* find(SegmentId id) const;
  const Segment& current_segment() const;  // NoCurrent
  bool is_sorted() const;
};

/// Errors: BadRegion.
SegmentId create_segment(ChannelDoc& ch, Region region);
/// First press arms a start anchor; the second creates [min, max] and returns it.
std::optional<SegmentId> press_anchor(ChannelDoc& ch, TimeOffset t);
/// Drops any armed start anchor.
void stop_playback(ChannelDoc& ch);
/// Errors: NoCurrent.
void delete_segment(ChannelDoc& ch);
/// Errors: NoCurrent, BadRegion.
void change_boundaries(ChannelDoc& ch, Region region);
/// Errors: NoCurrent.
void set_text(ChannelDoc& ch, std::string text);
/// Left keeps the id; the right half is new and becomes current.
/// Errors: NoCurrent, BadTextOffset, SplitPointOutOfRange.
std::pair<SegmentId, SegmentId> split_segment(ChannelDoc& ch, std::size_t text_offset, TimeOffset t);
/// Merges the current segment into its predecessor, which becomes current.
/// Errors: NoCurrent, NoPrevious.
SegmentId join_with_previous(ChannelDoc& ch);
/// Pulls the current segment's start back (or forward) to the predecessor's
/// end. Errors: NoCurrent, NoPrevious, WouldInvert.
void squeeze(ChannelDoc& ch);

/// Annotations of type "segment" with features {speaker, text, channel};
/// segment ids become annotation ids `e<id>`.
AnnotationGraph to_graph(const ChannelDoc& ch);
/// Errors: SchemaViolation for untimed or malformed segments.
ChannelDoc from_graph(const AnnotationGraph& graph, int channel);

}  // namespace agtk::segments
