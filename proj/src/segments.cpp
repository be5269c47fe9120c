#include "agtk/segments.hpp"

#include <algorithm>
#include <charconv>

#include "agtk/error.hpp"
#include "agtk/text.hpp"

namespace agtk::segments {

namespace {

bool before(const Segment& a, const Segment& b) {
  if (a.region.start != b.region.start) return a.region.start < b.region.start;
  if (a.region.end != b.region.end) return a.region.end < b.region.end;
  return a.id < b.id;
}

void resort(ChannelDoc& ch) { std::sort(ch.segments.begin(), ch.segments.end(), before); }

std::size_t position(const ChannelDoc& ch, SegmentId id) {
  auto it = std::find_if(ch.segments.begin(), ch.segments.end(), [&](const Segment& s) { return s.id == id; });
  return static_cast<std::size_t>(it - ch.segments.begin());
}

std::size_t current_position(const ChannelDoc& ch) {
  if (!ch.current) throw Error(ErrorCode::NoCurrent, "no segment selected");
  std::size_t pos = position(ch, *ch.current);
  if (pos == ch.segments.size()) throw Error(ErrorCode::NoCurrent, "selected segment no longer exists");
  return pos;
}

SegmentId add(ChannelDoc& ch, Region region, std::string speaker, std::string text) {
  SegmentId id = ch.next_id++;
  ch.segments.push_back(Segment{id, region, std::move(speaker), std::move(text)});
  resort(ch);
  ch.current = id;
  return id;
}

}  // namespace

const Segment* ChannelDoc::find(SegmentId id) const {
  for (const auto& s : segments) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

const Segment& ChannelDoc::current_segment() const { return segments[current_position(*this)]; }

bool ChannelDoc::is_sorted() const { return std::is_sorted(segments.begin(), segments.end(), before); }

SegmentId create_segment(ChannelDoc& ch, Region region) {
  region = Region::make(region.start, region.end);
  return add(ch, region, ch.speaker, "");
}

std::optional<SegmentId> press_anchor(ChannelDoc& ch, TimeOffset t) {
  if (!ch.pending_anchor) {
    ch.pending_anchor = t;
    return std::nullopt;
  }
  TimeOffset first = *ch.pending_anchor;
  ch.pending_anchor.reset();
  return add(ch, Region{std::min(first, t), std::max(first, t)}, ch.speaker, "");
}

void stop_playback(ChannelDoc& ch) { ch.pending_anchor.reset(); }

void delete_segment(ChannelDoc& ch) {
  std::size_t pos = current_position(ch);
  ch.segments.erase(ch.segments.begin() + static_cast<std::ptrdiff_t>(pos));
  ch.current.reset();
}

void change_boundaries(ChannelDoc& ch, Region region) {
  std::size_t pos = current_position(ch);
  ch.segments[pos].region = Region::make(region.start, region.end);
  resort(ch);
}

void set_text(ChannelDoc& ch, std::string text) {
  std::size_t pos = current_position(ch);
  ch.segments[pos].text = std::move(text);
}

std::pair<SegmentId, SegmentId> split_segment(ChannelDoc& ch, std::size_t text_offset, TimeOffset t) {
  std::size_t pos = current_position(ch);
  Segment cur = ch.segments[pos];
  if (text_offset > text::length(cur.text)) {
    throw Error(ErrorCode::BadTextOffset, "offset " + std::to_string(text_offset) + " beyond text of length " +
                                              std::to_string(text::length(cur.text)));
  }
  if (!(cur.region.start < t && t < cur.region.end)) {
    throw Error(ErrorCode::SplitPointOutOfRange,
                format_seconds(t) + " is not strictly inside [" + format_seconds(cur.region.start) + ", " +
                    format_seconds(cur.region.end) + "]");
  }
  auto [left_text, right_text] = text::split_trimmed(cur.text, text_offset);
  Segment& left = ch.segments[pos];
  left.region.end = t;
  left.text = std::move(left_text);
  SegmentId right = add(ch, Region{t, cur.region.end}, cur.speaker, std::move(right_text));
  return {cur.id, right};
}

SegmentId join_with_previous(ChannelDoc& ch) {
  std::size_t pos = current_position(ch);
  if (pos == 0) throw Error(ErrorCode::NoPrevious, "the first segment has no predecessor");
  Segment cur = ch.segments[pos];
  Segment& prev = ch.segments[pos - 1];
  prev.region.end = cur.region.end;
  prev.text = text::join_collapsing(prev.text, " ", cur.text);
  SegmentId merged = prev.id;
  ch.segments.erase(ch.segments.begin() + static_cast<std::ptrdiff_t>(pos));
  resort(ch);
  ch.current = merged;
  return merged;
}

void squeeze(ChannelDoc& ch) {
  std::size_t pos = current_position(ch);
  if (pos == 0) throw Error(ErrorCode::NoPrevious, "the first segment has no predecessor");
  const Segment& prev = ch.segments[pos - 1];
  Segment& cur = ch.segments[pos];
  if (prev.region.end > cur.region.end) {
    throw Error(ErrorCode::WouldInvert, "previous segment ends after the current one");
  }
  cur.region.start = prev.region.end;
  resort(ch);
}

AnnotationGraph to_graph(const ChannelDoc& ch) {
  AnnotationGraph g("ch" + std::to_string(ch.channel));
  for (const auto& s : ch.segments) {
    auto a = g.add_anchor(s.region.start);
    auto b = g.add_anchor(s.region.end);
    FeatureMap f{{"speaker", s.speaker}, {"text", s.text}, {"channel", std::to_string(ch.channel)}};
    g.insert_annotation(Annotation{"e" + std::to_string(s.id), "segment", a, b, std::move(f)});
  }
  return g;
}

ChannelDoc from_graph(const AnnotationGraph& graph, int channel) {
  ChannelDoc ch;
  ch.channel = channel;
  for (const auto& ann : graph.annotations()) {
    if (ann.type != "segment") continue;
    const Anchor* s = graph.find_anchor(ann.start);
    const Anchor* e = graph.find_anchor(ann.end);
    if (!s || !e || !s->offset || !e->offset) {
      throw Error(ErrorCode::SchemaViolation, "segment " + ann.id + " is not time-aligned");
    }
    auto id = id_number(ann.id, 'e');
    if (!id) throw Error(ErrorCode::SchemaViolation, "bad segment id " + ann.id);
    ch.segments.push_back(Segment{*id, Region::make(*s->offset, *e->offset), ann.features.get_or("speaker"),
                                  ann.features.get_or("text")});
    ch.next_id = std::max(ch.next_id, *id + 1);
  }
  resort(ch);
  return ch;
}

}  // namespace agtk::segments
