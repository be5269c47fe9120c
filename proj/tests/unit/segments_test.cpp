#include "agtk/formats/aif.hpp"
#include "agtk/formats/lcf.hpp"
#include "agtk/segments.hpp"
#include "agtk/text.hpp"
#include "doctest.h"
#include "expect.hpp"
#include "gen.hpp"

using namespace agtk;
using namespace agtk::segments;
using agtk::testing::code_of;
using agtk::testing::Rng;
using agtk::testing::sec;

namespace {

Region reg(double a, double b) { return Region::make(sec(a), sec(b)); }

SegmentId add(ChannelDoc& ch, double a, double b, const std::string& text = {}) {
  auto id = create_segment(ch, reg(a, b));
  if (!text.empty()) set_text(ch, text);
  return id;
}

bool sorted_by_scan(const ChannelDoc& ch) {
  for (std::size_t i = 1; i < ch.segments.size(); ++i) {
    const auto& p = ch.segments[i - 1];
    const auto& c = ch.segments[i];
    if (std::tie(p.region.start, p.region.end, p.id) > std::tie(c.region.start, c.region.end, c.id)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("segments") {

TEST_CASE("create_segment keeps sort order") {
  ChannelDoc ch;
  add(ch, 3, 4);
  auto id = add(ch, 1, 2);
  REQUIRE(ch.segments.size() == 2);
  CHECK(ch.segments[0].id == id);
  CHECK(ch.current == id);
  CHECK(ch.segments[0].text.empty());
  CHECK(code_of([&] { create_segment(ch, Region{sec(2), sec(1)}); }) == ErrorCode::BadRegion);
}

TEST_CASE("press_anchor and stop_playback") {
  ChannelDoc ch;
  CHECK_FALSE(press_anchor(ch, sec(1)).has_value());
  CHECK(ch.pending_anchor == sec(1));
  auto id = press_anchor(ch, sec(2.5));
  REQUIRE(id.has_value());
  CHECK(ch.find(*id)->region == reg(1, 2.5));
  CHECK_FALSE(ch.pending_anchor.has_value());
  press_anchor(ch, sec(2));
  auto id2 = press_anchor(ch, sec(1));
  CHECK(ch.find(*id2)->region == reg(1, 2));

  press_anchor(ch, sec(1));
  stop_playback(ch);
  CHECK_FALSE(ch.pending_anchor.has_value());
  stop_playback(ch);
  CHECK_FALSE(ch.pending_anchor.has_value());
  press_anchor(ch, sec(2));
  CHECK(ch.pending_anchor == sec(2));
}

TEST_CASE("delete_segment") {
  ChannelDoc ch;
  add(ch, 1, 2);
  add(ch, 3, 4);
  delete_segment(ch);
  CHECK(ch.segments.size() == 1);
  CHECK_FALSE(ch.current.has_value());
  CHECK(code_of([&] { delete_segment(ch); }) == ErrorCode::NoCurrent);
  ch.current = ch.segments[0].id;
  auto old = ch.segments[0].id;
  delete_segment(ch);
  auto fresh = add(ch, 1, 2);
  CHECK(fresh != old);
}

TEST_CASE("change_boundaries re-sorts and keeps text") {
  ChannelDoc ch;
  add(ch, 1, 2, "one");
  auto b = add(ch, 3, 4, "two");
  change_boundaries(ch, reg(0.5, 4));
  CHECK(ch.segments[0].id == b);
  CHECK(ch.segments[0].text == "two");
  ch.current = ch.segments[1].id;
  change_boundaries(ch, reg(0.5, 2));
  CHECK(ch.find(*ch.current)->text == "one");
  CHECK(code_of([&] { change_boundaries(ch, Region{sec(3), sec(1)}); }) == ErrorCode::BadRegion);
  CHECK(sorted_by_scan(ch));
}

TEST_CASE("split_segment example and errors") {
  ChannelDoc ch;
  ch.speaker = "A";
  auto id = add(ch, 1, 3, "hello there");
  auto original = *ch.find(id);
  auto [left, right] = split_segment(ch, 6, sec(2));
  CHECK(left == id);
  CHECK(ch.find(left)->region == reg(1, 2));
  CHECK(ch.find(left)->text == "hello");
  CHECK(ch.find(right)->region == reg(2, 3));
  CHECK(ch.find(right)->text == "there");
  CHECK(ch.find(right)->speaker == "A");
  CHECK(ch.current == right);
  join_with_previous(ch);
  REQUIRE(ch.segments.size() == 1);
  CHECK(ch.segments[0] == original);

  CHECK(code_of([&] { split_segment(ch, 6, sec(1)); }) == ErrorCode::SplitPointOutOfRange);
  CHECK(code_of([&] { split_segment(ch, 6, sec(3)); }) == ErrorCode::SplitPointOutOfRange);
  CHECK(code_of([&] { split_segment(ch, 99, sec(2)); }) == ErrorCode::BadTextOffset);
  ch.current.reset();
  CHECK(code_of([&] { split_segment(ch, 0, sec(2)); }) == ErrorCode::NoCurrent);
}

TEST_CASE("join_with_previous") {
  ChannelDoc ch;
  add(ch, 1, 2, "a");
  add(ch, 2, 3, "b");
  auto merged = join_with_previous(ch);
  REQUIRE(ch.segments.size() == 1);
  CHECK(ch.find(merged)->region == reg(1, 3));
  CHECK(ch.find(merged)->text == "a b");
  CHECK(ch.current == merged);
  CHECK(code_of([&] { join_with_previous(ch); }) == ErrorCode::NoPrevious);

  ChannelDoc e;
  add(e, 1, 2);
  add(e, 2, 3, "b");
  CHECK(e.find(join_with_previous(e))->text == "b");
}

TEST_CASE("squeeze") {
  ChannelDoc ch;
  add(ch, 1, 2);
  auto cur = add(ch, 2.5, 3);
  squeeze(ch);
  CHECK(ch.find(cur)->region == reg(2, 3));
  auto before = ch.segments;
  squeeze(ch);
  CHECK(ch.segments == before);

  ChannelDoc w;
  add(w, 1, 5);
  add(w, 2, 3);
  CHECK(code_of([&] { squeeze(w); }) == ErrorCode::WouldInvert);

  ChannelDoc first;
  add(first, 1, 2);
  CHECK(code_of([&] { squeeze(first); }) == ErrorCode::NoPrevious);
}

TEST_CASE("random split/join round trips") {
  Rng rng(41);
  for (int i = 0; i < 500; ++i) {
    ChannelDoc ch = testing::random_channel(rng, testing::uniform(rng, 1, 10));
    const auto& victim = ch.segments[testing::uniform(rng, 0, ch.segments.size() - 1)];
    if (victim.region.end.micros - victim.region.start.micros < 2) continue;
    ch.current = victim.id;
    const Segment original = victim;
    const auto all_before = ch.segments;
    // split only at word boundaries so trimming is undone by the join
    std::vector<std::size_t> cuts{0, text::length(original.text)};
    for (std::size_t k = 0; k < original.text.size(); ++k) {
      if (original.text[k] == ' ') cuts.push_back(text::char_index(original.text, k));
    }
    std::size_t offset = testing::pick(rng, cuts);
    auto t = TimeOffset::from_micros(original.region.start.micros + 1 +
                                     static_cast<std::int64_t>(testing::uniform(
                                         rng, 0, static_cast<std::size_t>(original.region.end.micros - original.region.start.micros - 2))));
    split_segment(ch, offset, t);
    REQUIRE(sorted_by_scan(ch));
    join_with_previous(ch);
    REQUIRE(sorted_by_scan(ch));
    REQUIRE(ch.segments == all_before);
  }
}

TEST_CASE("sorted order holds after every operation") {
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    ChannelDoc ch = testing::random_channel(rng, testing::uniform(rng, 0, 8), true);
    for (int step = 0; step < 30; ++step) {
      if (!ch.segments.empty() && testing::chance(rng, 0.7)) {
        ch.current = testing::pick(rng, ch.segments).id;
      }
      try {
        auto a = TimeOffset::from_millis(static_cast<std::int64_t>(testing::uniform(rng, 0, 60000)));
        auto b = TimeOffset::from_millis(a.micros / 1000 + static_cast<std::int64_t>(testing::uniform(rng, 0, 4000)));
        switch (testing::uniform(rng, 0, 7)) {
          case 0: create_segment(ch, Region::make(a, b)); break;
          case 1: delete_segment(ch); break;
          case 2: change_boundaries(ch, Region::make(a, b)); break;
          case 3: split_segment(ch, 0, a); break;
          case 4: join_with_previous(ch); break;
          case 5: squeeze(ch); break;
          case 6: press_anchor(ch, a); break;
          case 7: stop_playback(ch); break;
        }
      } catch (const Error&) {
      }
      REQUIRE(sorted_by_scan(ch));
      REQUIRE(ch.is_sorted());
    }
  }
}

TEST_CASE("squeeze is idempotent on non-overlapping channels") {
  Rng rng(44);
  for (int i = 0; i < 300; ++i) {
    ChannelDoc ch = testing::random_channel(rng, testing::uniform(rng, 2, 10));
    ch.current = ch.segments[testing::uniform(rng, 1, ch.segments.size() - 1)].id;
    squeeze(ch);
    auto once = ch.segments;
    squeeze(ch);
    REQUIRE(ch.segments == once);
    REQUIRE(sorted_by_scan(ch));
  }
}

TEST_CASE("channel graph encoding round trips through AIF and LCF") {
  Rng rng(43);
  for (int i = 0; i < 100; ++i) {
    ChannelDoc ch = testing::random_channel(rng, testing::uniform(rng, 0, 20));
    ch.channel = 2;
    auto g = to_graph(ch);
    for (const auto& a : g.annotations()) {
      REQUIRE(a.type == "segment");
      REQUIRE(a.features.get_or("channel") == "2");
    }
    AgSet set;
    set.graphs.push_back(g);
    auto back = from_graph(formats::parse_aif(formats::emit_aif(set)).graphs[0], 2);
    REQUIRE(back.segments == ch.segments);
    auto from_lcf = formats::parse_lcf(formats::emit_lcf(g));
    REQUIRE(from_lcf.annotations().size() == ch.segments.size());
  }
  AnnotationGraph bad;
  bad.add_annotation("segment", bad.add_anchor(), bad.add_anchor());
  CHECK(code_of([&] { from_graph(bad, 0); }) == ErrorCode::SchemaViolation);
}

}  // TEST_SUITE
