#include <algorithm>
#include <map>

#include "agtk/formats/aif.hpp"
#include "agtk/interlinear.hpp"
#include "agtk/text.hpp"
#include "doctest.h"
#include "expect.hpp"
#include "gen.hpp"

using namespace agtk;
using namespace agtk::interlinear;
using namespace agtk::formats;
using agtk::testing::code_of;
using agtk::testing::Rng;
using agtk::testing::sec;

namespace {

Region reg(double a, double b) { return Region::make(sec(a), sec(b)); }

// One unit, one WD "okkodu" over MPs "ok" and "kodu" glossed "GO" and "PAST".
struct Okkodu {
  IlDoc doc{agtk::testing::wd_mp_config()};
  CellId wd = 0, ok = 0, kodu = 0;

  Okkodu() {
    add_unit(doc, "he went");
    select_unit(doc, 0);
    wd = insert_cell_after(doc);
    set_text(doc, "WD", "okkodu");
    ok = doc.cell(wd).children.at("MP").front();
    select_cell(doc, ok);
    set_text(doc, "MP", "ok");
    set_text(doc, "MP-GLOSS", "GO");
    kodu = insert_cell_after(doc);
    set_text(doc, "MP", "kodu");
    set_text(doc, "MP-GLOSS", "PAST");
  }
};

// Children of each WD, read in WD order, must be exactly the unit's MP
// sequence: contiguous runs grouped by parent, in parent order.
bool partition_contiguous(const IlDoc& doc) {
  for (std::size_t u = 0; u < doc.units.size(); ++u) {
    std::vector<CellId> expect;
    for (CellId w : doc.tier_cells(u, "WD")) {
      const auto& c = doc.cell(w);
      auto it = c.children.find("MP");
      if (it != c.children.end()) expect.insert(expect.end(), it->second.begin(), it->second.end());
    }
    if (doc.tier_cells(u, "MP") != expect) return false;
    for (CellId m : expect) {
      const auto& c = doc.cell(m);
      if (c.texts.size() != 2) return false;
    }
  }
  return true;
}

std::vector<CellId> all_cells(const IlDoc& doc, std::string_view tier) {
  std::vector<CellId> out;
  for (const auto& [id, c] : doc.cells)
    if (c.tier == tier) out.push_back(id);
  return out;
}

}  // namespace

TEST_SUITE("interlinear") {

TEST_CASE("type configuration") {
  auto cfg = agtk::testing::wd_mp_config();
  CHECK(cfg.tier_of("MP-GLOSS") == "MP");
  CHECK(cfg.members("MP") == std::vector<std::string>{"MP", "MP-GLOSS"});
  CHECK(cfg.tiers() == std::vector<std::string>{"WD", "MP"});
  CHECK(cfg.root_tiers() == std::vector<std::string>{"WD"});
  CHECK(cfg.parent_tier("MP") == "WD");
  CHECK(cfg.child_tiers("WD") == std::vector<std::string>{"MP"});
  CHECK(cfg.separator("WD") == " ");
  CHECK(cfg.separator("MP") == "");
  CHECK(parse_type_config(emit_type_config(cfg)) == cfg);

  CHECK(code_of([] { parse_type_config("types A B\ndominates A B\ndominates B A\n"); }) == ErrorCode::BadConfig);
  CHECK(code_of([] { parse_type_config("types A B C\nequivalent A B\nequivalent B C\n"); }) == ErrorCode::BadConfig);
  CHECK(code_of([] { parse_type_config("types A B\ndominates A Z\n"); }) == ErrorCode::BadConfig);
  CHECK(code_of([] { parse_type_config("types A B C\ndominates A B\ndominates C B\n"); }) == ErrorCode::BadConfig);
  CHECK(code_of([] { parse_type_config("bogus line\n"); }) == ErrorCode::BadConfig);
}

TEST_CASE("insert_cell_after creates dominated children") {
  IlDoc doc(agtk::testing::wd_mp_config());
  add_unit(doc);
  doc.selected_unit.reset();
  CHECK(code_of([&] { insert_cell_after(doc); }) == ErrorCode::NoCurrent);
  select_unit(doc, 0);
  CellId w1 = insert_cell_after(doc);
  CellId w2 = insert_cell_after(doc);
  CHECK(doc.tier_cells(0, "WD") == std::vector<CellId>{w1, w2});
  CHECK(doc.current == w2);
  const auto& kids = doc.cell(w2).children.at("MP");
  REQUIRE(kids.size() == 1);
  const auto& mp = doc.cell(kids[0]);
  CHECK(mp.texts == std::vector<std::string>{"", ""});
  CHECK(mp.parent == w2);
  CHECK(il_violations(doc).empty());
}

TEST_CASE("delete_cell cascades") {
  Okkodu f;
  select_cell(f.doc, f.kodu);
  delete_cell(f.doc);
  CHECK(f.doc.cell(f.wd).children.at("MP") == std::vector<CellId>{f.ok});
  CHECK(f.doc.cells.size() == 2);

  Okkodu g;
  select_cell(g.doc, g.wd);
  delete_cell(g.doc);
  CHECK(g.doc.cells.empty());
  CHECK(g.doc.units.size() == 1);
  CHECK(g.doc.tier_cells(0, "WD").empty());
  CHECK(il_violations(g.doc).empty());
  g.doc.current.reset();
  CHECK(code_of([&] { delete_cell(g.doc); }) == ErrorCode::NoCurrent);
}

TEST_CASE("split WD partitions children by cumulative length") {
  Okkodu f;
  select_cell(f.doc, f.wd);
  auto [l, r] = split_cell(f.doc, 2);
  CHECK(f.doc.text(l, "WD") == "ok");
  CHECK(f.doc.text(r, "WD") == "kodu");
  CHECK(f.doc.cell(l).children.at("MP") == std::vector<CellId>{f.ok});
  CHECK(f.doc.cell(r).children.at("MP") == std::vector<CellId>{f.kodu});
  CHECK(f.doc.cell(f.kodu).parent == r);
  CHECK(f.doc.current == r);
  CHECK(il_violations(f.doc).empty());
}

TEST_CASE("split MP keeps glosses in lockstep") {
  IlDoc doc(agtk::testing::wd_mp_config());
  add_unit(doc);
  select_unit(doc, 0);
  CellId wd = insert_cell_after(doc);
  select_cell(doc, doc.cell(wd).children.at("MP").front());
  set_text(doc, "MP", "ab");
  set_text(doc, "MP-GLOSS", "PAST");
  auto [l, r] = split_cell(doc, 1);
  CHECK(doc.cell(l).texts == std::vector<std::string>{"a", "P"});
  CHECK(doc.cell(r).texts == std::vector<std::string>{"b", "AST"});
  CHECK(code_of([&] { split_cell(doc, 5); }) == ErrorCode::BadTextOffset);
}

TEST_CASE("split with a time") {
  Okkodu f;
  select_cell(f.doc, f.wd);
  align_cell(f.doc, reg(1, 2));
  CHECK(code_of([&] { split_cell(f.doc, 2, sec(1)); }) == ErrorCode::SplitPointOutOfRange);
  CHECK(code_of([&] { split_cell(f.doc, 2, sec(2)); }) == ErrorCode::SplitPointOutOfRange);
  select_cell(f.doc, f.kodu);
  align_cell(f.doc, reg(1.2, 1.8));
  select_cell(f.doc, f.wd);
  CHECK(code_of([&] { split_cell(f.doc, 2, sec(1.5)); }) == ErrorCode::OutsideParent);
  auto [l, r] = split_cell(f.doc, 2, sec(1.1));
  CHECK(f.doc.cell(l).region == reg(1, 1.1));
  CHECK(f.doc.cell(r).region == reg(1.1, 2));
  CHECK(il_violations(f.doc).empty());

  Okkodu g;
  select_cell(g.doc, g.wd);
  CHECK(code_of([&] { split_cell(g.doc, 2, sec(1)); }) == ErrorCode::SplitPointOutOfRange);
  auto halves = split_cell(g.doc, 2);
  CHECK_FALSE(g.doc.cell(halves.first).region.has_value());
  CHECK_FALSE(g.doc.cell(halves.second).region.has_value());
}

TEST_CASE("join_cell") {
  Okkodu f;
  select_cell(f.doc, f.kodu);
  CellId m = join_cell(f.doc);
  CHECK(m == f.ok);
  CHECK(f.doc.cell(m).texts == std::vector<std::string>{"okkodu", "GOPAST"});
  CHECK(f.doc.current == f.ok);
  CHECK(code_of([&] { join_cell(f.doc); }) == ErrorCode::NoPreviousSibling);

  // MPs under different WDs cannot join.
  Okkodu g;
  select_cell(g.doc, g.wd);
  auto [l, r] = split_cell(g.doc, 2);
  select_cell(g.doc, g.kodu);
  CHECK(code_of([&] { join_cell(g.doc); }) == ErrorCode::NoPreviousSibling);
  select_cell(g.doc, r);
  CHECK(join_cell(g.doc) == l);
  CHECK(g.doc.text(l, "WD") == "ok kodu");
  CHECK(g.doc.cell(l).children.at("MP") == std::vector<CellId>{g.ok, g.kodu});
  CHECK(g.doc.cell(g.kodu).parent == l);
}

TEST_CASE("join merges regions") {
  Okkodu f;
  select_cell(f.doc, f.ok);
  align_cell(f.doc, reg(1, 1.4));
  select_cell(f.doc, f.kodu);
  align_cell(f.doc, reg(1.4, 2));
  join_cell(f.doc);
  CHECK(f.doc.cell(f.ok).region == reg(1, 2));
}

TEST_CASE("align_cell") {
  Okkodu f;
  select_cell(f.doc, f.wd);
  align_cell(f.doc, reg(1, 2));
  select_cell(f.doc, f.ok);
  align_cell(f.doc, reg(1, 1.4));
  CHECK(f.doc.cell(f.ok).region == reg(1, 1.4));
  select_cell(f.doc, f.kodu);
  CHECK(code_of([&] { align_cell(f.doc, reg(0.5, 1.5)); }) == ErrorCode::OutsideParent);
  CHECK(code_of([&] { align_cell(f.doc, Region{sec(2), sec(1)}); }) == ErrorCode::BadRegion);
  select_cell(f.doc, f.wd);
  align_cell(f.doc, reg(1, 2.2));
  CHECK(f.doc.cell(f.wd).region == reg(1, 2.2));
  CHECK(code_of([&] { align_cell(f.doc, reg(1.2, 2.2)); }) == ErrorCode::OutsideParent);
}

TEST_CASE("set_text and translation") {
  Okkodu f;
  set_translation(f.doc, 0, "she went");
  CHECK(f.doc.units[0].translation == "she went");
  select_cell(f.doc, f.ok);
  CHECK(code_of([&] { set_text(f.doc, "XX", "a"); }) == ErrorCode::UnknownType);
  f.doc.current.reset();
  CHECK(code_of([&] { set_text(f.doc, "MP", "a"); }) == ErrorCode::NoCurrent);
}

TEST_CASE("random cascades keep co-texts in lockstep and partitions contiguous") {
  Rng rng(404);
  for (int round = 0; round < 60; ++round) {
    IlDoc doc = agtk::testing::random_il_doc(rng, 3);
    for (int step = 0; step < 25; ++step) {
      auto wds = all_cells(doc, "WD");
      auto mps = all_cells(doc, "MP");
      int op = static_cast<int>(agtk::testing::uniform(rng, 0, 4));
      try {
        if (op == 0 && !doc.units.empty()) {
          select_unit(doc, agtk::testing::uniform(rng, 0, doc.units.size() - 1));
          insert_cell_after(doc);
        } else if (op <= 2 && !(wds.empty() && mps.empty())) {
          auto& pool = (op == 1 || mps.empty()) && !wds.empty() ? wds : mps;
          CellId c = agtk::testing::pick(rng, pool);
          select_cell(doc, c);
          std::size_t len = agtk::text::length(doc.cell(c).texts[0]);
          split_cell(doc, agtk::testing::uniform(rng, 0, len));
        } else if (op == 3 && !mps.empty()) {
          select_cell(doc, agtk::testing::pick(rng, agtk::testing::chance(rng, 0.5) ? mps : (wds.empty() ? mps : wds)));
          join_cell(doc);
        } else if (!wds.empty()) {
          select_cell(doc, agtk::testing::pick(rng, agtk::testing::chance(rng, 0.2) ? wds : (mps.empty() ? wds : mps)));
          delete_cell(doc);
        }
      } catch (const Error& e) {
        CHECK((e.code() == ErrorCode::NoPreviousSibling || e.code() == ErrorCode::OutsideParent));
      }
      REQUIRE(il_violations(doc).empty());
      REQUIRE(partition_contiguous(doc));
    }
  }
}

TEST_CASE("split then join restores the document") {
  Rng rng(77);
  int checked = 0;
  for (int round = 0; round < 200; ++round) {
    IlDoc doc = agtk::testing::random_il_doc(rng, 2);
    auto wds = all_cells(doc, "WD");
    auto mps = all_cells(doc, "MP");
    if (mps.empty()) continue;

    // Morpheme: any offset; the tier joins with no separator.
    {
      CellId c = agtk::testing::pick(rng, mps);
      const IlDoc before = doc;
      select_cell(doc, c);
      std::size_t len = agtk::text::length(doc.cell(c).texts[0]);
      std::optional<TimeOffset> t;
      if (auto r = doc.cell(c).region; r && r->end.micros - r->start.micros > 1)
        t = TimeOffset::from_micros(agtk::testing::uniform(rng, r->start.micros + 1, r->end.micros - 1));
      split_cell(doc, agtk::testing::uniform(rng, 0, len), t);
      join_cell(doc);
      REQUIRE(doc.same_content(before));
      ++checked;
    }

    // Word: join two neighbours first, then split on the separator.
    for (CellId w : wds) {
      const auto& list = doc.units[doc.unit_of(w)].roots.at("WD");
      auto pos = std::find(list.begin(), list.end(), w);
      if (pos == list.begin()) continue;
      CellId prev = *(pos - 1);
      std::size_t offset = agtk::text::length(doc.cell(prev).texts[0]);
      if (offset == 0 || doc.cell(w).texts[0].empty()) continue;
      std::optional<TimeOffset> t;
      if (doc.cell(prev).region && doc.cell(w).region) t = doc.cell(prev).region->end;
      select_cell(doc, w);
      join_cell(doc);
      if (t && !(doc.cell(prev).region->start < *t && *t < doc.cell(prev).region->end)) break;
      const IlDoc joined = doc;
      split_cell(doc, offset, t);
      join_cell(doc);
      REQUIRE(doc.same_content(joined));
      ++checked;
      break;
    }
  }
  CHECK(checked > 200);
}

TEST_CASE("AG encoding round trips through AIF") {
  Rng rng(5);
  for (int round = 0; round < 100; ++round) {
    IlDoc doc = agtk::testing::random_il_doc(rng, agtk::testing::uniform(rng, 0, 4));
    std::string bytes = emit_aif(to_agset(doc));
    IlDoc back = from_agset(parse_aif(bytes));
    REQUIRE(back.same_content(doc));
    CHECK(back.config == doc.config);
    CHECK(emit_aif(to_agset(back)) == bytes);
  }
}

}  // TEST_SUITE
