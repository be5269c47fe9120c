#include "agtk/interlinear.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

#include "agtk/error.hpp"
#include "agtk/text.hpp"

namespace agtk::interlinear {

namespace {

[[noreturn]] void bad_config(const std::string& why) { throw Error(ErrorCode::BadConfig, why); }

constexpr std::string_view kCellGraph = "il";
constexpr std::string_view kConfigGraph = "config";
constexpr std::string_view kConfigType = "il-config";

}  // namespace

// ---------------------------------------------------------------- TypeConfig

namespace {

std::size_t type_index(const TypeConfig& c, std::string_view type) {
  auto it = std::find(c.types.begin(), c.types.end(), type);
  if (it == c.types.end()) throw Error(ErrorCode::UnknownType, "type '" + std::string(type) + "'");
  return static_cast<std::size_t>(it - c.types.begin());
}

const std::vector<std::string>* class_of(const TypeConfig& c, std::string_view type) {
  for (const auto& cls : c.equiv_classes) {
    if (std::find(cls.begin(), cls.end(), type) != cls.end()) return &cls;
  }
  return nullptr;
}

}  // namespace

void TypeConfig::check() const {
  std::set<std::string> seen;
  for (const auto& t : types) {
    if (t.empty()) bad_config("empty type name");
    if (t == "start" || t == "end") bad_config("type name '" + t + "' is reserved");
    if (!seen.insert(t).second) bad_config("duplicate type '" + t + "'");
  }
  if (translation_type.empty()) bad_config("empty translation type");
  auto known = [&](const std::string& t) {
    if (!seen.count(t)) bad_config("unknown type '" + t + "'");
    if (t == translation_type) bad_config("the translation type cannot be in a tier relation");
  };
  std::set<std::string> classed;
  for (const auto& cls : equiv_classes) {
    if (cls.empty()) bad_config("empty equivalence class");
    for (const auto& t : cls) {
      known(t);
      if (!classed.insert(t).second) bad_config("type '" + t + "' is in two equivalence classes");
    }
  }
  for (const auto& [p, c] : dominates) {
    known(p);
    known(c);
  }
  auto parents = [&](const std::string& t) {
    std::set<std::string> out;
    for (const auto& [p, c] : dominates) {
      if (c == t) out.insert(p);
    }
    return out;
  };
  auto kids = [&](const std::string& t) {
    std::set<std::string> out;
    for (const auto& [p, c] : dominates) {
      if (p == t) out.insert(c);
    }
    return out;
  };
  for (const auto& cls : equiv_classes) {
    for (const auto& t : cls) {
      if (parents(t) != parents(cls[0]) || kids(t) != kids(cls[0])) {
        bad_config("members of class '" + cls[0] + "' differ in dominance");
      }
    }
  }
  for (const auto& tier : tiers()) {
    std::set<std::string> ptiers;
    for (const auto& p : parents(tier)) ptiers.insert(tier_of(p));
    if (ptiers.size() > 1) bad_config("tier '" + tier + "' has more than one dominating tier");
    if (ptiers.count(tier)) bad_config("tier '" + tier + "' dominates itself");
  }
  for (const auto& tier : tiers()) {
    std::set<std::string> path{tier};
    for (auto up = parent_tier(tier); up; up = parent_tier(*up)) {
      if (!path.insert(*up).second) bad_config("dominance cycle through '" + tier + "'");
    }
  }
}

std::string TypeConfig::tier_of(std::string_view type) const {
  type_index(*this, type);
  const auto* cls = class_of(*this, type);
  if (!cls) return std::string(type);
  return *std::min_element(cls->begin(), cls->end(), [&](const auto& a, const auto& b) {
    return type_index(*this, a) < type_index(*this, b);
  });
}

std::vector<std::string> TypeConfig::members(std::string_view tier) const {
  const auto* cls = class_of(*this, tier);
  if (!cls) {
    type_index(*this, tier);
    return {std::string(tier)};
  }
  std::vector<std::string> out;
  for (const auto& t : types) {
    if (std::find(cls->begin(), cls->end(), t) != cls->end()) out.push_back(t);
  }
  return out;
}

std::vector<std::string> TypeConfig::tiers() const {
  std::vector<std::string> out;
  for (const auto& t : types) {
    if (t == translation_type) continue;
    if (tier_of(t) == t) out.push_back(t);
  }
  return out;
}

std::optional<std::string> TypeConfig::parent_tier(std::string_view tier) const {
  for (const auto& [p, c] : dominates) {
    if (tier_of(c) == tier) return tier_of(p);
  }
  return std::nullopt;
}

std::vector<std::string> TypeConfig::root_tiers() const {
  std::vector<std::string> out;
  for (const auto& t : tiers()) {
    if (!parent_tier(t)) out.push_back(t);
  }
  return out;
}

std::vector<std::string> TypeConfig::child_tiers(std::string_view tier) const {
  std::vector<std::string> out;
  for (const auto& t : tiers()) {
    auto p = parent_tier(t);
    if (p && *p == tier) out.push_back(t);
  }
  return out;
}

std::string TypeConfig::separator(std::string_view tier) const {
  auto it = separators.find(std::string(tier));
  return it == separators.end() ? std::string{} : it->second;
}

TypeConfig parse_type_config(std::string_view text) {
  TypeConfig cfg;
  std::vector<std::pair<std::string, std::string>> raw_dominates;
  std::vector<std::pair<std::string, std::string>> raw_separators;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = text::trim(line);
    if (body.empty() || body[0] == '#') continue;
    std::istringstream words{std::string(body)};
    std::string keyword;
    words >> keyword;
    auto where = " (line " + std::to_string(lineno) + ")";
    std::vector<std::string> args;
    if (keyword == "separator") {
      std::string tier;
      words >> tier;
      std::string rest;
      std::getline(words, rest);
      try {
        auto value = nlohmann::json::parse(text::trim(rest));
        if (!value.is_string()) bad_config("separator must be a quoted string" + where);
        raw_separators.emplace_back(tier, value.get<std::string>());
      } catch (const nlohmann::json::exception&) {
        bad_config("separator must be a quoted string" + where);
      }
      continue;
    }
    for (std::string w; words >> w;) args.push_back(w);
    if (keyword == "types") {
      cfg.types.insert(cfg.types.end(), args.begin(), args.end());
    } else if (keyword == "translation") {
      if (args.size() != 1) bad_config("translation takes one type" + where);
      cfg.translation_type = args[0];
    } else if (keyword == "dominates") {
      if (args.size() != 2) bad_config("dominates takes two types" + where);
      raw_dominates.emplace_back(args[0], args[1]);
    } else if (keyword == "equivalent") {
      if (args.size() < 2) bad_config("equivalent takes two or more types" + where);
      cfg.equiv_classes.push_back(args);
    } else {
      bad_config("unknown keyword '" + keyword + "'" + where);
    }
  }
  auto expand = [&](const std::string& t) -> std::vector<std::string> {
    if (const auto* cls = class_of(cfg, t)) return *cls;
    return {t};
  };
  for (const auto& [p, c] : raw_dominates) {
    for (const auto& pp : expand(p)) {
      for (const auto& cc : expand(c)) {
        std::pair<std::string, std::string> edge{pp, cc};
        if (std::find(cfg.dominates.begin(), cfg.dominates.end(), edge) == cfg.dominates.end()) {
          cfg.dominates.push_back(edge);
        }
      }
    }
  }
  cfg.check();
  for (const auto& [t, sep] : raw_separators) cfg.separators[cfg.tier_of(t)] = sep;
  return cfg;
}

std::string emit_type_config(const TypeConfig& cfg) {
  std::string out = "types";
  for (const auto& t : cfg.types) out += " " + t;
  out += "\ntranslation " + cfg.translation_type + "\n";
  for (const auto& cls : cfg.equiv_classes) {
    out += "equivalent";
    for (const auto& t : cls) out += " " + t;
    out += "\n";
  }
  for (const auto& [p, c] : cfg.dominates) out += "dominates " + p + " " + c + "\n";
  for (const auto& [tier, sep] : cfg.separators) {
    out += "separator " + tier + " " + nlohmann::json(sep).dump() + "\n";
  }
  return out;
}

// --------------------------------------------------------------------- IlDoc

IlDoc::IlDoc(TypeConfig cfg) : config(std::move(cfg)) { config.check(); }

const Cell& IlDoc::cell(CellId id) const {
  auto it = cells.find(id);
  if (it == cells.end()) throw Error(ErrorCode::UnknownCell, std::to_string(id));
  return it->second;
}

const std::string& IlDoc::text(CellId id, std::string_view type) const {
  const Cell& c = cell(id);
  auto members = config.members(c.tier);
  auto it = std::find(members.begin(), members.end(), type);
  if (it == members.end()) {
    throw Error(ErrorCode::UnknownType, "type '" + std::string(type) + "' is not part of tier " + c.tier);
  }
  return c.texts[static_cast<std::size_t>(it - members.begin())];
}

std::size_t IlDoc::unit_of(CellId id) const {
  CellId top = id;
  while (cell(top).parent != 0) top = cell(top).parent;
  for (std::size_t u = 0; u < units.size(); ++u) {
    for (const auto& [tier, list] : units[u].roots) {
      if (std::find(list.begin(), list.end(), top) != list.end()) return u;
    }
  }
  throw Error(ErrorCode::UnknownCell, "cell " + std::to_string(id) + " is not in any unit");
}

std::vector<CellId> IlDoc::tier_cells(std::size_t unit, std::string_view tier) const {
  std::vector<CellId> out;
  std::function<void(CellId)> visit = [&](CellId id) {
    const Cell& c = cell(id);
    if (c.tier == tier) {
      out.push_back(id);
      return;
    }
    for (const auto& [t, kids] : c.children) {
      for (CellId k : kids) visit(k);
    }
  };
  for (const auto& [t, list] : units.at(unit).roots) {
    for (CellId id : list) visit(id);
  }
  return out;
}

bool IlDoc::same_content(const IlDoc& other) const {
  return config == other.config && units == other.units && cells == other.cells;
}

namespace {

Cell& mut(IlDoc& doc, CellId id) {
  auto it = doc.cells.find(id);
  if (it == doc.cells.end()) throw Error(ErrorCode::UnknownCell, std::to_string(id));
  return it->second;
}

CellId require_current(const IlDoc& doc) {
  if (!doc.current || !doc.cells.count(*doc.current)) throw Error(ErrorCode::NoCurrent, "no cell selected");
  return *doc.current;
}

// The list holding `id`: its parent's child list, or its unit's root list.
std::vector<CellId>& siblings(IlDoc& doc, CellId id) {
  const Cell& c = doc.cell(id);
  if (c.parent != 0) return mut(doc, c.parent).children.at(c.tier);
  return doc.units.at(doc.unit_of(id)).roots.at(c.tier);
}

CellId make_cell(IlDoc& doc, const std::string& tier, CellId parent) {
  CellId id = doc.next_id++;
  Cell c;
  c.id = id;
  c.tier = tier;
  c.texts.assign(doc.config.members(tier).size(), "");
  c.parent = parent;
  for (const auto& child_tier : doc.config.child_tiers(tier)) c.children[child_tier] = {};
  doc.cells.emplace(id, std::move(c));
  for (const auto& child_tier : doc.config.child_tiers(tier)) {
    CellId kid = make_cell(doc, child_tier, id);
    mut(doc, id).children[child_tier].push_back(kid);
  }
  return id;
}

void erase_subtree(IlDoc& doc, CellId id) {
  Cell c = doc.cell(id);
  for (const auto& [tier, kids] : c.children) {
    for (CellId k : kids) erase_subtree(doc, k);
  }
  doc.cells.erase(id);
}

void check_children_inside(const IlDoc& doc, const Cell& c, const std::optional<Region>& region) {
  if (!region) return;
  for (const auto& [tier, kids] : c.children) {
    for (CellId k : kids) {
      const Cell& kid = doc.cell(k);
      if (kid.region && !region->contains(*kid.region)) {
        throw Error(ErrorCode::OutsideParent, "cell " + std::to_string(k) + " would fall outside its parent");
      }
    }
  }
}

}  // namespace

std::size_t add_unit(IlDoc& doc, std::string translation) {
  Unit u;
  u.id = doc.next_id++;
  u.translation = std::move(translation);
  for (const auto& tier : doc.config.root_tiers()) u.roots[tier] = {};
  doc.units.push_back(std::move(u));
  doc.selected_unit = doc.units.size() - 1;
  return doc.units.size() - 1;
}

void set_translation(IlDoc& doc, std::size_t unit, std::string text) {
  if (unit >= doc.units.size()) throw Error(ErrorCode::UnknownCell, "unit " + std::to_string(unit));
  doc.units[unit].translation = std::move(text);
}

void select_cell(IlDoc& doc, CellId id) {
  doc.cell(id);
  doc.current = id;
  doc.selected_unit = doc.unit_of(id);
}

void select_unit(IlDoc& doc, std::size_t unit) {
  if (unit >= doc.units.size()) throw Error(ErrorCode::UnknownCell, "unit " + std::to_string(unit));
  doc.selected_unit = unit;
  doc.current.reset();
}

void set_text(IlDoc& doc, std::string_view type, std::string text) {
  CellId id = require_current(doc);
  doc.text(id, type);  // validates membership
  auto members = doc.config.members(doc.cell(id).tier);
  auto idx = static_cast<std::size_t>(std::find(members.begin(), members.end(), type) - members.begin());
  mut(doc, id).texts[idx] = std::move(text);
}

CellId insert_cell_after(IlDoc& doc) {
  if (doc.current && doc.cells.count(*doc.current)) {
    CellId cur = *doc.current;
    const Cell& c = doc.cell(cur);
    CellId fresh = make_cell(doc, c.tier, c.parent);
    auto& list = siblings(doc, cur);
    list.insert(std::find(list.begin(), list.end(), cur) + 1, fresh);
    doc.current = fresh;
    return fresh;
  }
  if (!doc.selected_unit || *doc.selected_unit >= doc.units.size()) {
    throw Error(ErrorCode::NoCurrent, "select a cell or a unit first");
  }
  auto roots = doc.config.root_tiers();
  if (roots.empty()) throw Error(ErrorCode::BadConfig, "configuration has no tiers");
  CellId fresh = make_cell(doc, roots.front(), 0);
  auto& list = doc.units[*doc.selected_unit].roots[roots.front()];
  list.insert(list.begin(), fresh);
  doc.current = fresh;
  return fresh;
}

void delete_cell(IlDoc& doc) {
  CellId cur = require_current(doc);
  auto& list = siblings(doc, cur);
  list.erase(std::find(list.begin(), list.end(), cur));
  erase_subtree(doc, cur);
  doc.current.reset();
}

std::pair<CellId, CellId> split_cell(IlDoc& doc, std::size_t text_offset, std::optional<TimeOffset> t) {
  CellId cur = require_current(doc);
  const Cell original = doc.cell(cur);
  const std::string& primary = original.texts.at(0);
  if (text_offset > text::length(primary)) {
    throw Error(ErrorCode::BadTextOffset, "offset " + std::to_string(text_offset) + " beyond text of length " +
                                              std::to_string(text::length(primary)));
  }
  std::optional<Region> left_region, right_region;
  if (t) {
    if (!original.region || !(original.region->start < *t && *t < original.region->end)) {
      throw Error(ErrorCode::SplitPointOutOfRange, format_seconds(*t) + " is not strictly inside the cell");
    }
    left_region = Region{original.region->start, *t};
    right_region = Region{*t, original.region->end};
  }

  Cell left = original;
  Cell right;
  right.tier = original.tier;
  right.parent = original.parent;
  right.region = right_region;
  left.region = left_region;
  left.texts.clear();
  for (const auto& s : original.texts) {
    auto [l, r] = text::split_trimmed(s, std::min(text_offset, text::length(s)));
    left.texts.push_back(std::move(l));
    right.texts.push_back(std::move(r));
  }
  for (const auto& [tier, kids] : original.children) {
    const std::size_t sep = text::length(doc.config.separator(tier));
    std::size_t boundary = 0;
    auto& lk = left.children[tier];
    auto& rk = right.children[tier];
    lk.clear();
    for (std::size_t i = 0; i < kids.size(); ++i) {
      boundary += text::length(doc.cell(kids[i]).texts.at(0)) + (i > 0 ? sep : 0);
      (boundary <= text_offset ? lk : rk).push_back(kids[i]);
    }
  }
  Cell probe_left = left, probe_right = right;
  check_children_inside(doc, probe_left, left_region);
  check_children_inside(doc, probe_right, right_region);

  right.id = doc.next_id++;
  const CellId right_id = right.id;
  for (const auto& [tier, kids] : right.children) {
    for (CellId k : kids) mut(doc, k).parent = right_id;
  }
  mut(doc, cur) = std::move(left);
  doc.cells.emplace(right_id, std::move(right));
  auto& list = siblings(doc, cur);
  list.insert(std::find(list.begin(), list.end(), cur) + 1, right_id);
  doc.current = right_id;
  return {cur, right_id};
}

CellId join_cell(IlDoc& doc) {
  CellId cur = require_current(doc);
  auto& list = siblings(doc, cur);
  auto pos = std::find(list.begin(), list.end(), cur);
  if (pos == list.begin()) throw Error(ErrorCode::NoPreviousSibling, "no preceding cell with the same parent");
  CellId prev_id = *(pos - 1);
  list.erase(pos);

  Cell absorbed = doc.cell(cur);
  doc.cells.erase(cur);
  Cell& prev = mut(doc, prev_id);
  const std::string sep = doc.config.separator(prev.tier);
  for (std::size_t i = 0; i < prev.texts.size(); ++i) {
    prev.texts[i] = text::join_collapsing(prev.texts[i], sep, absorbed.texts[i]);
  }
  for (auto& [tier, kids] : absorbed.children) {
    auto& into = prev.children[tier];
    into.insert(into.end(), kids.begin(), kids.end());
  }
  if (prev.region && absorbed.region) {
    prev.region = Region{std::min(prev.region->start, absorbed.region->start),
                         std::max(prev.region->end, absorbed.region->end)};
  } else {
    prev.region.reset();
  }
  for (auto& [tier, kids] : absorbed.children) {
    for (CellId k : kids) mut(doc, k).parent = prev_id;
  }
  doc.current = prev_id;
  return prev_id;
}

void align_cell(IlDoc& doc, Region region) {
  CellId cur = require_current(doc);
  region = Region::make(region.start, region.end);
  const Cell& c = doc.cell(cur);
  if (c.parent != 0) {
    const Cell& parent = doc.cell(c.parent);
    if (parent.region && !parent.region->contains(region)) {
      throw Error(ErrorCode::OutsideParent, "region lies outside the parent cell's region");
    }
  }
  check_children_inside(doc, c, region);
  mut(doc, cur).region = region;
}

std::vector<std::string> il_violations(const IlDoc& doc) {
  std::vector<std::string> out;
  std::map<CellId, int> seen;
  std::function<void(CellId, CellId, const std::string&)> visit = [&](CellId id, CellId parent,
                                                                      const std::string& tier) {
    auto it = doc.cells.find(id);
    const std::string tag = "cell " + std::to_string(id);
    if (it == doc.cells.end()) {
      out.push_back(tag + " is missing");
      return;
    }
    if (++seen[id] > 1) out.push_back(tag + " appears twice");
    const Cell& c = it->second;
    if (c.tier != tier) out.push_back(tag + " listed under tier " + tier + " but is " + c.tier);
    if (c.parent != parent) out.push_back(tag + " has a stale parent link");
    if (c.texts.size() != doc.config.members(c.tier).size()) out.push_back(tag + " lost equivalence-class texts");
    if (parent != 0) {
      const Cell& p = doc.cell(parent);
      auto expected = doc.config.parent_tier(c.tier);
      if (!expected || *expected != p.tier) out.push_back(tag + " is not dominated by its parent's tier");
      if (c.region && p.region && !p.region->contains(*c.region)) out.push_back(tag + " lies outside its parent");
    } else if (doc.config.parent_tier(c.tier)) {
      out.push_back(tag + " of a dominated tier has no parent");
    }
    for (const auto& [kt, kids] : c.children) {
      for (CellId k : kids) visit(k, id, kt);
    }
  };
  for (const auto& u : doc.units) {
    for (const auto& [tier, list] : u.roots) {
      for (CellId id : list) visit(id, 0, tier);
    }
  }
  if (seen.size() != doc.cells.size()) out.push_back("unreachable cells present");
  return out;
}

// -------------------------------------------------------------- AG encoding

namespace {

std::size_t need(const IlDoc& doc, const std::map<std::string, std::vector<CellId>>& children) {
  std::size_t best = 1;
  for (const auto& [tier, kids] : children) {
    std::size_t sum = 0;
    for (CellId k : kids) sum += need(doc, doc.cell(k).children);
    best = std::max(best, sum);
  }
  return best;
}

struct Emitter {
  const IlDoc& doc;
  AnnotationGraph& graph;
  std::vector<std::string> chain;

  void assign_list(const std::vector<CellId>& list, std::size_t lo, std::size_t hi) {
    std::size_t pos = lo;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Cell& c = doc.cell(list[i]);
      std::size_t end = i + 1 == list.size() ? hi : pos + need(doc, c.children);
      emit_cell(c, pos, end);
      pos = end;
    }
  }

  void emit_cell(const Cell& c, std::size_t lo, std::size_t hi) {
    FeatureMap f;
    auto members = doc.config.members(c.tier);
    for (std::size_t i = 0; i < members.size(); ++i) f.add(members[i], c.texts[i]);
    if (c.region) {
      f.add("start", format_seconds(c.region->start));
      f.add("end", format_seconds(c.region->end));
    }
    graph.insert_annotation(Annotation{"e" + std::to_string(c.id), c.tier, chain[lo], chain[hi], std::move(f)});
    for (const auto& [tier, kids] : c.children) assign_list(kids, lo, hi);
  }
};

}  // namespace

AgSet to_agset(const IlDoc& doc) {
  AgSet set;
  AnnotationGraph graph{std::string(kCellGraph)};
  for (const auto& u : doc.units) {
    std::size_t width = need(doc, u.roots);
    Emitter em{doc, graph, {}};
    for (std::size_t i = 0; i <= width; ++i) em.chain.push_back(graph.add_anchor());
    graph.insert_annotation(Annotation{"e" + std::to_string(u.id), doc.config.translation_type, em.chain.front(),
                                       em.chain.back(), FeatureMap{{doc.config.translation_type, u.translation}}});
    for (const auto& [tier, list] : u.roots) em.assign_list(list, 0, width);
  }
  AnnotationGraph config{std::string(kConfigGraph)};
  auto a = config.add_anchor();
  config.add_annotation(std::string(kConfigType), a, a, FeatureMap{{"text", emit_type_config(doc.config)}});
  set.graphs.push_back(std::move(graph));
  set.graphs.push_back(std::move(config));
  return set;
}

IlDoc from_agset(const AgSet& set) {
  auto schema = [](const std::string& why) { return Error(ErrorCode::SchemaViolation, why); };
  const AnnotationGraph* cells_graph = nullptr;
  const AnnotationGraph* config_graph = nullptr;
  for (const auto& g : set.graphs) {
    if (g.id() == kCellGraph) cells_graph = &g;
    if (g.id() == kConfigGraph) config_graph = &g;
  }
  if (!cells_graph || !config_graph) throw schema("interlinear documents need AGs 'il' and 'config'");
  const std::string* cfg_text = nullptr;
  for (const auto& ann : config_graph->annotations()) {
    if (ann.type == kConfigType) cfg_text = ann.features.find("text");
  }
  if (!cfg_text) throw schema("missing type configuration");
  IlDoc doc(parse_type_config(*cfg_text));
  const AnnotationGraph& g = *cells_graph;

  // Rank anchors by a topological order; rank comparisons decide nesting.
  std::map<std::string, std::size_t> order;
  for (std::size_t i = 0; i < g.anchors().size(); ++i) order[g.anchors()[i].id] = i;
  std::vector<std::vector<std::size_t>> adj(order.size());
  std::vector<std::size_t> indeg(order.size(), 0);
  std::vector<std::size_t> comp(order.size());
  std::iota(comp.begin(), comp.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    return comp[x] == x ? x : comp[x] = root(comp[x]);
  };
  for (const auto& ann : g.annotations()) {
    auto s = order.find(ann.start);
    auto e = order.find(ann.end);
    if (s == order.end() || e == order.end()) throw schema(ann.id + " references an undeclared anchor");
    if (s->second == e->second) throw schema(ann.id + " has zero extent");
    adj[s->second].push_back(e->second);
    ++indeg[e->second];
    comp[root(s->second)] = root(e->second);
  }
  std::vector<std::size_t> rank(order.size(), 0);
  {
    std::set<std::size_t> ready;
    for (std::size_t i = 0; i < indeg.size(); ++i) {
      if (indeg[i] == 0) ready.insert(i);
    }
    std::size_t r = 0;
    while (!ready.empty()) {
      std::size_t v = *ready.begin();
      ready.erase(ready.begin());
      rank[v] = r++;
      for (std::size_t w : adj[v]) {
        if (--indeg[w] == 0) ready.insert(w);
      }
    }
    if (r != order.size()) throw schema("anchor cycle");
  }

  struct Item {
    const Annotation* ann;
    std::size_t lo, hi, component;
    CellId id;
  };
  auto item_of = [&](const Annotation& ann) {
    auto id = id_number(ann.id, 'e');
    if (!id) throw schema("bad id " + ann.id);
    std::size_t s = order.at(ann.start), e = order.at(ann.end);
    return Item{&ann, rank[s], rank[e], root(s), *id};
  };
  auto by_position = [](const Item& a, const Item& b) {
    return a.lo != b.lo ? a.lo < b.lo : a.hi > b.hi;
  };

  std::vector<Item> unit_items;
  std::map<std::string, std::vector<Item>> tier_items;
  for (const auto& ann : g.annotations()) {
    if (ann.type == doc.config.translation_type) {
      unit_items.push_back(item_of(ann));
      continue;
    }
    auto tiers = doc.config.tiers();
    if (std::find(tiers.begin(), tiers.end(), ann.type) == tiers.end()) {
      throw schema(ann.id + " has unknown tier type '" + ann.type + "'");
    }
    tier_items[ann.type].push_back(item_of(ann));
  }

  std::map<std::size_t, std::size_t> unit_by_component;
  for (const auto& item : unit_items) {
    Unit u;
    u.id = item.id;
    u.translation = item.ann->features.get_or(doc.config.translation_type);
    for (const auto& tier : doc.config.root_tiers()) u.roots[tier] = {};
    if (!unit_by_component.emplace(item.component, doc.units.size()).second) {
      throw schema("two units share anchors");
    }
    doc.units.push_back(std::move(u));
    doc.next_id = std::max(doc.next_id, item.id + 1);
  }

  for (auto& [tier, items] : tier_items) {
    std::sort(items.begin(), items.end(), by_position);
    for (const auto& item : items) {
      Cell c;
      c.id = item.id;
      c.tier = tier;
      for (const auto& m : doc.config.members(tier)) c.texts.push_back(item.ann->features.get_or(m));
      const std::string* s = item.ann->features.find("start");
      const std::string* e = item.ann->features.find("end");
      if (s && e) c.region = Region::make(parse_seconds(*s), parse_seconds(*e));
      for (const auto& child_tier : doc.config.child_tiers(tier)) c.children[child_tier] = {};
      if (doc.cells.count(c.id)) throw schema("duplicate cell id " + item.ann->id);
      doc.next_id = std::max(doc.next_id, c.id + 1);
      doc.cells.emplace(c.id, std::move(c));
    }
  }
  // Parents before children: walk tiers top-down.
  std::vector<std::string> ordered_tiers;
  std::function<void(const std::string&)> walk = [&](const std::string& tier) {
    ordered_tiers.push_back(tier);
    for (const auto& kid : doc.config.child_tiers(tier)) walk(kid);
  };
  for (const auto& tier : doc.config.root_tiers()) walk(tier);
  for (const auto& tier : ordered_tiers) {
    auto parent_tier = doc.config.parent_tier(tier);
    for (const auto& item : tier_items[tier]) {
      auto unit = unit_by_component.find(item.component);
      if (unit == unit_by_component.end()) throw schema(item.ann->id + " belongs to no unit");
      if (!parent_tier) {
        doc.units[unit->second].roots[tier].push_back(item.id);
        continue;
      }
      const Item* parent = nullptr;
      for (const auto& cand : tier_items[*parent_tier]) {
        if (cand.component == item.component && cand.lo <= item.lo && item.hi <= cand.hi) {
          parent = &cand;
          break;
        }
      }
      if (!parent) throw schema(item.ann->id + " is not nested in a " + *parent_tier + " cell");
      mut(doc, item.id).parent = parent->id;
      mut(doc, parent->id).children[tier].push_back(item.id);
    }
  }
  auto problems = il_violations(doc);
  if (!problems.empty()) throw schema(problems.front());
  return doc;
}

}  // namespace agtk::interlinear
