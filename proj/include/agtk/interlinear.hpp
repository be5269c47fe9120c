#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "agtk/graph.hpp"
#include "agtk/time.hpp"

namespace agtk::interlinear {

/// Tier types and how they relate. A *tier* is either a lone type or an
/// equivalence class; the class is named after its first member in `types`
/// order, and every member's text lives on the same cell.
struct TypeConfig {
  std::vector<std::string> types;
  /// Per-unit free translation; never a cell tier.
  std::string translation_type = "FT";
  /// (dominating type, dominated type).
  std::vector<std::pair<std::string, std::string>> dominates;
  std::vector<std::vector<std::string>> equiv_classes;
  /// Join separator per tier; default "".
  std::map<std::string, std::string> separators;

  /// Throws BadConfig: unknown or duplicate types, a type in two classes,
  /// class members with different dominance, a type with two dominating
  /// tiers, or a dominance cycle.
  void check() const;

  std::string tier_of(std::string_view type) const;  // UnknownType
  std::vector<std::string> members(std::string_view tier) const;
  std::vector<std::string> tiers() const;
  std::vector<std::string> root_tiers() const;
  std::optional<std::string> parent_tier(std::string_view tier) const;
  std::vector<std::string> child_tiers(std::string_view tier) const;
  std::string separator(std::string_view tier) const;

  friend bool operator==(const TypeConfig&, const TypeConfig&) = default;
};

/// Line-oriented configuration:
///
///   types FT WD MP MP-GLOSS
///   translation FT
///   dominates WD MP
///   equivalent MP MP-GLOSS
///   separator WD " "
///
/// A `dominates` line applies to every member of the classes it names.
TypeConfig parse_type_config(std::string_view text);
std::string emit_type_config(const TypeConfig& config);

using CellId = std::uint64_t;

struct Cell {
  CellId id = 0;
  std::string tier;
  /// One text per member of the tier, in members() order.
  std::vector<std::string> texts;
  std::optional<Region> region;
  CellId parent = 0;  // 0 for cells of a root tier
  std::map<std::string, std::vector<CellId>> children;

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct Unit {
  CellId id = 0;
  std::string translation;
  std::map<std::string, std::vector<CellId>> roots;

  friend bool operator==(const Unit&, const Unit&) = default;
};

struct IlDoc {
  TypeConfig config;
  std::vector<Unit> units;
  std::map<CellId, Cell> cells;
  std::optional<CellId> current;
  std::optional<std::size_t> selected_unit;
  CellId next_id = 1;

  explicit IlDoc(TypeConfig cfg = {});

  const Cell& cell(CellId id) const;  // UnknownCell
  const std::string& text(CellId id, std::string_view type) const;
  std::size_t unit_of(CellId id) const;
  /// Cells of one tier in a unit, in reading order.
  std::vector<CellId> tier_cells(std::size_t unit, std::string_view tier) const;
  /// Units, translations and cells; ignores selection and id counters.
  bool same_content(const IlDoc& other) const;
};

std::size_t add_unit(IlDoc& doc, std::string translation = {});
void set_translation(IlDoc& doc, std::size_t unit, std::string text);
void select_cell(IlDoc& doc, CellId id);
void select_unit(IlDoc& doc, std::size_t unit);
/// Sets one member text of the current cell. Errors: NoCurrent, UnknownType.
void set_text(IlDoc& doc, std::string_view type, std::string text);

/// New empty cell after the current one (or first cell of the selected
/// unit's top tier), with one empty child per dominated tier, recursively.
/// The new cell becomes current. Errors: NoCurrent.
CellId insert_cell_after(IlDoc& doc);
/// Removes the current cell and everything it dominates. Errors: NoCurrent.
void delete_cell(IlDoc& doc);
/// Splits every member text at `text_offset` (clamped per member) and
/// divides dominated cells by cumulative text length. The right half is new
/// and becomes current. Errors: NoCurrent, BadTextOffset,
/// SplitPointOutOfRange, OutsideParent (a child region would straddle `t`).
std::pair<CellId, CellId> split_cell(IlDoc& doc, std::size_t text_offset,
                                     std::optional<TimeOffset> t = std::nullopt);
/// Merges the current cell into its preceding sibling, which becomes
/// current. Errors: NoCurrent, NoPreviousSibling.
CellId join_cell(IlDoc& doc);
/// Errors: NoCurrent, BadRegion, OutsideParent.
void align_cell(IlDoc& doc, Region region);

/// Broken structural invariants, as readable lines.
std::vector<std::string> il_violations(const IlDoc& doc);

/// Graph "il" holds units and cells; graph "config" holds the type
/// configuration text.
AgSet to_agset(const IlDoc& doc);
/// Errors: SchemaViolation, BadConfig.
IlDoc from_agset(const AgSet& set);

}  // namespace agtk::interlinear
