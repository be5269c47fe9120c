#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agtk/formats/table.hpp"
#include "agtk/graph.hpp"
#include "agtk/time.hpp"

namespace agtk::table {

/// Feature columns are indexed from 0; the start/end times belong to the row
/// rather than to a cell. `offset` counts code points within the cell.
struct Cursor {
  std::string row;
  std::size_t column = 0;
  std::size_t offset = 0;

  friend bool operator==(const Cursor&, const Cursor&) = default;
};

struct ViewFilter {
  std::string feature;
  std::string value;
};

/// A spreadsheet over "row" annotations, each aligned to a signal region.
struct TableDoc {
  formats::TableConfig config;
  AnnotationGraph graph;
  std::vector<std::string> row_order;
  std::optional<Cursor> cursor;
  std::optional<Region> current_region;
  std::optional<ViewFilter> view_filter;
  bool hide_all = false;

  /// Adopts every "row" annotation of `graph`, in graph order.
  static TableDoc from_graph(formats::TableConfig config, AnnotationGraph graph);
  /// The graph with annotations reordered to match row_order.
  AnnotationGraph to_graph() const;

  std::optional<std::string> current_row() const;
  std::vector<std::string> visible_rows() const;
  bool is_visible(const std::string& row) const;
  std::string cell(const std::string& row, std::size_t column) const;
  std::optional<TimeOffset> row_start(const std::string& row) const;
  std::optional<TimeOffset> row_end(const std::string& row) const;
};

void set_region(TableDoc& doc, Region region);
void clear_region(TableDoc& doc);
/// Places the cursor on a visible row. Errors: UnknownAnnotation, UnknownColumn.
void set_cursor(TableDoc& doc, const std::string& row, std::size_t column = 0, std::size_t offset = 0);
/// Replaces the text of the cell under the cursor. Errors: NoCursor.
void set_cell(TableDoc& doc, std::string value);

/// New blank row after the current row (or at the end), timed from the
/// current region when one is set. Becomes current if visible.
std::string insert_row(TableDoc& doc);
/// Errors: NoCurrentRow.
void delete_row(TableDoc& doc);
/// Errors: NoCurrentRow, NoRegion.
void update_row_times(TableDoc& doc);
/// Stable sort by "start", "end" or a column name. Untimed rows sort first;
/// columns compare as byte strings. Errors: UnknownColumn.
void sort_rows(TableDoc& doc, std::string_view key);

struct FindHit {
  std::string row;
  std::size_t column = 0;
  std::size_t begin = 0;  // code points, half-open
  std::size_t end = 0;

  friend bool operator==(const FindHit&, const FindHit&) = default;
};

/// Case-sensitive substring search over visible cells, starting at the
/// cursor and wrapping once. A hit moves the cursor to the end of the match.
/// Errors: EmptyQuery.
std::optional<FindHit> find(TableDoc& doc, std::string_view query);

/// Errors: UnknownColumn.
void set_view_filter(TableDoc& doc, const std::string& feature, const std::string& value);
void clear_view_filter(TableDoc& doc);
void hide_all(TableDoc& doc);

enum class Move { right, left, up, down, tab, cell_left, cell_right };
/// Errors: NoCursor.
void move_cursor(TableDoc& doc, Move direction);

}  // namespace agtk::table
