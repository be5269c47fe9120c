#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "agtk/graph.hpp"

namespace agtk::formats {

struct TableColumn {
  std::string name;
  int width = 10;

  friend bool operator==(const TableColumn&, const TableColumn&) = default;
};

/// Layout of a delimited table. Every record starts with two time fields
/// (start, end); `columns` names the feature fields that follow.
struct TableConfig {
  char delimiter = ',';
  std::vector<TableColumn> columns;
  bool has_header = false;

  /// Index of a feature column, or -1.
  int column_index(std::string_view name) const;
  /// Throws BadConfig on duplicate/empty/reserved names, non-positive widths,
  /// or a delimiter that cannot be used (quote, CR, LF).
  void check() const;

  friend bool operator==(const TableConfig&, const TableConfig&) = default;
};

/// Column-configuration file:
///
///   start,end,speaker,transcription     <- header line; the character after
///   5,40                                   "start" is the delimiter
///   header                              <- optional: "header" | "noheader"
TableConfig parse_table_config(std::string_view text);
std::string emit_table_config(const TableConfig& config);

/// Annotation type given to table rows.
inline constexpr std::string_view kRowType = "row";

/// One "row" annotation per record, with two fresh anchors each. Empty time
/// fields leave the anchor untimed. Every configured column becomes a
/// feature, in column order.
///
/// Errors: BadTime(row), ColumnCountMismatch(row). Rows are 1-based record
/// numbers, header included.
AnnotationGraph parse_table(std::string_view text, const TableConfig& config);

/// Emits every "row" annotation in graph order; missing features are empty
/// fields. Fields containing the delimiter, a quote, CR or LF are quoted
/// with embedded quotes doubled.
std::string emit_table(const AnnotationGraph& graph, const TableConfig& config);

/// Low-level record splitter shared with the config reader.
std::vector<std::vector<std::string>> split_records(std::string_view text, char delimiter);
std::string quote_field(std::string_view field, char delimiter);

}  // namespace agtk::formats
