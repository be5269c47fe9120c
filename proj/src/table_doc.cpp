#include "agtk/table_doc.hpp"

#include <algorithm>

#include "agtk/error.hpp"
#include "agtk/text.hpp"

namespace agtk::table {

namespace {

using formats::kRowType;

std::size_t index_of(const std::vector<std::string>& v, const std::string& x) {
  return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
}

void require_column(const TableDoc& doc, std::string_view name) {
  if (doc.config.column_index(name) < 0) {
    throw Error(ErrorCode::UnknownColumn, "column '" + std::string(name) + "' is not configured");
  }
}

void require_row(const TableDoc& doc, const std::string& row) {
  const Annotation* ann = doc.graph.find_annotation(row);
  if (!ann || ann->type != kRowType) throw Error(ErrorCode::UnknownAnnotation, "no row '" + row + "'");
}

void drop_hidden_cursor(TableDoc& doc) {
  if (doc.cursor && !doc.is_visible(doc.cursor->row)) doc.cursor.reset();
}

}  // namespace

TableDoc TableDoc::from_graph(formats::TableConfig config, AnnotationGraph graph) {
  config.check();
  TableDoc doc;
  doc.config = std::move(config);
  for (const auto& ann : graph.annotations()) {
    if (ann.type == kRowType) doc.row_order.push_back(ann.id);
  }
  doc.graph = std::move(graph);
  return doc;
}

AnnotationGraph TableDoc::to_graph() const {
  AnnotationGraph g = graph;
  g.reorder_annotations(row_order);
  return g;
}

std::optional<std::string> TableDoc::current_row() const {
  if (!cursor) return std::nullopt;
  return cursor->row;
}

bool TableDoc::is_visible(const std::string& row) const {
  if (hide_all) return false;
  if (!view_filter) return true;
  const Annotation* ann = graph.find_annotation(row);
  if (!ann) return false;
  const std::string* v = ann->features.find(view_filter->feature);
  return v && *v == view_filter->value;
}

std::vector<std::string> TableDoc::visible_rows() const {
  std::vector<std::string> out;
  for (const auto& row : row_order) {
    if (is_visible(row)) out.push_back(row);
  }
  return out;
}

std::string TableDoc::cell(const std::string& row, std::size_t column) const {
  if (column >= config.columns.size()) return {};
  return graph.annotation(row).features.get_or(config.columns[column].name);
}

std::optional<TimeOffset> TableDoc::row_start(const std::string& row) const {
  return graph.anchor(graph.annotation(row).start).offset;
}

std::optional<TimeOffset> TableDoc::row_end(const std::string& row) const {
  return graph.anchor(graph.annotation(row).end).offset;
}

void set_region(TableDoc& doc, Region region) { doc.current_region = Region::make(region.start, region.end); }

void clear_region(TableDoc& doc) { doc.current_region.reset(); }

void set_cursor(TableDoc& doc, const std::string& row, std::size_t column, std::size_t offset) {
  require_row(doc, row);
  if (!doc.is_visible(row)) throw Error(ErrorCode::UnknownAnnotation, "row '" + row + "' is hidden");
  if (column >= std::max<std::size_t>(doc.config.columns.size(), 1)) {
    throw Error(ErrorCode::UnknownColumn, "column " + std::to_string(column));
  }
  std::size_t len = text::length(doc.cell(row, column));
  doc.cursor = Cursor{row, column, std::min(offset, len)};
}

void set_cell(TableDoc& doc, std::string value) {
  if (!doc.cursor) throw Error(ErrorCode::NoCursor, "no cell selected");
  if (doc.cursor->column >= doc.config.columns.size()) {
    throw Error(ErrorCode::UnknownColumn, "table has no feature columns");
  }
  doc.graph.set_feature(doc.cursor->row, doc.config.columns[doc.cursor->column].name, std::move(value));
  doc.cursor->offset = std::min(doc.cursor->offset, text::length(doc.cell(doc.cursor->row, doc.cursor->column)));
  drop_hidden_cursor(doc);
}

std::string insert_row(TableDoc& doc) {
  std::optional<TimeOffset> start, end;
  if (doc.current_region) {
    start = doc.current_region->start;
    end = doc.current_region->end;
  }
  FeatureMap features;
  for (const auto& col : doc.config.columns) features.add(col.name, "");
  auto a = doc.graph.add_anchor(start);
  auto b = doc.graph.add_anchor(end);
  std::string id = doc.graph.add_annotation(std::string(kRowType), a, b, std::move(features));

  auto at = doc.row_order.end();
  if (doc.cursor) at = doc.row_order.begin() + static_cast<std::ptrdiff_t>(index_of(doc.row_order, doc.cursor->row) + 1);
  doc.row_order.insert(at, id);
  if (doc.is_visible(id)) doc.cursor = Cursor{id, 0, 0};
  return id;
}

void delete_row(TableDoc& doc) {
  if (!doc.cursor) throw Error(ErrorCode::NoCurrentRow, "no row selected");
  const std::string row = doc.cursor->row;
  const std::size_t column = doc.cursor->column;
  auto visible = doc.visible_rows();
  std::size_t pos = index_of(visible, row);
  std::optional<std::string> next;
  if (pos + 1 < visible.size()) next = visible[pos + 1];
  else if (pos > 0 && pos < visible.size()) next = visible[pos - 1];

  doc.graph.delete_annotation(row);
  doc.row_order.erase(doc.row_order.begin() + static_cast<std::ptrdiff_t>(index_of(doc.row_order, row)));
  if (next) doc.cursor = Cursor{*next, column, 0};
  else doc.cursor.reset();
}

void update_row_times(TableDoc& doc) {
  if (!doc.cursor) throw Error(ErrorCode::NoCurrentRow, "no row selected");
  if (!doc.current_region) throw Error(ErrorCode::NoRegion, "no region selected");
  doc.graph.retime_annotation(doc.cursor->row, doc.current_region->start, doc.current_region->end);
}

void sort_rows(TableDoc& doc, std::string_view key) {
  if (key == "start" || key == "end") {
    const bool by_start = key == "start";
    std::vector<std::pair<std::optional<TimeOffset>, std::string>> keyed;
    for (const auto& row : doc.row_order) {
      keyed.emplace_back(by_start ? doc.row_start(row) : doc.row_end(row), row);
    }
    // nullopt orders before any value.
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < keyed.size(); ++i) doc.row_order[i] = keyed[i].second;
    return;
  }
  require_column(doc, key);
  std::vector<std::pair<std::string, std::string>> keyed;
  for (const auto& row : doc.row_order) {
    keyed.emplace_back(doc.graph.annotation(row).features.get_or(key), row);
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < keyed.size(); ++i) doc.row_order[i] = keyed[i].second;
}

std::optional<FindHit> find(TableDoc& doc, std::string_view query) {
  if (query.empty()) throw Error(ErrorCode::EmptyQuery, "nothing to search for");
  auto rows = doc.visible_rows();
  if (rows.empty()) return std::nullopt;
  const std::size_t ncols = doc.config.columns.size();
  if (ncols == 0) return std::nullopt;

  std::size_t r0 = 0, c0 = 0, o0 = 0;
  if (doc.cursor) {
    r0 = index_of(rows, doc.cursor->row);
    c0 = doc.cursor->column;
    o0 = doc.cursor->offset;
    if (r0 >= rows.size() || c0 >= ncols) r0 = c0 = o0 = 0;
  }
  const std::size_t cells = rows.size() * ncols;
  const std::size_t origin = r0 * ncols + c0;

  auto try_cell = [&](std::size_t flat, std::size_t from_char) -> std::optional<FindHit> {
    const std::string& row = rows[flat / ncols];
    std::size_t col = flat % ncols;
    std::string value = doc.cell(row, col);
    std::size_t from = from_char >= text::length(value) ? value.size() : text::byte_offset(value, from_char);
    auto hit = value.find(query, from);
    if (hit == std::string::npos) return std::nullopt;
    std::size_t b = text::char_index(value, hit);
    return FindHit{row, col, b, b + text::length(query)};
  };

  std::optional<FindHit> found = try_cell(origin, o0);
  for (std::size_t k = 1; !found && k <= cells; ++k) {
    found = try_cell((origin + k) % cells, 0);
  }
  if (found) doc.cursor = Cursor{found->row, found->column, found->end};
  return found;
}

void set_view_filter(TableDoc& doc, const std::string& feature, const std::string& value) {
  require_column(doc, feature);
  doc.view_filter = ViewFilter{feature, value};
  doc.hide_all = false;
  drop_hidden_cursor(doc);
}

void clear_view_filter(TableDoc& doc) {
  doc.view_filter.reset();
  doc.hide_all = false;
}

void hide_all(TableDoc& doc) {
  doc.hide_all = true;
  doc.cursor.reset();
}

void move_cursor(TableDoc& doc, Move direction) {
  if (!doc.cursor) throw Error(ErrorCode::NoCursor, "no cell selected");
  Cursor& c = *doc.cursor;
  const std::size_t ncols = doc.config.columns.size();
  const std::size_t last_col = ncols == 0 ? 0 : ncols - 1;
  auto rows = doc.visible_rows();
  std::size_t r = index_of(rows, c.row);
  switch (direction) {
    case Move::right:
    case Move::tab:
      if (c.column < last_col) c = Cursor{c.row, c.column + 1, 0};
      break;
    case Move::left:
      if (c.column > 0) c = Cursor{c.row, c.column - 1, 0};
      break;
    case Move::up:
      if (r > 0 && r < rows.size()) c = Cursor{rows[r - 1], c.column, 0};
      break;
    case Move::down:
      if (r + 1 < rows.size()) c = Cursor{rows[r + 1], c.column, 0};
      break;
    case Move::cell_left:
      if (c.offset > 0) --c.offset;
      break;
    case Move::cell_right:
      if (c.offset < text::length(doc.cell(c.row, c.column))) ++c.offset;
      break;
  }
}

}  // namespace agtk::table
