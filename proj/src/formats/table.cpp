#include "agtk/formats/table.hpp"

#include <charconv>
#include <unordered_set>

#include "agtk/error.hpp"

namespace agtk::formats {

int TableConfig::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

void TableConfig::check() const {
  if (delimiter == '"' || delimiter == '\n' || delimiter == '\r') {
    throw Error(ErrorCode::BadConfig, "unusable delimiter");
  }
  std::unordered_set<std::string> seen;
  for (const auto& col : columns) {
    if (col.name.empty()) throw Error(ErrorCode::BadConfig, "empty column name");
    if (col.name == "start" || col.name == "end") {
      throw Error(ErrorCode::BadConfig, "column name '" + col.name + "' is reserved for times");
    }
    if (!seen.insert(col.name).second) {
      throw Error(ErrorCode::BadConfig, "duplicate column '" + col.name + "'");
    }
    if (col.width <= 0) throw Error(ErrorCode::BadConfig, "width of '" + col.name + "' must be positive");
  }
}

std::vector<std::vector<std::string>> split_records(std::string_view text, char delimiter) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;  // record has content on this line

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    // A physically empty line is not a record.
    if (!(record.size() == 1 && record[0].empty() && !field_started)) records.push_back(std::move(record));
    record.clear();
    field_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      in_quotes = true;
      field_started = true;
    } else if (c == delimiter) {
      end_field();
      field_started = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_record();
    } else {
      field += c;
      field_started = true;
    }
  }
  if (in_quotes) throw Error(ErrorCode::ColumnCountMismatch, "unterminated quoted field", records.size() + 1);
  if (field_started || !field.empty()) end_record();
  return records;
}

std::string quote_field(std::string_view field, char delimiter) {
  bool needs = field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) != std::string_view::npos;
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::optional<TimeOffset> time_field(const std::string& s, std::size_t row) {
  if (s.empty()) return std::nullopt;
  try {
    return parse_seconds(s);
  } catch (const Error&) {
    throw Error(ErrorCode::BadTime, "row " + std::to_string(row) + ": '" + s + "'", row);
  }
}

}  // namespace

AnnotationGraph parse_table(std::string_view text, const TableConfig& config) {
  config.check();
  auto records = split_records(text, config.delimiter);
  const std::size_t expected = config.columns.size() + 2;
  AnnotationGraph graph;
  std::size_t first = 0;
  if (config.has_header) {
    if (records.empty()) throw Error(ErrorCode::ColumnCountMismatch, "missing header row", 1);
    const auto& header = records[0];
    bool ok = header.size() == expected && header[0] == "start" && header[1] == "end";
    for (std::size_t i = 0; ok && i < config.columns.size(); ++i) {
      ok = header[i + 2] == config.columns[i].name;
    }
    if (!ok) throw Error(ErrorCode::ColumnCountMismatch, "header disagrees with column configuration", 1);
    first = 1;
  }
  for (std::size_t r = first; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::size_t row = r + 1;
    if (rec.size() != expected) {
      throw Error(ErrorCode::ColumnCountMismatch,
                  "row " + std::to_string(row) + " has " + std::to_string(rec.size()) +
                      " fields, expected " + std::to_string(expected),
                  row);
    }
    auto start = time_field(rec[0], row);
    auto end = time_field(rec[1], row);
    if (start && end && *end < *start) {
      throw Error(ErrorCode::BadTime, "row " + std::to_string(row) + ": end precedes start", row);
    }
    FeatureMap features;
    for (std::size_t i = 0; i < config.columns.size(); ++i) {
      features.add(config.columns[i].name, rec[i + 2]);
    }
    auto a = graph.add_anchor(start);
    auto b = graph.add_anchor(end);
    graph.add_annotation(std::string(kRowType), a, b, std::move(features));
  }
  return graph;
}

std::string emit_table(const AnnotationGraph& graph, const TableConfig& config) {
  config.check();
  const char d = config.delimiter;
  std::string out;
  if (config.has_header) {
    out += "start";
    out += d;
    out += "end";
    for (const auto& col : config.columns) {
      out += d;
      out += quote_field(col.name, d);
    }
    out += '\n';
  }
  for (const auto& ann : graph.annotations()) {
    if (ann.type != kRowType) continue;
    const auto& s = graph.anchor(ann.start);
    const auto& e = graph.anchor(ann.end);
    if (s.offset) out += format_seconds(*s.offset);
    out += d;
    if (e.offset) out += format_seconds(*e.offset);
    for (const auto& col : config.columns) {
      out += d;
      out += quote_field(ann.features.get_or(col.name), d);
    }
    out += '\n';
  }
  return out;
}

TableConfig parse_table_config(std::string_view text) {
  // The header line is plain text up to the first newline; the delimiter is
  // whatever follows "start".
  auto bad = [](const std::string& why) { return Error(ErrorCode::BadConfig, why); };
  if (text.substr(0, 5) != "start" || text.size() < 6) throw bad("config must begin with 'start<delim>end'");
  TableConfig config;
  config.delimiter = text[5];
  auto records = split_records(text, config.delimiter);
  if (records.empty()) throw bad("empty config");
  const auto& header = records[0];
  if (header.size() < 2 || header[0] != "start" || header[1] != "end") {
    throw bad("config must begin with 'start<delim>end'");
  }
  for (std::size_t i = 2; i < header.size(); ++i) config.columns.push_back({header[i], 10});
  std::size_t next = 1;
  if (records.size() > next && !(records[next].size() == 1 &&
                                 (records[next][0] == "header" || records[next][0] == "noheader"))) {
    const auto& widths = records[next];
    if (widths.size() != config.columns.size()) throw bad("width count does not match column count");
    for (std::size_t i = 0; i < widths.size(); ++i) {
      int w = 0;
      auto [ptr, ec] = std::from_chars(widths[i].data(), widths[i].data() + widths[i].size(), w);
      if (ec != std::errc{} || ptr != widths[i].data() + widths[i].size()) {
        throw bad("bad width '" + widths[i] + "'");
      }
      config.columns[i].width = w;
    }
    ++next;
  }
  if (records.size() > next) {
    if (records[next].size() == 1 && records[next][0] == "header") config.has_header = true;
    else if (records[next].size() == 1 && records[next][0] == "noheader") config.has_header = false;
    else throw bad("expected 'header' or 'noheader'");
    ++next;
  }
  if (records.size() > next) throw bad("trailing content in config");
  config.check();
  return config;
}

std::string emit_table_config(const TableConfig& config) {
  config.check();
  const char d = config.delimiter;
  std::string out = "start";
  out += d;
  out += "end";
  for (const auto& col : config.columns) {
    out += d;
    out += quote_field(col.name, d);
  }
  out += '\n';
  for (std::size_t i = 0; i < config.columns.size(); ++i) {
    if (i) out += d;
    out += std::to_string(config.columns[i].width);
  }
  out += '\n';
  out += config.has_header ? "header\n" : "noheader\n";
  return out;
}

}  // namespace agtk::formats
