#include "agtk/store/commands.hpp"

#include <algorithm>
#include <map>

#include "agtk/error.hpp"
#include "agtk/formats/aif.hpp"
#include "agtk/formats/table.hpp"
#include "agtk/formats/tree_graph.hpp"
#include "agtk/interlinear.hpp"
#include "agtk/segments.hpp"
#include "agtk/table_doc.hpp"
#include "agtk/tree_edit.hpp"

namespace agtk::store {

using nlohmann::json;

namespace {

[[noreturn]] void bad_command(const std::string& why) { throw Error(ErrorCode::BadCommand, why); }

const json& arg(const json& args, const char* key) {
  auto it = args.find(key);
  if (it == args.end()) bad_command(std::string("missing argument '") + key + "'");
  return *it;
}

bool has(const json& args, const char* key) { return args.contains(key) && !args.at(key).is_null(); }

std::string str_arg(const json& args, const char* key) {
  const json& v = arg(args, key);
  if (!v.is_string()) bad_command(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

std::string str_arg_or(const json& args, const char* key, std::string fallback) {
  return has(args, key) ? str_arg(args, key) : fallback;
}

std::uint64_t uint_arg(const json& args, const char* key) {
  const json& v = arg(args, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    bad_command(std::string("'") + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

/// Seconds, either as a JSON number or a decimal string.
TimeOffset time_arg(const json& args, const char* key) {
  const json& v = arg(args, key);
  if (v.is_string()) return parse_seconds(v.get<std::string>());
  if (v.is_number_unsigned() || v.is_number_integer()) return parse_seconds(std::to_string(v.get<std::int64_t>()));
  if (v.is_number_float()) return parse_seconds(v.dump());
  bad_command(std::string("'") + key + "' must be a time in seconds");
}

std::vector<NodeId> selection_arg(const json& args) {
  const json& v = arg(args, "selection");
  if (!v.is_array()) bad_command("'selection' must be an array of node ids");
  std::vector<NodeId> out;
  for (const auto& x : v) {
    if (!x.is_number_unsigned() && !(x.is_number_integer() && x.get<std::int64_t>() > 0)) {
      bad_command("'selection' must hold positive integers");
    }
    out.push_back(x.get<NodeId>());
  }
  return out;
}

NodeId single(const std::vector<NodeId>& sel) {
  if (sel.size() != 1) throw Error(ErrorCode::BadSelection, "this operation takes exactly one node");
  return sel[0];
}

[[noreturn]] void unknown_op(DocumentKind kind, const std::string& op) {
  throw Error(ErrorCode::UnknownOp, "'" + op + "' is not an operation on " + std::string(kind_name(kind)) + " documents");
}

AnnotationGraph& graph_named(AgSet& set, std::string_view id) {
  for (auto& g : set.graphs) {
    if (g.id() == id) return g;
  }
  throw Error(ErrorCode::SchemaViolation, "missing AG '" + std::string(id) + "'");
}

// ------------------------------------------------------------------ tree

constexpr std::string_view kTreeGraph = "tree";

Tree decode_tree(const AgSet& set) {
  if (set.graphs.size() != 1 || set.graphs[0].id() != kTreeGraph) {
    throw Error(ErrorCode::SchemaViolation, "a tree document holds exactly one AG named 'tree'");
  }
  return formats::graph_to_tree(set.graphs[0]);
}

AgSet encode_tree(const std::string& set_id, const Tree& tree) {
  AgSet out;
  out.id = set_id;
  out.graphs.push_back(formats::tree_to_graph(tree, std::string(kTreeGraph)));
  return out;
}

void apply_tree(Tree& tree, const EditCommand& cmd) {
  const json& a = cmd.args;
  const std::string& op = cmd.op;
  if (op == "build_default_tree") {
    const json& toks = arg(a, "tokens");
    if (!toks.is_array()) bad_command("'tokens' must be an array of strings");
    std::vector<std::string> tokens;
    for (const auto& t : toks) {
      if (!t.is_string()) bad_command("'tokens' must be an array of strings");
      tokens.push_back(t.get<std::string>());
    }
    tree = build_default_tree(tokens, str_arg_or(a, "root_label", "S"), str_arg_or(a, "pos_label", "XX"));
  } else if (op == "insert_internal_node") {
    insert_internal_node(tree, selection_arg(a), str_arg(a, "label"));
  } else if (op == "delete_node") {
    delete_node(tree, single(selection_arg(a)));
  } else if (op == "move_node") {
    move_node(tree, selection_arg(a));
  } else if (op == "adjoin") {
    adjoin(tree, selection_arg(a));
  } else if (op == "add_syn_wrd") {
    std::string side = str_arg_or(a, "side", "before");
    if (side != "before" && side != "after") bad_command("'side' must be \"before\" or \"after\"");
    add_syn_wrd(tree, single(selection_arg(a)), side == "before" ? Side::before : Side::after, str_arg(a, "label"),
                str_arg_or(a, "word", "*T*"));
  } else if (op == "change_label") {
    change_label(tree, single(selection_arg(a)), str_arg(a, "label"));
  } else if (op == "coref") {
    coref(tree, selection_arg(a));
  } else {
    unknown_op(DocumentKind::tree, op);
  }
}

// ----------------------------------------------------------------- table

constexpr std::string_view kTableGraph = "doc";
constexpr std::string_view kConfigGraph = "config";
constexpr std::string_view kTableConfigType = "table-config";

table::TableDoc decode_table(const AgSet& set) {
  if (set.graphs.size() != 2) throw Error(ErrorCode::SchemaViolation, "a table document holds AGs 'config' and 'doc'");
  AgSet copy = set;
  const AnnotationGraph& cfg_graph = graph_named(copy, kConfigGraph);
  const std::string* text = nullptr;
  for (const auto& ann : cfg_graph.annotations()) {
    if (ann.type == kTableConfigType) text = ann.features.find("text");
  }
  if (!text) throw Error(ErrorCode::SchemaViolation, "missing table configuration");
  auto config = formats::parse_table_config(*text);
  AnnotationGraph rows = graph_named(copy, kTableGraph);
  for (const auto& ann : rows.annotations()) {
    if (ann.type != formats::kRowType) throw Error(ErrorCode::SchemaViolation, ann.id + " is not a row");
  }
  if (auto report = rows.validate(); !report.empty()) {
    throw Error(ErrorCode::SchemaViolation, "row graph fails validation: " + report[0].code);
  }
  return table::TableDoc::from_graph(std::move(config), std::move(rows));
}

AgSet encode_table(const std::string& set_id, const table::TableDoc& doc) {
  AgSet out;
  out.id = set_id;
  AnnotationGraph cfg{std::string(kConfigGraph)};
  auto a = cfg.add_anchor();
  cfg.add_annotation(std::string(kTableConfigType), a, a, FeatureMap{{"text", formats::emit_table_config(doc.config)}});
  out.graphs.push_back(std::move(cfg));
  AnnotationGraph rows = doc.to_graph();
  rows.set_id(std::string(kTableGraph));
  out.graphs.push_back(std::move(rows));
  return out;
}

void apply_table(table::TableDoc& doc, const EditCommand& cmd) {
  const json& a = cmd.args;
  const std::string& op = cmd.op;
  auto region_from_args = [&] {
    if (has(a, "start") || has(a, "end")) {
      table::set_region(doc, Region::make(time_arg(a, "start"), time_arg(a, "end")));
    }
  };
  if (op == "insert_row") {
    if (has(a, "after")) table::set_cursor(doc, str_arg(a, "after"));
    region_from_args();
    table::insert_row(doc);
  } else if (op == "delete_row") {
    table::set_cursor(doc, str_arg(a, "row"));
    table::delete_row(doc);
  } else if (op == "update_row_times") {
    table::set_cursor(doc, str_arg(a, "row"));
    table::set_region(doc, Region::make(time_arg(a, "start"), time_arg(a, "end")));
    table::update_row_times(doc);
  } else if (op == "sort_rows") {
    table::sort_rows(doc, str_arg(a, "key"));
  } else if (op == "set_cell") {
    std::string column = str_arg(a, "column");
    int idx = doc.config.column_index(column);
    if (idx < 0) throw Error(ErrorCode::UnknownColumn, "column '" + column + "' is not configured");
    table::set_cursor(doc, str_arg(a, "row"), static_cast<std::size_t>(idx));
    table::set_cell(doc, str_arg(a, "value"));
  } else {
    unknown_op(DocumentKind::table, op);
  }
}

// -------------------------------------------------------------- segments

std::vector<segments::ChannelDoc> decode_segments(const AgSet& set) {
  std::vector<segments::ChannelDoc> out;
  for (std::size_t i = 0; i < set.graphs.size(); ++i) {
    const std::string expected = "ch" + std::to_string(i);
    if (set.graphs[i].id() != expected) {
      throw Error(ErrorCode::SchemaViolation, "expected AG '" + expected + "', found '" + set.graphs[i].id() + "'");
    }
    out.push_back(segments::from_graph(set.graphs[i], static_cast<int>(i)));
  }
  return out;
}

AgSet encode_segments(const std::string& set_id, const std::vector<segments::ChannelDoc>& channels) {
  AgSet out;
  out.id = set_id;
  for (const auto& ch : channels) out.graphs.push_back(segments::to_graph(ch));
  return out;
}

void apply_segments(std::vector<segments::ChannelDoc>& channels, const EditCommand& cmd) {
  const json& a = cmd.args;
  const std::string& op = cmd.op;
  if (op == "add_channel") {
    segments::ChannelDoc ch;
    ch.channel = static_cast<int>(channels.size());
    channels.push_back(std::move(ch));
    return;
  }
  std::uint64_t index = uint_arg(a, "channel");
  if (index >= channels.size()) throw Error(ErrorCode::BadCommand, "no channel " + std::to_string(index));
  segments::ChannelDoc& ch = channels[index];
  if (op == "create_segment") {
    ch.speaker = str_arg_or(a, "speaker", "");
    auto id = segments::create_segment(ch, Region::make(time_arg(a, "start"), time_arg(a, "end")));
    ch.current = id;
    if (has(a, "text")) segments::set_text(ch, str_arg(a, "text"));
    return;
  }
  std::uint64_t seg = uint_arg(a, "segment");
  if (!ch.find(seg)) throw Error(ErrorCode::NoCurrent, "no segment " + std::to_string(seg));
  ch.current = seg;
  if (op == "delete_segment") {
    segments::delete_segment(ch);
  } else if (op == "change_boundaries") {
    segments::change_boundaries(ch, Region::make(time_arg(a, "start"), time_arg(a, "end")));
  } else if (op == "split_segment") {
    segments::split_segment(ch, uint_arg(a, "offset"), time_arg(a, "time"));
  } else if (op == "join_with_previous") {
    segments::join_with_previous(ch);
  } else if (op == "squeeze") {
    segments::squeeze(ch);
  } else if (op == "set_text") {
    segments::set_text(ch, str_arg(a, "text"));
  } else {
    unknown_op(DocumentKind::segments, op);
  }
}

// ----------------------------------------------------------- interlinear

void apply_interlinear(interlinear::IlDoc& doc, const EditCommand& cmd) {
  namespace il = interlinear;
  const json& a = cmd.args;
  const std::string& op = cmd.op;
  auto select = [&] { il::select_cell(doc, uint_arg(a, "cell")); };
  if (op == "add_unit") {
    il::add_unit(doc, str_arg_or(a, "translation", ""));
  } else if (op == "set_translation") {
    il::set_translation(doc, uint_arg(a, "unit"), str_arg(a, "text"));
  } else if (op == "insert_cell_after") {
    if (has(a, "cell")) {
      select();
    } else {
      il::select_unit(doc, uint_arg(a, "unit"));
    }
    il::insert_cell_after(doc);
  } else if (op == "delete_cell") {
    select();
    il::delete_cell(doc);
  } else if (op == "split_cell") {
    select();
    std::optional<TimeOffset> t;
    if (has(a, "time")) t = time_arg(a, "time");
    il::split_cell(doc, uint_arg(a, "offset"), t);
  } else if (op == "join_cell") {
    select();
    il::join_cell(doc);
  } else if (op == "align_cell") {
    select();
    il::align_cell(doc, Region::make(time_arg(a, "start"), time_arg(a, "end")));
  } else if (op == "set_text") {
    select();
    il::set_text(doc, str_arg(a, "type"), str_arg(a, "text"));
  } else {
    unknown_op(DocumentKind::interlinear, op);
  }
}

AgSet encode_interlinear(const std::string& set_id, const interlinear::IlDoc& doc) {
  AgSet out = interlinear::to_agset(doc);
  out.id = set_id;
  return out;
}

std::string violation_line(const std::string& graph, const Violation& v) {
  std::string line = graph + ": " + v.code;
  for (const auto& id : v.ids) line += " " + id;
  return line;
}

}  // namespace

std::string_view kind_name(DocumentKind kind) {
  switch (kind) {
    case DocumentKind::table: return "table";
    case DocumentKind::segments: return "segments";
    case DocumentKind::interlinear: return "interlinear";
    case DocumentKind::tree: return "tree";
  }
  return "?";
}

std::optional<DocumentKind> parse_kind(std::string_view name) {
  for (auto k : {DocumentKind::table, DocumentKind::segments, DocumentKind::interlinear, DocumentKind::tree}) {
    if (kind_name(k) == name) return k;
  }
  return std::nullopt;
}

EditCommand edit_command_from_json(const json& j) {
  if (!j.is_object()) bad_command("an edit command is a JSON object");
  EditCommand cmd;
  auto op = j.find("op");
  if (op == j.end() || !op->is_string()) bad_command("missing string field 'op'");
  cmd.op = op->get<std::string>();
  if (auto args = j.find("args"); args != j.end() && !args->is_null()) {
    if (!args->is_object()) bad_command("'args' must be an object");
    cmd.args = *args;
  }
  if (auto sel = j.find("selection"); sel != j.end()) cmd.args["selection"] = *sel;
  if (auto rev = j.find("base_revision"); rev != j.end() && !rev->is_null()) {
    if (!rev->is_number_unsigned() && !(rev->is_number_integer() && rev->get<std::int64_t>() >= 0)) {
      bad_command("'base_revision' must be a non-negative integer");
    }
    cmd.base_revision = rev->get<std::uint64_t>();
  }
  return cmd;
}

EditCommand parse_edit_command(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad_command(std::string("invalid JSON: ") + e.what());
  }
  return edit_command_from_json(j);
}

json to_json(const EditCommand& cmd) {
  json j = {{"op", cmd.op}, {"args", cmd.args}};
  if (cmd.base_revision) j["base_revision"] = *cmd.base_revision;
  return j;
}

std::vector<std::string> kind_ops(DocumentKind kind) {
  switch (kind) {
    case DocumentKind::tree:
      return {"build_default_tree", "insert_internal_node", "delete_node", "move_node",
              "adjoin",             "add_syn_wrd",          "change_label", "coref"};
    case DocumentKind::table: return {"insert_row", "delete_row", "update_row_times", "sort_rows", "set_cell"};
    case DocumentKind::segments:
      return {"add_channel", "create_segment",     "delete_segment", "change_boundaries",
              "split_segment", "join_with_previous", "squeeze",        "set_text"};
    case DocumentKind::interlinear:
      return {"add_unit",  "set_translation", "insert_cell_after", "delete_cell",
              "split_cell", "join_cell",       "align_cell",        "set_text"};
  }
  return {};
}

std::string canonicalize(DocumentKind kind, std::string_view aif) {
  AgSet set = formats::parse_aif(aif);
  switch (kind) {
    case DocumentKind::tree: decode_tree(set); break;
    case DocumentKind::table: decode_table(set); break;
    case DocumentKind::segments: decode_segments(set); break;
    case DocumentKind::interlinear: interlinear::from_agset(set); break;
  }
  return formats::emit_aif(set);
}

std::string apply_command(DocumentKind kind, std::string_view aif, const EditCommand& cmd) {
  auto ops = kind_ops(kind);
  if (std::find(ops.begin(), ops.end(), cmd.op) == ops.end()) unknown_op(kind, cmd.op);
  AgSet set = formats::parse_aif(aif);
  switch (kind) {
    case DocumentKind::tree: {
      Tree tree = decode_tree(set);
      apply_tree(tree, cmd);
      return formats::emit_aif(encode_tree(set.id, tree));
    }
    case DocumentKind::table: {
      auto doc = decode_table(set);
      apply_table(doc, cmd);
      return formats::emit_aif(encode_table(set.id, doc));
    }
    case DocumentKind::segments: {
      auto channels = decode_segments(set);
      apply_segments(channels, cmd);
      return formats::emit_aif(encode_segments(set.id, channels));
    }
    case DocumentKind::interlinear: {
      auto doc = interlinear::from_agset(set);
      apply_interlinear(doc, cmd);
      return formats::emit_aif(encode_interlinear(set.id, doc));
    }
  }
  unknown_op(kind, cmd.op);
}

std::vector<std::string> document_violations(DocumentKind kind, std::string_view aif) {
  std::vector<std::string> out;
  AgSet set;
  try {
    set = formats::parse_aif(aif, formats::AifMode::lenient);
  } catch (const Error& e) {
    return {e.what()};
  }
  for (const auto& g : set.graphs) {
    for (const auto& v : g.validate()) out.push_back(violation_line(g.id(), v));
  }
  if (!out.empty()) return out;
  try {
    switch (kind) {
      case DocumentKind::tree:
        for (const auto& line : tree_violations(decode_tree(set))) out.push_back("tree: " + line);
        break;
      case DocumentKind::table: decode_table(set); break;
      case DocumentKind::segments: decode_segments(set); break;
      case DocumentKind::interlinear:
        for (const auto& line : interlinear::il_violations(interlinear::from_agset(set))) out.push_back("il: " + line);
        break;
    }
  } catch (const Error& e) {
    out.push_back(e.what());
  }
  return out;
}

}  // namespace agtk::store
