#include "agtk/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "agtk/error.hpp"
#include "agtk/formats/aif.hpp"
#include "agtk/formats/lcf.hpp"
#include "agtk/formats/table.hpp"
#include "agtk/formats/tree_graph.hpp"
#include "agtk/formats/treebank.hpp"
#include "agtk/store/service.hpp"

namespace agtk::cli {

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& bytes) {
  fs::path tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + tmp.string());
    out << bytes;
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw Error(ErrorCode::IoFailure, "cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::IoFailure, "cannot rename onto " + path);
  }
}

bool looks_like_xml(std::string_view text) {
  auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string_view::npos && text[pos] == '<';
}

std::vector<Tree> trees_of(const AgSet& set) {
  std::vector<Tree> out;
  for (const auto& g : set.graphs) out.push_back(formats::graph_to_tree(g));
  return out;
}

AgSet trees_to_set(const std::vector<Tree>& trees) {
  AgSet set;
  if (trees.size() == 1) {
    set.graphs.push_back(formats::tree_to_graph(trees[0], "tree"));
  } else {
    for (std::size_t i = 0; i < trees.size(); ++i) {
      set.graphs.push_back(formats::tree_to_graph(trees[i], "tree" + std::to_string(i + 1)));
    }
  }
  return set;
}

/// The table config stored in a table document, if any.
std::optional<formats::TableConfig> embedded_table_config(const AgSet& set) {
  for (const auto& g : set.graphs) {
    if (g.id() != "config") continue;
    for (const auto& ann : g.annotations()) {
      if (ann.type == "table-config") return formats::parse_table_config(ann.features.get_or("text"));
    }
  }
  return std::nullopt;
}

const AnnotationGraph& row_graph(const AgSet& set) {
  for (const auto& g : set.graphs) {
    if (g.id() == "doc") return g;
  }
  for (const auto& g : set.graphs) {
    for (const auto& ann : g.annotations()) {
      if (ann.type == formats::kRowType) return g;
    }
  }
  throw Error(ErrorCode::Unrepresentable, "no graph holds table rows");
}

formats::TableConfig derived_table_config(const AnnotationGraph& g) {
  formats::TableConfig cfg;
  cfg.has_header = true;
  for (const auto& ann : g.annotations()) {
    if (ann.type != formats::kRowType) continue;
    for (const auto& [name, value] : ann.features) {
      if (cfg.column_index(name) < 0) cfg.columns.push_back(formats::TableColumn{name});
    }
  }
  return cfg;
}

AgSet read_as_set(const std::string& from, const std::string& text, const std::optional<formats::TableConfig>& tcfg) {
  if (from == "aif") return formats::parse_aif(text);
  if (from == "ptb") return trees_to_set(formats::parse_treebank(text));
  if (from == "lcf") {
    AnnotationGraph g = formats::parse_lcf(text);
    g.set_id("ch0");
    AgSet set;
    set.graphs.push_back(std::move(g));
    return set;
  }
  if (!tcfg) throw UsageError("--from table needs --table-config");
  AnnotationGraph rows = formats::parse_table(text, *tcfg);
  rows.set_id("doc");
  AgSet set;
  AnnotationGraph cfg{"config"};
  auto a = cfg.add_anchor();
  cfg.add_annotation("table-config", a, a, FeatureMap{{"text", formats::emit_table_config(*tcfg)}});
  set.graphs.push_back(std::move(cfg));
  set.graphs.push_back(std::move(rows));
  return set;
}

std::string write_from_set(const std::string& to, const AgSet& set, std::optional<formats::TableConfig> tcfg) {
  if (to == "aif") return formats::emit_aif(set);
  if (to == "ptb") return formats::emit_treebank(trees_of(set));
  if (to == "lcf") {
    const AnnotationGraph* only = nullptr;
    for (const auto& g : set.graphs) {
      if (g.annotations().empty()) continue;
      if (only) throw Error(ErrorCode::Unrepresentable, "LCF holds a single channel; input has several");
      only = &g;
    }
    return only ? formats::emit_lcf(*only) : std::string{};
  }
  const AnnotationGraph& rows = row_graph(set);
  if (!tcfg) tcfg = embedded_table_config(set);
  if (!tcfg) tcfg = derived_table_config(rows);
  return formats::emit_table(rows, *tcfg);
}

store::DocumentKind infer_kind(const AgSet& set) {
  auto has = [&](std::string_view id) {
    for (const auto& g : set.graphs) {
      if (g.id() == id) return true;
    }
    return false;
  };
  if (set.graphs.size() == 1 && has("tree")) return store::DocumentKind::tree;
  if (has("il")) return store::DocumentKind::interlinear;
  if (has("doc") && has("config")) return store::DocumentKind::table;
  if (set.graphs.empty() || has("ch0")) return store::DocumentKind::segments;
  throw UsageError("cannot tell the document kind; pass --kind");
}

bool has_ext(const std::string& path, std::string_view ext) { return fs::path(path).extension() == ext; }

int cmd_convert(const std::string& from, const std::string& to, const std::string& table_config,
                const std::string& in, const std::string& out) {
  std::optional<formats::TableConfig> tcfg;
  if (!table_config.empty()) tcfg = formats::parse_table_config(read_input(table_config));
  AgSet set = read_as_set(from, read_input(in), tcfg);
  write_output(out, write_from_set(to, set, tcfg));
  return kOk;
}

int cmd_validate(const std::string& in, const std::string& kind_name, std::ostream& err) {
  std::string text = read_input(in);
  std::vector<std::string> lines;
  if (!looks_like_xml(text)) {
    try {
      for (const auto& tree : formats::parse_treebank(text)) {
        for (const auto& v : tree_violations(tree)) lines.push_back(v);
      }
    } catch (const Error& e) {
      lines.push_back(e.what());
    }
  } else if (!kind_name.empty()) {
    auto kind = store::parse_kind(kind_name);
    if (!kind) throw UsageError("unknown kind '" + kind_name + "'");
    lines = store::document_violations(*kind, text);
  } else {
    try {
      AgSet set = formats::parse_aif(text, formats::AifMode::lenient);
      for (const auto& g : set.graphs) {
        for (const auto& v : g.validate()) {
          std::string line = g.id() + ": " + v.code;
          for (const auto& id : v.ids) line += " " + id;
          lines.push_back(line);
        }
      }
    } catch (const Error& e) {
      lines.push_back(e.what());
    }
  }
  for (const auto& line : lines) err << line << "\n";
  return lines.empty() ? kOk : kFailure;
}

int cmd_apply(const std::string& script, const std::string& kind_name, const std::string& in,
              const std::string& out) {
  std::string text = read_input(in);
  const bool ptb_in = !looks_like_xml(text);
  std::string payload =
      ptb_in ? formats::emit_aif(trees_to_set(formats::parse_treebank(text))) : formats::emit_aif(formats::parse_aif(text));
  store::DocumentKind kind;
  if (!kind_name.empty()) {
    auto k = store::parse_kind(kind_name);
    if (!k) throw UsageError("unknown kind '" + kind_name + "'");
    kind = *k;
  } else {
    kind = infer_kind(formats::parse_aif(payload));
  }
  payload = store::canonicalize(kind, payload);
  std::istringstream lines(read_input(script));
  std::size_t lineno = 0;
  for (std::string line; std::getline(lines, line);) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      payload = store::apply_command(kind, payload, store::parse_edit_command(line));
    } catch (const Error& e) {
      throw Error(e.code(), "script line " + std::to_string(lineno) + ": " + e.detail());
    }
  }
  if (has_ext(out, ".ptb")) {
    payload = formats::emit_treebank(trees_of(formats::parse_aif(payload)));
  }
  write_output(out, payload);
  return kOk;
}

int cmd_yield(const std::string& in, std::ostream& out) {
  std::string text = read_input(in);
  std::vector<Tree> trees =
      looks_like_xml(text) ? trees_of(formats::parse_aif(text)) : formats::parse_treebank(text);
  std::string buf;
  for (const auto& tree : trees) {
    for (const auto& tok : terminal_yield(tree)) buf += tok + "\n";
  }
  out << buf;
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Annotation graph toolkit", "agtk"};
  app.require_subcommand(1);

  const std::vector<std::string> formats_list{"ptb", "aif", "table", "lcf"};
  std::string from, to, table_config, in, output, script, kind, root, bind;

  auto* convert = app.add_subcommand("convert", "Convert between formats");
  convert->add_option("--from", from)->required()->check(CLI::IsMember(formats_list));
  convert->add_option("--to", to)->required()->check(CLI::IsMember(formats_list));
  convert->add_option("--table-config", table_config, "Column configuration file");
  convert->add_option("IN", in)->required();
  convert->add_option("OUT", output)->required();

  auto* validate = app.add_subcommand("validate", "Report violations; exit 0 iff none");
  validate->add_option("--kind", kind, "Also check document structure for this kind");
  validate->add_option("IN", in)->required();

  auto* apply = app.add_subcommand("apply", "Apply a line-delimited JSON edit script");
  apply->add_option("--script", script)->required();
  apply->add_option("--kind", kind, "Document kind (inferred when omitted)");
  apply->add_option("IN", in)->required();
  apply->add_option("OUT", output)->required();

  auto* yield = app.add_subcommand("yield", "Print terminal words, one per line");
  yield->add_option("IN", in)->required();

  auto* serve = app.add_subcommand("serve", "Run the document edit service");
  serve->add_option("--root", root)->required();
  serve->add_option("--bind", bind)->default_val("127.0.0.1:8080");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "agtk: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*convert) return cmd_convert(from, to, table_config, in, output);
    if (*validate) return cmd_validate(in, kind, err);
    if (*apply) return cmd_apply(script, kind, in, output);
    if (*yield) return cmd_yield(in, out);
    store::Store st(root);
    err << "agtk: serving " << root << " on " << bind << "\n";
    store::serve(st, bind);
    return kOk;
  } catch (const UsageError& e) {
    err << "agtk: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "agtk: " << e.what() << "\n";
    return kFailure;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace agtk::cli
