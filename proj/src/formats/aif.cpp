#include "agtk/formats/aif.hpp"

#include <cctype>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "agtk/error.hpp"

namespace agtk::formats {

namespace {

// ---------------------------------------------------------------- XML reader

struct XmlElement {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<XmlElement> children;
  std::string text;
  std::size_t line = 1;

  const std::string* attr(std::string_view key) const {
    for (const auto& [k, v] : attrs) {
      if (k == key) return &v;
    }
    return nullptr;
  }
};

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
         c == ':' || static_cast<unsigned char>(c) >= 0x80;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class XmlReader {
 public:
  explicit XmlReader(std::string_view src) : src_(src) {}

  XmlElement read_document() {
    skip_misc();
    if (!starts_with("<")) fail("expected root element");
    XmlElement root = read_element();
    skip_misc();
    if (i_ < src_.size()) fail("content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::MalformedXml, "line " + std::to_string(line_) + ": " + what, line_);
  }

  bool starts_with(std::string_view s) const { return src_.substr(i_, s.size()) == s; }

  void advance(std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i_ < src_.size(); ++k) {
      if (src_[i_] == '\n') ++line_;
      ++i_;
    }
  }

  void skip_ws() {
    while (i_ < src_.size() && (src_[i_] == ' ' || src_[i_] == '\t' || src_[i_] == '\n' ||
                                src_[i_] == '\r')) {
      advance();
    }
  }

  void skip_until(std::string_view terminator) {
    auto pos = src_.find(terminator, i_);
    if (pos == std::string_view::npos) fail("unterminated construct");
    advance(pos + terminator.size() - i_);
  }

  // Prolog, comments, processing instructions and whitespace.
  void skip_misc() {
    for (;;) {
      skip_ws();
      if (starts_with("<?")) {
        skip_until("?>");
      } else if (starts_with("<!--")) {
        skip_until("-->");
      } else if (starts_with("<!DOCTYPE")) {
        skip_until(">");
      } else {
        return;
      }
    }
  }

  std::string read_name() {
    std::size_t start = i_;
    while (i_ < src_.size() && is_name_char(src_[i_])) advance();
    if (start == i_) fail("expected a name");
    return std::string(src_.substr(start, i_ - start));
  }

  std::string decode_entity() {
    // src_[i_] == '&'
    auto semi = src_.find(';', i_);
    if (semi == std::string_view::npos || semi - i_ > 12) fail("bad entity reference");
    std::string_view ent = src_.substr(i_ + 1, semi - i_ - 1);
    advance(semi + 1 - i_);
    if (ent == "amp") return "&";
    if (ent == "lt") return "<";
    if (ent == "gt") return ">";
    if (ent == "quot") return "\"";
    if (ent == "apos") return "'";
    if (!ent.empty() && ent[0] == '#') {
      std::uint32_t cp = 0;
      bool hex = ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X');
      std::string_view digits = ent.substr(hex ? 2 : 1);
      if (digits.empty()) fail("bad character reference");
      for (char c : digits) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (hex && c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else fail("bad character reference");
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
        if (cp > 0x10FFFF) fail("character reference out of range");
      }
      std::string out;
      append_utf8(out, cp);
      return out;
    }
    fail("unknown entity '&" + std::string(ent) + ";'");
  }

  std::string read_attr_value() {
    if (i_ >= src_.size() || (src_[i_] != '"' && src_[i_] != '\'')) fail("expected quoted value");
    char quote = src_[i_];
    advance();
    std::string value;
    while (i_ < src_.size() && src_[i_] != quote) {
      if (src_[i_] == '<') fail("'<' in attribute value");
      if (src_[i_] == '&') {
        value += decode_entity();
      } else {
        value += src_[i_];
        advance();
      }
    }
    if (i_ >= src_.size()) fail("unterminated attribute value");
    advance();
    return value;
  }

  XmlElement read_element() {
    XmlElement el;
    el.line = line_;
    advance();  // '<'
    el.name = read_name();
    for (;;) {
      skip_ws();
      if (i_ >= src_.size()) fail("unterminated start tag");
      if (starts_with("/>")) {
        advance(2);
        return el;
      }
      if (src_[i_] == '>') {
        advance();
        break;
      }
      std::string key = read_name();
      skip_ws();
      if (i_ >= src_.size() || src_[i_] != '=') fail("expected '=' after attribute name");
      advance();
      skip_ws();
      if (el.attr(key)) fail("duplicate attribute '" + key + "'");
      el.attrs.emplace_back(std::move(key), read_attr_value());
    }
    // Content.
    for (;;) {
      if (i_ >= src_.size()) fail("element <" + el.name + "> is never closed");
      if (starts_with("</")) {
        advance(2);
        std::string name = read_name();
        if (name != el.name) fail("mismatched </" + name + ">, expected </" + el.name + ">");
        skip_ws();
        if (i_ >= src_.size() || src_[i_] != '>') fail("expected '>'");
        advance();
        return el;
      }
      if (starts_with("<!--")) {
        skip_until("-->");
      } else if (starts_with("<![CDATA[")) {
        advance(9);
        auto end = src_.find("]]>", i_);
        if (end == std::string_view::npos) fail("unterminated CDATA");
        el.text += src_.substr(i_, end - i_);
        advance(end + 3 - i_);
      } else if (starts_with("<?")) {
        skip_until("?>");
      } else if (src_[i_] == '<') {
        el.children.push_back(read_element());
      } else if (src_[i_] == '&') {
        el.text += decode_entity();
      } else {
        el.text += src_[i_];
        advance();
      }
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
};

// ------------------------------------------------------------ schema mapping

[[noreturn]] void schema(const XmlElement& el, const std::string& reason) {
  throw Error(ErrorCode::SchemaViolation,
              "<" + el.name + "> (line " + std::to_string(el.line) + "): " + reason, el.line);
}

bool blank(std::string_view s) {
  for (char c : s) {
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r') return false;
  }
  return true;
}

const std::string& required(const XmlElement& el, std::string_view key) {
  const std::string* v = el.attr(key);
  if (!v) schema(el, "missing attribute '" + std::string(key) + "'");
  return *v;
}

void allow_only(const XmlElement& el, std::initializer_list<std::string_view> keys) {
  for (const auto& [k, v] : el.attrs) {
    bool ok = false;
    for (auto allowed : keys) ok = ok || k == allowed;
    if (!ok) schema(el, "unexpected attribute '" + k + "'");
  }
}

void expect_no_text(const XmlElement& el) {
  if (!blank(el.text)) schema(el, "unexpected text content");
}

Anchor read_anchor(const XmlElement& el) {
  allow_only(el, {"id", "offset", "unit"});
  expect_no_text(el);
  if (!el.children.empty()) schema(el, "anchors have no children");
  Anchor a;
  a.id = required(el, "id");
  if (!id_number(a.id, 'a')) schema(el, "anchor id '" + a.id + "' is not of the form a<n>");
  if (const std::string* unit = el.attr("unit"); unit && *unit != "sec") {
    schema(el, "unit must be 'sec'");
  }
  if (const std::string* off = el.attr("offset")) {
    try {
      a.offset = parse_seconds(*off);
    } catch (const Error&) {
      schema(el, "bad offset '" + *off + "'");
    }
  }
  return a;
}

Annotation read_annotation(const XmlElement& el) {
  allow_only(el, {"id", "type", "start", "end"});
  expect_no_text(el);
  Annotation ann;
  ann.id = required(el, "id");
  if (!id_number(ann.id, 'e')) schema(el, "annotation id '" + ann.id + "' is not of the form e<n>");
  ann.type = required(el, "type");
  ann.start = required(el, "start");
  ann.end = required(el, "end");
  for (const auto& child : el.children) {
    if (child.name != "Feature") schema(child, "only <Feature> may appear in <Annotation>");
    allow_only(child, {"name"});
    if (!child.children.empty()) schema(child, "features hold text only");
    const std::string& name = required(child, "name");
    if (name.empty()) schema(child, "empty feature name");
    if (ann.features.contains(name)) schema(child, "duplicate feature '" + name + "'");
    ann.features.add(name, child.text);
  }
  return ann;
}

AnnotationGraph read_graph(const XmlElement& el, AifMode mode) {
  allow_only(el, {"id"});
  expect_no_text(el);
  AnnotationGraph graph(required(el, "id"));
  std::vector<std::pair<const XmlElement*, Annotation>> pending;
  for (const auto& child : el.children) {
    if (child.name == "Anchor") {
      Anchor a = read_anchor(child);
      if (graph.find_anchor(a.id)) throw Error(ErrorCode::DuplicateId, a.id, child.line);
      graph.insert_anchor(std::move(a));
    } else if (child.name == "Annotation") {
      pending.emplace_back(&child, read_annotation(child));
    } else {
      schema(child, "unexpected element in <AG>");
    }
  }
  for (auto& [xml, ann] : pending) {
    if (mode == AifMode::strict) {
      if (!graph.find_anchor(ann.start)) schema(*xml, "start anchor '" + ann.start + "' not declared");
      if (!graph.find_anchor(ann.end)) schema(*xml, "end anchor '" + ann.end + "' not declared");
    }
    if (graph.find_annotation(ann.id)) throw Error(ErrorCode::DuplicateId, ann.id, xml->line);
    graph.insert_annotation(std::move(ann));
  }
  return graph;
}

// ------------------------------------------------------------------- writer

void escape(std::string& out, std::string_view s, bool attribute) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        if (attribute) out += "&quot;";
        else out += c;
        break;
      case '\n':
        if (attribute) out += "&#10;";
        else out += c;
        break;
      case '\r': out += "&#13;"; break;
      case '\t':
        if (attribute) out += "&#9;";
        else out += c;
        break;
      default: out += c;
    }
  }
}

void attr(std::string& out, std::string_view key, std::string_view value) {
  out += ' ';
  out += key;
  out += "=\"";
  escape(out, value, true);
  out += '"';
}

}  // namespace

AgSet parse_aif(std::string_view xml, AifMode mode) {
  XmlElement root = XmlReader(xml).read_document();
  if (root.name != "AGSet") schema(root, "root element must be <AGSet>");
  allow_only(root, {"id"});
  expect_no_text(root);
  AgSet set;
  set.id = required(root, "id");
  std::unordered_set<std::string> ids;
  for (const auto& child : root.children) {
    if (child.name != "AG") schema(child, "only <AG> may appear in <AGSet>");
    set.graphs.push_back(read_graph(child, mode));
    if (!ids.insert(set.graphs.back().id()).second) {
      throw Error(ErrorCode::DuplicateId, set.graphs.back().id(), child.line);
    }
  }
  return set;
}

std::string emit_aif(const AgSet& set) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<AGSet";
  attr(out, "id", set.id);
  out += ">\n";
  for (const auto& g : set.graphs) {
    out += " <AG";
    attr(out, "id", g.id());
    out += ">\n";
    for (const auto& a : g.anchors()) {
      out += "  <Anchor";
      attr(out, "id", a.id);
      if (a.offset) attr(out, "offset", format_seconds(*a.offset));
      attr(out, "unit", "sec");
      out += "/>\n";
    }
    for (const auto& ann : g.annotations()) {
      out += "  <Annotation";
      attr(out, "id", ann.id);
      attr(out, "type", ann.type);
      attr(out, "start", ann.start);
      attr(out, "end", ann.end);
      if (ann.features.empty()) {
        out += "/>\n";
        continue;
      }
      out += ">\n";
      for (const auto& [name, value] : ann.features) {
        out += "   <Feature";
        attr(out, "name", name);
        out += '>';
        escape(out, value, false);
        out += "</Feature>\n";
      }
      out += "  </Annotation>\n";
    }
    out += " </AG>\n";
  }
  out += "</AGSet>\n";
  return out;
}

}  // namespace agtk::formats
