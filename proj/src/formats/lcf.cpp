#include "agtk/formats/lcf.hpp"

#include "agtk/error.hpp"
#include "agtk/text.hpp"

namespace agtk::formats {

namespace {

std::string_view next_word(std::string_view& rest) {
  rest = text::trim_left(rest);
  std::size_t n = 0;
  while (n < rest.size() && rest[n] != ' ' && rest[n] != '\t') ++n;
  std::string_view word = rest.substr(0, n);
  rest.remove_prefix(n);
  return word;
}

}  // namespace

AnnotationGraph parse_lcf(std::string_view input) {
  AnnotationGraph graph;
  std::size_t lineno = 0;
  while (!input.empty()) {
    auto nl = input.find('\n');
    std::string_view line = input.substr(0, nl);
    input = nl == std::string_view::npos ? std::string_view{} : input.substr(nl + 1);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::string_view rest = text::trim_left(line);
    if (rest.empty() || rest[0] == '#') continue;

    auto bad = [&](const std::string& why) {
      return Error(ErrorCode::BadLine, "line " + std::to_string(lineno) + ": " + why, lineno);
    };
    TimeOffset start, end;
    try {
      start = parse_seconds(next_word(rest));
      end = parse_seconds(next_word(rest));
    } catch (const Error&) {
      throw bad("expected '<start> <end> <speaker>: <text>'");
    }
    if (end < start) throw bad("end precedes start");
    rest = text::trim_left(rest);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos || colon == 0) throw bad("missing '<speaker>:'");
    std::string_view speaker = rest.substr(0, colon);
    if (speaker.find_first_of(" \t") != std::string_view::npos) throw bad("speaker contains whitespace");
    std::string_view body = text::trim(rest.substr(colon + 1));

    auto a = graph.add_anchor(start);
    auto b = graph.add_anchor(end);
    graph.add_annotation(std::string(kSegmentType), a, b,
                         FeatureMap{{"speaker", std::string(speaker)}, {"text", std::string(body)}});
  }
  return graph;
}

std::string emit_lcf(const AnnotationGraph& graph) {
  std::string out;
  for (const auto& ann : graph.annotations()) {
    if (ann.type != kSegmentType) continue;
    const auto& s = graph.anchor(ann.start);
    const auto& e = graph.anchor(ann.end);
    if (!s.offset || !e.offset) throw Error(ErrorCode::Unrepresentable, ann.id + " is not time-aligned");
    std::string speaker = ann.features.get_or("speaker");
    std::string body = ann.features.get_or("text");
    if (speaker.empty() || speaker.find_first_of(" \t\r\n:") != std::string::npos) {
      throw Error(ErrorCode::Unrepresentable, ann.id + ": speaker '" + speaker + "'");
    }
    if (body.find_first_of("\r\n") != std::string::npos || text::trim(body) != body) {
      throw Error(ErrorCode::Unrepresentable, ann.id + ": text cannot be written on one line");
    }
    out += format_seconds(*s.offset);
    out += ' ';
    out += format_seconds(*e.offset);
    out += ' ';
    out += speaker;
    out += ": ";
    out += body;
    out += '\n';
  }
  return out;
}

}  // namespace agtk::formats
