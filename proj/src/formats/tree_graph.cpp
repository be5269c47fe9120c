#include "agtk/formats/tree_graph.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <unordered_map>

#include "agtk/error.hpp"

namespace agtk::formats {

namespace {

[[noreturn]] void not_a_tree(const std::string& why) {
  throw Error(ErrorCode::NotATreeEncoding, why);
}

std::optional<int> to_int(const std::string* s) {
  if (!s) return std::nullopt;
  int v = 0;
  auto [ptr, ec] = std::from_chars(s->data(), s->data() + s->size(), v);
  if (ec != std::errc{} || ptr != s->data() + s->size()) return std::nullopt;
  return v;
}

}  // namespace

AnnotationGraph tree_to_graph(const Tree& tree, std::string graph_id) {
  AnnotationGraph graph(std::move(graph_id));
  if (tree.empty()) return graph;
  auto spans = node_spans(tree);
  std::size_t n = spans.at(tree.root()).end;
  std::vector<std::string> anchors;
  for (std::size_t i = 0; i <= n; ++i) anchors.push_back(graph.add_anchor());

  std::function<void(NodeId, int)> visit = [&](NodeId id, int depth) {
    const TreeNode& node = tree.node(id);
    const Span& s = spans.at(id);
    FeatureMap f;
    f.add("label", node.label);
    if (node.trace) f.add("trace", std::to_string(*node.trace));
    f.add("depth", std::to_string(depth));
    graph.insert_annotation(Annotation{"e" + std::to_string(id), std::string(node_kind_name(node.kind)),
                                       anchors[s.begin], anchors[s.end], std::move(f)});
    for (NodeId c : node.children) visit(c, depth + 1);
  };
  visit(tree.root(), 0);
  return graph;
}

Tree graph_to_tree(const AnnotationGraph& graph) {
  struct Item {
    const Annotation* ann;
    NodeKind kind;
    std::size_t begin, end;
    std::optional<int> depth;
  };
  std::vector<Item> items;
  std::unordered_map<std::string_view, std::string_view> next;  // wrd chain
  std::unordered_map<std::string_view, int> indegree;
  for (const auto& ann : graph.annotations()) {
    auto kind = parse_node_kind(ann.type);
    if (!kind) not_a_tree("annotation " + ann.id + " has type '" + ann.type + "'");
    items.push_back(Item{&ann, *kind, 0, 0, to_int(ann.features.find("depth"))});
    if (*kind == NodeKind::wrd) {
      if (ann.start == ann.end) not_a_tree("wrd " + ann.id + " has zero extent");
      if (!next.emplace(ann.start, ann.end).second) not_a_tree("two words start at " + ann.start);
      if (++indegree[ann.end] > 1) not_a_tree("two words end at " + ann.end);
    }
  }
  if (items.empty()) return Tree{};

  // Walk the word chain to number anchors.
  std::unordered_map<std::string_view, std::size_t> position;
  std::string_view head;
  for (const auto& [s, e] : next) {
    if (!indegree.count(s)) {
      if (!head.empty()) not_a_tree("word chain is not contiguous");
      head = s;
    }
  }
  if (head.empty()) not_a_tree("no terminals");
  std::size_t pos = 0;
  for (std::string_view cur = head;; ++pos) {
    position[cur] = pos;
    auto it = next.find(cur);
    if (it == next.end()) break;
    cur = it->second;
    if (position.count(cur)) not_a_tree("word chain loops");
  }
  if (position.size() != next.size() + 1) not_a_tree("word chain is not contiguous");

  for (auto& item : items) {
    auto s = position.find(item.ann->start);
    auto e = position.find(item.ann->end);
    if (s == position.end() || e == position.end()) {
      not_a_tree(item.ann->id + " is not anchored on the terminal chain");
    }
    item.begin = s->second;
    item.end = e->second;
    if (item.begin >= item.end) not_a_tree(item.ann->id + " has an empty span");
  }

  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.begin != b.begin) return a.begin < b.begin;
    if (a.end != b.end) return a.end > b.end;
    bool aw = a.kind == NodeKind::wrd, bw = b.kind == NodeKind::wrd;
    if (aw != bw) return bw;  // wrd innermost
    return a.depth.value_or(-1) < b.depth.value_or(-1);
  });
  for (std::size_t i = 1; i < items.size(); ++i) {
    const Item& a = items[i - 1];
    const Item& b = items[i];
    if (a.begin != b.begin || a.end != b.end) continue;
    if (a.kind == NodeKind::wrd || b.kind == NodeKind::wrd) continue;
    if (!a.depth || !b.depth) not_a_tree(a.ann->id + " and " + b.ann->id + " tie without depth");
    if (*a.depth == *b.depth) not_a_tree(a.ann->id + " and " + b.ann->id + " tie at equal depth");
  }

  Tree tree;
  std::vector<const Item*> stack;
  for (const auto& item : items) {
    auto id = id_number(item.ann->id, 'e');
    if (!id) not_a_tree("bad annotation id " + item.ann->id);
    const std::string* label = item.ann->features.find("label");
    if (!label) not_a_tree(item.ann->id + " has no label");
    std::optional<int> trace;
    if (const std::string* t = item.ann->features.find("trace")) {
      trace = to_int(t);
      if (!trace || *trace <= 0) not_a_tree(item.ann->id + " has a bad trace");
    }
    tree.insert_node(TreeNode{*id, item.kind, *label, {}, kNoNode, trace});

    while (!stack.empty() && stack.back()->end <= item.begin) stack.pop_back();
    if (stack.empty()) {
      if (!tree.empty()) not_a_tree("more than one root");
      if (item.begin != 0 || item.end != pos) not_a_tree("root does not span every terminal");
      tree.set_root(*id);
    } else {
      if (item.end > stack.back()->end) {
        not_a_tree(item.ann->id + " crosses " + stack.back()->ann->id);
      }
      tree.append_child(*id_number(stack.back()->ann->id, 'e'), *id);
    }
    stack.push_back(&item);
  }
  if (tree.empty()) not_a_tree("missing root");
  auto problems = tree_violations(tree);
  if (!problems.empty()) not_a_tree(problems.front());
  return tree;
}

}  // namespace agtk::formats
