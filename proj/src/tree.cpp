#include "agtk/tree.hpp"

#include <algorithm>
#include <functional>

#include "agtk/error.hpp"

namespace agtk {

std::string_view node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::syn: return "syn";
    case NodeKind::pos: return "pos";
    case NodeKind::wrd: return "wrd";
  }
  return "syn";
}

std::optional<NodeKind> parse_node_kind(std::string_view name) {
  if (name == "syn") return NodeKind::syn;
  if (name == "pos") return NodeKind::pos;
  if (name == "wrd") return NodeKind::wrd;
  return std::nullopt;
}

const TreeNode& Tree::node(NodeId id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw Error(ErrorCode::UnknownNode, std::to_string(id));
  return it->second;
}

TreeNode& Tree::node(NodeId id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw Error(ErrorCode::UnknownNode, std::to_string(id));
  return it->second;
}

const TreeNode* Tree::find(NodeId id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

NodeId Tree::make_node(NodeKind kind, std::string label, std::optional<int> trace) {
  NodeId id = next_id_++;
  nodes_.emplace(id, TreeNode{id, kind, std::move(label), {}, kNoNode, trace});
  if (trace) note_trace(*trace);
  return id;
}

void Tree::insert_node(TreeNode n) {
  if (n.id == kNoNode) throw Error(ErrorCode::BadId, "node id 0");
  if (nodes_.count(n.id)) throw Error(ErrorCode::DuplicateId, std::to_string(n.id));
  next_id_ = std::max(next_id_, n.id + 1);
  if (n.trace) note_trace(*n.trace);
  NodeId id = n.id;
  nodes_.emplace(id, std::move(n));
}

void Tree::erase_node(NodeId id) {
  nodes_.erase(id);
  if (root_ == id) root_ = kNoNode;
}

void Tree::set_root(NodeId id) {
  node(id).parent = kNoNode;
  root_ = id;
}

void Tree::append_child(NodeId parent, NodeId child) {
  node(parent).children.push_back(child);
  node(child).parent = parent;
}

bool Tree::is_descendant(NodeId n, NodeId ancestor) const {
  for (NodeId cur = n; cur != kNoNode; cur = node(cur).parent) {
    if (cur == ancestor) return true;
  }
  return false;
}

std::size_t Tree::child_index(NodeId id) const {
  const TreeNode& n = node(id);
  if (n.parent == kNoNode) throw Error(ErrorCode::RootSelected, "node has no parent");
  const auto& siblings = node(n.parent).children;
  auto it = std::find(siblings.begin(), siblings.end(), id);
  return static_cast<std::size_t>(it - siblings.begin());
}

void Tree::note_trace(int t) { next_trace_ = std::max(next_trace_, t + 1); }

std::vector<NodeId> terminal_nodes(const Tree& tree) {
  std::vector<NodeId> out;
  if (tree.empty()) return out;
  std::vector<NodeId> stack{tree.root()};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    const TreeNode& n = tree.node(id);
    if (n.kind == NodeKind::wrd) out.push_back(id);
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::vector<std::string> terminal_yield(const Tree& tree) {
  std::vector<std::string> out;
  for (NodeId id : terminal_nodes(tree)) out.push_back(tree.node(id).label);
  return out;
}

std::map<NodeId, Span> node_spans(const Tree& tree) {
  std::map<NodeId, Span> spans;
  if (tree.empty()) return spans;
  std::size_t next = 0;
  std::function<void(NodeId)> visit = [&](NodeId id) {
    const TreeNode& n = tree.node(id);
    Span s{next, next};
    if (n.kind == NodeKind::wrd) ++next;
    for (NodeId c : n.children) visit(c);
    s.end = next;
    spans[id] = s;
  };
  visit(tree.root());
  return spans;
}

bool structurally_equal(const Tree& a, const Tree& b) {
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  std::function<bool(NodeId, NodeId)> eq = [&](NodeId x, NodeId y) {
    const TreeNode& nx = a.node(x);
    const TreeNode& ny = b.node(y);
    if (nx.kind != ny.kind || nx.label != ny.label || nx.trace != ny.trace ||
        nx.children.size() != ny.children.size()) {
      return false;
    }
    for (std::size_t i = 0; i < nx.children.size(); ++i) {
      if (!eq(nx.children[i], ny.children[i])) return false;
    }
    return true;
  };
  return eq(a.root(), b.root());
}

std::vector<std::string> tree_violations(const Tree& tree) {
  std::vector<std::string> out;
  if (tree.empty()) {
    if (!tree.nodes().empty()) out.push_back("nodes present without a root");
    return out;
  }
  const TreeNode* root = tree.find(tree.root());
  if (!root) return {"root id not present"};
  if (root->kind != NodeKind::syn) out.push_back("root is not a syn node");
  if (root->parent != kNoNode) out.push_back("root has a parent");

  std::map<NodeId, int> seen;
  std::vector<NodeId> stack{tree.root()};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (++seen[id] > 1) {
      out.push_back("node " + std::to_string(id) + " reachable twice");
      continue;
    }
    const TreeNode& n = tree.node(id);
    const std::string tag = std::string(node_kind_name(n.kind)) + " " + std::to_string(id);
    switch (n.kind) {
      case NodeKind::wrd:
        if (!n.children.empty()) out.push_back(tag + " has children");
        break;
      case NodeKind::pos:
        if (n.children.size() != 1 || !tree.find(n.children[0]) ||
            tree.node(n.children[0]).kind != NodeKind::wrd) {
          out.push_back(tag + " must have exactly one wrd child");
        }
        break;
      case NodeKind::syn:
        if (n.children.empty()) out.push_back(tag + " has no children");
        break;
    }
    for (NodeId c : n.children) {
      const TreeNode* child = tree.find(c);
      if (!child) {
        out.push_back(tag + " references missing child " + std::to_string(c));
        continue;
      }
      if (child->parent != id) out.push_back("node " + std::to_string(c) + " has a stale parent link");
      stack.push_back(c);
    }
  }
  if (seen.size() != tree.nodes().size()) out.push_back("unreachable nodes present");
  return out;
}

}  // namespace agtk
