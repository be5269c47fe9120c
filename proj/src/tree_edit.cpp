#include "agtk/tree_edit.hpp"

#include <algorithm>
#include <set>

#include "agtk/error.hpp"

namespace agtk {

namespace {

void require_nodes(const Tree& tree, const Selection& sel, std::size_t min, std::size_t max) {
  if (tree.empty()) throw Error(ErrorCode::EmptyDocument, "tree has no nodes");
  if (sel.size() < min || sel.size() > max) {
    throw Error(ErrorCode::BadSelection, "expected " + std::to_string(min) +
                                             (min == max ? "" : "-" + std::to_string(max)) +
                                             " nodes, got " + std::to_string(sel.size()));
  }
  std::set<NodeId> seen;
  for (NodeId id : sel) {
    if (!tree.contains(id)) throw Error(ErrorCode::UnknownNode, std::to_string(id));
    if (!seen.insert(id).second) throw Error(ErrorCode::BadSelection, "node " + std::to_string(id) + " selected twice");
  }
}

void require_label(const std::string& label) {
  if (label.empty()) throw Error(ErrorCode::EmptyLabel, "label must not be empty");
}

bool under_pos(const Tree& tree, NodeId id) {
  NodeId p = tree.node(id).parent;
  return p != kNoNode && tree.node(p).kind == NodeKind::pos;
}

// Replaces children[first..last] of `parent` with `replacement`.
void replace_run(Tree& tree, NodeId parent, std::size_t first, std::size_t last, NodeId replacement) {
  auto& kids = tree.node(parent).children;
  std::vector<NodeId> run(kids.begin() + static_cast<std::ptrdiff_t>(first),
                          kids.begin() + static_cast<std::ptrdiff_t>(last + 1));
  kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(first), kids.begin() + static_cast<std::ptrdiff_t>(last + 1));
  kids.insert(kids.begin() + static_cast<std::ptrdiff_t>(first), replacement);
  tree.node(replacement).parent = parent;
  for (NodeId id : run) tree.append_child(replacement, id);
}

// Moves the sibling run `first..last` of `parent` under `target` in place.
void move_run(Tree& tree, NodeId parent, std::size_t first, std::size_t last, NodeId target) {
  const auto& pkids = tree.node(parent).children;
  std::vector<NodeId> run(pkids.begin() + static_cast<std::ptrdiff_t>(first),
                          pkids.begin() + static_cast<std::ptrdiff_t>(last + 1));
  for (NodeId id : run) {
    if (tree.is_descendant(target, id)) {
      throw Error(ErrorCode::CyclicMove, "target " + std::to_string(target) + " lies inside moved node " +
                                             std::to_string(id));
    }
  }
  if (tree.node(target).kind != NodeKind::syn) {
    throw Error(ErrorCode::InvalidTarget, "move target must be a syn node");
  }
  if (run.size() == pkids.size()) {
    throw Error(ErrorCode::WouldEmptyParent, "node " + std::to_string(parent) + " would have no leaves");
  }

  auto spans = node_spans(tree);
  const std::size_t s = spans.at(run.front()).begin;
  const std::size_t e = spans.at(run.back()).end;
  const std::size_t width = e - s;
  auto remap = [&](std::size_t x) { return x <= s ? x : x - width; };

  std::vector<NodeId> remaining;
  for (NodeId c : tree.node(target).children) {
    if (std::find(run.begin(), run.end(), c) == run.end()) remaining.push_back(c);
  }
  // Slot k sits before remaining[k]; the moved words keep their place iff the
  // slot's position in the shortened terminal string is s.
  std::optional<std::size_t> slot;
  for (std::size_t k = remaining.empty() ? 1 : 0; k <= remaining.size() && !slot; ++k) {
    std::size_t boundary =
        k == 0 ? remap(spans.at(remaining[0]).begin) : remap(spans.at(remaining[k - 1]).end);
    if (boundary == s) slot = k;
  }
  if (!slot) {
    throw Error(ErrorCode::WordOrderChange,
                "no position under node " + std::to_string(target) + " keeps the word order");
  }

  auto& old_kids = tree.node(parent).children;
  old_kids.erase(old_kids.begin() + static_cast<std::ptrdiff_t>(first),
                 old_kids.begin() + static_cast<std::ptrdiff_t>(last + 1));
  auto& new_kids = tree.node(target).children;
  std::size_t at = new_kids.size();
  if (*slot < remaining.size()) {
    at = static_cast<std::size_t>(std::find(new_kids.begin(), new_kids.end(), remaining[*slot]) - new_kids.begin());
  }
  new_kids.insert(new_kids.begin() + static_cast<std::ptrdiff_t>(at), run.begin(), run.end());
  for (NodeId id : run) tree.node(id).parent = target;
}

}  // namespace

NodeId insert_internal_node(Tree& tree, const Selection& sel, const std::string& label) {
  require_nodes(tree, sel, 1, 2);
  require_label(label);
  Tree work = tree;
  for (NodeId id : sel) {
    if (id == work.root()) throw Error(ErrorCode::RootSelected, "the root has no parent to insert under");
  }
  NodeId parent = work.node(sel[0]).parent;
  std::size_t first = work.child_index(sel[0]);
  std::size_t last = first;
  if (sel.size() == 1) {
    if (under_pos(work, sel[0])) {
      throw Error(ErrorCode::InvalidTarget, "a part-of-speech node must dominate its word directly");
    }
  } else {
    if (work.node(sel[1]).parent != parent) {
      throw Error(ErrorCode::NotSameParent, "the new node's branches would cross existing branches");
    }
    std::size_t other = work.child_index(sel[1]);
    first = std::min(first, other);
    last = std::max(last, other);
  }
  NodeId created = work.make_node(NodeKind::syn, label);
  replace_run(work, parent, first, last, created);
  tree = std::move(work);
  return created;
}

void delete_node(Tree& tree, NodeId node) {
  require_nodes(tree, {node}, 1, 1);
  const TreeNode& n = tree.node(node);
  if (n.kind == NodeKind::wrd) throw Error(ErrorCode::WrdNotDeletable, "delete the word's parent instead");
  if (node == tree.root()) throw Error(ErrorCode::RootNotDeletable, "the root cannot be deleted");
  Tree work = tree;
  NodeId parent = n.parent;
  auto& kids = work.node(parent).children;
  std::size_t idx = work.child_index(node);
  if (n.kind == NodeKind::pos) {
    if (kids.size() == 1) {
      throw Error(ErrorCode::WouldEmptyParent, "node " + std::to_string(parent) + " would have no leaves");
    }
    kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(idx));
    for (NodeId c : n.children) work.erase_node(c);
    work.erase_node(node);
  } else {
    std::vector<NodeId> moved = n.children;
    kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(idx));
    kids.insert(kids.begin() + static_cast<std::ptrdiff_t>(idx), moved.begin(), moved.end());
    for (NodeId c : moved) work.node(c).parent = parent;
    work.erase_node(node);
  }
  tree = std::move(work);
}

void move_node(Tree& tree, const Selection& sel) {
  require_nodes(tree, sel, 2, 3);
  Tree work = tree;
  const NodeId target = sel.back();
  const NodeId a = sel[0];
  if (a == work.root()) throw Error(ErrorCode::RootSelected, "the root cannot be moved");
  NodeId parent = work.node(a).parent;
  std::size_t first = work.child_index(a);
  std::size_t last = first;
  if (sel.size() == 3) {
    const NodeId a2 = sel[1];
    if (a2 == work.root() || work.node(a2).parent != parent) {
      throw Error(ErrorCode::NotSameParent, "moved nodes must be siblings");
    }
    std::size_t other = work.child_index(a2);
    first = std::min(first, other);
    last = std::max(last, other);
  }
  move_run(work, parent, first, last, target);
  tree = std::move(work);
}

NodeId adjoin(Tree& tree, const Selection& sel) {
  require_nodes(tree, sel, 2, 2);
  Tree work = tree;
  const NodeId a = sel[0];
  const NodeId b = sel[1];
  if (work.node(b).kind == NodeKind::wrd) throw Error(ErrorCode::InvalidTarget, "cannot adjoin at a word");
  NodeId clone = work.make_node(NodeKind::syn, work.node(b).label);
  if (b == work.root()) {
    work.append_child(clone, b);
    work.set_root(clone);
  } else {
    NodeId parent = work.node(b).parent;
    std::size_t idx = work.child_index(b);
    replace_run(work, parent, idx, idx, clone);
  }
  if (a == work.root()) throw Error(ErrorCode::RootSelected, "the root cannot be moved");
  NodeId parent = work.node(a).parent;
  std::size_t idx = work.child_index(a);
  move_run(work, parent, idx, idx, clone);
  tree = std::move(work);
  return clone;
}

NodeId add_syn_wrd(Tree& tree, NodeId node, Side side, const std::string& syn_label,
                   const std::string& wrd_text) {
  require_nodes(tree, {node}, 1, 1);
  require_label(syn_label);
  require_label(wrd_text);
  if (node == tree.root()) throw Error(ErrorCode::RootSelected, "the root has no siblings");
  if (under_pos(tree, node)) {
    throw Error(ErrorCode::InvalidTarget, "a part-of-speech node has exactly one word");
  }
  Tree work = tree;
  NodeId parent = work.node(node).parent;
  std::size_t idx = work.child_index(node) + (side == Side::after ? 1 : 0);
  NodeId syn = work.make_node(NodeKind::syn, syn_label);
  NodeId wrd = work.make_node(NodeKind::wrd, wrd_text);
  work.append_child(syn, wrd);
  auto& kids = work.node(parent).children;
  kids.insert(kids.begin() + static_cast<std::ptrdiff_t>(idx), syn);
  work.node(syn).parent = parent;
  tree = std::move(work);
  return syn;
}

void change_label(Tree& tree, NodeId node, const std::string& label) {
  require_nodes(tree, {node}, 1, 1);
  require_label(label);
  tree.node(node).label = label;
}

int coref(Tree& tree, const Selection& sel) {
  if (sel.size() == 2 && sel[0] == sel[1]) throw Error(ErrorCode::SameNode, "select two different nodes");
  require_nodes(tree, sel, 2, 2);
  for (NodeId id : sel) {
    const TreeNode& n = tree.node(id);
    if (n.kind == NodeKind::wrd && (n.label.empty() || n.label[0] != '*')) {
      throw Error(ErrorCode::UntraceableWord, "word '" + n.label + "' is not an empty element");
    }
  }
  TreeNode& x = tree.node(sel[0]);
  TreeNode& y = tree.node(sel[1]);
  int index;
  if (x.trace && y.trace && *x.trace == *y.trace) {
    index = *x.trace;
  } else if (x.trace.has_value() != y.trace.has_value()) {
    index = x.trace ? *x.trace : *y.trace;
  } else {
    index = tree.allocate_trace();
  }
  x.trace = index;
  y.trace = index;
  return index;
}

Tree build_default_tree(std::span<const std::string> tokens, const std::string& root_label,
                        const std::string& pos_label) {
  if (tokens.empty()) throw Error(ErrorCode::EmptyInput, "no tokens");
  require_label(root_label);
  require_label(pos_label);
  Tree tree;
  NodeId root = tree.make_node(NodeKind::syn, root_label);
  tree.set_root(root);
  for (const auto& tok : tokens) {
    if (tok.empty()) throw Error(ErrorCode::EmptyInput, "empty token");
    NodeId pos = tree.make_node(NodeKind::pos, pos_label);
    NodeId wrd = tree.make_node(NodeKind::wrd, tok);
    tree.append_child(pos, wrd);
    tree.append_child(root, pos);
  }
  return tree;
}

}  // namespace agtk
