#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace agtk {

enum class NodeKind { syn, pos, wrd };

std::string_view node_kind_name(NodeKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view name);

using NodeId = std::uint64_t;
inline constexpr NodeId kNoNode = 0;

struct TreeNode {
  NodeId id = kNoNode;
  NodeKind kind = NodeKind::syn;
  std::string label;  // token text for wrd nodes
  std::vector<NodeId> children;
  NodeId parent = kNoNode;
  std::optional<int> trace;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// An ordered syntactic tree of syn/pos/wrd nodes. Node ids are positive and
/// stable for the lifetime of the tree; the annotation-graph encoding reuses
/// them as annotation ids (`e<id>`).
class Tree {
 public:
  Tree() = default;

  NodeId root() const { return root_; }
  bool empty() const { return root_ == kNoNode; }

  const TreeNode& node(NodeId id) const;
  TreeNode& node(NodeId id);
  const TreeNode* find(NodeId id) const;
  bool contains(NodeId id) const { return nodes_.count(id) != 0; }
  const std::map<NodeId, TreeNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

  /// Creates a detached node with a fresh id.
  NodeId make_node(NodeKind kind, std::string label, std::optional<int> trace = std::nullopt);
  /// Creates a node with a caller-chosen id (deserializers). Throws on reuse.
  void insert_node(TreeNode node);
  void erase_node(NodeId id);
  void set_root(NodeId id);
  void append_child(NodeId parent, NodeId child);

  /// True when `node` is `ancestor` or lies below it.
  bool is_descendant(NodeId node, NodeId ancestor) const;
  /// Position of `id` in its parent's child list.
  std::size_t child_index(NodeId id) const;

  int next_trace() const { return next_trace_; }
  int allocate_trace() { return next_trace_++; }
  void note_trace(int t);

  /// Full equality including node ids.
  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  NodeId root_ = kNoNode;
  std::map<NodeId, TreeNode> nodes_;
  NodeId next_id_ = 1;
  int next_trace_ = 1;
};

/// Left-to-right wrd labels.
std::vector<std::string> terminal_yield(const Tree& tree);

/// wrd node ids in surface order.
std::vector<NodeId> terminal_nodes(const Tree& tree);

/// Half-open terminal index range covered by each node.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};
std::map<NodeId, Span> node_spans(const Tree& tree);

/// Shape, kinds, labels and traces agree; node ids are ignored.
bool structurally_equal(const Tree& a, const Tree& b);

/// Every broken tree invariant, as human-readable lines. Empty when the tree
/// is well formed.
std::vector<std::string> tree_violations(const Tree& tree);

}  // namespace agtk
