#pragma once

#include <span>
#include <string>
#include <vector>

#include "agtk/tree.hpp"

namespace agtk {

/// Highlighted nodes, in the order they were selected.
using Selection = std::vector<NodeId>;

enum class Side { before, after };

// All operations below either commit completely or throw and leave the tree
// exactly as it was. None of them reorders the terminal string.

/// One node: a new syn node takes its place with it as sole child. Two nodes
/// (same parent): the new node adopts the sibling run between them,
/// inclusive. Errors: RootSelected, NotSameParent, InvalidTarget (a wrd under
/// a pos), EmptyLabel, BadSelection.
NodeId insert_internal_node(Tree& tree, const Selection& sel, const std::string& label);

/// pos: removes it and its wrd. syn: splices its children into its parent.
/// Errors: WrdNotDeletable, RootNotDeletable, WouldEmptyParent.
void delete_node(Tree& tree, NodeId node);

/// Two nodes (A, B): moves A under B. Three nodes (A1, A2, B): moves the
/// sibling run A1..A2 under B. The insertion slot among B's children is the
/// one that keeps the terminal string unchanged. Errors: WordOrderChange,
/// WouldEmptyParent, CyclicMove, NotSameParent, RootSelected, InvalidTarget
/// (B is not syn), BadSelection.
void move_node(Tree& tree, const Selection& sel);

/// (A, B): B is replaced in place by a childless syn clone of its label, B
/// becomes the clone's only child, and A is then moved under the clone as in
/// move_node. Returns the clone id.
NodeId adjoin(Tree& tree, const Selection& sel);

/// Inserts a syn node with a single wrd child as previous/following sibling
/// of `node`. Errors: RootSelected, InvalidTarget (node is a wrd under pos).
NodeId add_syn_wrd(Tree& tree, NodeId node, Side side, const std::string& syn_label,
                   const std::string& wrd_text = "*T*");

/// Errors: EmptyLabel.
void change_label(Tree& tree, NodeId node, const std::string& label);

/// Gives both nodes one trace index: the existing one if exactly one of them
/// has an index, else a fresh one. wrd nodes must be empty elements (text
/// starting with '*'), since only those carry indices in bracketed form.
/// Errors: SameNode, UntraceableWord.
int coref(Tree& tree, const Selection& sel);

/// Root syn over one pos+wrd pair per token. Errors: EmptyInput.
Tree build_default_tree(std::span<const std::string> tokens, const std::string& root_label = "S",
                        const std::string& pos_label = "XX");

}  // namespace agtk
