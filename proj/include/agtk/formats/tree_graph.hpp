#pragma once

#include <string>

#include "agtk/graph.hpp"
#include "agtk/tree.hpp"

namespace agtk::formats {

/// Encodes a tree as an annotation graph. Terminals define an untimed anchor
/// chain; each node becomes an annotation of type syn/pos/wrd spanning its
/// yield, id `e<node id>`, with features {label, trace?, depth}. Dominance
/// is recovered from span nesting; equal spans are ordered by depth.
AnnotationGraph tree_to_graph(const Tree& tree, std::string graph_id = "g1");

/// Inverse of tree_to_graph. A graph without syn/pos/wrd annotations decodes
/// to an empty tree. Throws NotATreeEncoding.
Tree graph_to_tree(const AnnotationGraph& graph);

}  // namespace agtk::formats
