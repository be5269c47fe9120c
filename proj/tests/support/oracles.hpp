#pragma once

// Independent reference implementations used to check the library. None of
// these call the code under test for the property they decide.

#include <optional>
#include <string>
#include <vector>

#include "agtk/graph.hpp"
#include "agtk/tree.hpp"
#include "agtk/tree_edit.hpp"

namespace agtk::testing {

/// Ids whose anchors are both timed and whose [s, e] meets [t0, t1],
/// optionally of one type, sorted by (s, e, numeric id). Linear scan.
std::vector<std::string> overlap_oracle(const AnnotationGraph& g, TimeOffset t0, TimeOffset t1,
                                        const std::string* type = nullptr);

/// True when the start->end relation over distinct anchors has a cycle.
/// Colored DFS, recursive.
bool has_cycle_oracle(const AnnotationGraph& g);

/// Words by recursive concatenation of child yields.
std::vector<std::string> yield_oracle(const Tree& t);

/// Every node's terminal index set is one contiguous range, recomputed from
/// scratch by collecting indices per node.
bool projective_oracle(const Tree& t);

/// Structure checks written against the node table: root syn, wrd leaves,
/// pos over one wrd, non-empty syn, consistent parent links, all reachable.
bool well_formed_oracle(const Tree& t);

/// Brute force for move_node(sel): detach the run, try every insertion
/// index under B, keep those whose yield equals the original. Returns the
/// resulting tree for the (unique) accepted index, or nullopt to reject.
std::optional<Tree> move_oracle(const Tree& t, const Selection& sel);

/// Bracketed rendering that ignores ids, built independently of the
/// treebank emitter.
std::string sexpr_oracle(const Tree& t);

}  // namespace agtk::testing
