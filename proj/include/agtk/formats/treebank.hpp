#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agtk/tree.hpp"

namespace agtk::formats {

/// Penn Treebank-style bracketed trees, one tree per top-level list.
///
/// `(X tok)` is a pos node over a wrd; any other list is a syn node whose
/// bare atoms become wrd children. An unlabeled outer wrapper `( (S ...) )`
/// is dropped. Coindexation: a `-<n>` suffix on a syn/pos label, or on a wrd
/// token starting with `*`, is read as trace index n. Node ids are assigned
/// in preorder starting at 1.
///
/// Errors: UnbalancedParens, EmptyNode, BadToken, each carrying a byte
/// offset into `text`.
std::vector<Tree> parse_treebank(std::string_view text);

/// Single-line bracketed form of one tree.
std::string emit_treebank(const Tree& tree);

/// One tree per line, newline terminated.
std::string emit_treebank(std::span<const Tree> trees);

/// Token text of a wrd node as written in brackets (trace suffix included).
std::string treebank_token(const TreeNode& wrd);

}  // namespace agtk::formats
