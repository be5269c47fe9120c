#include "agtk/formats/treebank.hpp"

#include <charconv>
#include <optional>

#include "agtk/error.hpp"

namespace agtk::formats {

namespace {

struct Token {
  enum Kind { open, close, atom, end } kind;
  std::string_view text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (i_ < src_.size() && is_space(src_[i_])) ++i_;
    if (i_ >= src_.size()) return {Token::end, {}, src_.size()};
    std::size_t start = i_;
    if (src_[i_] == '(') return {Token::open, src_.substr(i_++, 1), start};
    if (src_[i_] == ')') return {Token::close, src_.substr(i_++, 1), start};
    while (i_ < src_.size() && !is_space(src_[i_]) && src_[i_] != '(' && src_[i_] != ')') ++i_;
    return {Token::atom, src_.substr(start, i_ - start), start};
  }

  Token peek() {
    std::size_t save = i_;
    Token t = next();
    i_ = save;
    return t;
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

  std::string_view src_;
  std::size_t i_ = 0;
};

// Parsed list before node kinds are decided.
struct Raw {
  std::string_view label;
  std::size_t pos = 0;
  std::vector<Raw> lists;
  // Children in order: index into `lists` or an atom.
  struct Item {
    bool is_atom;
    std::size_t list_index;
    std::string_view atom;
  };
  std::vector<Item> items;
};

// Splits "BODY-<n>" into BODY and n (n > 0, no leading zero).
std::pair<std::string, std::optional<int>> split_trace(std::string_view s) {
  auto dash = s.rfind('-');
  if (dash == std::string_view::npos || dash == 0 || dash + 1 >= s.size()) {
    return {std::string(s), std::nullopt};
  }
  std::string_view digits = s.substr(dash + 1);
  if (digits[0] == '0') return {std::string(s), std::nullopt};
  int n = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || n <= 0) {
    return {std::string(s), std::nullopt};
  }
  return {std::string(s.substr(0, dash)), n};
}

std::pair<std::string, std::optional<int>> split_word(std::string_view s) {
  if (s.empty() || s[0] != '*') return {std::string(s), std::nullopt};
  return split_trace(s);
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), lex_(src) {}

  std::vector<Tree> parse_all() {
    std::vector<Tree> trees;
    for (;;) {
      Token t = lex_.next();
      if (t.kind == Token::end) break;
      if (t.kind == Token::close) {
        throw Error(ErrorCode::UnbalancedParens, "unmatched ')'", t.pos);
      }
      if (t.kind == Token::atom) {
        throw Error(ErrorCode::BadToken, "atom '" + std::string(t.text) + "' outside brackets", t.pos);
      }
      Raw raw = parse_list(t.pos);
      trees.push_back(build(raw));
    }
    return trees;
  }

 private:
  // Called after the opening '(' has been consumed.
  Raw parse_list(std::size_t open_pos) {
    Raw raw;
    raw.pos = open_pos;
    Token t = lex_.peek();
    if (t.kind == Token::atom) {
      raw.label = t.text;
      lex_.next();
    }
    for (;;) {
      t = lex_.next();
      switch (t.kind) {
        case Token::end:
          throw Error(ErrorCode::UnbalancedParens,
                      "unexpected end of input; '(' at byte " + std::to_string(open_pos) +
                          " is never closed",
                      src_.empty() ? 0 : src_.size() - 1);
        case Token::close:
          return raw;
        case Token::open:
          raw.items.push_back({false, raw.lists.size(), {}});
          raw.lists.push_back(parse_list(t.pos));
          break;
        case Token::atom:
          raw.items.push_back({true, 0, t.text});
          break;
      }
    }
  }

  Tree build(const Raw& top) {
    const Raw* raw = &top;
    if (raw->label.empty()) {
      if (raw->items.size() == 1 && !raw->items[0].is_atom) {
        raw = &raw->lists[0];
      } else {
        throw Error(ErrorCode::EmptyNode, "unlabeled node", raw->pos);
      }
    }
    Tree tree;
    next_id_ = 1;
    NodeId root = build_node(tree, *raw);
    if (tree.node(root).kind != NodeKind::syn) {
      // A bare (X tok) tree: wrap nothing, but the root must be syn.
      tree.node(root).kind = NodeKind::syn;
    }
    tree.set_root(root);
    return tree;
  }

  NodeId build_node(Tree& tree, const Raw& raw) {
    if (raw.label.empty()) throw Error(ErrorCode::EmptyNode, "unlabeled node", raw.pos);
    if (raw.items.empty()) {
      throw Error(ErrorCode::EmptyNode, "node '" + std::string(raw.label) + "' has no children",
                  raw.pos);
    }
    auto [label, trace] = split_trace(raw.label);
    NodeId id = next_id_++;
    bool preterminal = raw.items.size() == 1 && raw.items[0].is_atom;
    tree.insert_node(TreeNode{id, preterminal ? NodeKind::pos : NodeKind::syn, label, {}, kNoNode,
                              trace});
    for (const auto& item : raw.items) {
      NodeId child;
      if (item.is_atom) {
        auto [word, wtrace] = split_word(item.atom);
        child = next_id_++;
        tree.insert_node(TreeNode{child, NodeKind::wrd, word, {}, kNoNode, wtrace});
      } else {
        child = build_node(tree, raw.lists[item.list_index]);
      }
      tree.append_child(id, child);
    }
    return id;
  }

  std::string_view src_;
  Lexer lex_;
  NodeId next_id_ = 1;
};

std::string with_trace(const std::string& label, const std::optional<int>& trace) {
  return trace ? label + "-" + std::to_string(*trace) : label;
}

void emit_node(const Tree& tree, NodeId id, std::string& out) {
  const TreeNode& n = tree.node(id);
  if (n.kind == NodeKind::wrd) {
    out += treebank_token(n);
    return;
  }
  out += '(';
  out += with_trace(n.label, n.trace);
  for (NodeId c : n.children) {
    out += ' ';
    emit_node(tree, c, out);
  }
  out += ')';
}

}  // namespace

std::string treebank_token(const TreeNode& wrd) { return with_trace(wrd.label, wrd.trace); }

std::vector<Tree> parse_treebank(std::string_view text) { return Parser(text).parse_all(); }

std::string emit_treebank(const Tree& tree) {
  std::string out;
  if (!tree.empty()) emit_node(tree, tree.root(), out);
  return out;
}

std::string emit_treebank(std::span<const Tree> trees) {
  std::string out;
  for (const auto& t : trees) {
    out += emit_treebank(t);
    out += '\n';
  }
  return out;
}

}  // namespace agtk::formats
