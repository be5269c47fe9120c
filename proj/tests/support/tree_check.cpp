#include "tree_check.hpp"

#include <algorithm>

#include "agtk/error.hpp"
#include "agtk/formats/treebank.hpp"
#include "agtk/tree_edit.hpp"
#include "oracles.hpp"

namespace agtk::testing {

namespace {

std::vector<NodeId> ids_where(const Tree& t, bool (*keep)(const TreeNode&)) {
  std::vector<NodeId> out;
  for (const auto& [id, n] : t.nodes())
    if (keep(n)) out.push_back(id);
  return out;
}

bool non_wrd(const TreeNode& n) { return n.kind != NodeKind::wrd; }
bool is_syn(const TreeNode& n) { return n.kind == NodeKind::syn; }
bool any(const TreeNode&) { return true; }

// Two siblings of one parent, or an empty selection when none exist.
Selection sibling_pair(Rng& rng, const Tree& t) {
  auto parents = ids_where(t, [](const TreeNode& n) { return n.kind == NodeKind::syn && n.children.size() >= 2; });
  if (parents.empty()) return {};
  const auto& kids = t.node(pick(rng, parents)).children;
  std::size_t i = uniform(rng, 0, kids.size() - 1);
  std::size_t j = uniform(rng, 0, kids.size() - 1);
  if (i == j) j = (i + 1) % kids.size();
  return {kids[i], kids[j]};
}

std::string check_shape(const Tree& t) {
  if (!well_formed_oracle(t)) return "not well formed";
  if (!projective_oracle(t)) return "not projective";
  return {};
}

}  // namespace

StepResult random_tree_step(Rng& rng, Tree& tree) {
  static const std::vector<std::string> kLabels = {"NP", "VP", "PP", "S", "SBAR", "ADJP", "X"};
  const std::string before_text = formats::emit_treebank(tree);
  const Tree before = tree;
  std::vector<std::string> expected = yield_oracle(tree);
  const auto all = ids_where(tree, any);
  const auto inner = ids_where(tree, non_wrd);
  const auto syns = ids_where(tree, is_syn);

  StepResult r;
  std::optional<Tree> oracle;
  bool oracle_used = false;
  try {
    switch (uniform(rng, 0, 7)) {
      case 0: {
        r.op = "insert_internal_node";
        Selection sel = chance(rng, 0.5) ? sibling_pair(rng, tree) : Selection{};
        if (sel.empty() || chance(rng, 0.3)) sel = {pick(rng, inner)};
        if (chance(rng, 0.1)) sel.push_back(pick(rng, all));
        insert_internal_node(tree, sel, pick(rng, kLabels));
        break;
      }
      case 1: {
        r.op = "delete_node";
        NodeId n = pick(rng, chance(rng, 0.9) ? inner : all);
        std::optional<std::size_t> gone;
        if (tree.node(n).kind == NodeKind::pos) gone = node_spans(tree).at(n).begin;
        delete_node(tree, n);
        if (gone) expected.erase(expected.begin() + static_cast<std::ptrdiff_t>(*gone));
        break;
      }
      case 2:
      case 3: {
        r.op = "move_node";
        Selection sel;
        if (chance(rng, 0.4)) sel = sibling_pair(rng, tree);
        if (sel.empty()) sel = {pick(rng, inner)};
        sel.push_back(pick(rng, chance(rng, 0.85) ? syns : all));
        oracle = move_oracle(tree, sel);
        oracle_used = true;
        move_node(tree, sel);
        break;
      }
      case 4: {
        r.op = "adjoin";
        adjoin(tree, {pick(rng, inner), pick(rng, syns)});
        break;
      }
      case 5: {
        r.op = "add_syn_wrd";
        NodeId n = pick(rng, inner);
        Side side = chance(rng, 0.5) ? Side::before : Side::after;
        auto span = node_spans(tree).at(n);
        add_syn_wrd(tree, n, side, "NP", "*T*");
        expected.insert(expected.begin() + static_cast<std::ptrdiff_t>(side == Side::before ? span.begin : span.end),
                        "*T*");
        break;
      }
      case 6: {
        r.op = "change_label";
        NodeId n = pick(rng, all);
        std::string label = chance(rng, 0.05) ? std::string{} : pick(rng, kLabels);
        if (tree.node(n).kind == NodeKind::wrd && !label.empty()) {
          label = random_word(rng);
          expected[node_spans(tree).at(n).begin] = label;
        }
        change_label(tree, n, label);
        break;
      }
      default: {
        r.op = "coref";
        coref(tree, {pick(rng, syns), pick(rng, chance(rng, 0.5) ? syns : all)});
        break;
      }
    }
    r.committed = true;
  } catch (const Error&) {
    r.committed = false;
  }

  if (!r.committed) {
    if (formats::emit_treebank(tree) != before_text || !(tree == before)) r.failure = r.op + ": rejection changed the tree";
    if (oracle_used && oracle) r.failure = r.op + ": rejected a move the oracle accepts";
    return r;
  }
  if (auto bad = check_shape(tree); !bad.empty()) {
    r.failure = r.op + ": " + bad;
    return r;
  }
  if (yield_oracle(tree) != expected) {
    r.failure = r.op + ": unexpected yield";
    return r;
  }
  if (oracle_used) {
    if (!oracle) {
      r.failure = r.op + ": committed a move the oracle rejects";
    } else if (sexpr_oracle(*oracle) != sexpr_oracle(tree)) {
      r.failure = r.op + ": move result differs from oracle";
    }
  }
  return r;
}

MoveSweep check_all_moves(const Tree& tree) {
  MoveSweep sweep;
  std::vector<Selection> sels;
  for (const auto& [a, na] : tree.nodes()) {
    for (const auto& [b, nb] : tree.nodes()) {
      if (a == b) continue;
      sels.push_back({a, b});
      if (na.parent == kNoNode) continue;
      for (NodeId a2 : tree.node(na.parent).children) {
        if (a2 != a && a2 != b) sels.push_back({a, a2, b});
      }
    }
  }
  for (const auto& sel : sels) {
    ++sweep.selections;
    auto expect = move_oracle(tree, sel);
    Tree t = tree;
    bool ok = true;
    try {
      move_node(t, sel);
    } catch (const Error&) {
      ok = false;
    }
    std::string where = " for selection";
    for (NodeId id : sel) where += " " + std::to_string(id);
    if (ok != expect.has_value()) {
      sweep.failure = (ok ? "accepted" : "rejected") + where + " in " + sexpr_oracle(tree);
      return sweep;
    }
    if (!ok) {
      if (!(t == tree)) {
        sweep.failure = "rejection changed the tree" + where;
        return sweep;
      }
      continue;
    }
    ++sweep.accepted;
    if (sexpr_oracle(t) != sexpr_oracle(*expect) || !well_formed_oracle(t) || !projective_oracle(t)) {
      sweep.failure = "result differs" + where + " in " + sexpr_oracle(tree);
      return sweep;
    }
  }
  return sweep;
}

}  // namespace agtk::testing
