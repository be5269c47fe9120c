#include <array>

#include "agtk/formats/treebank.hpp"
#include "agtk/tree_edit.hpp"
#include "doctest.h"
#include "expect.hpp"
#include "gen.hpp"
#include "oracles.hpp"
#include "tree_check.hpp"

using namespace agtk;
using agtk::formats::emit_treebank;
using agtk::formats::parse_treebank;
using agtk::testing::code_of;
using agtk::testing::Rng;

namespace {

// Node ids follow preorder from 1, so "(S (NN a) (NN b))" is S=1 NN=2 a=3 NN=4 b=5.
Tree tree_of(const std::string& text) { return parse_treebank(text).at(0); }

std::string br(const Tree& t) { return emit_treebank(t); }

using Words = std::vector<std::string>;

}  // namespace

TEST_SUITE("tree") {

TEST_CASE("terminal_yield") {
  CHECK(terminal_yield(tree_of("(S (NN a) (NN b))")) == Words{"a", "b"});
  CHECK(terminal_yield(tree_of("(S (NN w))")) == Words{"w"});
  Rng rng(1);
  for (int i = 0; i < 300; ++i) {
    Tree t = agtk::testing::random_tree(rng, agtk::testing::uniform(rng, 1, 20), i % 2 == 0);
    REQUIRE(terminal_yield(t) == agtk::testing::yield_oracle(t));
  }
}

TEST_CASE("insert_internal_node") {
  Tree t = tree_of("(S (NN a) (NN b))");
  insert_internal_node(t, {2}, "NP");
  CHECK(br(t) == "(S (NP (NN a)) (NN b))");

  Tree u = tree_of("(S (NN a) (NN b) (NN c))");
  insert_internal_node(u, {2, 6}, "NP");
  CHECK(br(u) == "(S (NP (NN a) (NN b) (NN c)))");

  Tree v = tree_of("(S (NP (NN a)) (NN b))");
  const std::string before = br(v);
  CHECK(code_of([&] { insert_internal_node(v, {3, 5}, "X"); }) == ErrorCode::NotSameParent);
  CHECK(code_of([&] { insert_internal_node(v, {1}, "X"); }) == ErrorCode::RootSelected);
  CHECK(code_of([&] { insert_internal_node(v, {2}, ""); }) == ErrorCode::EmptyLabel);
  CHECK(br(v) == before);
}

TEST_CASE("delete_node") {
  Tree t = tree_of("(S (NP (NN a)) (NN b))");
  Tree u = t;
  delete_node(t, 5);
  CHECK(br(t) == "(S (NP (NN a)))");
  CHECK(code_of([&] { delete_node(u, 3); }) == ErrorCode::WouldEmptyParent);
  CHECK(code_of([&] { delete_node(u, 4); }) == ErrorCode::WrdNotDeletable);
  CHECK(code_of([&] { delete_node(u, 1); }) == ErrorCode::RootNotDeletable);
  CHECK(br(u) == "(S (NP (NN a)) (NN b))");

  Tree v = tree_of("(S (NP (NN a) (NN b)))");
  delete_node(v, 2);
  CHECK(br(v) == "(S (NN a) (NN b))");
  CHECK(terminal_yield(v) == Words{"a", "b"});
}

TEST_CASE("move_node") {
  Tree t = tree_of("(S (NN a) (VP (VB b)))");
  move_node(t, {2, 4});
  CHECK(br(t) == "(S (VP (NN a) (VB b)))");

  Tree u = tree_of("(S (NN a) (NN b) (VP (VB c)))");
  CHECK(code_of([&] { move_node(u, {2, 6}); }) == ErrorCode::WordOrderChange);
  CHECK(br(u) == "(S (NN a) (NN b) (VP (VB c)))");
  move_node(u, {2, 4, 6});
  CHECK(br(u) == "(S (VP (NN a) (NN b) (VB c)))");

  Tree v = tree_of("(S (NP (NN a)) (VP (VB b)))");
  CHECK(code_of([&] { move_node(v, {3, 5}); }) == ErrorCode::WouldEmptyParent);

  Tree w = tree_of("(S (NP (NN a) (PP (NN b))) (NN c))");
  CHECK(code_of([&] { move_node(w, {2, 5}); }) == ErrorCode::CyclicMove);
  CHECK(code_of([&] { move_node(w, {1, 5}); }) == ErrorCode::RootSelected);
  CHECK(code_of([&] { move_node(w, {3, 8, 1}); }) == ErrorCode::NotSameParent);
  CHECK(code_of([&] { move_node(w, {5, 3}); }) == ErrorCode::InvalidTarget);
  CHECK(br(w) == "(S (NP (NN a) (PP (NN b))) (NN c))");
}

TEST_CASE("adjoin") {
  Tree t = tree_of("(S (NN a) (VP (VB b)))");
  adjoin(t, {2, 4});
  CHECK(br(t) == "(S (VP (NN a) (VP (VB b))))");

  Tree u = tree_of("(S (NN a) (NN b) (VP (VB c)))");
  const Tree before = u;
  CHECK(code_of([&] { adjoin(u, {2, 6}); }) == ErrorCode::WordOrderChange);
  CHECK(u == before);

  Tree v = tree_of("(S (NN a) (NN b))");
  NodeId clone = adjoin(v, {2, 1});
  CHECK(v.root() == clone);
  CHECK(br(v) == "(S (NN a) (S (NN b)))");
}

TEST_CASE("add_syn_wrd") {
  Tree t = tree_of("(S (NN a))");
  Tree u = t;
  add_syn_wrd(t, 2, Side::after, "SYNLBL");
  CHECK(br(t) == "(S (NN a) (SYNLBL *T*))");
  CHECK(terminal_yield(t) == Words{"a", "*T*"});
  add_syn_wrd(u, 2, Side::before, "SYNLBL");
  CHECK(terminal_yield(u) == Words{"*T*", "a"});
  CHECK(code_of([&] { add_syn_wrd(u, u.root(), Side::after, "X"); }) == ErrorCode::RootSelected);
}

TEST_CASE("change_label") {
  Tree t = tree_of("(S (NP (NN dog)))");
  change_label(t, 2, "NP-SBJ");
  CHECK(t.node(2).label == "NP-SBJ");
  change_label(t, 4, "dogs");
  CHECK(terminal_yield(t) == Words{"dogs"});
  CHECK(code_of([&] { change_label(t, 2, ""); }) == ErrorCode::EmptyLabel);
  CHECK(br(t) == "(S (NP-SBJ (NN dogs)))");
}

TEST_CASE("coref") {
  Tree t = tree_of("(S (NP (NN a)) (VP (VB b)) (NP (NN c)))");
  CHECK(coref(t, {2, 5}) == 1);
  CHECK(t.node(2).trace == 1);
  CHECK(t.node(5).trace == 1);
  CHECK(coref(t, {3, 8}) == 2);
  CHECK(coref(t, {9, 5}) == 1);
  CHECK(t.node(9).trace == 1);
  CHECK(code_of([&] { coref(t, {2, 2}); }) == ErrorCode::SameNode);
  CHECK(code_of([&] { coref(t, {2, 4}); }) == ErrorCode::UntraceableWord);

  Tree u = tree_of("(S (NP-1 (NN a)) (VP (VB b) (NP *T*-1)))");
  CHECK(br(u) == "(S (NP-1 (NN a)) (VP (VB b) (NP *T*-1)))");
  CHECK(coref(u, {6, 3}) == 2);
}

TEST_CASE("build_default_tree") {
  std::array<std::string, 2> ab{"a", "b"};
  CHECK(br(build_default_tree(ab)) == "(S (XX a) (XX b))");
  std::array<std::string, 1> w{"w"};
  CHECK(br(build_default_tree(w)) == "(S (XX w))");
  CHECK(code_of([] { build_default_tree(std::span<const std::string>{}); }) == ErrorCode::EmptyInput);
}

TEST_CASE("move_node agrees with the brute-force oracle") {
  Rng rng(8);
  std::size_t accepted = 0;
  for (int i = 0; i < 120; ++i) {
    Tree t = agtk::testing::random_tree(rng, agtk::testing::uniform(rng, 1, 6), i % 3 == 0);
    auto sweep = agtk::testing::check_all_moves(t);
    INFO(sweep.failure);
    REQUIRE(sweep.failure.empty());
    accepted += sweep.accepted;
  }
  CHECK(accepted > 100);
}

TEST_CASE("random edit sequences keep every invariant") {
  Rng rng(99);
  std::size_t committed = 0;
  for (int i = 0; i < 300; ++i) {
    Tree t = agtk::testing::random_tree(rng, agtk::testing::uniform(rng, 1, 15), i % 2 == 0);
    std::size_t steps = agtk::testing::uniform(rng, 1, 30);
    for (std::size_t s = 0; s < steps; ++s) {
      auto r = agtk::testing::random_tree_step(rng, t);
      INFO(r.failure);
      REQUIRE(r.failure.empty());
      committed += r.committed;
    }
    REQUIRE(tree_violations(t).empty());
    REQUIRE(agtk::testing::sexpr_oracle(tree_of(br(t))) == agtk::testing::sexpr_oracle(t));
  }
  CHECK(committed > 1000);
}

}  // TEST_SUITE
