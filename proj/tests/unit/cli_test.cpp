#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "agtk/cli.hpp"
#include "agtk/formats/treebank.hpp"
#include "docs.hpp"
#include "doctest.h"
#include "gen.hpp"

using agtk::testing::TempDir;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "agtk");
  std::ostringstream out, err;
  int code = agtk::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

void put(const std::filesystem::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string get(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::vector<std::string> entries(const TempDir& dir) {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(dir.path())) out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("yield prints one token per line") {
  TempDir dir;
  put(dir / "t.ptb", "(S (NN a) (NN b))\n");
  auto r = cli({"yield", (dir / "t.ptb").string()});
  CHECK(r.code == 0);
  CHECK(r.out == "a\nb\n");
}

TEST_CASE("ptb to aif and back") {
  TempDir dir;
  agtk::testing::Rng rng(3);
  std::vector<agtk::Tree> trees;
  for (int i = 0; i < 10; ++i) trees.push_back(agtk::testing::random_tree(rng, agtk::testing::uniform(rng, 1, 12), true));
  const std::string text = agtk::formats::emit_treebank(trees);
  put(dir / "t.ptb", text);
  CHECK(cli({"convert", "--from", "ptb", "--to", "aif", (dir / "t.ptb").string(), (dir / "t.aif").string()}).code == 0);
  CHECK(cli({"convert", "--from", "aif", "--to", "ptb", (dir / "t.aif").string(), (dir / "back.ptb").string()}).code == 0);
  CHECK(get(dir / "back.ptb") == text);

  put(dir / "one.ptb", "( (S (NP (NN a))\n   (VP (VB b))) )\n");
  CHECK(cli({"convert", "--from", "ptb", "--to", "aif", (dir / "one.ptb").string(), (dir / "one.aif").string()}).code == 0);
  CHECK(cli({"validate", "--kind", "tree", (dir / "one.aif").string()}).code == 0);
  CHECK(cli({"convert", "--from", "aif", "--to", "ptb", (dir / "one.aif").string(), (dir / "one2.ptb").string()}).code == 0);
  CHECK(get(dir / "one2.ptb") == "(S (NP (NN a)) (VP (VB b)))\n");
}

TEST_CASE("table and lcf conversions") {
  TempDir dir;
  put(dir / "cfg", "start,end,word,gloss\n10,10\nheader\n");
  put(dir / "t.csv", "start,end,word,gloss\n0.5,1,ok,\"GO, now\"\n,,x,y\n");
  CHECK(cli({"convert", "--from", "table", "--to", "aif", "--table-config", (dir / "cfg").string(),
             (dir / "t.csv").string(), (dir / "t.aif").string()})
            .code == 0);
  CHECK(cli({"convert", "--from", "aif", "--to", "table", (dir / "t.aif").string(), (dir / "back.csv").string()}).code ==
        0);
  CHECK(get(dir / "back.csv") == "start,end,word,gloss\n0.500000,1.000000,ok,\"GO, now\"\n,,x,y\n");
  auto r = cli({"convert", "--from", "table", "--to", "aif", (dir / "t.csv").string(), (dir / "u.aif").string()});
  CHECK(r.code == 2);

  put(dir / "c.lcf", "1.000000 2.500000 A: hello there\n3.000000 4.000000 B: bye\n");
  CHECK(cli({"convert", "--from", "lcf", "--to", "aif", (dir / "c.lcf").string(), (dir / "c.aif").string()}).code == 0);
  CHECK(cli({"validate", "--kind", "segments", (dir / "c.aif").string()}).code == 0);
  CHECK(cli({"convert", "--from", "aif", "--to", "lcf", (dir / "c.aif").string(), (dir / "c2.lcf").string()}).code == 0);
  CHECK(get(dir / "c2.lcf") == get(dir / "c.lcf"));
}

TEST_CASE("validate reports one line per violation") {
  TempDir dir;
  std::string aif = agtk::testing::tree_payload("(S (NN a) (NN b))");
  auto pos = aif.find("end=\"a3\"");
  REQUIRE(pos != std::string::npos);
  aif.replace(pos, 8, "end=\"a9\"");
  put(dir / "bad.aif", aif);
  auto r = cli({"validate", (dir / "bad.aif").string()});
  CHECK(r.code == 1);
  CHECK(lines(r.err) == 1);
  CHECK(r.err.find("a9") != std::string::npos);
  CHECK(r.out.empty());

  put(dir / "good.aif", agtk::testing::tree_payload("(S (NN a) (NN b))"));
  r = cli({"validate", (dir / "good.aif").string()});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
}

TEST_CASE("apply runs an edit script") {
  TempDir dir;
  put(dir / "t.ptb", "(S (NP (DT the) (NN dog)) (VP (VBD barked)))\n");
  put(dir / "s.jsonl",
      "{\"op\":\"move_node\",\"args\":{\"selection\":[5,7]},\"base_revision\":9}\n"
      "\n"
      "{\"op\":\"change_label\",\"selection\":[2],\"args\":{\"label\":\"NP-SBJ\"}}\n");
  auto r = cli({"apply", "--script", (dir / "s.jsonl").string(), (dir / "t.ptb").string(), (dir / "out.ptb").string()});
  CHECK(r.code == 0);
  CHECK(get(dir / "out.ptb") == "(S (NP-SBJ (DT the)) (VP (NN dog) (VBD barked)))\n");

  put(dir / "bad.jsonl", "{\"op\":\"move_node\",\"args\":{\"selection\":[3,7]}}\n");
  auto before = entries(dir);
  r = cli({"apply", "--script", (dir / "bad.jsonl").string(), (dir / "t.ptb").string(), (dir / "never.ptb").string()});
  CHECK(r.code == 1);
  CHECK(lines(r.err) == 1);
  CHECK(r.err.find("WordOrderChange") != std::string::npos);
  CHECK(entries(dir) == before);

  put(dir / "junk.jsonl", "{op}\n");
  before = entries(dir);
  r = cli({"apply", "--script", (dir / "junk.jsonl").string(), (dir / "t.ptb").string(), (dir / "never.ptb").string()});
  CHECK(r.code != 0);
  CHECK(entries(dir) == before);
}

TEST_CASE("usage and input errors") {
  TempDir dir;
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"convert", "--from", "ptb", "--to", "doc", "a", "b"}).code == 2);
  CHECK(cli({"yield"}).code == 2);
  auto r = cli({"yield", (dir / "missing.ptb").string()});
  CHECK(r.code == 1);
  CHECK(lines(r.err) == 1);
  put(dir / "broken.ptb", "(S (NN a)");
  r = cli({"yield", (dir / "broken.ptb").string()});
  CHECK(r.code != 0);
  CHECK(lines(r.err) == 1);
  CHECK(r.err.find("UnbalancedParens") != std::string::npos);
}

TEST_CASE("the installed binary keeps the exit-code contract") {
  TempDir dir;
  put(dir / "t.ptb", "(S (NN a) (NN b))\n");
  auto status = [&](const std::string& args) {
    std::string command = std::string(AGTK_CLI_PATH) + " " + args + " >" + (dir / "o").string() + " 2>&1";
    int raw = std::system(command.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("yield " + (dir / "t.ptb").string()) == 0);
  CHECK(get(dir / "o") == "a\nb\n");
  CHECK(status("nonsense") == 2);
  CHECK(status("yield " + (dir / "nope.ptb").string()) == 1);
}

}  // TEST_SUITE
