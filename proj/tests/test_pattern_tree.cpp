#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "poptree/error.hpp"
#include "poptree/pattern_tree.hpp"

using namespace poptree;
using poptree::testing::plain;

namespace {

using PositionMap = std::map<std::string, std::vector<std::size_t>>;

PositionMap as_map(const PatternTree& tree, const Alphabet& alphabet) {
  PositionMap out;
  for (const auto& rec : enumerate_patterns(tree)) {
    out[render(rec.pattern, alphabet)] = {rec.positions.begin(), rec.positions.end()};
  }
  return out;
}

PositionMap naive_scan(const std::string& s, std::size_t max_len, std::size_t min_sup) {
  PositionMap out;
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (std::size_t i = 0; i + len <= s.size(); ++i) out[s.substr(i, len)].push_back(i);
  }
  std::erase_if(out, [&](const auto& e) { return e.second.size() < min_sup; });
  return out;
}

TreeConstraints caps(std::size_t q, std::size_t min_sup) {
  TreeConstraints c;
  c.level_cap = q;
  c.min_sup = min_sup;
  return c;
}

void check_structure(const PatternTree& tree, std::size_t parent_id) {
  const auto& parent = tree.node(parent_id);
  for (const auto& [sym, id] : parent.children) {
    const auto& child = tree.node(id);
    CHECK(child.support() <= parent.support());
    CHECK(child.depth == parent.depth + 1);
    CHECK(child.depth <= tree.level_cap());
    CHECK(child.support() >= tree.constraints().min_sup);
    CHECK(std::is_sorted(child.positions.begin(), child.positions.end()));
    CHECK(std::adjacent_find(child.positions.begin(), child.positions.end()) ==
          child.positions.end());
    for (auto p : child.positions) CHECK(p + child.depth <= tree.sequence_length());
    check_structure(tree, id);
  }
}

}  // namespace

TEST_CASE("default_level_cap") {
  CHECK(default_level_cap(28) == 14);
  CHECK(default_level_cap(1) == 1);
  CHECK(default_level_cap(336) == 168);
  CHECK_THROWS_AS(default_level_cap(0), Error);
}

TEST_CASE("build_tree on abab") {
  const auto seq = plain("abab");
  const auto tree = build_tree(seq, caps(2, 1));
  const PositionMap expected{{"a", {0, 2}}, {"b", {1, 3}}, {"ab", {0, 2}}, {"ba", {1}}};
  CHECK(as_map(tree, seq.alphabet()) == expected);
  CHECK(tree.root().support() == 4);
}

TEST_CASE("build_tree on empty sequence has only the root") {
  const SymbolSequence empty;
  const auto tree = build_tree(empty, TreeConstraints{});
  CHECK(tree.node_count() == 1);
  CHECK(enumerate_patterns(tree).empty());
}

TEST_CASE("overlapping occurrences count") {
  const auto seq = plain("aaaa");
  const auto tree = build_tree(seq, caps(2, 2));
  const PositionMap expected{{"a", {0, 1, 2, 3}}, {"aa", {0, 1, 2}}};
  CHECK(as_map(tree, seq.alphabet()) == expected);
  CHECK(enumerate_patterns(tree).size() == 2);
}

TEST_CASE("lookup_positions") {
  const auto seq = plain("abab");
  const auto tree = build_tree(seq, caps(2, 1));
  const auto ab = lookup_positions(tree, parse_pattern("ab", seq.alphabet()));
  REQUIRE(ab);
  CHECK(std::vector<std::size_t>(ab->begin(), ab->end()) == std::vector<std::size_t>{0, 2});
  CHECK_FALSE(lookup_positions(tree, parse_pattern("bb", seq.alphabet())));
  CHECK_THROWS_AS(lookup_positions(tree, Pattern{}), Error);
}

TEST_CASE("lookup xy in the worked-example series") {
  const auto seq = plain(poptree::testing::series_s);
  const auto tree = build_tree(seq, TreeConstraints{});
  CHECK(tree.level_cap() == 14);
  const auto xy = lookup_positions(tree, parse_pattern("xy", seq.alphabet()));
  REQUIRE(xy);
  CHECK(std::vector<std::size_t>(xy->begin(), xy->end()) ==
        std::vector<std::size_t>{0, 4, 8, 12, 16, 24});
}

TEST_CASE("enumeration order is depth-first by symbol code") {
  const auto seq = plain("abab");
  const auto tree = build_tree(seq, caps(2, 1));
  std::vector<std::string> order;
  for (const auto& rec : enumerate_patterns(tree)) order.push_back(render(rec.pattern, seq.alphabet()));
  CHECK(order == std::vector<std::string>{"a", "ab", "b", "ba"});
}

TEST_CASE("invalid constraints") {
  const auto seq = plain("abc");
  CHECK_THROWS_AS(build_tree(seq, caps(4, 1)), Error);
  CHECK_THROWS_AS(build_tree(seq, caps(0, 1)), Error);
  CHECK_THROWS_AS(build_tree(seq, caps(2, 0)), Error);
}

TEST_CASE("monotonic prune removes high-support nodes and their subtrees") {
  // N = 10, q = 2: conf = (10 - sup) / 8; min_conf 0.5 prunes sup > 6.
  const auto seq = plain("aaaaaaabcd");
  TreeConstraints c = caps(2, 1);
  c.monotonic_enabled = true;
  c.min_conf = 0.5;
  const auto tree = build_tree(seq, c);
  const auto m = as_map(tree, seq.alphabet());
  CHECK_FALSE(m.contains("a"));   // support 7
  CHECK_FALSE(m.contains("aa"));  // below a pruned node
  CHECK(m.contains("b"));
  CHECK(m.contains("bc"));
  c.monotonic_enabled = false;
  CHECK(as_map(build_tree(seq, c), seq.alphabet()).contains("aa"));
}

TEST_CASE("tree equals naive substring scan on random sequences") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 200;
    const auto text = poptree::testing::random_text(rng, n, 1 + rng() % 4);
    const std::size_t q = 1 + rng() % std::min<std::size_t>(n, 12);
    const std::size_t min_sup = 1 + rng() % 3;
    const auto seq = plain(text);
    const auto tree = build_tree(seq, caps(q, min_sup));
    REQUIRE(as_map(tree, seq.alphabet()) == naive_scan(text, q, min_sup));
    check_structure(tree, PatternTree::root_id);
  }
}

TEST_CASE("dump_tree format") {
  const auto seq = plain("abab");
  std::ostringstream out;
  dump_tree(out, build_tree(seq, caps(2, 1)), seq.alphabet());
  CHECK(out.str() == "a\t2\t0,2\nab\t2\t0,2\nb\t2\t1,3\nba\t1\t1\n");
}
