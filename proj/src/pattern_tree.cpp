#include "poptree/pattern_tree.hpp"

#include <algorithm>
#include <ostream>

#include "poptree/error.hpp"

namespace poptree {

std::size_t default_level_cap(std::size_t n) {
  if (n == 0) throw Error(Errc::empty_input, "level cap of an empty sequence");
  return std::max<std::size_t>(1, n / 2);
}

std::optional<PatternTree::NodeId> PatternTree::child(NodeId parent, Symbol s) const {
  const auto& kids = nodes_.at(parent).children;
  const auto it = std::lower_bound(kids.begin(), kids.end(), s,
                                   [](const auto& entry, Symbol key) { return entry.first < key; });
  if (it == kids.end() || it->first != s) return std::nullopt;
  return it->second;
}

namespace {

using Node = PatternTree::Node;
using NodeId = PatternTree::NodeId;

NodeId child_or_insert(std::vector<Node>& nodes, NodeId parent, Symbol s) {
  auto& kids = nodes[parent].children;
  auto it = std::lower_bound(kids.begin(), kids.end(), s,
                             [](const auto& entry, Symbol key) { return entry.first < key; });
  if (it != kids.end() && it->first == s) return it->second;
  const auto id = static_cast<NodeId>(nodes.size());
  kids.insert(it, {s, id});
  // `kids` may dangle after this push_back.
  nodes.push_back(Node{s, nodes[parent].depth + 1, {}, {}});
  return id;
}

struct Pruner {
  const std::vector<Node>& in;
  const TreeConstraints& constraints;
  std::size_t n;
  std::size_t q;
  std::vector<Node> out;

  bool keep(const Node& node) const {
    if (node.support() < constraints.min_sup) return false;
    if (constraints.monotonic_enabled && n > q) {
      const double conf = static_cast<double>(n - node.support()) / static_cast<double>(n - q);
      if (conf < constraints.min_conf) return false;
    }
    return true;
  }

  // Copies `src` into `out` at slot `dst`, then its surviving children.
  void copy(NodeId src, NodeId dst) {
    for (const auto& [symbol, child_id] : in[src].children) {
      const Node& child = in[child_id];
      if (!keep(child)) continue;
      const auto id = static_cast<NodeId>(out.size());
      out.push_back(Node{child.symbol, child.depth, child.positions, {}});
      out[dst].children.emplace_back(symbol, id);
      copy(child_id, id);
    }
  }
};

}  // namespace

PatternTree build_tree(const SymbolSequence& seq, const TreeConstraints& constraints) {
  const std::size_t n = seq.size();
  std::size_t q = 0;
  if (n > 0) {
    q = constraints.level_cap.value_or(default_level_cap(n));
    if (q < 1 || q > n) {
      throw Error(Errc::invalid_config, "level cap must lie in [1, N]");
    }
  }
  if (constraints.min_sup < 1) throw Error(Errc::invalid_config, "min_sup must be >= 1");
  if (constraints.min_conf < 0.0 || constraints.min_conf > 1.0) {
    throw Error(Errc::invalid_config, "min_conf must lie in [0, 1]");
  }

  std::vector<Node> raw;
  raw.push_back(Node{Symbol{}, 0, {}, {}});
  raw[0].positions.resize(n);
  for (std::size_t i = 0; i < n; ++i) raw[0].positions[i] = i;

  for (std::size_t i = 0; i < n; ++i) {
    NodeId at = PatternTree::root_id;
    const std::size_t stop = std::min(q, n - i);
    for (std::size_t len = 1; len <= stop; ++len) {
      at = child_or_insert(raw, at, seq[i + len - 1]);
      raw[at].positions.push_back(i);
    }
  }

  Pruner pruner{raw, constraints, n, q, {}};
  pruner.out.reserve(raw.size());
  pruner.out.push_back(Node{Symbol{}, 0, std::move(raw[0].positions), {}});
  pruner.copy(PatternTree::root_id, PatternTree::root_id);

  PatternTree tree;
  tree.nodes_ = std::move(pruner.out);
  tree.sequence_length_ = n;
  tree.level_cap_ = q;
  tree.constraints_ = constraints;
  tree.constraints_.level_cap = q;
  return tree;
}

std::optional<std::span<const std::size_t>> lookup_positions(const PatternTree& tree,
                                                             std::span<const Symbol> pattern) {
  if (pattern.empty()) throw Error(Errc::invalid_pattern, "empty pattern");
  PatternTree::NodeId at = PatternTree::root_id;
  for (Symbol s : pattern) {
    const auto next = tree.child(at, s);
    if (!next) return std::nullopt;
    at = *next;
  }
  return std::span<const std::size_t>(tree.node(at).positions);
}

namespace {

void walk(const PatternTree& tree, PatternTree::NodeId id, Pattern& spelled,
          std::vector<PatternRecord>& out) {
  for (const auto& [symbol, child_id] : tree.node(id).children) {
    spelled.push_back(symbol);
    out.push_back(PatternRecord{spelled, tree.node(child_id).positions});
    walk(tree, child_id, spelled, out);
    spelled.pop_back();
  }
}

}  // namespace

std::vector<PatternRecord> enumerate_patterns(const PatternTree& tree) {
  std::vector<PatternRecord> out;
  out.reserve(tree.node_count() > 0 ? tree.node_count() - 1 : 0);
  Pattern spelled;
  walk(tree, PatternTree::root_id, spelled, out);
  return out;
}

void dump_tree(std::ostream& out, const PatternTree& tree, const Alphabet& alphabet) {
  for (const auto& rec : enumerate_patterns(tree)) {
    out << render(rec.pattern, alphabet) << '\t' << rec.support() << '\t';
    for (std::size_t i = 0; i < rec.positions.size(); ++i) {
      if (i) out << ',';
      out << rec.positions[i];
    }
    out << '\n';
  }
}

}  // namespace poptree
