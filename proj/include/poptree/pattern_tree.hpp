#pragma once

// Constraint-pruned pattern tree. Every retained node spells a pattern
// (root -> node) and stores the sorted start positions of that pattern in
// the sequence. Growth is bounded by a level cap and pruned after insertion
// by an absolute support floor and an optional monotonic confidence test.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "poptree/sequence.hpp"

namespace poptree {

struct TreeConstraints {
  // Maximum pattern length q. Unset means default_level_cap(N).
  std::optional<std::size_t> level_cap;
  double min_conf = 0.0;
  std::size_t min_sup = 2;
  bool monotonic_enabled = false;
};

// max(1, floor(N / 2)); throws empty_input for N == 0.
std::size_t default_level_cap(std::size_t n);

// One pattern as seen by the scoring stages. `positions` views storage owned
// by the tree (or oracle) that produced the record.
struct PatternRecord {
  Pattern pattern;
  std::span<const std::size_t> positions;

  std::size_t support() const noexcept { return positions.size(); }
};

class PatternTree {
 public:
  using NodeId = std::uint32_t;
  static constexpr NodeId root_id = 0;

  struct Node {
    Symbol symbol;
    std::size_t depth = 0;
    std::vector<std::size_t> positions;
    // Sorted by symbol code.
    std::vector<std::pair<Symbol, NodeId>> children;

    std::size_t support() const noexcept { return positions.size(); }
  };

  const Node& root() const { return nodes_[root_id]; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t sequence_length() const noexcept { return sequence_length_; }
  std::size_t level_cap() const noexcept { return level_cap_; }
  const TreeConstraints& constraints() const noexcept { return constraints_; }

  std::optional<NodeId> child(NodeId parent, Symbol s) const;

 private:
  friend PatternTree build_tree(const SymbolSequence&, const TreeConstraints&);

  std::vector<Node> nodes_;
  std::size_t sequence_length_ = 0;
  std::size_t level_cap_ = 0;
  TreeConstraints constraints_;
};

PatternTree build_tree(const SymbolSequence& seq, const TreeConstraints& constraints);

// nullopt when the pattern was never seen or was pruned; throws
// invalid_pattern for an empty pattern.
std::optional<std::span<const std::size_t>> lookup_positions(const PatternTree& tree,
                                                             std::span<const Symbol> pattern);

// Every non-root node exactly once, depth-first, children in code order.
std::vector<PatternRecord> enumerate_patterns(const PatternTree& tree);

// "pattern<TAB>support<TAB>p0,p1,..." per node in enumeration order.
void dump_tree(std::ostream& out, const PatternTree& tree, const Alphabet& alphabet);

}  // namespace poptree
