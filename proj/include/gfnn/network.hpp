#pragma once
// Weighted-DAG model of a feed-forward computation graph: an ordered list of
// parentless input nodes, an ordered duplicate-free list of non-input output
// nodes, one real bias per non-input node, and a nonzero real weight per edge.
// Output nodes may have outgoing edges; they need not sit at the final level.
//
// All values are immutable after construction and every operation here is a
// pure function returning fresh values.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gfnn {

using NodeId = std::string;
using EdgeKey = std::pair<NodeId, NodeId>;  // (source, destination)

struct Network {
  std::vector<NodeId> inputs;       // defines coordinate order of the input space
  std::vector<NodeId> outputs;      // duplicate-free, non-input
  std::map<NodeId, double> biases;  // one entry per non-input node
  std::map<EdgeKey, double> edges;  // weights, always nonzero

  bool is_input(const NodeId& v) const;
  bool is_output(const NodeId& v) const;
  bool has_node(const NodeId& v) const;
  std::size_t node_count() const { return inputs.size() + biases.size(); }
  std::vector<NodeId> all_nodes() const;  // inputs first, then biased nodes

  friend bool operator==(const Network&, const Network&) = default;
};

// Parent/child adjacency derived from the edge map. Parent lists are sorted
// by node id; that order fixes the summation order used by evaluation, so
// results are bit-reproducible across traversal orders.
struct Adjacency {
  std::map<NodeId, std::vector<std::pair<NodeId, double>>> parents;
  std::map<NodeId, std::vector<NodeId>> children;
  explicit Adjacency(const Network& net);
};

// One entry per violated structural invariant, naming the offending node or
// edge. Empty result means the network is valid. Violations are data, not
// failures; nothing throws here.
std::vector<std::string> validate(const Network& net);

// Longest-path depth of every node; inputs sit at level 0. Throws on cycles
// (validate reports them non-throwing).
std::map<NodeId, int> levels(const Network& net);
int level(const Network& net, const NodeId& v);
int depth(const Network& net);

// Nodes ordered by (level, id); parents always precede children.
std::vector<NodeId> topo_order(const Network& net);

// Iterated-parent closure of `targets`; the result's outputs are exactly
// `targets` in the given order. Targets must be existing non-input nodes.
Network ancestor_subnetwork(const Network& net, const std::vector<NodeId>& targets);

// True iff every node is an ancestor of (or is) some output.
bool is_non_degenerate(const Network& net);

// Clone pairs: distinct non-input nodes with identical parent sets,
// per-parent weights, and biases. Pairs are returned with the smaller id
// first, sorted.
bool is_clone_pair(const Network& net, const NodeId& a, const NodeId& b);
std::vector<std::pair<NodeId, NodeId>> find_clone_pairs(const Network& net);

// Deletes `drop`, grafting each outgoing edge (drop, v) onto (keep, v) by
// adding weights. Edges whose summed weight is exactly zero are deleted, and
// non-input nodes left without a path to an output (or without parents) are
// pruned. The realized map is unchanged for every nonlinearity as long as
// pruned parts did not feed an output. Requires (keep, drop) to be a clone
// pair with drop not an output.
Network merge_clone_pair(const Network& net, const NodeId& keep, const NodeId& drop);

// Every edge connects consecutive levels.
bool is_layered(const Network& net);

}  // namespace gfnn
