#include "gfnn/network.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gfnn {

bool Network::is_input(const NodeId& v) const {
  return std::find(inputs.begin(), inputs.end(), v) != inputs.end();
}

bool Network::is_output(const NodeId& v) const {
  return std::find(outputs.begin(), outputs.end(), v) != outputs.end();
}

bool Network::has_node(const NodeId& v) const {
  return biases.count(v) > 0 || is_input(v);
}

std::vector<NodeId> Network::all_nodes() const {
  std::vector<NodeId> out = inputs;
  for (const auto& [v, theta] : biases) out.push_back(v);
  return out;
}

Adjacency::Adjacency(const Network& net) {
  // edges iterate sorted by (src, dst), so each parent list is appended in
  // increasing source order.
  for (const auto& [key, w] : net.edges) {
    parents[key.second].emplace_back(key.first, w);
    children[key.first].push_back(key.second);
  }
}

std::vector<std::string> validate(const Network& net) {
  std::vector<std::string> bad;
  std::set<NodeId> input_set(net.inputs.begin(), net.inputs.end());
  if (input_set.size() != net.inputs.size())
    bad.push_back("duplicate input node in the inputs list");
  for (const auto& v : net.inputs) {
    if (v.empty()) bad.push_back("empty input node id");
    if (net.biases.count(v))
      bad.push_back("node '" + v + "' is both an input and carries a bias");
  }
  for (const auto& [v, theta] : net.biases)
    if (v.empty()) bad.push_back("empty non-input node id");

  std::set<NodeId> seen_outputs;
  for (const auto& v : net.outputs) {
    if (!seen_outputs.insert(v).second)
      bad.push_back("duplicate output node '" + v + "'");
    if (input_set.count(v))
      bad.push_back("output node '" + v + "' is an input");
    else if (!net.biases.count(v))
      bad.push_back("output node '" + v + "' does not exist");
  }

  std::set<NodeId> with_parents;
  for (const auto& [key, w] : net.edges) {
    const auto& [src, dst] = key;
    if (!net.has_node(src))
      bad.push_back("edge (" + src + " -> " + dst + ") references unknown source");
    if (!net.biases.count(dst)) {
      if (input_set.count(dst))
        bad.push_back("edge (" + src + " -> " + dst + ") points into an input node");
      else
        bad.push_back("edge (" + src + " -> " + dst + ") references unknown destination");
    }
    if (w == 0.0)
      bad.push_back("edge (" + src + " -> " + dst + ") has weight exactly zero");
    with_parents.insert(dst);
  }
  for (const auto& [v, theta] : net.biases)
    if (!with_parents.count(v))
      bad.push_back("non-input node '" + v + "' has no parents");

  // Cycle check via Kahn's algorithm over known nodes.
  std::map<NodeId, int> indeg;
  for (const auto& v : net.inputs) indeg[v] = 0;
  for (const auto& [v, theta] : net.biases) indeg[v];
  for (const auto& [key, w] : net.edges)
    if (indeg.count(key.first) && indeg.count(key.second)) indeg[key.second]++;
  std::deque<NodeId> ready;
  for (const auto& [v, d] : indeg)
    if (d == 0) ready.push_back(v);
  std::size_t visited = 0;
  Adjacency adj(net);
  while (!ready.empty()) {
    NodeId v = ready.front();
    ready.pop_front();
    ++visited;
    auto it = adj.children.find(v);
    if (it == adj.children.end()) continue;
    for (const auto& c : it->second)
      if (indeg.count(c) && --indeg[c] == 0) ready.push_back(c);
  }
  if (visited != indeg.size()) bad.push_back("edge relation contains a directed cycle");
  return bad;
}

std::map<NodeId, int> levels(const Network& net) {
  std::map<NodeId, int> lv;
  Adjacency adj(net);
  for (const auto& v : net.inputs) lv[v] = 0;
  // Repeatedly settle nodes whose parents are all settled.
  std::size_t expected = net.node_count();
  bool progress = true;
  while (lv.size() < expected && progress) {
    progress = false;
    for (const auto& [v, theta] : net.biases) {
      if (lv.count(v)) continue;
      auto pit = adj.parents.find(v);
      if (pit == adj.parents.end()) {
        lv[v] = 1;  // parentless non-input: invalid, but keep the map total
        progress = true;
        continue;
      }
      int m = -1;
      bool all = true;
      for (const auto& [p, w] : pit->second) {
        auto lp = lv.find(p);
        if (lp == lv.end()) {
          all = false;
          break;
        }
        m = std::max(m, lp->second);
      }
      if (all) {
        lv[v] = m + 1;
        progress = true;
      }
    }
  }
  if (lv.size() < expected)
    throw std::runtime_error("levels: edge relation contains a directed cycle");
  return lv;
}

int level(const Network& net, const NodeId& v) {
  if (!net.has_node(v)) throw std::invalid_argument("level: unknown node id '" + v + "'");
  return levels(net).at(v);
}

int depth(const Network& net) {
  int d = 0;
  for (const auto& [v, l] : levels(net)) d = std::max(d, l);
  return d;
}

std::vector<NodeId> topo_order(const Network& net) {
  auto lv = levels(net);
  std::vector<NodeId> order = net.all_nodes();
  std::sort(order.begin(), order.end(), [&](const NodeId& a, const NodeId& b) {
    int la = lv.at(a), lb = lv.at(b);
    return la != lb ? la < lb : a < b;
  });
  return order;
}

namespace {

std::set<NodeId> ancestor_closure(const Network& net, const std::vector<NodeId>& seeds) {
  Adjacency adj(net);
  std::set<NodeId> close;
  std::deque<NodeId> work(seeds.begin(), seeds.end());
  while (!work.empty()) {
    NodeId v = work.front();
    work.pop_front();
    if (!close.insert(v).second) continue;
    auto it = adj.parents.find(v);
    if (it == adj.parents.end()) continue;
    for (const auto& [p, w] : it->second) work.push_back(p);
  }
  return close;
}

Network restrict_to(const Network& net, const std::set<NodeId>& keep,
                    const std::vector<NodeId>& new_outputs) {
  Network sub;
  for (const auto& v : net.inputs)
    if (keep.count(v)) sub.inputs.push_back(v);
  sub.outputs = new_outputs;
  for (const auto& [v, theta] : net.biases)
    if (keep.count(v)) sub.biases[v] = theta;
  for (const auto& [key, w] : net.edges)
    if (keep.count(key.first) && keep.count(key.second)) sub.edges[key] = w;
  return sub;
}

}  // namespace

Network ancestor_subnetwork(const Network& net, const std::vector<NodeId>& targets) {
  std::set<NodeId> seen;
  for (const auto& v : targets) {
    if (!net.has_node(v))
      throw std::invalid_argument("ancestor_subnetwork: unknown node '" + v + "'");
    if (net.is_input(v))
      throw std::invalid_argument("ancestor_subnetwork: target '" + v + "' is an input node");
    if (!seen.insert(v).second)
      throw std::invalid_argument("ancestor_subnetwork: duplicate target '" + v + "'");
  }
  return restrict_to(net, ancestor_closure(net, targets), targets);
}

bool is_non_degenerate(const Network& net) {
  return ancestor_closure(net, net.outputs).size() == net.node_count();
}

bool is_clone_pair(const Network& net, const NodeId& a, const NodeId& b) {
  if (a == b) return false;
  auto ba = net.biases.find(a), bb = net.biases.find(b);
  if (ba == net.biases.end() || bb == net.biases.end()) return false;
  if (ba->second != bb->second) return false;
  Adjacency adj(net);
  auto pa = adj.parents.find(a), pb = adj.parents.find(b);
  if (pa == adj.parents.end() || pb == adj.parents.end()) return pa == pb;
  return pa->second == pb->second;
}

std::vector<std::pair<NodeId, NodeId>> find_clone_pairs(const Network& net) {
  Adjacency adj(net);
  // Key nodes by (bias, sorted parent/weight list); pairs within a group.
  std::map<std::pair<double, std::vector<std::pair<NodeId, double>>>, std::vector<NodeId>> groups;
  for (const auto& [v, theta] : net.biases) {
    auto pit = adj.parents.find(v);
    static const std::vector<std::pair<NodeId, double>> none;
    groups[{theta, pit == adj.parents.end() ? none : pit->second}].push_back(v);
  }
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (const auto& [key, members] : groups)
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        pairs.emplace_back(members[i], members[j]);
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

namespace {

// Removes non-input nodes with no path to an output, and non-input nodes
// left parentless, until stable. Inputs are never pruned; a node pruned by
// the parentless rule is also dropped from the outputs list.
void prune_disconnected(Network& net) {
  for (bool changed = true; changed;) {
    changed = false;
    std::set<NodeId> close = ancestor_closure(net, net.outputs);
    std::set<NodeId> doomed;
    for (const auto& [v, theta] : net.biases)
      if (!close.count(v)) doomed.insert(v);
    std::set<NodeId> with_parents;
    for (const auto& [key, w] : net.edges) with_parents.insert(key.second);
    for (const auto& [v, theta] : net.biases)
      if (!with_parents.count(v)) doomed.insert(v);
    if (doomed.empty()) break;
    changed = true;
    for (const auto& v : doomed) net.biases.erase(v);
    std::erase_if(net.outputs, [&](const NodeId& v) { return doomed.count(v) > 0; });
    std::erase_if(net.edges, [&](const auto& e) {
      return doomed.count(e.first.first) || doomed.count(e.first.second);
    });
  }
}

}  // namespace

Network merge_clone_pair(const Network& net, const NodeId& keep, const NodeId& drop) {
  if (!is_clone_pair(net, keep, drop))
    throw std::invalid_argument("merge_clone_pair: (" + keep + ", " + drop +
                                ") is not a clone pair");
  if (net.is_output(drop))
    throw std::invalid_argument("merge_clone_pair: '" + drop +
                                "' is an output; reassign it to the kept node first");
  Network r = net;
  std::vector<std::pair<NodeId, double>> grafts;
  for (auto it = r.edges.begin(); it != r.edges.end();) {
    if (it->first.first == drop) {
      grafts.emplace_back(it->first.second, it->second);
      it = r.edges.erase(it);
    } else if (it->first.second == drop) {
      it = r.edges.erase(it);
    } else {
      ++it;
    }
  }
  r.biases.erase(drop);
  for (const auto& [child, w] : grafts) {
    EdgeKey key{keep, child};
    auto it = r.edges.find(key);
    if (it == r.edges.end()) {
      r.edges[key] = w;
    } else {
      it->second += w;
      if (it->second == 0.0) r.edges.erase(it);
    }
  }
  prune_disconnected(r);
  return r;
}

bool is_layered(const Network& net) {
  auto lv = levels(net);
  for (const auto& [key, w] : net.edges)
    if (lv.at(key.second) != lv.at(key.first) + 1) return false;
  return true;
}

}  // namespace gfnn
