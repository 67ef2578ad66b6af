#include "gfnn/anchor.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace gfnn {

AnchorResult anchor_input(const Network& net, const NodeId& anchored, double a,
                          const Nonlinearity& rho) {
  if (net.inputs.size() < 2)
    throw std::invalid_argument("anchor_input: network must have at least two inputs");
  if (!net.is_input(anchored))
    throw std::invalid_argument("anchor_input: '" + anchored + "' is not an input node");

  // A node survives iff some non-anchored input is among its ancestors.
  Adjacency adj(net);
  std::set<NodeId> kept;
  for (const auto& v : net.inputs)
    if (v != anchored) kept.insert(v);
  for (const auto& v : topo_order(net)) {
    if (net.is_input(v)) continue;
    for (const auto& [p, w] : adj.parents.at(v))
      if (kept.count(p)) {
        kept.insert(v);
        break;
      }
  }

  // Constants carried by the removed part, in dependency order.
  std::map<NodeId, double> constant;
  constant[anchored] = a;
  for (const auto& v : topo_order(net)) {
    if (kept.count(v) || net.is_input(v)) continue;
    double acc = 0.0;
    for (const auto& [p, w] : adj.parents.at(v)) acc += w * constant.at(p);
    constant[v] = rho(acc + net.biases.at(v));
  }

  AnchorResult out;
  out.anchored.inputs = net.inputs;
  std::erase(out.anchored.inputs, anchored);
  for (const auto& w : net.outputs) {
    if (kept.count(w))
      out.anchored.outputs.push_back(w);
    else
      out.dropped_output_values[w] = constant.at(w);
  }
  for (const auto& [key, w] : net.edges)
    if (kept.count(key.first) && kept.count(key.second)) out.anchored.edges[key] = w;
  for (const auto& [v, theta] : net.biases) {
    if (!kept.count(v)) continue;
    double shifted = theta;
    for (const auto& [p, w] : adj.parents.at(v))
      if (!kept.count(p)) shifted += w * constant.at(p);
    out.anchored.biases[v] = shifted;
    if (shifted != theta) out.modified_biases[v] = {theta, shifted};
  }
  return out;
}

std::vector<double> default_anchor_candidates(uint64_t seed) {
  std::vector<double> c = {0.0, 1.0, -1.0, 0.5, -0.5};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int i = 0; i < 16; ++i) c.push_back(uni(rng));
  return c;
}

std::optional<AnchorSearchResult> find_clone_free_anchor(
    const Network& net, const NodeId& anchored, const Nonlinearity& rho,
    const std::vector<double>& candidates) {
  for (double a : candidates) {
    AnchorResult r = anchor_input(net, anchored, a, rho);
    if (find_clone_pairs(r.anchored).empty())
      return AnchorSearchResult{a, std::move(r)};
  }
  return std::nullopt;
}

std::vector<Network> glue_single_input(const std::vector<Network>& nets,
                                       const std::map<NodeId, double>& weights,
                                       const NodeId& new_input) {
  if (nets.empty()) throw std::invalid_argument("glue_single_input: empty network list");
  std::set<NodeId> shared(nets.front().inputs.begin(), nets.front().inputs.end());
  for (const auto& n : nets) {
    std::set<NodeId> in(n.inputs.begin(), n.inputs.end());
    if (in != shared)
      throw std::invalid_argument("glue_single_input: networks do not share an input set");
  }
  std::set<double> seen;
  for (const auto& v : nets.front().inputs) {
    auto it = weights.find(v);
    if (it == weights.end())
      throw std::invalid_argument("glue_single_input: no weight for input '" + v + "'");
    if (it->second == 0.0)
      throw std::invalid_argument("glue_single_input: weight for '" + v + "' is zero");
    if (!seen.insert(it->second).second)
      throw std::invalid_argument("glue_single_input: weights must be pairwise distinct");
  }
  if (weights.size() != shared.size())
    throw std::invalid_argument("glue_single_input: weight keys do not match the input set");

  NodeId fresh = new_input;
  auto taken = [&](const NodeId& id) {
    for (const auto& n : nets)
      if (n.has_node(id)) return true;
    return false;
  };
  while (taken(fresh)) fresh = "_" + fresh;

  std::vector<Network> out;
  out.reserve(nets.size());
  for (const auto& n : nets) {
    Network g = n;
    g.inputs = {fresh};
    for (const auto& v : n.inputs) {
      g.biases[v] = 0.0;
      g.edges[{fresh, v}] = weights.at(v);
    }
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace gfnn
